#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "gnch/errors.hpp"
#include "gnch/scalar.hpp"

namespace gnch {

/// Dense univariate polynomial sum c_i t^i over a field. Trailing zero
/// coefficients are stripped, so the zero polynomial has no coefficients
/// and degree() == -1 (the degree -infinity sentinel).
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int c) : Polynomial(T(c)) {}
  explicit Polynomial(T c) : coeffs_{std::move(c)} { normalize(); }
  explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

  /// a + b t
  static Polynomial linear(const T& a, const T& b) { return Polynomial(std::vector<T>{a, b}); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool zero() const { return coeffs_.empty(); }
  const std::vector<T>& coefficients() const { return coeffs_; }

  T coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : T(0); }
  const T& leading() const { return coeffs_.back(); }

  T operator()(const T& t) const {
    T acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc *= t;
      acc += *it;
    }
    return acc;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    normalize();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    normalize();
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) {
    *this = *this * o;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.zero() || b.zero()) return Polynomial();
    std::vector<T> out(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(out));
  }
  friend Polynomial operator*(const T& s, Polynomial p) {
    for (auto& c : p.coeffs_) c *= s;
    p.normalize();
    return p;
  }
  friend Polynomial operator*(Polynomial p, const T& s) { return s * std::move(p); }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Quotient and remainder of long division by a nonzero divisor.
  friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den) {
    if (den.zero()) throw SingularError("polynomial division by zero");
    if (num.degree() < den.degree()) return {Polynomial(), num};
    std::vector<T> rem = num.coeffs_;
    std::vector<T> quot(num.coeffs_.size() - den.coeffs_.size() + 1, T(0));
    const T& lead = den.leading();
    for (int i = static_cast<int>(quot.size()) - 1; i >= 0; --i) {
      const T q = rem[i + den.degree()] / lead;
      quot[i] = q;
      if (is_zero(q)) continue;
      for (std::size_t j = 0; j < den.coeffs_.size(); ++j) rem[i + j] -= q * den.coeffs_[j];
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }

 private:
  void normalize() {
    while (!coeffs_.empty() && is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

template <class T>
bool is_zero(const Polynomial<T>& p) {
  return p.zero();
}

/// Termwise derivative.
template <class T>
Polynomial<T> poly_diff(const Polynomial<T>& p) {
  if (p.degree() < 1) return Polynomial<T>();
  std::vector<T> out(p.coefficients().size() - 1, T(0));
  for (std::size_t i = 1; i < p.coefficients().size(); ++i) out[i - 1] = T(static_cast<long>(i)) * p.coefficients()[i];
  return Polynomial<T>(std::move(out));
}

template <class T>
Polynomial<T> poly_pow(const Polynomial<T>& p, unsigned exponent) {
  Polynomial<T> result(T(1));
  Polynomial<T> base = p;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1u;
    if (exponent) base *= base;
  }
  return result;
}

/// Division known to be exact; throws if a remainder survives.
template <class T>
Polynomial<T> divide_exact(const Polynomial<T>& num, const Polynomial<T>& den) {
  auto [q, r] = divmod(num, den);
  if (!r.zero()) throw SingularError("inexact polynomial division");
  return q;
}

}  // namespace gnch
