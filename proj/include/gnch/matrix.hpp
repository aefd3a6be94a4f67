#pragma once

#include <cmath>
#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

#include "gnch/polynomial.hpp"
#include "gnch/scalar.hpp"

namespace gnch {

/// Dense square matrix, row-major. Dimension 0 is allowed.
template <class T>
class Matrix {
 public:
  explicit Matrix(std::size_t n = 0) : n_(n), a_(n * n, T(0)) {}

  template <class Fn>
  static Matrix generate(std::size_t n, Fn&& entry) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(i, j);
    return m;
  }

  std::size_t size() const { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  void swap_rows(std::size_t i, std::size_t k) {
    for (std::size_t j = 0; j < n_; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix c(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k)
        for (std::size_t j = 0; j < a.n_; ++j) c(i, j) += a(i, k) * b(k, j);
    return c;
  }

 private:
  std::size_t n_;
  std::vector<T> a_;
};

namespace detail {

inline Rational exact_quotient(const Rational& a, const Rational& b) { return a / b; }

template <class T>
Polynomial<T> exact_quotient(const Polynomial<T>& a, const Polynomial<T>& b) {
  return divide_exact(a, b);
}

// Fraction-free Bareiss elimination. Every intermediate entry is a minor of
// the input, so the division by the previous pivot is exact.
template <class T>
T bareiss(Matrix<T> m) {
  const std::size_t n = m.size();
  if (n == 0) return T(1);
  bool negate = false;
  T prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(m(k, k))) {
      std::size_t p = k + 1;
      while (p < n && is_zero(m(p, k))) ++p;
      if (p == n) return T(0);
      m.swap_rows(k, p);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        T num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = exact_quotient(num, prev);
      }
      m(i, k) = T(0);
    }
    prev = m(k, k);
  }
  T d = m(n - 1, n - 1);
  return negate ? T(-d) : d;
}

inline double lu_partial_pivot(Matrix<double> m) {
  const std::size_t n = m.size();
  double d = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(m(i, k)) > std::fabs(m(p, k))) p = i;
    if (m(p, k) == 0.0) return 0.0;
    if (p != k) {
      m.swap_rows(k, p);
      d = -d;
    }
    const double pivot = m(k, k);
    d *= pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m(i, k) / pivot;
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return d;
}

}  // namespace detail

/// Determinant; det of the 0x0 matrix is 1. Exact element types use Bareiss
/// elimination, doubles use partially pivoted LU.
template <class T>
T det(const Matrix<T>& m) {
  if constexpr (std::is_floating_point_v<T>) {
    return detail::lu_partial_pivot(m);
  } else {
    return detail::bareiss(m);
  }
}

/// Determinant over the polynomial ring Q[t].
inline Polynomial<Rational> poly_det(const Matrix<Polynomial<Rational>>& m) { return det(m); }

}  // namespace gnch
