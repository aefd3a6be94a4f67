#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "gnch/scalar.hpp"

namespace testsupport {

using gnch::Rational;

// Determinant by expansion over all permutations. Exponential, used only as
// an oracle for n <= 6.
template <class T>
T permutation_det(const std::vector<std::vector<T>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return T(1);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  T total(0);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    T term(1);
    for (std::size_t i = 0; i < n; ++i) term *= a[i][perm[i]];
    if (inversions % 2) total -= term;
    else total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

struct Gen {
  std::mt19937_64 eng;
  explicit Gen(std::uint64_t seed) : eng(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng); }

  Rational rational(int span = 9, int max_den = 7) {
    Rational q(integer(-span, span), integer(1, max_den));
    q.canonicalize();
    return q;
  }

  Rational nonzero_rational(int span = 9, int max_den = 7) {
    Rational q;
    do q = rational(span, max_den);
    while (sgn(q) == 0);
    return q;
  }

  std::vector<std::vector<Rational>> rational_matrix(std::size_t n) {
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (auto& row : a)
      for (auto& v : row) v = rational();
    return a;
  }

  // n distinct nonzero rationals.
  std::vector<Rational> distinct(std::size_t n, int span = 9, int max_den = 4) {
    std::vector<Rational> out;
    while (out.size() < n) {
      const Rational q = nonzero_rational(span, max_den);
      if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
    }
    return out;
  }
};

// Closed forms printed for the r = 4, s = 2 examples.
inline double one_peakon_x(double t) { return 0.5 * std::log(2 * (4 * t - 1) * (4 * t - 1)); }
inline double one_peakon_m(double t) { return 2 / (4 * t - 1); }

struct TwoPeakon {
  double x1, x2, m1, m2;
};

inline TwoPeakon two_peakon(double t) {
  const double a = 4 * t - 1, b = 4 * t + 1;
  const double a2 = a * a, b2 = b * b;
  return {0.5 * std::log(8 * a2 * b2 / (a2 * a2 + b2 * b2)), 0.5 * std::log(2 * a2 + 2 * b2),
          2 * (a2 * a2 + b2 * b2) / (b * a * (b2 * b + a2 * a)), 2 * (a2 + b2) / (b2 * b + a2 * a)};
}

// Exact counterparts: exp(2 x_j) and m_j.
struct TwoPeakonExact {
  Rational e1, e2, m1, m2;
};

inline Rational one_peakon_exp2x(const Rational& t) {
  const Rational a = 4 * t - 1;
  return Rational(2 * a * a);
}

inline Rational one_peakon_m_exact(const Rational& t) { return Rational(2 / (4 * t - 1)); }

inline TwoPeakonExact two_peakon_exact(const Rational& t) {
  const Rational a = 4 * t - 1, b = 4 * t + 1;
  const Rational a2 = a * a, b2 = b * b;
  return {Rational(8 * a2 * b2 / (a2 * a2 + b2 * b2)), Rational(2 * a2 + 2 * b2),
          Rational(2 * (a2 * a2 + b2 * b2) / (b * a * (b2 * b + a2 * a))), Rational(2 * (a2 + b2) / (b2 * b + a2 * a))};
}

inline double rel_err(double got, double want) { return std::fabs(got - want) / std::max(1.0, std::fabs(want)); }

// Composite Simpson on [a, b] with n (even) panels.
template <class F>
double simpson(F&& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4 : 2) * f(a + h * i);
  return s * h / 3;
}

// Closed-form geometry of u = 1/2 sum m_i exp(-2|x - x_i|) for sorted x.
struct PeakGeometry {
  std::vector<double> x, m;

  double u(double at) const {
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += m[i] * std::exp(-2 * std::fabs(at - x[i]));
    return s / 2;
  }

  // A peak is a local extremum when the one-sided slopes differ in sign.
  bool corner_extremum(std::size_t j) const {
    double left = m[j];
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (i < j) left -= m[i] * std::exp(-2 * (x[j] - x[i]));
      if (i > j) left += m[i] * std::exp(-2 * (x[i] - x[j]));
    }
    const double right = left - 2 * m[j];
    return left * right < 0;
  }

  // Critical points of u strictly between neighbouring peaks, where
  // u = A exp(-2x) + B exp(2x).
  std::vector<double> smooth_extrema() const {
    std::vector<double> out;
    for (std::size_t j = 0; j + 1 < x.size(); ++j) {
      double a = 0, b = 0;
      for (std::size_t i = 0; i <= j; ++i) a += m[i] * std::exp(2 * x[i]);
      for (std::size_t i = j + 1; i < x.size(); ++i) b += m[i] * std::exp(-2 * x[i]);
      if (a * b <= 0) continue;
      const double at = 0.25 * std::log(a / b);
      if (at > x[j] && at < x[j + 1]) out.push_back(at);
    }
    return out;
  }
};

// Sampled extrema sorted into peaks and smooth turning points of the closed form.
struct ExtremaMatch {
  double worst_peak = 0;        // max |dx| and |du| over extrema sitting on a peak
  std::size_t peaks = 0;        // extrema matched to a peak
  std::size_t smooth = 0;       // extrema matched to a smooth critical point
  bool all_accounted = true;    // every sampled extremum matched, every expected one found
};

inline ExtremaMatch match_extrema(const std::vector<std::pair<double, double>>& extrema, const PeakGeometry& cf,
                                  double spacing) {
  ExtremaMatch out;
  std::vector<bool> peak_seen(cf.x.size(), false);
  const auto smooth = cf.smooth_extrema();
  std::vector<bool> smooth_seen(smooth.size(), false);
  for (const auto& [x, u] : extrema) {
    bool matched = false;
    for (std::size_t j = 0; j < cf.x.size() && !matched; ++j)
      if (std::fabs(x - cf.x[j]) <= 1e-6) {
        out.worst_peak = std::max({out.worst_peak, std::fabs(x - cf.x[j]), std::fabs(u - cf.u(cf.x[j]))});
        peak_seen[j] = matched = true;
        ++out.peaks;
      }
    for (std::size_t j = 0; j < smooth.size() && !matched; ++j)
      if (std::fabs(x - smooth[j]) <= spacing) {
        smooth_seen[j] = matched = true;
        ++out.smooth;
      }
    if (!matched) out.all_accounted = false;
  }
  for (std::size_t j = 0; j < cf.x.size(); ++j)
    if (cf.corner_extremum(j) && !peak_seen[j]) out.all_accounted = false;
  for (bool seen : smooth_seen)
    if (!seen) out.all_accounted = false;
  return out;
}

}  // namespace testsupport
