#pragma once

#include <vector>

#include "gnch/peakon.hpp"
#include "gnch/polynomial.hpp"

namespace gnch {

/// P(z) = f(1) for the string f'' = z g f on (-1, 1) with f(-1) = 0,
/// f'(-1) = 1 and g the point masses of cfg. Degree N when every g_j != 0;
/// P(0) = 2.
template <class T>
Polynomial<T> characteristic_polynomial(const StringConfig<T>& cfg);

/// The N real roots of P in ascending order. ConvergenceError if P does not
/// have N real roots.
std::vector<double> string_eigenvalues(const StringConfig<double>& cfg);

/// Exact roots by Sturm isolation. ConvergenceError if the roots are not N
/// distinct reals, DomainError if one of them is irrational.
std::vector<Rational> string_eigenvalues(const StringConfig<Rational>& cfg);

/// Real roots of an arbitrary polynomial, ascending; complex pairs are dropped.
std::vector<double> real_roots(const Polynomial<double>& p);

/// Distinct real roots of an exact polynomial, each bracketed by [lo, hi]
/// with hi - lo <= width (lo == hi for roots hit exactly).
struct RootInterval {
  Rational lo;
  Rational hi;
};
std::vector<RootInterval> isolate_roots(const Polynomial<Rational>& p, const Rational& width);

/// Rational with the smallest denominator in [lo, hi].
Rational simplest_rational(const Rational& lo, const Rational& hi);

struct DriftBranch {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
};

struct DriftReport {
  std::vector<DriftBranch> branches;
  double expected_slope = 0.0;
  std::vector<double> times;
  std::vector<std::vector<double>> eigenvalues;  // eigenvalues[i] sorted, at times[i]
};

/// Least-squares line through each sorted eigenvalue branch. Needs at least
/// three times with valid configurations. BranchCrossingError when two
/// eigenvalues at one time are closer than 1e-9.
DriftReport drift_fit(const MomentSystem& sys, const std::vector<double>& times);

/// lambda_j exp(r a_j(t)), sorted: the eigenvalues the string should carry at t.
std::vector<double> expected_eigenvalues(const MomentSystem& sys, double t);

}  // namespace gnch
