#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "gnch/hankel.hpp"
#include "gnch/polynomial.hpp"
#include "gnch/scalar.hpp"

namespace gnch {

/// Member of the equation family. (r, s) = (0, 1) is Camassa-Holm.
struct GnchParams {
  double r = 0.0;
  double s = 1.0;
};

/// One spectral constant lambda_j != 0 with its initial phase a_j(0).
struct SpectralMode {
  double lambda = 1.0;
  double a0 = 0.0;
};

/// Float-mode moment data. Invariants: at least one mode, lambdas nonzero
/// and pairwise distinct, all values finite.
class MomentSystem {
 public:
  MomentSystem(GnchParams params, std::vector<SpectralMode> modes);

  const GnchParams& params() const { return params_; }
  const std::vector<SpectralMode>& modes() const { return modes_; }
  std::size_t size() const { return modes_.size(); }

 private:
  GnchParams params_;
  std::vector<SpectralMode> modes_;
};

/// Exact counterpart of SpectralMode. The initial phase is carried as
/// phi0 = exp(r a_j(0)) so that every moment is a rational function of t.
struct ExactMode {
  Rational lambda{1};
  Rational phi0{1};
};

/// Exact-mode moment data. Requires r != 0 and 2s/r an integer, so the
/// weight phi^{k+1+2s/r} has an integer exponent.
class ExactMomentSystem {
 public:
  ExactMomentSystem(Rational r, Rational s, std::vector<ExactMode> modes);

  const Rational& r() const { return r_; }
  const Rational& s() const { return s_; }
  const std::vector<ExactMode>& modes() const { return modes_; }
  std::size_t size() const { return modes_.size(); }

  /// The integer 2s/r.
  long weight_shift() const { return shift_; }

  GnchParams params() const { return {to_double(r_), to_double(s_)}; }

  /// Float system with a0 = ln(phi0) / r. Throws DomainError if some phi0 <= 0.
  MomentSystem to_float() const;

 private:
  Rational r_;
  Rational s_;
  long shift_ = 0;
  std::vector<ExactMode> modes_;
};

/// Named parameter choices: "ch" (0, 1), "noniso" (1, 0), "mixed" (4, 2).
GnchParams preset_params(std::string_view name);
std::vector<std::string> preset_names();

/// a_j(t). For r != 0 this is ln(phi_j(t)) / r and throws DomainError once
/// phi_j(t) <= 0; for r == 0 it is a0 - t / lambda.
double a_value(const SpectralMode& mode, const GnchParams& params, double t);

/// phi_j(t) = exp(r a0) - r t / lambda, the affine continuation of
/// exp(r a_j(t)). ParamError when r == 0.
double phi_value(const SpectralMode& mode, const GnchParams& params, double t);

/// A_k(t) for k >= -1. The k = 0 moment carries the constant 1/2 standing in
/// for the lambda_0 = 0 mode; A_{-1} has no such term.
double moment(const MomentSystem& sys, int k, double t);

/// Analytic dA_k/dt of the closed form.
double moment_rate(const MomentSystem& sys, int k, double t);

/// dA_k/dt minus the right side of the moment law
/// dA_k/dt = [r(k+1)+2s] A_{k-1} (k != 1), dA_1/dt = (2r+2s) A_0 - (r+s).
double moment_derivative_residual(const MomentSystem& sys, int k, double t);

Rational moment(const ExactMomentSystem& sys, int k, const Rational& t);

/// A_k as a polynomial in t. Requires k + 1 + 2s/r >= 0, i.e. 2s/r >= 0 for
/// the whole range k >= -1 (ParamError otherwise).
Polynomial<Rational> moment_polynomial(const ExactMomentSystem& sys, int k);

/// The moment law residual as a polynomial; the zero polynomial when the law holds.
Polynomial<Rational> moment_derivative_residual(const ExactMomentSystem& sys, int k);

ElementSeq<double> moment_sequence(const MomentSystem& sys, double t, int kmin, int kmax);
ElementSeq<double> moment_rate_sequence(const MomentSystem& sys, double t, int kmin, int kmax);
ElementSeq<Rational> moment_sequence(const ExactMomentSystem& sys, const Rational& t, int kmin, int kmax);
ElementSeq<Polynomial<Rational>> moment_polynomial_sequence(const ExactMomentSystem& sys, int kmin, int kmax);

}  // namespace gnch
