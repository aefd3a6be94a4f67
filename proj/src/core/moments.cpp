#include "gnch/moments.hpp"

#include <algorithm>
#include <cmath>

#include "gnch/errors.hpp"

namespace gnch {

namespace {

void require_distinct(const std::vector<double>& lambdas) {
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    for (std::size_t j = i + 1; j < lambdas.size(); ++j)
      if (lambdas[i] == lambdas[j]) throw ParamError("spectral constants must be pairwise distinct");
}

// Integer exponent if x is within rounding of one.
bool near_integer(double x, long& out) {
  const double rounded = std::round(x);
  if (std::fabs(x - rounded) > 1e-12 * std::max(1.0, std::fabs(x))) return false;
  out = static_cast<long>(rounded);
  return true;
}

// phi^e for the weight of one mode, allowing negative phi when e is integral.
double weight_power(double phi, double exponent) {
  long n = 0;
  if (near_integer(exponent, n)) {
    if (phi == 0.0 && n < 0) throw DomainError("weight base vanishes under a negative exponent");
    return int_pow(phi, n);
  }
  if (phi <= 0.0) {
    throw DomainError("negative weight base raised to the non-integer power " + format_double(exponent));
  }
  return std::pow(phi, exponent);
}

}  // namespace

MomentSystem::MomentSystem(GnchParams params, std::vector<SpectralMode> modes)
    : params_(params), modes_(std::move(modes)) {
  if (!std::isfinite(params_.r) || !std::isfinite(params_.s)) throw ParamError("r and s must be finite");
  if (modes_.empty()) throw ParamError("a moment system needs at least one spectral mode");
  std::vector<double> lambdas;
  for (const auto& m : modes_) {
    if (!std::isfinite(m.lambda) || !std::isfinite(m.a0)) throw ParamError("spectral data must be finite");
    if (m.lambda == 0.0) throw ParamError("spectral constants must be nonzero");
    lambdas.push_back(m.lambda);
  }
  require_distinct(lambdas);
}

ExactMomentSystem::ExactMomentSystem(Rational r, Rational s, std::vector<ExactMode> modes)
    : r_(std::move(r)), s_(std::move(s)), modes_(std::move(modes)) {
  if (sgn(r_) == 0) throw ParamError("exact mode needs r != 0");
  const Rational shift = 2 * s_ / r_;
  if (shift.get_den() != 1) {
    throw ParamError("exact mode needs 2s/r to be an integer, got " + format_rational(shift));
  }
  if (!shift.get_num().fits_slong_p()) throw ParamError("2s/r out of range");
  shift_ = shift.get_num().get_si();
  if (modes_.empty()) throw ParamError("a moment system needs at least one spectral mode");
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (sgn(modes_[i].lambda) == 0) throw ParamError("spectral constants must be nonzero");
    for (std::size_t j = i + 1; j < modes_.size(); ++j)
      if (modes_[i].lambda == modes_[j].lambda) throw ParamError("spectral constants must be pairwise distinct");
  }
}

MomentSystem ExactMomentSystem::to_float() const {
  std::vector<SpectralMode> out;
  const double r = to_double(r_);
  for (const auto& m : modes_) {
    if (sgn(m.phi0) <= 0) throw DomainError("phi0 <= 0 has no real initial phase a0");
    out.push_back({to_double(m.lambda), std::log(to_double(m.phi0)) / r});
  }
  return MomentSystem(params(), std::move(out));
}

GnchParams preset_params(std::string_view name) {
  if (name == "ch") return {0.0, 1.0};
  if (name == "noniso") return {1.0, 0.0};
  if (name == "mixed") return {4.0, 2.0};
  throw ParamError("unknown preset '" + std::string(name) + "' (expected ch, noniso or mixed)");
}

std::vector<std::string> preset_names() { return {"ch", "noniso", "mixed"}; }

double phi_value(const SpectralMode& mode, const GnchParams& params, double t) {
  if (params.r == 0.0) throw ParamError("phi is only defined for r != 0");
  return std::exp(params.r * mode.a0) - params.r * t / mode.lambda;
}

double a_value(const SpectralMode& mode, const GnchParams& params, double t) {
  if (params.r == 0.0) return mode.a0 - t / mode.lambda;
  const double phi = phi_value(mode, params, t);
  if (phi <= 0.0) throw DomainError("a_j(t) leaves the reals: exp(r a0) - r t / lambda = " + format_double(phi));
  return std::log(phi) / params.r;
}

double moment(const MomentSystem& sys, int k, double t) {
  if (k < -1) throw IndexError("moments are defined for k >= -1");
  const auto& p = sys.params();
  double sum = k == 0 ? 0.5 : 0.0;
  for (const auto& mode : sys.modes()) {
    const double coeff = int_pow(-mode.lambda, k);
    double weight;
    if (p.r != 0.0) {
      weight = weight_power(phi_value(mode, p, t), k + 1 + 2.0 * p.s / p.r);
    } else {
      weight = std::exp(2.0 * p.s * a_value(mode, p, t));
    }
    sum += coeff * weight;
  }
  return sum;
}

double moment_rate(const MomentSystem& sys, int k, double t) {
  if (k < -1) throw IndexError("moments are defined for k >= -1");
  const auto& p = sys.params();
  double sum = 0.0;
  for (const auto& mode : sys.modes()) {
    const double coeff = int_pow(-mode.lambda, k);
    double rate;
    if (p.r != 0.0) {
      const double e = k + 1 + 2.0 * p.s / p.r;
      const double phi = phi_value(mode, p, t);
      rate = e == 0.0 ? 0.0 : e * weight_power(phi, e - 1) * (-p.r / mode.lambda);
    } else {
      rate = std::exp(2.0 * p.s * a_value(mode, p, t)) * (-2.0 * p.s / mode.lambda);
    }
    sum += coeff * rate;
  }
  return sum;
}

double moment_derivative_residual(const MomentSystem& sys, int k, double t) {
  if (k < 0) throw IndexError("the moment law is stated for k >= 0");
  const auto& p = sys.params();
  const double lhs = moment_rate(sys, k, t);
  const double rhs = k == 1 ? (2 * p.r + 2 * p.s) * moment(sys, 0, t) - (p.r + p.s)
                            : (p.r * (k + 1) + 2 * p.s) * moment(sys, k - 1, t);
  return lhs - rhs;
}

Rational moment(const ExactMomentSystem& sys, int k, const Rational& t) {
  if (k < -1) throw IndexError("moments are defined for k >= -1");
  Rational sum = k == 0 ? Rational(1, 2) : Rational(0);
  const long exponent = k + 1 + sys.weight_shift();
  for (const auto& mode : sys.modes()) {
    const Rational phi = mode.phi0 - sys.r() * t / mode.lambda;
    if (sgn(phi) == 0 && exponent < 0) throw DomainError("weight base vanishes under a negative exponent");
    sum += int_pow(Rational(-mode.lambda), k) * int_pow(phi, exponent);
  }
  return sum;
}

Polynomial<Rational> moment_polynomial(const ExactMomentSystem& sys, int k) {
  if (k < -1) throw IndexError("moments are defined for k >= -1");
  const long exponent = k + 1 + sys.weight_shift();
  if (exponent < 0) {
    throw ParamError("moment A_" + std::to_string(k) + " is not a polynomial in t (negative weight exponent)");
  }
  Polynomial<Rational> sum(k == 0 ? Rational(1, 2) : Rational(0));
  for (const auto& mode : sys.modes()) {
    const Rational slope = -sys.r() / mode.lambda;
    const auto phi = Polynomial<Rational>::linear(mode.phi0, slope);
    sum += int_pow(Rational(-mode.lambda), k) * poly_pow(phi, static_cast<unsigned>(exponent));
  }
  return sum;
}

Polynomial<Rational> moment_derivative_residual(const ExactMomentSystem& sys, int k) {
  if (k < 0) throw IndexError("the moment law is stated for k >= 0");
  const Rational& r = sys.r();
  const Rational& s = sys.s();
  const auto lhs = poly_diff(moment_polynomial(sys, k));
  Polynomial<Rational> rhs;
  if (k == 1) {
    rhs = Rational(2 * r + 2 * s) * moment_polynomial(sys, 0) - Polynomial<Rational>(Rational(r + s));
  } else {
    rhs = Rational(r * (k + 1) + 2 * s) * moment_polynomial(sys, k - 1);
  }
  return lhs - rhs;
}

ElementSeq<double> moment_sequence(const MomentSystem& sys, double t, int kmin, int kmax) {
  return ElementSeq<double>::generate(kmin, kmax, [&](int k) { return moment(sys, k, t); });
}

ElementSeq<double> moment_rate_sequence(const MomentSystem& sys, double t, int kmin, int kmax) {
  return ElementSeq<double>::generate(kmin, kmax, [&](int k) { return moment_rate(sys, k, t); });
}

ElementSeq<Rational> moment_sequence(const ExactMomentSystem& sys, const Rational& t, int kmin, int kmax) {
  return ElementSeq<Rational>::generate(kmin, kmax, [&](int k) { return moment(sys, k, t); });
}

ElementSeq<Polynomial<Rational>> moment_polynomial_sequence(const ExactMomentSystem& sys, int kmin, int kmax) {
  return ElementSeq<Polynomial<Rational>>::generate(kmin, kmax,
                                                    [&](int k) { return moment_polynomial(sys, k); });
}

}  // namespace gnch
