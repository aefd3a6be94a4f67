#include "gnch/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>

namespace gnch {

template <class T>
Polynomial<T> characteristic_polynomial(const StringConfig<T>& cfg) {
  if (!cfg.valid) throw InvalidStateError("string configuration is not valid: " + cfg.reason);
  using P = Polynomial<T>;
  const P z = P::linear(T(0), T(1));
  P f;           // f(-1) = 0
  P slope(T(1)); // f'(-1) = 1
  T pos(-1);
  for (std::size_t j = 0; j < cfg.size(); ++j) {
    f += slope * T(cfg.y[j] - pos);
    slope += z * f * cfg.g[j];
    pos = cfg.y[j];
  }
  f += slope * T(T(1) - pos);
  return f;
}

template Polynomial<double> characteristic_polynomial(const StringConfig<double>&);
template Polynomial<Rational> characteristic_polynomial(const StringConfig<Rational>&);

namespace {

double eval_p(const std::vector<double>& c, double z) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * z + c[i];
  return v;
}

double eval_dp(const std::vector<double>& c, double z) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 1;) v = v * z + static_cast<double>(i) * c[i];
  return v;
}

// |P(z)| relative to the size of its terms.
double relative_residual(const std::vector<double>& c, double z) {
  double scale = 0.0, zp = 1.0;
  for (double ci : c) {
    scale += std::fabs(ci * zp);
    zp *= z;
  }
  return scale == 0.0 ? 0.0 : std::fabs(eval_p(c, z)) / scale;
}

}  // namespace

std::vector<double> real_roots(const Polynomial<double>& p) {
  const int n = p.degree();
  if (n < 1) return {};
  const auto& c = p.coefficients();
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[i] / c[n];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw ConvergenceError("companion eigenvalue solver failed");

  std::vector<double> roots;
  for (int i = 0; i < n; ++i) {
    const std::complex<double> z = solver.eigenvalues()[i];
    if (std::fabs(z.imag()) > 1e-7 * std::max(1.0, std::abs(z))) continue;
    double x = z.real();
    for (int it = 0; it < 50 && relative_residual(c, x) > 1e-10; ++it) {
      const double d = eval_dp(c, x);
      if (d == 0.0) break;
      x -= eval_p(c, x) / d;
    }
    roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<double> string_eigenvalues(const StringConfig<double>& cfg) {
  const Polynomial<double> p = characteristic_polynomial(cfg);
  const std::size_t n = cfg.size();
  if (p.degree() != static_cast<int>(n)) {
    throw ConvergenceError("characteristic polynomial has degree " + std::to_string(p.degree()) + ", expected " +
                           std::to_string(n));
  }
  std::vector<double> roots = real_roots(p);
  if (roots.size() != n) {
    throw ConvergenceError("found " + std::to_string(roots.size()) + " real eigenvalues, expected " +
                           std::to_string(n));
  }
  return roots;
}

namespace {

using QPoly = Polynomial<Rational>;

std::vector<QPoly> sturm_chain(const QPoly& p) {
  std::vector<QPoly> chain{p, poly_diff(p)};
  while (!chain.back().zero()) {
    auto rem = divmod(chain[chain.size() - 2], chain.back()).second;
    if (rem.zero()) break;
    chain.push_back(-rem);
  }
  return chain;
}

int sign_changes(const std::vector<QPoly>& chain, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& q : chain) {
    const int s = sgn(q(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

std::vector<RootInterval> isolate_roots(const QPoly& p, const Rational& width) {
  if (p.degree() < 1) return {};
  const auto chain = sturm_chain(p);
  // Cauchy bound on |root|.
  Rational bound(0);
  for (int i = 0; i < p.degree(); ++i) bound = std::max(bound, Rational(abs(p.coefficient(i) / p.leading())));
  bound += 1;

  // Roots counted on half-open (lo, hi].
  auto count = [&](const Rational& lo, const Rational& hi) { return sign_changes(chain, lo) - sign_changes(chain, hi); };
  std::vector<RootInterval> out;
  std::function<void(Rational, Rational, int)> split = [&](Rational lo, Rational hi, int n) {
    if (n == 0) return;
    if (n == 1) {
      while (hi - lo > width) {
        if (sgn(p(hi)) == 0) break;
        Rational mid = (lo + hi) / 2;
        if (count(lo, mid) == 1)
          hi = mid;
        else
          lo = mid;
      }
      if (sgn(p(hi)) == 0) lo = hi;
      out.push_back({lo, hi});
      return;
    }
    const Rational mid = (lo + hi) / 2;
    const int left = count(lo, mid);
    split(lo, mid, left);
    split(mid, hi, n - left);
  };
  split(-bound, bound, count(-bound, bound));
  return out;
}

Rational simplest_rational(const Rational& lo, const Rational& hi) {
  if (lo > hi) return simplest_rational(hi, lo);
  if (sgn(lo) <= 0 && sgn(hi) >= 0) return Rational(0);
  if (sgn(hi) < 0) return -simplest_rational(-hi, -lo);
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (Rational(c) <= hi) return Rational(c);
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  Rational tail = simplest_rational(1 / (hi - f), 1 / (lo - f));
  Rational out = f + 1 / tail;
  out.canonicalize();
  return out;
}

std::vector<Rational> string_eigenvalues(const StringConfig<Rational>& cfg) {
  const QPoly p = characteristic_polynomial(cfg);
  const std::size_t n = cfg.size();
  if (p.degree() != static_cast<int>(n)) {
    throw ConvergenceError("characteristic polynomial has degree " + std::to_string(p.degree()) + ", expected " +
                           std::to_string(n));
  }
  // Scale to integer coefficients; a rational root p/q then has q dividing
  // the leading coefficient L, and distinct such roots are 1/L^2 apart.
  mpz_class lcm = 1;
  for (const auto& c : p.coefficients()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  const Rational lead = abs(p.leading() * lcm);
  const Rational width = 1 / (2 * lead * lead);

  const auto intervals = isolate_roots(p, width);
  if (intervals.size() != n) {
    throw ConvergenceError("found " + std::to_string(intervals.size()) + " distinct real eigenvalues, expected " +
                           std::to_string(n));
  }
  std::vector<Rational> roots;
  for (const auto& iv : intervals) {
    const Rational z = simplest_rational(iv.lo, iv.hi);
    if (sgn(p(z)) != 0) throw DomainError("eigenvalue near " + format_double(to_double(z)) + " is irrational");
    roots.push_back(z);
  }
  return roots;
}

std::vector<double> expected_eigenvalues(const MomentSystem& sys, double t) {
  std::vector<double> out;
  const double r = sys.params().r;
  for (const auto& mode : sys.modes()) {
    const double phi = r == 0.0 ? 1.0 : phi_value(mode, sys.params(), t);
    out.push_back(mode.lambda * phi);
  }
  std::sort(out.begin(), out.end());
  return out;
}

DriftReport drift_fit(const MomentSystem& sys, const std::vector<double>& times) {
  if (times.size() < 3) throw ParamError("drift fit needs at least three times");
  DriftReport rep;
  rep.expected_slope = sys.params().r == 0.0 ? 0.0 : -sys.params().r;
  rep.times = times;
  const std::size_t n = sys.size();
  for (double t : times) {
    const auto cfg = string_config(sys, t);
    if (!cfg.valid) {
      throw TurningPointError("string configuration invalid at t = " + format_double(t) + ": " + cfg.reason, t, t);
    }
    auto ev = string_eigenvalues(cfg);
    for (std::size_t j = 0; j + 1 < ev.size(); ++j) {
      if (ev[j + 1] - ev[j] < 1e-9) {
        throw BranchCrossingError("eigenvalues " + std::to_string(j + 1) + " and " + std::to_string(j + 2) +
                                  " are within 1e-9 at t = " + format_double(t));
      }
    }
    rep.eigenvalues.push_back(std::move(ev));
  }

  const double m = static_cast<double>(times.size());
  double tbar = 0.0;
  for (double t : times) tbar += t / m;
  double stt = 0.0;
  for (double t : times) stt += (t - tbar) * (t - tbar);
  if (stt == 0.0) throw ParamError("drift fit needs at least two distinct times");

  for (std::size_t j = 0; j < n; ++j) {
    double zbar = 0.0, stz = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) zbar += rep.eigenvalues[i][j] / m;
    for (std::size_t i = 0; i < times.size(); ++i) stz += (times[i] - tbar) * (rep.eigenvalues[i][j] - zbar);
    DriftBranch b;
    b.slope = stz / stt;
    b.intercept = zbar - b.slope * tbar;
    for (std::size_t i = 0; i < times.size(); ++i) {
      b.residual = std::max(b.residual, std::fabs(rep.eigenvalues[i][j] - (b.intercept + b.slope * times[i])));
    }
    rep.branches.push_back(b);
  }
  return rep;
}

}  // namespace gnch
