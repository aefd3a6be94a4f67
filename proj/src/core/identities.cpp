#include "gnch/identities.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace gnch {

namespace identity {
std::vector<std::string> all() {
  std::vector<std::string> names = {kHankelProduct, kHankelRank,  kOffsetProductL0, kOffsetProduct,
                                    kOffsetRankL0,  kOffsetRank,  kOffsetShifted};
  for (const char* n : kJacobi) names.emplace_back(n);
  for (const char* n : kTelescoping) names.emplace_back(n);
  for (const char* n : kCombined) names.emplace_back(n);
  names.emplace_back(kMomentLaw);
  for (const char* n : kDeltaRate) names.emplace_back(n);
  return names;
}
}  // namespace identity

namespace {

const char* rate_name(int l) { return identity::kDeltaRate[std::min(l, 2)]; }

}  // namespace

ResidualReport<Polynomial<Rational>> check_delta_derivatives(const ExactMomentSystem& sys, int k, int l) {
  if (k < 0 || l < 0) throw IndexError("derivative rules are stated for k >= 0, l >= 0");
  using Poly = Polynomial<Rational>;
  const int kmax = std::max(l + 2 * k, 2 * k + 2);
  HankelTable<Poly> tbl(moment_polynomial_sequence(sys, -1, kmax));
  const Rational& r = sys.r();
  const Rational& s = sys.s();

  const Poly lhs = poly_diff(tbl.delta(k, l));
  Poly rhs;
  if (l == 0) {
    rhs = Rational(r + 2 * s) * tbl.gee(k, -1) + Rational(2 * r + 2 * s) * tbl.gee(k - 1, 1);
  } else if (l == 1) {
    rhs = Rational(2 * r + 2 * s) * tbl.gee(k, 0) - Rational(r + s) * tbl.delta(k - 1, 3);
  } else {
    rhs = Rational(r * (l + 1) + 2 * s) * tbl.gee(k, l - 1);
  }
  return {{rate_name(l), k, l, lhs - rhs}};
}

ResidualReport<double> check_delta_derivatives(const MomentSystem& sys, int k, int l, double t) {
  if (k < 0 || l < 0) throw IndexError("derivative rules are stated for k >= 0, l >= 0");
  const int kmax = std::max(l + 2 * k, 2 * k + 2);
  const auto values = moment_sequence(sys, t, -1, kmax);
  const auto rates = moment_rate_sequence(sys, t, -1, kmax);
  HankelTable<double> tbl(values);

  // d/dt det = sum over columns of det with that column differentiated.
  double lhs = 0.0;
  const auto n = static_cast<std::size_t>(k);
  for (std::size_t col = 0; col < n; ++col) {
    lhs += det(Matrix<double>::generate(n, [&](std::size_t i, std::size_t j) {
      const int idx = l + static_cast<int>(i + j);
      return j == col ? rates(idx) : values(idx);
    }));
  }
  const double r = sys.params().r;
  const double s = sys.params().s;
  double rhs;
  if (l == 0) {
    rhs = (r + 2 * s) * tbl.gee(k, -1) + (2 * r + 2 * s) * tbl.gee(k - 1, 1);
  } else if (l == 1) {
    rhs = (2 * r + 2 * s) * tbl.gee(k, 0) - (r + s) * tbl.delta(k - 1, 3);
  } else {
    rhs = (r * (l + 1) + 2 * s) * tbl.gee(k, l - 1);
  }
  return {{rate_name(l), k, l, lhs - rhs}};
}

namespace {

class TrialRng {
 public:
  explicit TrialRng(std::uint64_t seed) : gen_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

  Rational rational(bool nonzero = true, bool positive = false) {
    for (;;) {
      const int num = positive ? uniform(1, 9) : uniform(-9, 9);
      if (nonzero && num == 0) continue;
      Rational q(num, uniform(1, 6));
      q.canonicalize();
      return q;
    }
  }

  std::vector<Rational> distinct(std::size_t n, bool positive) {
    std::vector<Rational> out;
    while (out.size() < n) {
      Rational q = rational(true, positive);
      if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
    }
    return out;
  }

  std::vector<PowerMode<Rational>> modes(std::size_t n, bool positive) {
    std::vector<PowerMode<Rational>> out;
    for (const auto& node : distinct(n, positive)) out.push_back({rational(true, positive), node});
    return out;
  }

  ElementSeq<Rational> arbitrary(int kmin, int kmax) {
    return ElementSeq<Rational>::generate(kmin, kmax, [&](int) { return rational(false); });
  }

 private:
  std::mt19937_64 gen_;
};

class Tally {
 public:
  Tally() {
    for (const auto& name : identity::all()) {
      order_.push_back(name);
      counts_[name] = {name, 0, 0};
    }
  }

  template <class T>
  void record(const ResidualReport<T>& report, std::size_t trial, const ElementSeq<Rational>* elements,
              BatteryReport& out) {
    for (const auto& r : report) {
      auto& c = counts_.at(r.identity);
      ++c.checked;
      if (is_zero(r.value)) {
        ++c.passed;
        continue;
      }
      if (out.first_failure) continue;
      BatteryFailure f;
      f.identity = r.identity;
      f.trial = trial;
      f.k = r.k;
      f.l = r.l;
      if (elements) {
        f.element_kmin = elements->kmin();
        for (const auto& v : elements->values()) f.elements.push_back(format_rational(v));
      }
      f.residual = describe(r.value);
      out.first_failure = std::move(f);
    }
  }

  std::vector<IdentityTally> result() const {
    std::vector<IdentityTally> out;
    for (const auto& name : order_) out.push_back(counts_.at(name));
    return out;
  }

 private:
  static std::string describe(const Rational& v) { return format_rational(v); }
  static std::string describe(const Polynomial<Rational>& p) {
    std::string s = "poly[";
    for (std::size_t i = 0; i < p.coefficients().size(); ++i) {
      if (i) s += ", ";
      s += format_rational(p.coefficients()[i]);
    }
    return s + "]";
  }

  std::vector<std::string> order_;
  std::map<std::string, IdentityTally> counts_;
};

}  // namespace

BatteryReport run_identity_battery(const BatteryOptions& opts) {
  if (opts.max_n < 1) throw ParamError("max_n must be at least 1");
  if (opts.max_k < 0) throw ParamError("max_k must be non-negative");
  TrialRng rng(opts.seed);
  Tally tally;
  BatteryReport out;
  out.trials = opts.trials;
  const int max_n = static_cast<int>(opts.max_n);
  const Rational half(1, 2);

  for (std::size_t trial = 0; trial < opts.trials; ++trial) {
    // Plain power sums: product formula and rank bound.
    {
      const int n = rng.uniform(1, max_n);
      const int l = rng.uniform(-2, 3);
      const auto modes = rng.modes(static_cast<std::size_t>(n), false);
      auto els = power_sum_sequence(modes, l, l + 2 * (n + 2) - 2);
      if (opts.inject_fault && trial == 0) els.at(l) += 1;
      tally.record(check_vandermonde(els, modes, l), trial, &els, out);
    }
    // Power sums with the b_0 = 1/2, mu_0 = 0 mode.
    {
      const int n = rng.uniform(1, max_n);
      const int l = rng.uniform(1, 3);
      const int k = n + rng.uniform(1, 2);
      const auto modes = rng.modes(static_cast<std::size_t>(n), false);
      const auto els = power_sum_sequence(modes, -1, 2 * k + l + 2, half);
      tally.record(check_offset_identities(els, modes, l, k), trial, &els, out);
    }
    // Bilinear relations on an arbitrary sequence.
    {
      const int k = rng.uniform(-1, opts.max_k);
      const int l = rng.uniform(-1, 3);
      const auto els = rng.arbitrary(l - 1, l + 2 * std::max(k, 0) + 3);
      tally.record(check_bilinear(HankelTable<Rational>(els), k, l), trial, &els, out);
    }
    // Telescoping sums; positive weights and nodes keep delta(j, 1) nonzero.
    {
      const int n = rng.uniform(1, max_n);
      const int k = rng.uniform(0, n - 1);
      const auto modes = rng.modes(static_cast<std::size_t>(n), true);
      const auto els = power_sum_sequence(modes, -1, 2 * n + 2, half);
      tally.record(check_sums(HankelTable<Rational>(els), n, k), trial, &els, out);
    }
    // Combined relations on an arbitrary sequence.
    {
      const int k = rng.uniform(0, opts.max_k);
      const auto els = rng.arbitrary(-1, 2 * k + 3);
      tally.record(check_combined(HankelTable<Rational>(els), k), trial, &els, out);
    }
    // Moment law and derivative rules on a random polynomial-moment system.
    {
      const int n = rng.uniform(1, std::min(max_n, 3));
      const Rational r = rng.rational();
      const Rational s = Rational(rng.uniform(0, 2)) * r / 2;
      std::vector<ExactMode> modes;
      for (const auto& lambda : rng.distinct(static_cast<std::size_t>(n), false))
        modes.push_back({lambda, rng.rational()});
      const ExactMomentSystem sys(r, s, modes);
      const int kk = rng.uniform(0, 5);
      tally.record(ResidualReport<Polynomial<Rational>>{{identity::kMomentLaw, kk, 0,
                                                         moment_derivative_residual(sys, kk)}},
                   trial, nullptr, out);
      const int k = rng.uniform(1, n + 1);
      const int l = rng.uniform(0, 3);
      tally.record(check_delta_derivatives(sys, k, l), trial, nullptr, out);
    }
  }
  out.tallies = tally.result();
  return out;
}

}  // namespace gnch
