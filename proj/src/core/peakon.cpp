#include "gnch/peakon.hpp"

#include <algorithm>
#include <cmath>

namespace gnch {

namespace {

// Float reconstruction declares a ratio degenerate once the denominator is
// this small relative to the numerator.
constexpr double kDenominatorFloor = 1e-13;
constexpr double kOrderingSlack = 1e-12;

bool usable_denominator(const Rational& /*num*/, const Rational& den) { return sgn(den) != 0; }

bool usable_denominator(double num, double den) {
  return den != 0.0 && std::isfinite(den) && std::isfinite(num) && std::fabs(den) > kDenominatorFloor * std::fabs(num);
}

bool strictly_less(const Rational& a, const Rational& b) { return a < b; }
bool strictly_less(double a, double b) { return b - a > kOrderingSlack; }

bool finite_nonzero(const Rational& v) { return sgn(v) != 0; }
bool finite_nonzero(double v) { return std::isfinite(v) && v != 0.0; }

std::string delta_name(int k, int l) { return "delta(" + std::to_string(k) + "," + std::to_string(l) + ")"; }

}  // namespace

template <class T>
StringConfig<T> string_config_from_moments(const ElementSeq<T>& moments, std::size_t n, const T& t) {
  HankelTable<T> tbl(moments);
  StringConfig<T> cfg;
  cfg.t = t;
  cfg.y.assign(n, T(0));
  cfg.g.assign(n, T(0));
  cfg.valid = true;
  const int nn = static_cast<int>(n);

  for (int j = 1; j <= nn; ++j) {
    const int k = nn - j;
    const T d0 = tbl.delta(k + 1, 0);
    const T d2 = tbl.delta(k, 2);
    const T d1_hi = tbl.delta(k + 1, 1);
    const T d1_lo = tbl.delta(k, 1);
    const T g_num = d0 * d0;
    const T g_den = d1_hi * d1_lo;
    const auto idx = static_cast<std::size_t>(j - 1);
    if (!usable_denominator(d2, d0)) {
      cfg.valid = false;
      if (cfg.reason.empty()) cfg.reason = delta_name(k + 1, 0) + " vanishes";
      continue;
    }
    cfg.y[idx] = T(1) - d2 / d0;
    if (!usable_denominator(g_num, g_den)) {
      cfg.valid = false;
      if (cfg.reason.empty()) {
        cfg.reason = (is_zero(d1_hi) || !usable_denominator(g_num, d1_hi) ? delta_name(k + 1, 1) : delta_name(k, 1)) +
                     " vanishes";
      }
      continue;
    }
    cfg.g[idx] = g_num / g_den;
    if (!finite_nonzero(cfg.g[idx]) && cfg.reason.empty()) {
      cfg.valid = false;
      cfg.reason = "g_" + std::to_string(j) + " is zero or not finite";
    }
  }
  if (!cfg.valid) return cfg;

  const T lower(-1);
  const T upper(1);
  if (!strictly_less(lower, cfg.y.front())) {
    cfg.valid = false;
    cfg.reason = "y_1 reached the left end of the string";
  } else if (!strictly_less(cfg.y.back(), upper)) {
    cfg.valid = false;
    cfg.reason = "y_N reached the right end of the string";
  } else {
    for (std::size_t j = 0; j + 1 < n; ++j) {
      if (!strictly_less(cfg.y[j], cfg.y[j + 1])) {
        cfg.valid = false;
        cfg.reason = "y_" + std::to_string(j + 1) + " and y_" + std::to_string(j + 2) + " are not ordered";
        break;
      }
    }
  }
  return cfg;
}

template StringConfig<double> string_config_from_moments(const ElementSeq<double>&, std::size_t, const double&);
template StringConfig<Rational> string_config_from_moments(const ElementSeq<Rational>&, std::size_t,
                                                           const Rational&);

StringConfig<double> string_config(const MomentSystem& sys, double t) {
  const int n = static_cast<int>(sys.size());
  StringConfig<double> cfg;
  try {
    return string_config_from_moments(moment_sequence(sys, t, 0, 2 * n), sys.size(), t);
  } catch (const DomainError& e) {
    cfg.t = t;
    cfg.reason = e.what();
    return cfg;
  }
}

StringConfig<Rational> string_config(const ExactMomentSystem& sys, const Rational& t) {
  const int n = static_cast<int>(sys.size());
  StringConfig<Rational> cfg;
  try {
    return string_config_from_moments(moment_sequence(sys, t, 0, 2 * n), sys.size(), t);
  } catch (const DomainError& e) {
    cfg.t = t;
    cfg.reason = e.what();
    return cfg;
  }
}

PeakonState peakon_state(const StringConfig<double>& cfg) {
  PeakonState st;
  st.t = cfg.t;
  st.valid = cfg.valid;
  st.reason = cfg.reason;
  st.x.assign(cfg.size(), 0.0);
  st.m.assign(cfg.size(), 0.0);
  if (!cfg.valid) return st;
  for (std::size_t j = 0; j < cfg.size(); ++j) {
    const double y = cfg.y[j];
    st.x[j] = 0.5 * std::log((1.0 + y) / (1.0 - y));
    st.m[j] = cfg.g[j] * (1.0 - y) * (1.0 + y);
  }
  for (std::size_t j = 0; j + 1 < st.size(); ++j) {
    if (!(st.x[j] < st.x[j + 1])) {
      st.valid = false;
      st.reason = "positions are not strictly increasing";
    }
  }
  return st;
}

PeakonState peakon_state(const MomentSystem& sys, double t) { return peakon_state(string_config(sys, t)); }

ExactPeakonState peakon_state(const StringConfig<Rational>& cfg) {
  ExactPeakonState st;
  st.t = cfg.t;
  st.valid = cfg.valid;
  st.reason = cfg.reason;
  st.exp2x.assign(cfg.size(), Rational(0));
  st.m.assign(cfg.size(), Rational(0));
  if (!cfg.valid) return st;
  for (std::size_t j = 0; j < cfg.size(); ++j) {
    const Rational& y = cfg.y[j];
    st.exp2x[j] = (1 + y) / (1 - y);
    st.m[j] = cfg.g[j] * (1 - y) * (1 + y);
  }
  return st;
}

ExactPeakonState peakon_state(const ExactMomentSystem& sys, const Rational& t) {
  return peakon_state(string_config(sys, t));
}

PeakonState ExactPeakonState::approx() const {
  PeakonState st;
  st.t = to_double(t);
  st.valid = valid;
  st.reason = reason;
  for (std::size_t j = 0; j < size(); ++j) {
    st.x.push_back(valid ? 0.5 * std::log(to_double(exp2x[j])) : 0.0);
    st.m.push_back(to_double(m[j]));
  }
  return st;
}

StringConfig<double> to_string_config(const PeakonState& state) {
  StringConfig<double> cfg;
  cfg.t = state.t;
  cfg.valid = state.valid;
  cfg.reason = state.reason;
  for (std::size_t j = 0; j < state.size(); ++j) {
    const double y = std::tanh(state.x[j]);
    cfg.y.push_back(y);
    cfg.g.push_back(state.m[j] / ((1.0 - y) * (1.0 + y)));
  }
  return cfg;
}

double eval_u(const PeakonState& state, double x) {
  double u = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) u += state.m[i] * std::exp(-2.0 * std::fabs(x - state.x[i]));
  return 0.5 * u;
}

namespace {

double neighbour_slope(const PeakonState& state, std::size_t j) {
  double s = 0.0;
  for (std::size_t i = 0; i < j; ++i) s -= state.m[i] * std::exp(2.0 * (state.x[i] - state.x[j]));
  for (std::size_t i = j + 1; i < state.size(); ++i) s += state.m[i] * std::exp(2.0 * (state.x[j] - state.x[i]));
  return s;
}

void require_index(std::size_t j, std::size_t n) {
  if (j >= n) throw IndexError("peak index " + std::to_string(j) + " out of range for N = " + std::to_string(n));
}

}  // namespace

double u_x_average(const PeakonState& state, std::size_t j) {
  require_index(j, state.size());
  return neighbour_slope(state, j);
}

std::pair<double, double> u_x_one_sided(const PeakonState& state, std::size_t j) {
  require_index(j, state.size());
  const double s = neighbour_slope(state, j);
  return {s + state.m[j], s - state.m[j]};
}

std::pair<Rational, Rational> u_x_one_sided(const ExactPeakonState& state, std::size_t j) {
  require_index(j, state.size());
  Rational s(0);
  for (std::size_t i = 0; i < j; ++i) s -= state.m[i] * state.exp2x[i] / state.exp2x[j];
  for (std::size_t i = j + 1; i < state.size(); ++i) s += state.m[i] * state.exp2x[j] / state.exp2x[i];
  return {Rational(s + state.m[j]), Rational(s - state.m[j])};
}

Rational u_at_peak(const ExactPeakonState& state, std::size_t j) {
  require_index(j, state.size());
  Rational u(0);
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (i < j) {
      u += state.m[i] * state.exp2x[i] / state.exp2x[j];
    } else if (i > j) {
      u += state.m[i] * state.exp2x[j] / state.exp2x[i];
    } else {
      u += state.m[i];
    }
  }
  return u / 2;
}

double tail_integral(const PeakonState& state, std::size_t j) {
  require_index(j, state.size());
  double a = 0.0, b = 0.0, c = 0.0;
  for (std::size_t i = j; i < state.size(); ++i) {
    a += state.m[i];
    c += state.m[i] * std::exp(2.0 * (state.x[j] - state.x[i]));
  }
  for (std::size_t i = 0; i < j; ++i) b += state.m[i] * std::exp(2.0 * (state.x[i] - state.x[j]));
  return 0.5 * a + 0.25 * b - 0.25 * c;
}

double hamiltonian(const PeakonState& state) {
  double h = 0.0;
  for (std::size_t j = 0; j < state.size(); ++j)
    for (std::size_t k = 0; k < state.size(); ++k)
      h += state.m[j] * state.m[k] * std::exp(-2.0 * std::fabs(state.x[j] - state.x[k]));
  return 0.25 * h;
}

std::vector<std::pair<double, double>> sample_profile(const PeakonState& state, double x0, double x1,
                                                      std::size_t n, bool include_peaks) {
  if (n == 0) throw ParamError("a space grid needs at least one point");
  std::vector<double> xs;
  xs.reserve(n + state.size());
  for (std::size_t i = 0; i < n; ++i) {
    xs.push_back(n == 1 ? x0 : x0 + (x1 - x0) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  if (include_peaks && state.valid) {
    const double lo = std::min(x0, x1), hi = std::max(x0, x1);
    for (double xp : state.x)
      if (xp >= lo && xp <= hi) xs.push_back(xp);
    std::sort(xs.begin(), xs.end());
    if (x1 < x0) std::reverse(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  }
  std::vector<std::pair<double, double>> out;
  out.reserve(xs.size());
  for (double x : xs) out.emplace_back(x, state.valid ? eval_u(state, x) : 0.0);
  return out;
}

}  // namespace gnch
