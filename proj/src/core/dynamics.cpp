#include "gnch/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace gnch {

Rates rhs_xm(const GnchParams& params, const PeakonState& state) {
  if (!state.valid) throw InvalidStateError("peak ODEs need a valid state: " + state.reason);
  const double r = params.r, s = params.s;
  Rates out;
  for (std::size_t j = 0; j < state.size(); ++j) {
    const double u = eval_u(state, state.x[j]);
    out.first.push_back((s + r) * u - r * tail_integral(state, j));
    out.second.push_back(-((s + r) * u_x_average(state, j) + r * u) * state.m[j]);
  }
  return out;
}

Rates rhs_yg(const GnchParams& params, const StringConfig<double>& cfg) {
  if (!cfg.valid) throw InvalidStateError("string ODEs need a valid configuration: " + cfg.reason);
  const double r = params.r, s = params.s;
  const std::size_t n = cfg.size();
  const auto& y = cfg.y;
  const auto& g = cfg.g;

  // left[j] = sum_{i<j} g_i (1+y_i)^2, right[j] = sum_{i>=j} g_i (1-y_i)^2,
  // mass[j] = sum_{i>=j} g_i (1-y_i^2).
  std::vector<double> left(n + 1, 0.0), right(n + 1, 0.0), mass(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) left[i + 1] = left[i] + g[i] * (1 + y[i]) * (1 + y[i]);
  for (std::size_t i = n; i-- > 0;) {
    right[i] = right[i + 1] + g[i] * (1 - y[i]) * (1 - y[i]);
    mass[i] = mass[i + 1] + g[i] * (1 - y[i]) * (1 + y[i]);
  }

  Rates out;
  for (std::size_t j = 0; j < n; ++j) {
    const double yj = y[j], gj = g[j];
    const double one_minus_sq = (1 - yj) * (1 + yj);
    out.first.push_back((r / 4 + s / 2) * (1 - yj) * (1 - yj) * left[j] +
                        (3 * r / 4 + s / 2) * (1 + yj) * (1 + yj) * right[j] - (r / 2) * one_minus_sq * mass[j]);
    out.second.push_back((r / 2 + s) * gj * (1 - yj) * left[j] - (3 * r / 2 + s) * gj * (1 + yj) * right[j + 1] -
                         r * gj * yj * mass[j + 1] + (r / 2 + s) * gj * gj * yj * one_minus_sq -
                         (r / 2) * gj * gj * one_minus_sq);
  }
  return out;
}

namespace {

using Vec = std::vector<double>;
using Field = std::function<Vec(double, const Vec&)>;

Vec axpy(const Vec& y, double h, const Vec& k) {
  Vec out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + h * k[i];
  return out;
}

Vec rk4_step(const Field& f, double t, const Vec& y, double h) {
  const Vec k1 = f(t, y);
  const Vec k2 = f(t + h / 2, axpy(y, h / 2, k1));
  const Vec k3 = f(t + h / 2, axpy(y, h / 2, k2));
  const Vec k4 = f(t + h, axpy(y, h, k3));
  Vec out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return out;
}

// Relative disagreement between one full step and two half steps above which
// the step is taken to have run into a singularity.
constexpr double kStepConsistency = 1e-3;
constexpr double kLocalizeWidth = 1e-10;  // width of the reported bracket

struct Stepper {
  Field field;
  std::function<bool(const Vec&)> admissible;

  // One step that must land on an admissible state consistent with two half
  // steps. Field evaluation errors count as failure.
  bool try_step(double t, const Vec& y, double h, Vec& out) const {
    try {
      Vec full = rk4_step(field, t, y, h);
      if (!admissible(full)) return false;
      const Vec half = rk4_step(field, t, y, h / 2);
      if (!admissible(half)) return false;
      const Vec two = rk4_step(field, t + h / 2, half, h / 2);
      if (!admissible(two)) return false;
      for (std::size_t i = 0; i < full.size(); ++i) {
        if (std::fabs(full[i] - two[i]) > kStepConsistency * std::max(1.0, std::fabs(two[i]))) return false;
      }
      out = std::move(full);
      return true;
    } catch (const Error&) {
      return false;
    }
  }

  // Called once try_step failed from (t, y) over h. Substeps adaptively
  // toward t + h; if the far end is reached the step was only stiff and the
  // state there is returned. Otherwise the substep collapses against the
  // singular time and TurningPointError is thrown with the bracket.
  Vec rescue(double t, Vec y, double h) const {
    const double end = t + h;
    double sub = h / 2;
    while (true) {
      const double remaining = end - t;
      if (std::fabs(sub) >= std::fabs(remaining)) sub = remaining;
      Vec next;
      if (try_step(t, y, sub, next)) {
        t = std::fabs(sub) == std::fabs(remaining) ? end : t + sub;
        y = std::move(next);
        if (t == end) return y;
        sub *= 2;
      } else if (std::fabs(sub) > kLocalizeWidth / 100) {
        sub /= 2;
      } else {
        const double hi = t + 100 * sub;
        throw TurningPointError(
            "state degenerates between t = " + format_double(t) + " and t = " + format_double(hi), t, hi);
      }
    }
  }

  template <class Emit>
  void run(Vec y, const OdeSettings& settings, Emit&& emit) const {
    if (settings.steps == 0) throw ParamError("step count must be at least 1");
    const double h = (settings.t1 - settings.t0) / static_cast<double>(settings.steps);
    emit(settings.t0, y);
    for (std::size_t i = 0; i < settings.steps; ++i) {
      const double t = settings.t0 + h * static_cast<double>(i);
      Vec next;
      if (!try_step(t, y, h, next)) next = rescue(t, y, h);
      y = std::move(next);
      emit(i + 1 == settings.steps ? settings.t1 : settings.t0 + h * static_cast<double>(i + 1), y);
    }
  }
};

bool finite_and_ordered(const Vec& v, std::size_t n) {
  for (double d : v)
    if (!std::isfinite(d)) return false;
  for (std::size_t j = 0; j + 1 < n; ++j)
    if (!(v[j] < v[j + 1])) return false;
  for (std::size_t j = n; j < 2 * n; ++j)
    if (v[j] == 0.0) return false;
  return true;
}

PeakonState unpack_peaks(double t, const Vec& v, std::size_t n) {
  PeakonState st;
  st.t = t;
  st.x.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
  st.m.assign(v.begin() + static_cast<std::ptrdiff_t>(n), v.end());
  st.valid = true;
  return st;
}

StringConfig<double> unpack_string(double t, const Vec& v, std::size_t n) {
  StringConfig<double> cfg;
  cfg.t = t;
  cfg.y.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
  cfg.g.assign(v.begin() + static_cast<std::ptrdiff_t>(n), v.end());
  cfg.valid = true;
  return cfg;
}

}  // namespace

Trajectory integrate(const GnchParams& params, const PeakonState& initial, const OdeSettings& settings) {
  if (!initial.valid) throw InvalidStateError("initial state is not valid: " + initial.reason);
  const std::size_t n = initial.size();
  Stepper stepper{
      [&](double t, const Vec& v) {
        const Rates d = rhs_xm(params, unpack_peaks(t, v, n));
        Vec out = d.first;
        out.insert(out.end(), d.second.begin(), d.second.end());
        return out;
      },
      [n](const Vec& v) { return finite_and_ordered(v, n); }};
  Vec y = initial.x;
  y.insert(y.end(), initial.m.begin(), initial.m.end());
  Trajectory traj;
  stepper.run(std::move(y), settings, [&](double t, const Vec& v) { traj.push_back({t, unpack_peaks(t, v, n)}); });
  return traj;
}

StringTrajectory integrate(const GnchParams& params, const StringConfig<double>& initial,
                           const OdeSettings& settings) {
  if (!initial.valid) throw InvalidStateError("initial configuration is not valid: " + initial.reason);
  const std::size_t n = initial.size();
  Stepper stepper{
      [&](double t, const Vec& v) {
        const Rates d = rhs_yg(params, unpack_string(t, v, n));
        Vec out = d.first;
        out.insert(out.end(), d.second.begin(), d.second.end());
        return out;
      },
      [n](const Vec& v) {
        if (!finite_and_ordered(v, n)) return false;
        return v.front() > -1.0 && v[n - 1] < 1.0;
      }};
  Vec y = initial.y;
  y.insert(y.end(), initial.g.begin(), initial.g.end());
  StringTrajectory traj;
  stepper.run(std::move(y), settings, [&](double t, const Vec& v) { traj.push_back({t, unpack_string(t, v, n)}); });
  return traj;
}

DeviationReport compare_closed_form(const MomentSystem& sys, const OdeSettings& settings) {
  const PeakonState start = peakon_state(sys, settings.t0);
  if (!start.valid) {
    throw TurningPointError("closed form is degenerate at t0: " + start.reason, settings.t0, settings.t0);
  }
  const Trajectory traj = integrate(sys.params(), start, settings);
  DeviationReport rep;
  rep.n_steps = settings.steps;
  rep.t0 = settings.t0;
  rep.t1 = settings.t1;
  double last_valid = settings.t0;
  for (const auto& sample : traj) {
    const PeakonState ref = peakon_state(sys, sample.t);
    if (!ref.valid) {
      throw TurningPointError("closed form degenerates at t = " + format_double(sample.t) + ": " + ref.reason,
                              last_valid, sample.t);
    }
    last_valid = sample.t;
    for (std::size_t j = 0; j < ref.size(); ++j) {
      rep.max_dev_x = std::max(rep.max_dev_x, std::fabs(sample.state.x[j] - ref.x[j]) / std::max(1.0, std::fabs(ref.x[j])));
      rep.max_dev_m = std::max(rep.max_dev_m, std::fabs(sample.state.m[j] - ref.m[j]) / std::max(1.0, std::fabs(ref.m[j])));
    }
  }
  return rep;
}

}  // namespace gnch
