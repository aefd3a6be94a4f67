#pragma once

#include <cstddef>
#include <vector>

#include "gnch/peakon.hpp"

namespace gnch {

/// Fixed-step classical RK4 over [t0, t1]; t1 < t0 integrates backwards.
struct OdeSettings {
  std::size_t steps = 1024;
  double t0 = 0.0;
  double t1 = 1.0;
};

template <class State>
struct TrajectorySample {
  double t;
  State state;
};

/// Samples at t0 and after every step; times strictly monotone, all states valid.
using Trajectory = std::vector<TrajectorySample<PeakonState>>;
using StringTrajectory = std::vector<TrajectorySample<StringConfig<double>>>;

struct Rates {
  std::vector<double> first;   // dx/dt or dy/dt
  std::vector<double> second;  // dm/dt or dg/dt
};

/// Peak ODEs:
///   dx_j/dt = (s+r) u(x_j) - r * int_{x_j}^inf u dx
///   dm_j/dt = -[(s+r) <u_x(x_j)> + r u(x_j)] m_j
Rates rhs_xm(const GnchParams& params, const PeakonState& state);

/// The same system in string variables y = tanh x, g = m / (1 - y^2).
Rates rhs_yg(const GnchParams& params, const StringConfig<double>& cfg);

/// Integrates the peak ODEs. After each step the new state must be finite,
/// ordered, with nonzero amplitudes, and a full step must agree with two half
/// steps. A failing step is retried with adaptive substeps; if those collapse
/// below 1e-12 in t, TurningPointError carries a bracket of width 1e-10.
Trajectory integrate(const GnchParams& params, const PeakonState& initial, const OdeSettings& settings);

/// Integrates the string-variable ODEs with the same validity policy.
StringTrajectory integrate(const GnchParams& params, const StringConfig<double>& initial,
                           const OdeSettings& settings);

struct DeviationReport {
  double max_dev_x = 0.0;
  double max_dev_m = 0.0;
  std::size_t n_steps = 0;
  double t0 = 0.0;
  double t1 = 0.0;

  double max_dev() const { return max_dev_x > max_dev_m ? max_dev_x : max_dev_m; }
};

/// Integrates from the closed-form state at t0 and reports, over every step,
/// the largest deviation |numeric - closed| / max(1, |closed|) in x and in m.
/// TurningPointError if the closed form degenerates inside the window.
DeviationReport compare_closed_form(const MomentSystem& sys, const OdeSettings& settings);

}  // namespace gnch
