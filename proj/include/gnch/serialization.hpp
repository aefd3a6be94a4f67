#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gnch/dynamics.hpp"
#include "gnch/figures.hpp"
#include "gnch/identities.hpp"
#include "gnch/spectral.hpp"

namespace gnch {

// Moment systems: {"r":, "s":, "modes": [{"lambda":, "a0":}]}. Exact systems
// write every value as a "p/q" string and carry "phi0" per mode. Readers
// accept numbers or strings; an exact reader accepts "a0" only when it is 0.
std::string to_json(const MomentSystem& sys);
std::string to_json(const ExactMomentSystem& sys);
MomentSystem system_from_json(std::string_view text);
ExactMomentSystem exact_system_from_json(std::string_view text);

// {"t":, "x": [...], "m": [...], "valid":, "reason":}
std::string to_json(const PeakonState& state);
PeakonState state_from_json(std::string_view text);

// Exact states add "exp2x"; t, m and exp2x are "p/q" strings, x is the float approximation.
std::string to_json(const ExactPeakonState& state);

// "t,x1..xN,m1..mN", one row per sample.
std::string trajectory_to_csv(const Trajectory& traj);
Trajectory trajectory_from_csv(std::string_view text);

// Evaluation sweep "t,x1..xN,m1..mN,valid"; invalid rows carry nan values and valid=0.
std::string sweep_to_csv(const std::vector<PeakonState>& states, std::size_t n);
std::string sweep_to_csv(const std::vector<ExactPeakonState>& states, std::size_t n);
std::vector<PeakonState> sweep_from_csv(std::string_view text);

// {"max_dev_x":, "max_dev_m":, "n_steps":, "t_range": [t0, t1]}
std::string to_json(const DeviationReport& rep);
DeviationReport deviation_from_json(std::string_view text);

// {"branches": [{"slope":, "intercept":, "residual":}], "expected_slope":}
std::string to_json(const DriftReport& rep);
DriftReport drift_from_json(std::string_view text);

// [{"identity":, "k":, "l":, "residual":}]; exact zero residuals print "0(exact)".
std::string to_json(const ResidualReport<double>& rep);
std::string to_json(const ResidualReport<Rational>& rep);
std::string to_json(const ResidualReport<Polynomial<Rational>>& rep);

std::string to_json(const BatteryReport& rep);

// "x,u" rows.
std::string profile_to_csv(const std::vector<std::pair<double, double>>& profile);
std::vector<std::pair<double, double>> profile_from_csv(std::string_view text);

// "t,x,u" rows, frame after frame.
std::string frames_to_csv(const std::vector<FigureFrame>& frames);

std::string format_polynomial(const Polynomial<Rational>& p);

}  // namespace gnch
