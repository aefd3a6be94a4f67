#pragma once

#include <utility>
#include <vector>

#include "gnch/peakon.hpp"

namespace gnch {

struct FigureSpec {
  int id = 1;
  MomentSystem system;
  std::vector<double> times;
};

/// Figure 1: mixed parameters, lambda = 1, a0 = 0, t in {-0.5, 0, 0.5, 1}.
/// Figure 2: mixed parameters, lambda = (1, -1), a0 = (0, 0),
/// t in {-0.5, -0.125, 0.125, 0.5}. ParamError for any other id.
FigureSpec figure_spec(int id);

struct FigureFrame {
  double t = 0.0;
  PeakonState state;
  std::vector<std::pair<double, double>> profile;  // (x, u)
};

/// Profiles on [x0, x1] with n points plus the peak positions.
std::vector<FigureFrame> figure_frames(const FigureSpec& spec, double x0 = -6.0, double x1 = 6.0, std::size_t n = 1201);

/// Interior local extrema of a sampled profile, as (x, u) pairs: points
/// strictly above (or below) both neighbours.
std::vector<std::pair<double, double>> profile_extrema(const std::vector<std::pair<double, double>>& profile);

}  // namespace gnch
