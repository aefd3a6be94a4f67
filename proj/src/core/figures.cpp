#include "gnch/figures.hpp"

namespace gnch {

FigureSpec figure_spec(int id) {
  const GnchParams mixed = preset_params("mixed");
  switch (id) {
    case 1:
      return {1, MomentSystem(mixed, {{1.0, 0.0}}), {-0.5, 0.0, 0.5, 1.0}};
    case 2:
      return {2, MomentSystem(mixed, {{1.0, 0.0}, {-1.0, 0.0}}), {-0.5, -0.125, 0.125, 0.5}};
    default:
      throw ParamError("unknown figure " + std::to_string(id) + " (expected 1 or 2)");
  }
}

std::vector<FigureFrame> figure_frames(const FigureSpec& spec, double x0, double x1, std::size_t n) {
  std::vector<FigureFrame> frames;
  for (double t : spec.times) {
    FigureFrame f;
    f.t = t;
    f.state = peakon_state(spec.system, t);
    if (f.state.valid) f.profile = sample_profile(f.state, x0, x1, n, true);
    frames.push_back(std::move(f));
  }
  return frames;
}

std::vector<std::pair<double, double>> profile_extrema(const std::vector<std::pair<double, double>>& profile) {
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 1; i + 1 < profile.size(); ++i) {
    const double a = profile[i - 1].second, b = profile[i].second, c = profile[i + 1].second;
    if ((b > a && b > c) || (b < a && b < c)) out.push_back(profile[i]);
  }
  return out;
}

}  // namespace gnch
