#include "doctest.h"
#include "gnch/figures.hpp"
#include "support.hpp"

using namespace gnch;
using namespace testsupport;

TEST_SUITE("figures") {
  TEST_CASE("figure definitions") {
    const auto f1 = figure_spec(1);
    CHECK(f1.system.size() == 1);
    CHECK(f1.times == std::vector<double>{-0.5, 0, 0.5, 1});
    const auto f2 = figure_spec(2);
    CHECK(f2.system.size() == 2);
    CHECK(f2.times == std::vector<double>{-0.5, -0.125, 0.125, 0.5});
    CHECK_THROWS_AS(figure_spec(3), ParamError);
  }

  TEST_CASE("one peakon frames peak where the closed form says") {
    for (const auto& frame : figure_frames(figure_spec(1))) {
      REQUIRE(frame.state.valid);
      const auto ext = profile_extrema(frame.profile);
      REQUIRE(ext.size() == 1);
      CHECK(std::fabs(ext[0].first - one_peakon_x(frame.t)) <= 1e-10);
      CHECK(std::fabs(ext[0].second - one_peakon_m(frame.t) / 2) <= 1e-10);
      CHECK(frame.profile.size() == 1202);
    }
    const auto last = figure_frames(figure_spec(1)).back();
    CHECK(profile_extrema(last.profile)[0].second == doctest::Approx(1.0 / 3));
  }

  TEST_CASE("two peakon frames") {
    const auto frames = figure_frames(figure_spec(2));
    for (const auto& frame : frames) {
      REQUIRE(frame.state.valid);
      const auto w = two_peakon(frame.t);
      const PeakGeometry cf{{w.x1, w.x2}, {w.m1, w.m2}};
      const auto match = match_extrema(profile_extrema(frame.profile), cf, 0.01);
      CHECK(match.all_accounted);
      CHECK(match.peaks >= 1);
      CHECK(match.worst_peak <= 1e-10);
    }
    const auto& half = frames.back();
    CHECK(half.state.m[0] == doctest::Approx(41.0 / 21));
    CHECK(half.state.m[1] == doctest::Approx(5.0 / 7));
    const auto& neg = frames[1];
    CHECK(neg.state.m[0] > 0);
    CHECK(neg.state.m[1] < 0);
  }

  TEST_CASE("extrema detection") {
    CHECK(profile_extrema({{0, 0}, {1, 1}, {2, 0}, {3, -1}, {4, 0}}).size() == 2);
    CHECK(profile_extrema({{0, 0}, {1, 1}}).empty());
  }
}
