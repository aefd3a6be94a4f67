#include <array>

#include "doctest.h"
#include "gnch/dynamics.hpp"
#include "support.hpp"

using namespace gnch;
using namespace testsupport;

namespace {

const GnchParams kMixed{4, 2};
const GnchParams kCh{0, 1};

PeakonState random_state(Gen& g, int n) {
  PeakonState st;
  double x = g.real(-2, -1);
  for (int j = 0; j < n; ++j) {
    st.x.push_back(x);
    x += g.real(0.2, 1.0);
    double m = g.real(0.2, 2);
    st.m.push_back(g.integer(0, 1) ? m : -m);
  }
  st.valid = true;
  return st;
}

// dy/dt and dg/dt implied by the peak ODEs under y = tanh x, g = m / (1 - y^2).
Rates pushed_through_liouville(const GnchParams& p, const PeakonState& st) {
  const Rates xm = rhs_xm(p, st);
  Rates out;
  for (std::size_t j = 0; j < st.size(); ++j) {
    const double y = std::tanh(st.x[j]), w = 1 - y * y;
    const double ydot = w * xm.first[j];
    out.first.push_back(ydot);
    out.second.push_back(xm.second[j] / w + st.m[j] * 2 * y * ydot / (w * w));
  }
  return out;
}

// The y equation with (1 + y_i)^2 inside the second sum, the other reading of
// the printed index.
std::vector<double> ydot_summation_index_reading(const GnchParams& p, const StringConfig<double>& c) {
  const double r = p.r, s = p.s;
  std::vector<double> out;
  for (std::size_t j = 0; j < c.size(); ++j) {
    double a = 0, b = 0, m = 0;
    for (std::size_t i = 0; i < j; ++i) a += c.g[i] * (1 + c.y[i]) * (1 + c.y[i]);
    for (std::size_t i = j; i < c.size(); ++i) {
      b += c.g[i] * (1 - c.y[i]) * (1 - c.y[i]) * (1 + c.y[i]) * (1 + c.y[i]);
      m += c.g[i] * (1 - c.y[i] * c.y[i]);
    }
    const double yj = c.y[j];
    out.push_back((r / 4 + s / 2) * (1 - yj) * (1 - yj) * a + (3 * r / 4 + s / 2) * b - (r / 2) * (1 - yj * yj) * m);
  }
  return out;
}

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("peak equation examples") {
    const MomentSystem one(kMixed, {{1, 0}});
    for (double t : {0.5, 0.9, -0.3}) {
      const auto st = peakon_state(one, t);
      const Rates d = rhs_xm(kMixed, st);
      CHECK(d.first[0] == doctest::Approx(2 * st.m[0]));
      CHECK(d.first[0] == doctest::Approx(4 / (4 * t - 1)));
      CHECK(d.second[0] == doctest::Approx(-2 * st.m[0] * st.m[0]));
      CHECK(d.second[0] == doctest::Approx(-8 / ((4 * t - 1) * (4 * t - 1))));
    }
    PeakonState ch;
    ch.x = {0.3};
    ch.m = {1.6};
    ch.valid = true;
    const Rates d = rhs_xm(kCh, ch);
    CHECK(d.first[0] == doctest::Approx(0.8));
    CHECK(d.second[0] == 0.0);
    ch.valid = false;
    CHECK_THROWS_AS(rhs_xm(kCh, ch), InvalidStateError);
  }

  TEST_CASE("string equation examples") {
    StringConfig<double> c{0, {1.0 / 3}, {-9.0 / 4}, true, ""};
    const Rates d = rhs_yg(kMixed, c);
    // Chain rule on y = 1 - 1/A_0 gives -32/9.
    CHECK(d.first[0] == doctest::Approx(-32.0 / 9));
    const double h = 1e-6;
    const MomentSystem one(kMixed, {{1, 0}});
    const double fd = (string_config(one, h).y[0] - string_config(one, -h).y[0]) / (2 * h);
    CHECK(d.first[0] == doctest::Approx(fd).epsilon(1e-8));

    StringConfig<double> ch{0, {0.2}, {1.5}, true, ""};
    const double y = 0.2, g = 1.5;
    CHECK(rhs_yg(kCh, ch).first[0] == doctest::Approx(0.5 * (1 + y) * (1 + y) * g * (1 - y) * (1 - y)));
    // Single mass: only the self terms of the g equation survive.
    for (const GnchParams& p : {kMixed, kCh, GnchParams{1, 0}}) {
      const double r = p.r, s = p.s;
      const double self = (r / 2 + s) * g * g * y * (1 - y * y) - (r / 2) * g * g * (1 - y * y);
      CHECK(rhs_yg(p, ch).second[0] == doctest::Approx(self));
    }
  }

  TEST_CASE("peak and string equations agree under the Liouville map") {
    Gen g(101);
    for (int trial = 0; trial < 200; ++trial) {
      const GnchParams p{g.real(-4, 4), g.real(-3, 3)};
      const auto st = random_state(g, g.integer(1, 5));
      const Rates want = pushed_through_liouville(p, st);
      const Rates got = rhs_yg(p, to_string_config(st));
      for (std::size_t j = 0; j < st.size(); ++j) {
        CHECK(std::fabs(got.first[j] - want.first[j]) <= 1e-10 * std::max(1.0, std::fabs(want.first[j])));
        CHECK(std::fabs(got.second[j] - want.second[j]) <= 1e-10 * std::max(1.0, std::fabs(want.second[j])));
      }
    }
  }

  TEST_CASE("the summation-index reading of the y equation is inconsistent") {
    Gen g(103);
    double worst = 0;
    for (int trial = 0; trial < 50; ++trial) {
      const GnchParams p{g.real(0.5, 4), g.real(-1, 3)};
      const auto st = random_state(g, 3);
      const auto alt = ydot_summation_index_reading(p, to_string_config(st));
      const Rates want = pushed_through_liouville(p, st);
      for (std::size_t j = 0; j < st.size(); ++j) worst = std::max(worst, std::fabs(alt[j] - want.first[j]));
    }
    CHECK(worst > 1e-3);
  }

  TEST_CASE("closed form satisfies the peak equations") {
    Gen g(107);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
      const std::string preset = preset_names()[static_cast<std::size_t>(trial % 3)];
      std::vector<SpectralMode> modes;
      const int n = g.integer(1, 3);
      for (int j = 0; j < n; ++j) modes.push_back({(j + 1) * (g.integer(0, 1) ? 1.0 : -1.0) + g.real(0, 0.3), g.real(-0.2, 0.2)});
      const MomentSystem sys(preset_params(preset), modes);
      const double t = g.real(-0.3, 0.3);
      try {
        PeakonState at = peakon_state(sys, t);
        std::array<PeakonState, 4> near{peakon_state(sys, t - 1e-3), peakon_state(sys, t + 1e-3),
                                        peakon_state(sys, t - 5e-4), peakon_state(sys, t + 5e-4)};
        bool ok = at.valid;
        for (const auto& s : near) ok = ok && s.valid;
        if (!ok) continue;
        // Keep away from turning points where the difference quotients are meaningless.
        double scale = 0;
        for (double m : at.m) scale = std::max(scale, std::fabs(m));
        if (scale > 20) continue;
        const Rates d = rhs_xm(sys.params(), at);
        ++checked;
        for (std::size_t j = 0; j < at.size(); ++j) {
          const double e1 = std::fabs((near[1].x[j] - near[0].x[j]) / 2e-3 - d.first[j]);
          const double e2 = std::fabs((near[3].x[j] - near[2].x[j]) / 1e-3 - d.first[j]);
          const double f1 = std::fabs((near[1].m[j] - near[0].m[j]) / 2e-3 - d.second[j]);
          const double f2 = std::fabs((near[3].m[j] - near[2].m[j]) / 1e-3 - d.second[j]);
          const double sx = std::max(1.0, std::fabs(d.first[j])), sm = std::max(1.0, std::fabs(d.second[j]));
          CHECK(e2 <= 1e-2 * sx);
          CHECK(f2 <= 1e-2 * sm);
          CHECK(e2 <= e1 / 2.5 + 1e-8 * sx);
          CHECK(f2 <= f1 / 2.5 + 1e-8 * sm);
        }
      } catch (const DomainError&) {
        continue;
      }
    }
    CHECK(checked > 20);
  }

  TEST_CASE("integration examples") {
    const MomentSystem one(kMixed, {{1, 0}});
    const auto traj = integrate(kMixed, peakon_state(one, 0.5), {4096, 0.5, 0.9});
    CHECK(traj.size() == 4097);
    CHECK(traj.back().t == 0.9);
    CHECK(std::fabs(traj.back().state.m[0] - 2 / 2.6) <= 1e-9);
    for (std::size_t i = 1; i < traj.size(); ++i) CHECK(traj[i].t > traj[i - 1].t);

    PeakonState ch;
    ch.x = {0};
    ch.m = {2};
    ch.valid = true;
    const auto tr = integrate(kCh, ch, {1000, 0, 1});
    CHECK(std::fabs(tr.back().state.x[0] - 1) <= 1e-10);
    CHECK(std::fabs(tr.back().state.m[0] - 2) <= 1e-10);

    const auto back = integrate(kMixed, peakon_state(one, 0.9), {4096, 0.9, 0.5});
    CHECK(std::fabs(back.back().state.m[0] - 2) <= 1e-9);
    CHECK_THROWS_AS(integrate(kCh, ch, {0, 0, 1}), ParamError);
  }

  TEST_CASE("a window across the turning point aborts near it") {
    const MomentSystem one(kMixed, {{1, 0}});
    try {
      integrate(kMixed, peakon_state(one, 0.0), {4096, 0.0, 0.5});
      FAIL("expected a turning point");
    } catch (const TurningPointError& e) {
      CHECK(e.last_valid_t() < e.singular_t());
      CHECK(e.singular_t() - e.last_valid_t() <= 1.01e-10);
      CHECK(std::fabs(e.singular_t() - 0.25) <= 1e-5);
    }
    CHECK_THROWS_AS(compare_closed_form(one, {1024, 0.1, 0.4}), TurningPointError);
    CHECK_THROWS_AS(compare_closed_form(one, {1024, 0.25, 0.4}), TurningPointError);
  }

  TEST_CASE("closed form comparison") {
    const MomentSystem one(kMixed, {{1, 0}});
    CHECK(compare_closed_form(one, {4096, 0.5, 0.9}).max_dev() <= 1e-9);
    const MomentSystem two(kMixed, {{1, 0}, {-1, 0}});
    CHECK(compare_closed_form(two, {8192, 0.3, 0.45}).max_dev() <= 1e-8);
    const MomentSystem ch(kCh, {{1, 0}, {3, 0}});
    const auto rep = compare_closed_form(ch, {8192, 0, 1});
    CHECK(rep.max_dev() <= 1e-8);
    CHECK(rep.n_steps == 8192);
    CHECK(rep.t0 == 0.0);
    CHECK(rep.t1 == 1.0);
  }

  TEST_CASE("fourth order convergence") {
    const MomentSystem ch(kCh, {{1, 0}, {3, 0}});
    const double coarse = compare_closed_form(ch, {32, 0, 1}).max_dev();
    const double fine = compare_closed_form(ch, {64, 0, 1}).max_dev();
    CHECK(coarse / fine >= 8);
    CHECK(coarse / fine <= 32);
  }

  TEST_CASE("hamiltonian is conserved when r is zero") {
    const MomentSystem ch(kCh, {{1, 0}, {3, 0}});
    const auto traj = integrate(kCh, peakon_state(ch, 0), {4096, 0, 1});
    const double h0 = hamiltonian(traj.front().state);
    double worst = 0;
    for (const auto& s : traj) worst = std::max(worst, std::fabs(hamiltonian(s.state) - h0) / std::fabs(h0));
    CHECK(worst <= 1e-10);
  }

  TEST_CASE("string variable integration tracks peak variable integration") {
    const MomentSystem two(kMixed, {{1, 0}, {-1, 0}});
    const OdeSettings set{2048, 0.3, 0.45};
    const auto xm = integrate(kMixed, peakon_state(two, 0.3), set);
    const auto yg = integrate(kMixed, string_config(two, 0.3), set);
    REQUIRE(xm.size() == yg.size());
    for (std::size_t i = 0; i < xm.size(); i += 256) {
      const auto st = peakon_state(yg[i].state);
      for (std::size_t j = 0; j < 2; ++j) {
        CHECK(rel_err(st.x[j], xm[i].state.x[j]) <= 1e-8);
        CHECK(rel_err(st.m[j], xm[i].state.m[j]) <= 1e-8);
      }
    }
  }
}
