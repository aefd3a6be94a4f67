#include "doctest.h"
#include "gnch/serialization.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace gnch;
using namespace testsupport;
using Q = Rational;
using nlohmann::json;

TEST_SUITE("serialization") {
  TEST_CASE("float systems round trip") {
    const MomentSystem sys({4, 2}, {{1, 0}, {-1, 0.125}, {0.3, -1e-7}});
    const MomentSystem back = system_from_json(to_json(sys));
    CHECK(back.params().r == 4.0);
    CHECK(back.params().s == 2.0);
    REQUIRE(back.size() == 3);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(back.modes()[j].lambda == sys.modes()[j].lambda);
      CHECK(back.modes()[j].a0 == sys.modes()[j].a0);
    }
    CHECK(to_json(back) == to_json(sys));
    const auto j = json::parse(to_json(sys));
    CHECK(j["modes"][1]["a0"] == 0.125);
  }

  TEST_CASE("exact systems round trip") {
    const ExactMomentSystem sys(Q(4), Q(2), {{Q(1), Q(1)}, {Q(-2, 3), Q(5, 7)}});
    const std::string text = to_json(sys);
    const auto j = json::parse(text);
    CHECK(j["modes"][1]["lambda"] == "-2/3");
    CHECK(j["modes"][1]["phi0"] == "5/7");
    const ExactMomentSystem back = exact_system_from_json(text);
    CHECK(back.modes()[1].lambda == Q(-2, 3));
    CHECK(back.modes()[1].phi0 == Q(5, 7));
    CHECK(to_json(back) == text);
  }

  TEST_CASE("system readers accept numbers and strings") {
    const auto e = exact_system_from_json(R"({"r": 4, "s": "2", "modes": [{"lambda": 0.5, "a0": 0}]})");
    CHECK(e.modes()[0].lambda == Q(1, 2));
    CHECK(e.modes()[0].phi0 == Q(1));
    CHECK_THROWS_AS(exact_system_from_json(R"({"r": 4, "s": 2, "modes": [{"lambda": 1, "a0": 0.1}]})"), ParamError);
    const auto f = system_from_json(R"({"r": "4", "s": 2, "modes": [{"lambda": "-1/2", "phi0": 2}]})");
    CHECK(f.modes()[0].lambda == -0.5);
    CHECK(f.modes()[0].a0 == doctest::Approx(std::log(2.0) / 4));
    CHECK_THROWS_AS(system_from_json("{"), ParseError);
    CHECK_THROWS_AS(system_from_json(R"({"r": 1, "modes": []})"), ParseError);
    CHECK_THROWS_AS(system_from_json(R"({"r": 1, "s": 0, "modes": []})"), ParamError);
    CHECK_THROWS_AS(system_from_json(R"({"r": 1, "s": 0, "modes": [{"lambda": true}]})"), ParseError);
  }

  TEST_CASE("peakon states round trip") {
    const auto st = peakon_state(MomentSystem({4, 2}, {{1, 0}, {-1, 0}}), 0.5);
    const auto back = state_from_json(to_json(st));
    CHECK(back.t == st.t);
    CHECK(back.x == st.x);
    CHECK(back.m == st.m);
    CHECK(back.valid);
    const auto bad = peakon_state(MomentSystem({4, 2}, {{1, 0}}), 0.25);
    const auto j = json::parse(to_json(bad));
    CHECK(j["valid"] == false);
    CHECK_FALSE(j["reason"].get<std::string>().empty());
    CHECK_FALSE(state_from_json(to_json(bad)).valid);
  }

  TEST_CASE("exact states print rationals") {
    const auto st = peakon_state(ExactMomentSystem(Q(4), Q(2), {{Q(1), Q(1)}, {Q(-1), Q(1)}}), Q(1, 2));
    const auto j = json::parse(to_json(st));
    CHECK(j["t"] == "1/2");
    CHECK(j["m"][0] == "41/21");
    CHECK(j["exp2x"][1] == "20");
    CHECK(j["x"][1].get<double>() == doctest::Approx(0.5 * std::log(20.0)));
  }

  TEST_CASE("trajectories round trip through CSV") {
    const MomentSystem two({4, 2}, {{1, 0}, {-1, 0}});
    const auto traj = integrate(two.params(), peakon_state(two, 0.3), {16, 0.3, 0.45});
    const std::string csv = trajectory_to_csv(traj);
    CHECK(csv.rfind("t,x1,x2,m1,m2\n", 0) == 0);
    const auto back = trajectory_from_csv(csv);
    REQUIRE(back.size() == traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
      CHECK(back[i].t == traj[i].t);
      CHECK(back[i].state.x == traj[i].state.x);
      CHECK(back[i].state.m == traj[i].state.m);
    }
    CHECK(trajectory_to_csv(back) == csv);
    CHECK_THROWS_AS(trajectory_from_csv("a,b\n1,2\n"), ParseError);
  }

  TEST_CASE("sweeps round trip through CSV") {
    const MomentSystem one({4, 2}, {{1, 0}});
    std::vector<PeakonState> states;
    for (double t : {0.0, 0.25, 0.5}) states.push_back(peakon_state(one, t));
    const std::string csv = sweep_to_csv(states, 1);
    CHECK(csv.rfind("t,x1,m1,valid\n0,", 0) == 0);
    CHECK(csv.find("\n0.25,nan,nan,0\n") != std::string::npos);
    const auto back = sweep_from_csv(csv);
    REQUIRE(back.size() == 3);
    CHECK_FALSE(back[1].valid);
    CHECK(back[2].m[0] == states[2].m[0]);
    CHECK(back[0].x[0] == states[0].x[0]);
  }

  TEST_CASE("reports round trip") {
    DeviationReport d{1.5e-12, 2.25e-13, 4096, 0.5, 0.9};
    const auto db = deviation_from_json(to_json(d));
    CHECK(db.max_dev_x == d.max_dev_x);
    CHECK(db.max_dev_m == d.max_dev_m);
    CHECK(db.n_steps == 4096);
    CHECK(db.t1 == 0.9);
    const auto dj = json::parse(to_json(d));
    CHECK(dj["t_range"].size() == 2);

    const auto drift = drift_fit(MomentSystem({4, 2}, {{1, 0}, {-1, 0}}), {0.3, 0.35, 0.4});
    const auto back = drift_from_json(to_json(drift));
    REQUIRE(back.branches.size() == 2);
    CHECK(back.branches[1].slope == drift.branches[1].slope);
    CHECK(back.expected_slope == -4.0);
  }

  TEST_CASE("residual reports") {
    ResidualReport<Q> r{{"jacobi_1", 1, 2, Q(0)}, {"jacobi_2", 1, 2, Q(-3, 4)}};
    const auto j = json::parse(to_json(r));
    CHECK(j[0]["residual"] == "0(exact)");
    CHECK(j[1]["residual"] == "-3/4");
    CHECK(j[1]["identity"] == "jacobi_2");
    const ExactMomentSystem sys(Q(4), Q(2), {{Q(1), Q(1)}});
    const auto pj = json::parse(to_json(check_delta_derivatives(sys, 1, 0)));
    for (const auto& e : pj) CHECK(e["residual"] == "0(exact)");
    CHECK(format_polynomial(Polynomial<Q>(std::vector<Q>{Q(1), Q(0), Q(-3, 2)})) == "-3/2*t^2 + 1");
  }

  TEST_CASE("profiles round trip") {
    std::vector<std::pair<double, double>> prof{{-1, 0.25}, {0, 0.5}, {1.5, 1e-9}};
    const auto back = profile_from_csv(profile_to_csv(prof));
    CHECK(back == prof);
    CHECK(profile_to_csv(prof).rfind("x,u\n", 0) == 0);
    CHECK_THROWS_AS(profile_from_csv("x,u\n1\n"), ParseError);
  }

  TEST_CASE("battery report carries the failure") {
    BatteryOptions opts;
    opts.trials = 2;
    opts.inject_fault = true;
    const auto j = json::parse(to_json(run_identity_battery(opts)));
    CHECK(j["all_zero"] == false);
    CHECK(j.contains("first_failure"));
    CHECK(j["first_failure"]["elements"].size() > 0);
  }
}
