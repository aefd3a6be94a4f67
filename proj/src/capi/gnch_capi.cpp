#include "gnch/gnch.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>
#include <variant>

#include "gnch/serialization.hpp"
#include "json.hpp"

using namespace gnch;

struct gnch_system {
  std::variant<MomentSystem, ExactMomentSystem> sys;
};

struct gnch_state {
  bool exact = false;
  PeakonState approx;
  StringConfig<double> cfg;
  ExactPeakonState exact_state;
  StringConfig<Rational> exact_cfg;
};

namespace {

thread_local std::string g_last_error;
thread_local double g_tp_last = std::nan("");
thread_local double g_tp_singular = std::nan("");

gnch_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Param: return GNCH_ERR_PARAM;
    case ErrorKind::Domain: return GNCH_ERR_DOMAIN;
    case ErrorKind::Index: return GNCH_ERR_INDEX;
    case ErrorKind::Singular: return GNCH_ERR_SINGULAR;
    case ErrorKind::TurningPoint: return GNCH_ERR_TURNING_POINT;
    case ErrorKind::BranchCrossing: return GNCH_ERR_BRANCH_CROSSING;
    case ErrorKind::Convergence: return GNCH_ERR_CONVERGENCE;
    case ErrorKind::InvalidState: return GNCH_ERR_INVALID_STATE;
    case ErrorKind::Parse: return GNCH_ERR_PARSE;
  }
  return GNCH_ERR_INTERNAL;
}

template <class Fn>
gnch_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return GNCH_OK;
  } catch (const TurningPointError& e) {
    g_last_error = e.what();
    g_tp_last = e.last_valid_t();
    g_tp_singular = e.singular_t();
    return GNCH_ERR_TURNING_POINT;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return GNCH_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GNCH_ERR_INTERNAL;
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr) throw ParamError(std::string(name) + " is null");
}

#define GNCH_REQUIRE(p) \
  if ((p) == nullptr) { \
    g_last_error = #p " is null"; \
    return GNCH_ERR_NULL_ARGUMENT; \
  }

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<std::string> grid_points(std::string_view spec, bool exact) {
  std::vector<std::string> out;
  if (spec.find(':') == std::string_view::npos) {
    std::size_t start = 0;
    while (start <= spec.size()) {
      auto pos = spec.find(',', start);
      if (pos == std::string_view::npos) pos = spec.size();
      std::string item(spec.substr(start, pos - start));
      const Rational v = parse_rational(item);
      out.push_back(exact ? format_rational(v) : format_double(std::stod(item)));
      start = pos + 1;
    }
    return out;
  }
  const auto c1 = spec.find(':');
  const auto c2 = spec.find(':', c1 + 1);
  if (c2 == std::string_view::npos || spec.find(':', c2 + 1) != std::string_view::npos) {
    throw ParseError("grid must be t0:t1:n");
  }
  const std::string a(spec.substr(0, c1)), b(spec.substr(c1 + 1, c2 - c1 - 1)), cnt(spec.substr(c2 + 1));
  long n = 0;
  try {
    std::size_t used = 0;
    n = std::stol(cnt, &used);
    if (used != cnt.size()) throw ParseError("");
  } catch (const std::exception&) {
    throw ParseError("grid point count \"" + cnt + "\" is not an integer");
  }
  if (n < 1) throw ParamError("grid needs n >= 1");
  if (exact) {
    const Rational lo = parse_rational(a), hi = parse_rational(b);
    for (long i = 0; i < n; ++i) {
      Rational v = n == 1 ? lo : Rational(lo + (hi - lo) * i / (n - 1));
      v.canonicalize();
      out.push_back(format_rational(v));
    }
  } else {
    const double lo = to_double(parse_rational(a)), hi = to_double(parse_rational(b));
    for (long i = 0; i < n; ++i) {
      const double v = n == 1 ? lo : (i == n - 1 ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
      out.push_back(format_double(v));
    }
  }
  return out;
}

struct SpaceGrid {
  double x0, x1;
  std::size_t n;
};

SpaceGrid parse_space_grid(std::string_view spec) {
  const auto pts = grid_points(spec, false);
  if (spec.find(':') == std::string_view::npos) throw ParseError("space grid must be x0:x1:n");
  return {std::stod(pts.front()), std::stod(pts.back()), pts.size()};
}

gnch_state make_state(const gnch_system& h, const std::string& t) {
  gnch_state st;
  if (const auto* e = std::get_if<ExactMomentSystem>(&h.sys)) {
    st.exact = true;
    st.exact_cfg = string_config(*e, parse_rational(t));
    st.exact_state = peakon_state(st.exact_cfg);
    st.approx = st.exact_state.approx();
  } else {
    const auto& f = std::get<MomentSystem>(h.sys);
    st.cfg = string_config(f, to_double(parse_rational(t)));
    st.approx = peakon_state(st.cfg);
  }
  return st;
}

const MomentSystem& float_view(const gnch_system& h, std::optional<MomentSystem>& storage) {
  if (const auto* f = std::get_if<MomentSystem>(&h.sys)) return *f;
  storage.emplace(std::get<ExactMomentSystem>(h.sys).to_float());
  return *storage;
}

}  // namespace

extern "C" {

const char* gnch_last_error(void) { return g_last_error.c_str(); }

const char* gnch_status_name(gnch_status status) {
  switch (status) {
    case GNCH_OK: return "ok";
    case GNCH_ERR_PARAM: return "parameter error";
    case GNCH_ERR_DOMAIN: return "domain error";
    case GNCH_ERR_INDEX: return "index error";
    case GNCH_ERR_SINGULAR: return "singular";
    case GNCH_ERR_TURNING_POINT: return "turning point";
    case GNCH_ERR_BRANCH_CROSSING: return "branch crossing";
    case GNCH_ERR_CONVERGENCE: return "convergence failure";
    case GNCH_ERR_INVALID_STATE: return "invalid state";
    case GNCH_ERR_PARSE: return "parse error";
    case GNCH_ERR_NULL_ARGUMENT: return "null argument";
    case GNCH_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* gnch_version(void) { return "0.1.0"; }

void gnch_string_free(char* s) { std::free(s); }

void gnch_last_turning_point(double* last_valid_t, double* singular_t) {
  if (last_valid_t) *last_valid_t = g_tp_last;
  if (singular_t) *singular_t = g_tp_singular;
}

gnch_status gnch_system_create(double r, double s, const double* lambda, const double* a0, size_t n,
                               gnch_system** out) {
  GNCH_REQUIRE(out);
  return guarded([&] {
    if (n > 0) require(lambda, "lambda");
    std::vector<SpectralMode> modes;
    for (size_t i = 0; i < n; ++i) modes.push_back({lambda[i], a0 ? a0[i] : 0.0});
    *out = new gnch_system{MomentSystem({r, s}, std::move(modes))};
  });
}

gnch_status gnch_system_create_exact(const char* r, const char* s, const char* const* lambda,
                                     const char* const* phi0, size_t n, gnch_system** out) {
  GNCH_REQUIRE(out);
  GNCH_REQUIRE(r);
  GNCH_REQUIRE(s);
  return guarded([&] {
    if (n > 0) require(lambda, "lambda");
    std::vector<ExactMode> modes;
    for (size_t i = 0; i < n; ++i) {
      require(lambda[i], "lambda entry");
      modes.push_back({parse_rational(lambda[i]), phi0 && phi0[i] ? parse_rational(phi0[i]) : Rational(1)});
    }
    *out = new gnch_system{ExactMomentSystem(parse_rational(r), parse_rational(s), std::move(modes))};
  });
}

gnch_status gnch_preset_params(const char* preset, double* r, double* s) {
  GNCH_REQUIRE(preset);
  GNCH_REQUIRE(r);
  GNCH_REQUIRE(s);
  return guarded([&] {
    const GnchParams p = preset_params(preset);
    *r = p.r;
    *s = p.s;
  });
}

gnch_status gnch_system_create_preset(const char* preset, const double* lambda, const double* a0, size_t n,
                                      int exact, gnch_system** out) {
  GNCH_REQUIRE(out);
  GNCH_REQUIRE(preset);
  return guarded([&] {
    const GnchParams p = preset_params(preset);
    if (n > 0) require(lambda, "lambda");
    if (!exact) {
      std::vector<SpectralMode> modes;
      for (size_t i = 0; i < n; ++i) modes.push_back({lambda[i], a0 ? a0[i] : 0.0});
      *out = new gnch_system{MomentSystem(p, std::move(modes))};
      return;
    }
    std::vector<ExactMode> modes;
    for (size_t i = 0; i < n; ++i) {
      if (a0 && a0[i] != 0.0) throw ParamError("exact mode needs phi0 = exp(r a0) for a nonzero a0");
      modes.push_back({rational_from_double(lambda[i]), Rational(1)});
    }
    *out = new gnch_system{
        ExactMomentSystem(rational_from_double(p.r), rational_from_double(p.s), std::move(modes))};
  });
}

gnch_status gnch_system_from_json(const char* json, int exact, gnch_system** out) {
  GNCH_REQUIRE(out);
  GNCH_REQUIRE(json);
  return guarded([&] {
    if (exact)
      *out = new gnch_system{exact_system_from_json(json)};
    else
      *out = new gnch_system{system_from_json(json)};
  });
}

gnch_status gnch_system_to_json(const gnch_system* sys, char** out) {
  GNCH_REQUIRE(sys);
  GNCH_REQUIRE(out);
  return guarded([&] { *out = dup_string(std::visit([](const auto& s) { return to_json(s); }, sys->sys)); });
}

int gnch_system_is_exact(const gnch_system* sys) {
  return sys != nullptr && std::holds_alternative<ExactMomentSystem>(sys->sys);
}

size_t gnch_system_size(const gnch_system* sys) {
  if (sys == nullptr) return 0;
  return std::visit([](const auto& s) { return s.size(); }, sys->sys);
}

void gnch_system_free(gnch_system* sys) { delete sys; }

gnch_status gnch_grid_expand(const char* spec, int exact, char** out) {
  GNCH_REQUIRE(spec);
  GNCH_REQUIRE(out);
  return guarded([&] {
    std::string joined;
    for (const auto& p : grid_points(spec, exact != 0)) joined += p + "\n";
    *out = dup_string(joined);
  });
}

gnch_status gnch_state_at(const gnch_system* sys, const char* t, gnch_state** out) {
  GNCH_REQUIRE(sys);
  GNCH_REQUIRE(t);
  GNCH_REQUIRE(out);
  return guarded([&] { *out = new gnch_state(make_state(*sys, t)); });
}

int gnch_state_valid(const gnch_state* st) { return st != nullptr && st->approx.valid; }

const char* gnch_state_reason(const gnch_state* st) { return st ? st->approx.reason.c_str() : ""; }

size_t gnch_state_size(const gnch_state* st) { return st ? st->approx.size() : 0; }

gnch_status gnch_state_positions(const gnch_state* st, double* x, size_t n) {
  GNCH_REQUIRE(st);
  GNCH_REQUIRE(x);
  return guarded([&] {
    if (n != st->approx.size()) throw ParamError("buffer length does not match the peak count");
    if (!st->approx.valid) throw InvalidStateError("state is not valid: " + st->approx.reason);
    std::copy(st->approx.x.begin(), st->approx.x.end(), x);
  });
}

gnch_status gnch_state_amplitudes(const gnch_state* st, double* m, size_t n) {
  GNCH_REQUIRE(st);
  GNCH_REQUIRE(m);
  return guarded([&] {
    if (n != st->approx.size()) throw ParamError("buffer length does not match the peak count");
    if (!st->approx.valid) throw InvalidStateError("state is not valid: " + st->approx.reason);
    std::copy(st->approx.m.begin(), st->approx.m.end(), m);
  });
}

gnch_status gnch_state_eval_u(const gnch_state* st, double x, double* u) {
  GNCH_REQUIRE(st);
  GNCH_REQUIRE(u);
  return guarded([&] {
    if (!st->approx.valid) throw InvalidStateError("state is not valid: " + st->approx.reason);
    *u = eval_u(st->approx, x);
  });
}

gnch_status gnch_state_to_json(const gnch_state* st, char** out) {
  GNCH_REQUIRE(st);
  GNCH_REQUIRE(out);
  return guarded([&] { *out = dup_string(st->exact ? to_json(st->exact_state) : to_json(st->approx)); });
}

gnch_status gnch_state_eigenvalues(const gnch_state* st, char** out) {
  GNCH_REQUIRE(st);
  GNCH_REQUIRE(out);
  return guarded([&] {
    nlohmann::json arr = nlohmann::json::array();
    if (st->exact) {
      for (const auto& z : string_eigenvalues(st->exact_cfg)) arr.push_back(format_rational(z));
    } else {
      for (double z : string_eigenvalues(st->cfg)) arr.push_back(z);
    }
    *out = dup_string(arr.dump());
  });
}

gnch_status gnch_state_profile_csv(const gnch_state* st, double x0, double x1, size_t n, char** out) {
  GNCH_REQUIRE(st);
  GNCH_REQUIRE(out);
  return guarded([&] {
    if (!st->approx.valid) throw InvalidStateError("state is not valid: " + st->approx.reason);
    *out = dup_string(profile_to_csv(sample_profile(st->approx, x0, x1, n, true)));
  });
}

void gnch_state_free(gnch_state* st) { delete st; }

gnch_status gnch_eval_sweep(const gnch_system* sys, const char* times, const char* grid, int as_json, char** rows,
                            char** profile_csv, size_t* n_invalid) {
  GNCH_REQUIRE(sys);
  GNCH_REQUIRE(times);
  GNCH_REQUIRE(rows);
  return guarded([&] {
    const bool exact = std::holds_alternative<ExactMomentSystem>(sys->sys);
    std::optional<SpaceGrid> space;
    if (grid != nullptr) {
      require(profile_csv, "profile_csv");
      space = parse_space_grid(grid);
    }
    std::vector<PeakonState> approx;
    std::vector<ExactPeakonState> exact_states;
    std::string profile = "t,x,u\n";
    nlohmann::json arr = nlohmann::json::array();
    size_t invalid = 0;
    for (const auto& t : grid_points(times, exact)) {
      const gnch_state st = make_state(*sys, t);
      if (!st.approx.valid) ++invalid;
      if (st.exact)
        exact_states.push_back(st.exact_state);
      approx.push_back(st.approx);
      if (as_json) arr.push_back(nlohmann::json::parse(st.exact ? to_json(st.exact_state) : to_json(st.approx)));
      if (space && st.approx.valid) {
        for (const auto& [x, u] : sample_profile(st.approx, space->x0, space->x1, space->n, true)) {
          profile += t + "," + format_double(x) + "," + format_double(u) + "\n";
        }
      }
    }
    const std::size_t n = gnch_system_size(sys);
    std::string body;
    if (as_json)
      body = arr.dump(2) + "\n";
    else
      body = exact ? sweep_to_csv(exact_states, n) : sweep_to_csv(approx, n);
    *rows = dup_string(body);
    if (space) *profile_csv = dup_string(profile);
    if (n_invalid) *n_invalid = invalid;
  });
}

void gnch_battery_options_default(gnch_battery_options* opts) {
  if (opts == nullptr) return;
  const BatteryOptions d;
  opts->trials = d.trials;
  opts->max_n = d.max_n;
  opts->max_k = d.max_k;
  opts->seed = d.seed;
  opts->inject_fault = d.inject_fault ? 1 : 0;
}

gnch_status gnch_identities_run(const gnch_battery_options* opts, char** report_json, int* all_zero) {
  GNCH_REQUIRE(opts);
  GNCH_REQUIRE(report_json);
  return guarded([&] {
    BatteryOptions o;
    o.trials = opts->trials;
    o.max_n = opts->max_n;
    o.max_k = opts->max_k;
    o.seed = opts->seed;
    o.inject_fault = opts->inject_fault != 0;
    const BatteryReport rep = run_identity_battery(o);
    *report_json = dup_string(to_json(rep));
    if (all_zero) *all_zero = rep.all_zero() ? 1 : 0;
  });
}

gnch_status gnch_derivative_check(const gnch_system* sys, int kmax, int lmax, char** report_json, int* all_zero) {
  GNCH_REQUIRE(sys);
  GNCH_REQUIRE(report_json);
  return guarded([&] {
    const auto* e = std::get_if<ExactMomentSystem>(&sys->sys);
    if (e == nullptr) throw ParamError("derivative check needs an exact system");
    ResidualReport<Polynomial<Rational>> rep;
    for (int k = 0; k <= 2 * kmax + lmax; ++k) rep.push_back({identity::kMomentLaw, k, 0, moment_derivative_residual(*e, k)});
    for (int k = 1; k <= kmax; ++k)
      for (int l = 0; l <= lmax; ++l) {
        auto part = check_delta_derivatives(*e, k, l);
        rep.insert(rep.end(), part.begin(), part.end());
      }
    *report_json = dup_string(to_json(rep));
    if (all_zero) *all_zero = gnch::all_zero(rep) ? 1 : 0;
  });
}

gnch_status gnch_ode_compare(const gnch_system* sys, double t0, double t1, size_t steps, char** report_json,
                             double* max_dev, char** trajectory_csv) {
  GNCH_REQUIRE(sys);
  GNCH_REQUIRE(report_json);
  return guarded([&] {
    std::optional<MomentSystem> storage;
    const MomentSystem& f = float_view(*sys, storage);
    const OdeSettings settings{steps, t0, t1};
    const DeviationReport rep = compare_closed_form(f, settings);
    if (trajectory_csv) {
      *trajectory_csv = dup_string(trajectory_to_csv(integrate(f.params(), peakon_state(f, t0), settings)));
    }
    *report_json = dup_string(to_json(rep));
    if (max_dev) *max_dev = rep.max_dev();
  });
}

gnch_status gnch_spectrum_drift(const gnch_system* sys, const double* times, size_t n, char** report_json,
                                double* max_slope_error) {
  GNCH_REQUIRE(sys);
  GNCH_REQUIRE(times);
  GNCH_REQUIRE(report_json);
  return guarded([&] {
    std::optional<MomentSystem> storage;
    const MomentSystem& f = float_view(*sys, storage);
    const DriftReport rep = drift_fit(f, std::vector<double>(times, times + n));
    double worst = 0.0;
    for (const auto& b : rep.branches) worst = std::max(worst, std::fabs(b.slope - rep.expected_slope));
    *report_json = dup_string(to_json(rep));
    if (max_slope_error) *max_slope_error = worst;
  });
}

gnch_status gnch_figure_csv(int fig, double x0, double x1, size_t n, char** out) {
  GNCH_REQUIRE(out);
  return guarded([&] { *out = dup_string(frames_to_csv(figure_frames(figure_spec(fig), x0, x1, n))); });
}

}  // extern "C"
