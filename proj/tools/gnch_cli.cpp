// gnch: command-line front end over the C API.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gnch/gnch.h"

namespace {

enum Exit { kOk = 0, kUsage = 1, kDegenerate = 2, kFailed = 3 };

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Carries a library status up to main.
struct Failure : std::runtime_error {
  gnch_status status;
  Failure(gnch_status st, const std::string& msg) : std::runtime_error(msg), status(st) {}
};

void check(gnch_status st) {
  if (st != GNCH_OK) throw Failure(st, gnch_last_error());
}

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { gnch_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

struct SystemDeleter {
  void operator()(gnch_system* s) const { gnch_system_free(s); }
};
using SystemPtr = std::unique_ptr<gnch_system, SystemDeleter>;

struct Options {
  std::string preset;
  std::string r, s;
  std::vector<std::string> lambda, a0, phi0;
  std::string system;
  std::string times;
  std::string grid;
  std::string mode = "float";
  std::string out;
  std::string profile_out;
  std::string format;
  int fig = 0;
  std::size_t steps = 4096;
  double tol = 1e-7;
  std::uint64_t seed = 7;
  std::size_t trials = 200;
  std::size_t max_n = 5;
  int max_k = 4;
  bool inject_fault = false;
};

bool exact_mode(const Options& o) {
  if (o.mode == "exact") return true;
  if (o.mode == "float") return false;
  throw Usage("--mode must be exact or float");
}

std::string read_system_arg(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return arg;
  std::ifstream in(arg);
  if (!in) throw Usage("cannot read system file " + arg);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string shortest(double v) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

SystemPtr build_system(const Options& o) {
  const bool exact = exact_mode(o);
  gnch_system* raw = nullptr;
  if (!o.system.empty()) {
    if (!o.preset.empty() || !o.lambda.empty()) throw Usage("--system excludes --preset and --lambda");
    check(gnch_system_from_json(read_system_arg(o.system).c_str(), exact, &raw));
    return SystemPtr(raw);
  }
  if (o.lambda.empty()) throw Usage("give --system, or --lambda with --preset or --r/--s");
  const std::size_t n = o.lambda.size();
  if (!o.a0.empty() && o.a0.size() != n) throw Usage("--a0 needs one value per --lambda");
  if (!o.phi0.empty() && o.phi0.size() != n) throw Usage("--phi0 needs one value per --lambda");

  std::string r = o.r, s = o.s;
  if (!o.preset.empty()) {
    if (!r.empty() || !s.empty()) throw Usage("--preset excludes --r and --s");
    double pr = 0, ps = 0;
    check(gnch_preset_params(o.preset.c_str(), &pr, &ps));
    r = shortest(pr);
    s = shortest(ps);
  } else if (r.empty() || s.empty()) {
    throw Usage("give --preset or both --r and --s");
  }

  if (exact) {
    for (const auto& a : o.a0) {
      if (std::strtod(a.c_str(), nullptr) != 0.0) throw Usage("exact mode takes --phi0 = exp(r a0) instead of a nonzero --a0");
    }
    std::vector<const char*> lam, phi;
    for (const auto& v : o.lambda) lam.push_back(v.c_str());
    for (const auto& v : o.phi0) phi.push_back(v.c_str());
    check(gnch_system_create_exact(r.c_str(), s.c_str(), lam.data(), phi.empty() ? nullptr : phi.data(), n, &raw));
    return SystemPtr(raw);
  }
  if (!o.phi0.empty()) throw Usage("--phi0 is for exact mode; use --a0");
  auto num = [](const std::string& v) {
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0') throw Usage("not a number: " + v);
    return d;
  };
  std::vector<double> lam, a0;
  for (const auto& v : o.lambda) lam.push_back(num(v));
  for (const auto& v : o.a0) a0.push_back(num(v));
  check(gnch_system_create(num(r), num(s), lam.data(), a0.empty() ? nullptr : a0.data(), n, &raw));
  return SystemPtr(raw);
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Usage("cannot write " + path);
  f << text;
  if (!f) throw Usage("write to " + path + " failed");
}

std::vector<double> time_points(const std::string& spec) {
  OwnedString pts;
  check(gnch_grid_expand(spec.c_str(), 0, &pts.p));
  std::vector<double> out;
  std::istringstream in(pts.str());
  std::string line;
  while (std::getline(in, line)) out.push_back(std::strtod(line.c_str(), nullptr));
  return out;
}

std::string require_format(const Options& o, std::initializer_list<const char*> allowed) {
  if (o.format.empty()) return *allowed.begin();
  for (const char* a : allowed)
    if (o.format == a) return o.format;
  throw Usage("--format " + o.format + " is not supported here");
}

struct SpaceGrid {
  double x0 = -6.0, x1 = 6.0;
  std::size_t n = 1201;
};

SpaceGrid space_grid(const std::string& spec) {
  SpaceGrid g;
  if (spec.empty()) return g;
  OwnedString pts;
  check(gnch_grid_expand(spec.c_str(), 0, &pts.p));
  std::vector<double> xs;
  std::istringstream in(pts.str());
  std::string line;
  while (std::getline(in, line)) xs.push_back(std::strtod(line.c_str(), nullptr));
  if (spec.find(':') == std::string::npos) throw Usage("--grid must be x0:x1:n");
  g.x0 = xs.front();
  g.x1 = xs.back();
  g.n = xs.size();
  return g;
}

int cmd_figure(const Options& o) {
  if (o.fig != 1 && o.fig != 2) throw Usage("--fig must be 1 or 2");
  require_format(o, {"csv"});
  const SpaceGrid g = space_grid(o.grid);
  OwnedString csv;
  check(gnch_figure_csv(o.fig, g.x0, g.x1, g.n, &csv.p));
  emit(o.out, csv.str());
  return kOk;
}

int cmd_eval(const Options& o) {
  if (o.fig != 0) return cmd_figure(o);
  if (o.times.empty()) throw Usage("eval needs --times");
  const std::string fmt = require_format(o, {"csv", "json"});
  if (!o.grid.empty() && o.profile_out.empty() && (o.out.empty() || o.out == "-")) {
    throw Usage("with --grid, send rows (--out) or profiles (--profile-out) to a file");
  }
  SystemPtr sys = build_system(o);
  OwnedString rows, profile;
  std::size_t invalid = 0;
  check(gnch_eval_sweep(sys.get(), o.times.c_str(), o.grid.empty() ? nullptr : o.grid.c_str(), fmt == "json",
                        &rows.p, o.grid.empty() ? nullptr : &profile.p, &invalid));
  emit(o.out, rows.str());
  if (!o.grid.empty()) emit(o.profile_out, profile.str());
  if (invalid > 0) {
    std::cerr << "gnch: " << invalid << " sampled time(s) hit a degenerate configuration\n";
    return kDegenerate;
  }
  return kOk;
}

int cmd_identities(const Options& o) {
  require_format(o, {"json"});
  gnch_battery_options opts;
  gnch_battery_options_default(&opts);
  opts.trials = o.trials;
  opts.max_n = o.max_n;
  opts.max_k = o.max_k;
  opts.seed = o.seed;
  opts.inject_fault = o.inject_fault ? 1 : 0;
  OwnedString report;
  int ok = 0;
  check(gnch_identities_run(&opts, &report.p, &ok));
  emit(o.out, report.str() + "\n");
  if (!ok) {
    std::cerr << "gnch: identity residual is nonzero; see first_failure\n";
    return kFailed;
  }
  return kOk;
}

int cmd_ode(const Options& o) {
  if (o.times.empty()) throw Usage("ode needs --times t0:t1:n (the window is its first and last point)");
  const std::string fmt = require_format(o, {"json", "csv"});
  const auto pts = time_points(o.times);
  if (pts.size() < 2 || pts.front() == pts.back()) throw Usage("ode needs a window with t0 != t1");
  if (o.steps < 1) throw Usage("--steps must be at least 1");
  SystemPtr sys = build_system(o);
  OwnedString report, traj;
  double dev = 0.0;
  check(gnch_ode_compare(sys.get(), pts.front(), pts.back(), o.steps, &report.p, &dev,
                         fmt == "csv" ? &traj.p : nullptr));
  emit(o.out, fmt == "csv" ? traj.str() : report.str() + "\n");
  if (!(dev <= o.tol)) {
    std::cerr << "gnch: max deviation " << dev << " exceeds tolerance " << o.tol << "\n";
    return kFailed;
  }
  return kOk;
}

int cmd_spectrum(const Options& o) {
  if (o.times.empty()) throw Usage("spectrum needs --times");
  require_format(o, {"json"});
  const auto pts = time_points(o.times);
  SystemPtr sys = build_system(o);
  OwnedString report;
  double err = 0.0;
  check(gnch_spectrum_drift(sys.get(), pts.data(), pts.size(), &report.p, &err));
  emit(o.out, report.str() + "\n");
  if (!(err <= 1e-6)) {
    std::cerr << "gnch: fitted slope differs from -r by " << err << "\n";
    return kFailed;
  }
  return kOk;
}

void system_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--preset", o.preset, "ch, noniso or mixed");
  cmd->add_option("--r", o.r, "parameter r");
  cmd->add_option("--s", o.s, "parameter s");
  cmd->add_option("--lambda", o.lambda, "spectral values")->delimiter(',');
  cmd->add_option("--a0", o.a0, "initial phases a_j(0)")->delimiter(',');
  cmd->add_option("--phi0", o.phi0, "exact mode: exp(r a_j(0))")->delimiter(',');
  cmd->add_option("--system", o.system, "moment system JSON, inline or a file path");
  cmd->add_option("--mode", o.mode, "exact or float")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Peakon solutions of the GNCH equation from Hankel determinants"};
  app.require_subcommand(1);
  Options o;

  auto* eval = app.add_subcommand("eval", "peak positions and amplitudes over a time grid");
  system_flags(eval, o);
  eval->add_option("--times", o.times, "t0:t1:n or a comma list");
  eval->add_option("--grid", o.grid, "space grid x0:x1:n for u(x) profiles");
  eval->add_option("--profile-out", o.profile_out, "file for the t,x,u profile rows");
  eval->add_option("--fig", o.fig, "emit the data of figure 1 or 2 instead");

  auto* figure = app.add_subcommand("figure", "profile data of figure 1 or 2");
  figure->add_option("--fig", o.fig, "1 or 2")->required();
  figure->add_option("--grid", o.grid, "space grid x0:x1:n")->default_str("-6:6:1201");

  auto* identities = app.add_subcommand("identities", "randomized exact check of the determinant identities");
  identities->add_option("--seed", o.seed)->capture_default_str();
  identities->add_option("--trials", o.trials)->capture_default_str();
  identities->add_option("--max-n", o.max_n)->capture_default_str();
  identities->add_option("--max-k", o.max_k)->capture_default_str();
  identities->add_flag("--inject-fault", o.inject_fault, "corrupt one element (negative control)");
  identities->add_option("--mode", o.mode, "must be exact");

  auto* ode = app.add_subcommand("ode", "RK4 integration against the closed form");
  system_flags(ode, o);
  ode->add_option("--times", o.times, "window t0:t1:n");
  ode->add_option("--steps", o.steps)->capture_default_str();
  ode->add_option("--tol", o.tol, "largest accepted relative deviation")->capture_default_str();

  auto* spectrum = app.add_subcommand("spectrum", "drift of the string eigenvalues");
  system_flags(spectrum, o);
  spectrum->add_option("--times", o.times, "t0:t1:n or a comma list (at least 3 times)");

  for (auto* cmd : {eval, figure, identities, ode, spectrum}) {
    cmd->add_option("--out", o.out, "output path (default stdout)");
    cmd->add_option("--format", o.format, "csv or json");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (identities->parsed() && identities->count("--mode") > 0 && o.mode != "exact") {
      throw Usage("identities run in exact mode only");
    }
    if (eval->parsed()) return cmd_eval(o);
    if (figure->parsed()) return cmd_figure(o);
    if (identities->parsed()) return cmd_identities(o);
    if (ode->parsed()) return cmd_ode(o);
    if (spectrum->parsed()) return cmd_spectrum(o);
  } catch (const Usage& e) {
    std::cerr << "gnch: " << e.what() << "\n";
    return kUsage;
  } catch (const Failure& e) {
    std::cerr << "gnch: " << gnch_status_name(e.status) << ": " << e.what() << "\n";
    switch (e.status) {
      case GNCH_ERR_TURNING_POINT:
      case GNCH_ERR_BRANCH_CROSSING:
        return kDegenerate;
      case GNCH_ERR_CONVERGENCE:
      case GNCH_ERR_INTERNAL:
        return kFailed;
      default:
        return kUsage;
    }
  }
  return kUsage;
}
