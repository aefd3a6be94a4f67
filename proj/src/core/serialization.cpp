#include "gnch/serialization.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace gnch {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return obj.at(key);
}

double as_double(const json& v, const char* what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return to_double(parse_rational(v.get<std::string>()));
  throw ParseError(std::string("field \"") + what + "\" must be a number");
}

Rational as_rational(const json& v, const char* what) {
  if (v.is_number_integer()) return Rational(v.dump());
  if (v.is_number()) return parse_rational(v.dump());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw ParseError(std::string("field \"") + what + "\" must be a number or a \"p/q\" string");
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double from_number_or_null(const json& v) {
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return as_double(v, "value");
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::vector<std::string>> csv_rows(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  for (auto& line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(split(line, ','));
  }
  if (rows.empty()) throw ParseError("empty CSV");
  return rows;
}

double csv_double(const std::string& cell) {
  if (cell == "nan") return std::numeric_limits<double>::quiet_NaN();
  return to_double(parse_rational(cell));
}

std::string csv_cell(double v) { return std::isfinite(v) ? format_double(v) : std::string("nan"); }

}  // namespace

std::string to_json(const MomentSystem& sys) {
  json modes = json::array();
  for (const auto& m : sys.modes()) modes.push_back({{"lambda", m.lambda}, {"a0", m.a0}});
  return json{{"r", sys.params().r}, {"s", sys.params().s}, {"modes", modes}}.dump();
}

std::string to_json(const ExactMomentSystem& sys) {
  json modes = json::array();
  for (const auto& m : sys.modes()) {
    modes.push_back({{"lambda", format_rational(m.lambda)}, {"phi0", format_rational(m.phi0)}});
  }
  return json{{"r", format_rational(sys.r())}, {"s", format_rational(sys.s())}, {"modes", modes}}.dump();
}

MomentSystem system_from_json(std::string_view text) {
  const json j = parse_json(text);
  GnchParams p{as_double(field(j, "r"), "r"), as_double(field(j, "s"), "s")};
  const json& modes = field(j, "modes");
  if (!modes.is_array()) throw ParseError("\"modes\" must be an array");
  std::vector<SpectralMode> out;
  for (const auto& m : modes) {
    SpectralMode mode;
    mode.lambda = as_double(field(m, "lambda"), "lambda");
    if (m.contains("a0")) {
      mode.a0 = as_double(m.at("a0"), "a0");
    } else if (m.contains("phi0")) {
      const double phi0 = as_double(m.at("phi0"), "phi0");
      if (p.r == 0.0 || !(phi0 > 0.0)) throw ParseError("\"phi0\" needs r != 0 and a positive value");
      mode.a0 = std::log(phi0) / p.r;
    }
    out.push_back(mode);
  }
  return MomentSystem(p, std::move(out));
}

ExactMomentSystem exact_system_from_json(std::string_view text) {
  const json j = parse_json(text);
  const Rational r = as_rational(field(j, "r"), "r");
  const Rational s = as_rational(field(j, "s"), "s");
  const json& modes = field(j, "modes");
  if (!modes.is_array()) throw ParseError("\"modes\" must be an array");
  std::vector<ExactMode> out;
  for (const auto& m : modes) {
    ExactMode mode;
    mode.lambda = as_rational(field(m, "lambda"), "lambda");
    if (m.contains("phi0")) {
      mode.phi0 = as_rational(m.at("phi0"), "phi0");
    } else if (m.contains("a0") && sgn(as_rational(m.at("a0"), "a0")) != 0) {
      throw ParamError("exact mode needs \"phi0\" = exp(r a0) for a nonzero a0");
    }
    out.push_back(mode);
  }
  return ExactMomentSystem(r, s, std::move(out));
}

std::string to_json(const PeakonState& state) {
  json x = json::array(), m = json::array();
  for (double v : state.x) x.push_back(number_or_null(v));
  for (double v : state.m) m.push_back(number_or_null(v));
  return json{{"t", state.t}, {"x", x}, {"m", m}, {"valid", state.valid}, {"reason", state.reason}}.dump();
}

PeakonState state_from_json(std::string_view text) {
  const json j = parse_json(text);
  PeakonState st;
  st.t = as_double(field(j, "t"), "t");
  for (const auto& v : field(j, "x")) st.x.push_back(from_number_or_null(v));
  for (const auto& v : field(j, "m")) st.m.push_back(from_number_or_null(v));
  if (st.x.size() != st.m.size()) throw ParseError("\"x\" and \"m\" differ in length");
  st.valid = field(j, "valid").get<bool>();
  st.reason = j.value("reason", std::string());
  return st;
}

std::string to_json(const ExactPeakonState& state) {
  const PeakonState approx = state.approx();
  json x = json::array(), m = json::array(), e = json::array();
  for (double v : approx.x) x.push_back(number_or_null(v));
  if (state.valid) {
    for (const auto& v : state.m) m.push_back(format_rational(v));
    for (const auto& v : state.exp2x) e.push_back(format_rational(v));
  }
  return json{{"t", format_rational(state.t)}, {"x", x},     {"m", m}, {"exp2x", e},
              {"valid", state.valid},         {"reason", state.reason}}
      .dump();
}

namespace {

std::string sweep_header(std::size_t n, bool with_valid) {
  std::string h = "t";
  for (std::size_t j = 1; j <= n; ++j) h += ",x" + std::to_string(j);
  for (std::size_t j = 1; j <= n; ++j) h += ",m" + std::to_string(j);
  if (with_valid) h += ",valid";
  return h + "\n";
}

}  // namespace

std::string trajectory_to_csv(const Trajectory& traj) {
  const std::size_t n = traj.empty() ? 0 : traj.front().state.size();
  std::string out = sweep_header(n, false);
  for (const auto& s : traj) {
    out += csv_cell(s.t);
    for (double v : s.state.x) out += "," + csv_cell(v);
    for (double v : s.state.m) out += "," + csv_cell(v);
    out += "\n";
  }
  return out;
}

Trajectory trajectory_from_csv(std::string_view text) {
  const auto rows = csv_rows(text);
  const std::size_t cols = rows.front().size();
  if (cols < 3 || cols % 2 == 0 || rows.front().front() != "t") throw ParseError("not a trajectory CSV header");
  const std::size_t n = (cols - 1) / 2;
  Trajectory traj;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw ParseError("trajectory row " + std::to_string(i) + " has the wrong width");
    PeakonState st;
    st.t = csv_double(rows[i][0]);
    for (std::size_t j = 0; j < n; ++j) st.x.push_back(csv_double(rows[i][1 + j]));
    for (std::size_t j = 0; j < n; ++j) st.m.push_back(csv_double(rows[i][1 + n + j]));
    st.valid = true;
    traj.push_back({st.t, std::move(st)});
  }
  return traj;
}

std::string sweep_to_csv(const std::vector<PeakonState>& states, std::size_t n) {
  std::string out = sweep_header(n, true);
  for (const auto& st : states) {
    out += csv_cell(st.t);
    for (std::size_t j = 0; j < n; ++j) out += "," + (st.valid ? csv_cell(st.x[j]) : std::string("nan"));
    for (std::size_t j = 0; j < n; ++j) out += "," + (st.valid ? csv_cell(st.m[j]) : std::string("nan"));
    out += st.valid ? ",1\n" : ",0\n";
  }
  return out;
}

std::string sweep_to_csv(const std::vector<ExactPeakonState>& states, std::size_t n) {
  std::string out = sweep_header(n, true);
  for (const auto& st : states) {
    out += format_rational(st.t);
    const PeakonState approx = st.approx();
    for (std::size_t j = 0; j < n; ++j) out += "," + (st.valid ? csv_cell(approx.x[j]) : std::string("nan"));
    for (std::size_t j = 0; j < n; ++j) out += "," + (st.valid ? format_rational(st.m[j]) : std::string("nan"));
    out += st.valid ? ",1\n" : ",0\n";
  }
  return out;
}

std::vector<PeakonState> sweep_from_csv(std::string_view text) {
  const auto rows = csv_rows(text);
  const std::size_t cols = rows.front().size();
  if (cols < 4 || cols % 2 != 0 || rows.front().front() != "t" || rows.front().back() != "valid") {
    throw ParseError("not an evaluation CSV header");
  }
  const std::size_t n = (cols - 2) / 2;
  std::vector<PeakonState> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw ParseError("evaluation row " + std::to_string(i) + " has the wrong width");
    PeakonState st;
    st.t = csv_double(rows[i][0]);
    st.valid = rows[i].back() == "1";
    for (std::size_t j = 0; j < n; ++j) st.x.push_back(csv_double(rows[i][1 + j]));
    for (std::size_t j = 0; j < n; ++j) st.m.push_back(csv_double(rows[i][1 + n + j]));
    out.push_back(std::move(st));
  }
  return out;
}

std::string to_json(const DeviationReport& rep) {
  return json{{"max_dev_x", rep.max_dev_x},
              {"max_dev_m", rep.max_dev_m},
              {"n_steps", rep.n_steps},
              {"t_range", json::array({rep.t0, rep.t1})}}
      .dump();
}

DeviationReport deviation_from_json(std::string_view text) {
  const json j = parse_json(text);
  DeviationReport rep;
  rep.max_dev_x = as_double(field(j, "max_dev_x"), "max_dev_x");
  rep.max_dev_m = as_double(field(j, "max_dev_m"), "max_dev_m");
  rep.n_steps = field(j, "n_steps").get<std::size_t>();
  const json& range = field(j, "t_range");
  if (!range.is_array() || range.size() != 2) throw ParseError("\"t_range\" must be [t0, t1]");
  rep.t0 = as_double(range[0], "t_range");
  rep.t1 = as_double(range[1], "t_range");
  return rep;
}

std::string to_json(const DriftReport& rep) {
  json branches = json::array();
  for (const auto& b : rep.branches) {
    branches.push_back({{"slope", b.slope}, {"intercept", b.intercept}, {"residual", b.residual}});
  }
  return json{{"branches", branches}, {"expected_slope", rep.expected_slope}}.dump();
}

DriftReport drift_from_json(std::string_view text) {
  const json j = parse_json(text);
  DriftReport rep;
  for (const auto& b : field(j, "branches")) {
    rep.branches.push_back({as_double(field(b, "slope"), "slope"), as_double(field(b, "intercept"), "intercept"),
                            as_double(field(b, "residual"), "residual")});
  }
  rep.expected_slope = as_double(field(j, "expected_slope"), "expected_slope");
  return rep;
}

std::string format_polynomial(const Polynomial<Rational>& p) {
  if (p.zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    const Rational& c = p.coefficients()[static_cast<std::size_t>(i)];
    if (sgn(c) == 0) continue;
    if (!out.empty()) out += sgn(c) > 0 ? " + " : " - ";
    else if (sgn(c) < 0) out += "-";
    out += format_rational(abs(c));
    if (i >= 1) out += "*t";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

namespace {

template <class T, class Fmt>
std::string residuals_json(const ResidualReport<T>& rep, Fmt&& fmt) {
  json out = json::array();
  for (const auto& r : rep) {
    out.push_back({{"identity", r.identity}, {"k", r.k}, {"l", r.l}, {"residual", fmt(r.value)}});
  }
  return out.dump();
}

}  // namespace

std::string to_json(const ResidualReport<double>& rep) {
  return residuals_json(rep, [](double v) { return number_or_null(v); });
}

std::string to_json(const ResidualReport<Rational>& rep) {
  return residuals_json(rep, [](const Rational& v) { return json(sgn(v) == 0 ? "0(exact)" : format_rational(v)); });
}

std::string to_json(const ResidualReport<Polynomial<Rational>>& rep) {
  return residuals_json(rep, [](const Polynomial<Rational>& v) {
    return json(v.zero() ? "0(exact)" : format_polynomial(v));
  });
}

std::string to_json(const BatteryReport& rep) {
  json tallies = json::array();
  for (const auto& t : rep.tallies) {
    tallies.push_back({{"identity", t.identity}, {"checked", t.checked}, {"passed", t.passed}});
  }
  json out{{"trials", rep.trials}, {"identities", tallies}, {"all_zero", rep.all_zero()}};
  if (rep.first_failure) {
    const auto& f = *rep.first_failure;
    out["first_failure"] = {{"identity", f.identity},      {"trial", f.trial},       {"k", f.k},
                            {"l", f.l},                    {"element_kmin", f.element_kmin},
                            {"elements", f.elements},      {"residual", f.residual}};
  }
  return out.dump(2);
}

std::string profile_to_csv(const std::vector<std::pair<double, double>>& profile) {
  std::string out = "x,u\n";
  for (const auto& [x, u] : profile) out += csv_cell(x) + "," + csv_cell(u) + "\n";
  return out;
}

std::vector<std::pair<double, double>> profile_from_csv(std::string_view text) {
  const auto rows = csv_rows(text);
  if (rows.front() != std::vector<std::string>{"x", "u"}) throw ParseError("not a profile CSV header");
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != 2) throw ParseError("profile row " + std::to_string(i) + " has the wrong width");
    out.emplace_back(csv_double(rows[i][0]), csv_double(rows[i][1]));
  }
  return out;
}

std::string frames_to_csv(const std::vector<FigureFrame>& frames) {
  std::string out = "t,x,u\n";
  for (const auto& f : frames) {
    for (const auto& [x, u] : f.profile) out += csv_cell(f.t) + "," + csv_cell(x) + "," + csv_cell(u) + "\n";
  }
  return out;
}

}  // namespace gnch
