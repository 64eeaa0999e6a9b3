#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "whcontact/cli.hpp"

namespace whcontact::cli {

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<int> to_int(std::string_view s) {
  s = trim(s);
  int v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::vector<std::string> material_keys = {"E1", "nu1", "h1", "E2", "nu2", "h0", "mu0", "T"};
const std::set<std::string> known_keys = {
    "E1",     "nu1",   "h1",     "E2",      "nu2",     "h0",        "mu0",
    "T",      "mode",  "case",   "x_min",   "x_max",   "points",    "spacing",
    "k_list", "abs_tol", "rel_tol", "max_panels", "truncation_radius", "output_dir"};

double& material_field(MaterialSpec& m, const std::string& key) {
  if (key == "E1") return m.E1;
  if (key == "nu1") return m.nu1;
  if (key == "h1") return m.h1;
  if (key == "E2") return m.E2;
  if (key == "nu2") return m.nu2;
  if (key == "h0") return m.h0;
  if (key == "mu0") return m.mu0;
  return m.T;
}

std::optional<CaseChoice> case_from_string(std::string_view s) {
  if (s == "auto") return CaseChoice::automatic;
  if (s == "case_a") return CaseChoice::case_a;
  if (s == "case_b") return CaseChoice::case_b;
  if (s == "rigid") return CaseChoice::rigid;
  return std::nullopt;
}

std::optional<Spacing> spacing_from_string(std::string_view s) {
  if (s == "log") return Spacing::log;
  if (s == "linear") return Spacing::linear;
  return std::nullopt;
}

}  // namespace

const char* to_string(Mode m) noexcept {
  switch (m) {
    case Mode::solve: return "solve";
    case Mode::sweep: return "sweep";
    case Mode::validate: return "validate";
  }
  return "unknown";
}

const char* to_string(CaseChoice c) noexcept {
  switch (c) {
    case CaseChoice::automatic: return "auto";
    case CaseChoice::case_a: return "case_a";
    case CaseChoice::case_b: return "case_b";
    case CaseChoice::rigid: return "rigid";
  }
  return "unknown";
}

const char* to_string(Spacing s) noexcept { return s == Spacing::log ? "log" : "linear"; }

std::optional<Mode> mode_from_string(std::string_view name) {
  if (name == "solve") return Mode::solve;
  if (name == "sweep") return Mode::sweep;
  if (name == "validate") return Mode::validate;
  return std::nullopt;
}

ConfigError::ConfigError(std::vector<std::string> problems)
    : Error(ErrorCode::config_parse, join(problems, "; ")), problems_(std::move(problems)) {}

RunConfig parse_config(std::string_view document, const Overrides& overrides) {
  RunConfig cfg;
  std::vector<std::string> problems;
  std::set<std::string> seen, unparsed;
  auto bad = [&](int line, const std::string& what) {
    problems.push_back("line " + std::to_string(line) + ": " + what);
  };

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= document.size()) {
    const auto nl = document.find('\n', pos);
    std::string_view line = document.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? document.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      bad(line_no, "expected key = value, got '" + std::string(line) + "'");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!known_keys.count(key)) {
      bad(line_no, "unknown field '" + key + "'");
      continue;
    }
    if (!seen.insert(key).second) {
      bad(line_no, "field '" + key + "' given twice");
      continue;
    }
    auto number = [&](double& dst) {
      if (auto v = to_double(value)) dst = *v;
      else {
        bad(line_no, key + ": '" + std::string(value) + "' is not a number");
        unparsed.insert(key);
      }
    };
    if (std::find(material_keys.begin(), material_keys.end(), key) != material_keys.end()) {
      number(material_field(cfg.material, key));
    } else if (key == "mode") {
      if (auto m = mode_from_string(value)) cfg.mode = *m;
      else bad(line_no, "mode must be solve, sweep or validate");
    } else if (key == "case") {
      if (auto c = case_from_string(value)) cfg.case_choice = *c;
      else bad(line_no, "case must be auto, case_a, case_b or rigid");
    } else if (key == "spacing") {
      if (auto s = spacing_from_string(value)) cfg.spacing = *s;
      else bad(line_no, "spacing must be log or linear");
    } else if (key == "x_min") {
      number(cfg.x_min);
    } else if (key == "x_max") {
      number(cfg.x_max);
    } else if (key == "points" || key == "max_panels") {
      if (auto v = to_int(value)) (key == "points" ? cfg.points : cfg.tolerances.max_panels) = *v;
      else {
        bad(line_no, key + ": '" + std::string(value) + "' is not an integer");
        unparsed.insert(key);
      }
    } else if (key == "abs_tol") {
      number(cfg.tolerances.abs_tol);
    } else if (key == "rel_tol") {
      number(cfg.tolerances.rel_tol);
    } else if (key == "truncation_radius") {
      number(cfg.tolerances.truncation_radius);
    } else if (key == "k_list") {
      std::size_t start = 0;
      while (start <= value.size() && !value.empty()) {
        const auto comma = value.find(',', start);
        const auto item = value.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        if (auto v = to_double(item)) cfg.k_list.push_back(*v);
        else bad(line_no, "k_list: '" + std::string(trim(item)) + "' is not a number");
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
    } else if (key == "output_dir") {
      if (value.empty()) bad(line_no, "output_dir is empty");
      cfg.output_dir = std::string(value);
    }
  }

  if (overrides.mode) {
    cfg.mode = *overrides.mode;
    seen.insert("mode");
  }
  if (overrides.output_dir) cfg.output_dir = *overrides.output_dir;

  std::vector<std::string> required = material_keys;
  required.push_back("mode");
  if (cfg.mode == Mode::solve) required.insert(required.end(), {"x_min", "x_max", "points"});
  if (cfg.mode == Mode::sweep) required.push_back("k_list");
  std::vector<std::string> missing;
  for (const auto& key : required)
    if (!seen.count(key)) missing.push_back(key);
  if (!missing.empty()) problems.push_back("missing required fields: " + join(missing, ", "));

  // Field bounds, only for fields that were actually given.
  for (const auto& v : cfg.material.violations()) {
    const std::string field = v.substr(0, v.find(' '));
    if (seen.count(field) && !unparsed.count(field)) problems.push_back(v);
  }
  auto given = [&](const char* key) { return seen.count(key) && !unparsed.count(key); };
  if (cfg.mode == Mode::solve && given("x_min") && given("x_max") && given("points")) {
    if (!(cfg.x_min > 0.0)) problems.push_back("x_min must be > 0");
    if (!(cfg.x_max > cfg.x_min)) problems.push_back("x_max must exceed x_min");
    if (cfg.points < 4) problems.push_back("points must be >= 4");
  }
  if (cfg.mode == Mode::sweep) {
    if (seen.count("k_list") && cfg.k_list.empty()) problems.push_back("k_list is empty");
    for (double k : cfg.k_list)
      if (!(std::isfinite(k) && k > 0.0)) problems.push_back("k_list entries must be > 0, got " + fmt17(k));
    if (cfg.case_choice == CaseChoice::rigid) problems.push_back("case = rigid cannot be swept over k > 0");
  }
  const auto& t = cfg.tolerances;
  if (!(t.abs_tol > 0.0)) problems.push_back("abs_tol must be > 0");
  if (!(t.rel_tol > 0.0)) problems.push_back("rel_tol must be > 0");
  if (t.max_panels < 16) problems.push_back("max_panels must be >= 16");
  if (!(t.truncation_radius > 0.0)) problems.push_back("truncation_radius must be > 0");

  const bool material_ok = missing.empty() && unparsed.empty() && cfg.material.violations().empty();
  if (material_ok && cfg.mode != Mode::sweep) {
    const double k = cfg.material.h0 / cfg.material.mu0 * patch_stiffness(cfg.material);
    if (k == 0.0 && (cfg.case_choice == CaseChoice::case_a || cfg.case_choice == CaseChoice::case_b))
      problems.push_back(std::string("case = ") + to_string(cfg.case_choice) + " needs h0 > 0");
    if (k > 0.0 && cfg.case_choice == CaseChoice::rigid)
      problems.push_back("case = rigid needs h0 = 0");
    if (k == 0.0 && cfg.mode == Mode::validate) problems.push_back("validate mode needs h0 > 0");
  }

  if (!problems.empty()) throw ConfigError(std::move(problems));
  return cfg;
}

std::string emit_config(const RunConfig& c) {
  std::ostringstream os;
  const auto& m = c.material;
  os << "E1 = " << fmt17(m.E1) << "\nnu1 = " << fmt17(m.nu1) << "\nh1 = " << fmt17(m.h1)
     << "\nE2 = " << fmt17(m.E2) << "\nnu2 = " << fmt17(m.nu2) << "\nh0 = " << fmt17(m.h0)
     << "\nmu0 = " << fmt17(m.mu0) << "\nT = " << fmt17(m.T) << "\n";
  os << "mode = " << to_string(c.mode) << "\ncase = " << to_string(c.case_choice) << "\n";
  os << "x_min = " << fmt17(c.x_min) << "\nx_max = " << fmt17(c.x_max) << "\npoints = " << c.points
     << "\nspacing = " << to_string(c.spacing) << "\n";
  if (!c.k_list.empty()) {
    std::vector<std::string> ks;
    for (double k : c.k_list) ks.push_back(fmt17(k));
    os << "k_list = " << join(ks, ", ") << "\n";
  }
  os << "abs_tol = " << fmt17(c.tolerances.abs_tol) << "\nrel_tol = " << fmt17(c.tolerances.rel_tol)
     << "\nmax_panels = " << c.tolerances.max_panels
     << "\ntruncation_radius = " << fmt17(c.tolerances.truncation_radius) << "\n";
  os << "output_dir = " << c.output_dir << "\n";
  return os.str();
}

ModelParams model_params(const RunConfig& config) {
  const auto& m = config.material;
  m.validate();
  const double k = m.h0 / m.mu0 * patch_stiffness(m);
  CaseKind kind = auto_case(k);
  if (config.case_choice == CaseChoice::case_a) kind = CaseKind::case_a;
  if (config.case_choice == CaseChoice::case_b) kind = CaseKind::case_b;
  if (config.case_choice == CaseChoice::rigid) kind = CaseKind::rigid_limit;
  return derive_model_params(m, kind);
}

std::string validation_summary(const RunConfig& config) {
  const auto p = model_params(config);
  char buf[256];
  std::snprintf(buf, sizeof buf, "lambda = %.6g m, k = %.6g m^2, k/lambda^2 = %.6g, case = %s, mode = %s",
                p.lambda, p.k, p.kappa(), whcontact::to_string(p.kind), to_string(config.mode));
  return buf;
}

std::vector<double> x_grid(const RunConfig& c) {
  std::vector<double> x(c.points);
  for (int i = 0; i < c.points; ++i) {
    const double f = i / double(c.points - 1);
    x[i] = c.spacing == Spacing::log ? c.x_min * std::pow(c.x_max / c.x_min, f)
                                     : c.x_min + (c.x_max - c.x_min) * f;
  }
  x.back() = c.x_max;
  return x;
}

}  // namespace whcontact::cli
