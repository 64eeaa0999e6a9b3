#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "doctest.h"
#include "whcontact/cli.hpp"

using namespace whcontact;
using namespace whcontact::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("whcontact-test-" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  return dir;
}

std::vector<std::string> problems_of(std::string_view doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.problems();
  }
  return {};
}

bool mentions(const std::vector<std::string>& problems, const std::string& what) {
  for (const auto& p : problems)
    if (p.find(what) != std::string::npos) return true;
  return false;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(WHCONTACT_CLI) + " " + args + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& body) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(body);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

const std::string unit_material =
    "E1 = 1e9\nnu1 = 0\nh1 = 1\nE2 = 2e9\nnu2 = 0\nh0 = 1e-3\nmu0 = 1e6\n";

}  // namespace

TEST_CASE("shipped physical configuration") {
  const auto cfg = parse_config(slurp(fs::path(CONFIG_DIR) / "physical.conf"));
  CHECK(cfg.mode == Mode::solve);
  CHECK(cfg.k_list.size() == 11);
  const auto p = model_params(cfg);
  CHECK(p.k / 3.4188e-2 == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(p.lambda == doctest::Approx(0.153263).epsilon(1e-5));
  CHECK(p.kind == CaseKind::case_b);
  CHECK(validation_summary(cfg).find("k = 0.034188 m^2") != std::string::npos);
}

TEST_CASE("field-level errors") {
  const auto empty = problems_of("");
  REQUIRE(empty.size() == 1);
  for (const char* f : {"E1", "nu1", "h1", "E2", "nu2", "h0", "mu0", "T", "mode"})
    CHECK(empty[0].find(f) != std::string::npos);

  const auto nu2 = problems_of(unit_material + "T = 1\nmode = sweep\nk_list = 1\n" + "nu2 = 0.7\n");
  CHECK(mentions(nu2, "given twice"));
  const auto bound = problems_of(
      "E1 = 1e9\nnu1 = 0\nh1 = 1\nE2 = 2e9\nnu2 = 0.7\nh0 = 1e-3\nmu0 = 1e6\nT = 1\nmode = sweep\nk_list = 1\n");
  REQUIRE(bound.size() == 1);
  CHECK(bound[0].find("nu2") == 0);

  // Every problem is reported, not just the first.
  const auto many = problems_of(slurp(fs::path(FIXTURE_DIR) / "malformed.conf"));
  CHECK(mentions(many, "line 3: h1"));
  CHECK(mentions(many, "line 6"));
  CHECK(mentions(many, "unknown field 'colour'"));
  CHECK(mentions(many, "nu2 = 0.7"));
  CHECK(mentions(many, "missing required fields: h0, mu0, T, x_min, x_max, points"));
  CHECK_FALSE(mentions(many, "h1 = 0"));

  const std::string base = unit_material + "T = 1\n";
  CHECK(mentions(problems_of(base + "mode = solve\nx_min = 1\nx_max = 0.5\npoints = 3\n"), "x_max must exceed"));
  CHECK(mentions(problems_of(base + "mode = solve\nx_min = 1\nx_max = 2\npoints = 3\n"), "points"));
  CHECK(mentions(problems_of(base + "mode = sweep\nk_list = 1, -2\n"), "k_list entries"));
  CHECK(mentions(problems_of(base + "mode = sweep\nk_list = 1, x\n"), "k_list: 'x'"));
  CHECK(mentions(problems_of(base + "mode = sweep\nk_list =\n"), "k_list is empty"));
  CHECK(mentions(problems_of(base + "mode = validate\ncase = rigid\n"), "case = rigid needs h0 = 0"));
  CHECK(mentions(problems_of(base + "mode = validate\nabs_tol = 0\n"), "abs_tol"));
  CHECK(mentions(problems_of(base + "mode = fly\n"), "mode must be"));
  CHECK_THROWS_AS(parse_config(base + "mode = sweep\n"), ConfigError);
  try {
    parse_config("");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::config_parse);
  }
}

TEST_CASE("mode and output overrides") {
  const std::string doc = unit_material + "T = 1\nmode = validate\n";
  CHECK_THROWS_AS(parse_config(doc, {Mode::sweep, std::nullopt}), ConfigError);
  const auto cfg = parse_config(doc + "k_list = 1, 0.5\n", {Mode::sweep, std::string("elsewhere")});
  CHECK(cfg.mode == Mode::sweep);
  CHECK(cfg.output_dir == "elsewhere");
}

TEST_CASE("emit and parse round-trip") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto positive = [&] { return std::exp(std::uniform_real_distribution<double>(-20.0, 25.0)(rng)); };
  for (int trial = 0; trial < 200; ++trial) {
    RunConfig c;
    c.material = {positive(), 0.999 * u(rng), positive(), positive(), 0.499 * u(rng),
                  positive(),  positive(),     (u(rng) - 0.5) * 1e3};
    c.mode = static_cast<Mode>(trial % 3);
    c.case_choice = c.mode == Mode::sweep ? CaseChoice::case_a : CaseChoice::automatic;
    c.x_min = positive();
    c.x_max = c.x_min * (1.0 + positive());
    c.points = 4 + static_cast<int>(u(rng) * 1000);
    c.spacing = trial % 2 ? Spacing::log : Spacing::linear;
    if (c.mode == Mode::sweep)
      for (int i = 0, n = 1 + trial % 5; i < n; ++i) c.k_list.push_back(positive());
    c.tolerances.abs_tol = positive();
    c.tolerances.rel_tol = positive();
    c.tolerances.max_panels = 16 + trial;
    c.tolerances.truncation_radius = positive();
    c.output_dir = "runs/trial_" + std::to_string(trial);
    const auto text = emit_config(c);
    INFO(text);
    CHECK(parse_config(text) == c);
    CHECK(emit_config(parse_config(text)) == text);
  }
}

TEST_CASE("solve and sweep artifacts") {
  const std::string base = unit_material + "mode = solve\nx_min = 1e-3\nx_max = 20\npoints = 40\n";

  SUBCASE("zero load") {
    auto cfg = parse_config(base + "T = 0\n");
    cfg.output_dir = scratch("zero").string();
    std::ostringstream log;
    REQUIRE(run(cfg, log) == exit_code::success);
    const auto rows = csv_rows(slurp(fs::path(cfg.output_dir) / "stress.csv"));
    REQUIRE(rows.size() == 41);
    CHECK(rows[0] == std::vector<std::string>{"x", "tau", "phi", "method"});
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][1]) == 0.0);
  }

  SUBCASE("determinism and formatting") {
    auto cfg = parse_config(base + "T = 1\n");
    cfg.output_dir = scratch("det1").string();
    std::ostringstream log;
    REQUIRE(run(cfg, log) == exit_code::success);
    auto again = cfg;
    again.output_dir = scratch("det2").string();
    REQUIRE(run(again, log) == exit_code::success);
    for (const char* f : {"stress.csv", "certificate.json", "report.json"})
      CHECK(slurp(fs::path(cfg.output_dir) / f) == slurp(fs::path(again.output_dir) / f));

    const auto body = slurp(fs::path(cfg.output_dir) / "stress.csv");
    CHECK(body.back() == '\n');
    const auto rows = csv_rows(body);
    // 12 significant digits: d.ddddddddddde+xx
    CHECK(rows[1][0] == "1.00000000000e-03");
    CHECK(rows[1][3] == "wiener_hopf_B");
    CHECK(std::stod(rows[1][1]) == doctest::Approx(0.99677).epsilon(1e-4));

    const auto cert = nlohmann::json::parse(slurp(fs::path(cfg.output_dir) / "certificate.json"));
    CHECK(cert["passed"] == true);
    CHECK(cert["max_jump_residual"].get<double>() <= 1e-7);
    CHECK(cert["samples"].size() == 512);
    const auto report = nlohmann::json::parse(slurp(fs::path(cfg.output_dir) / "report.json"));
    CHECK(report["status"] == "ok");
  }

  SUBCASE("sweep over the shipped k list") {
    auto cfg = parse_config(slurp(fs::path(CONFIG_DIR) / "physical.conf"), {Mode::sweep, std::nullopt});
    cfg.output_dir = scratch("sweep").string();
    std::ostringstream log;
    REQUIRE(run(cfg, log) == exit_code::success);
    const auto rows = csv_rows(slurp(fs::path(cfg.output_dir) / "sweep.csv"));
    REQUIRE(rows.size() == 12);
    CHECK(rows[0] == std::vector<std::string>{"k", "tau0", "alpha", "ratio_to_first_row"});
    CHECK(std::stod(rows[1][3]) == 1.0);
    for (std::size_t i = 2; i < rows.size(); ++i) {
      CHECK(std::stod(rows[i][0]) < std::stod(rows[i - 1][0]));
      CHECK(std::stod(rows[i][1]) > std::stod(rows[i - 1][1]));
    }
  }
}

TEST_CASE("validate mode report") {
  auto cfg = parse_config(slurp(fs::path(FIXTURE_DIR) / "good.conf"), {Mode::validate, std::nullopt});
  cfg.output_dir = scratch("validate").string();
  std::ostringstream log;
  REQUIRE(run(cfg, log) == exit_code::success);
  const auto report = nlohmann::json::parse(slurp(fs::path(cfg.output_dir) / "report.json"));
  CHECK(report["diagnostics"]["caseA_vs_caseB"].get<double>() <= 1e-4);
  CHECK(report["diagnostics"]["analytic_vs_collocation"].get<double>() <= 1e-2);
  CHECK(report["params"]["k"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("exit codes of the command") {
  const fs::path fixtures(FIXTURE_DIR);
  const auto out = scratch("exit");
  CHECK(run_binary("--config " + (fixtures / "good.conf").string() + " --output " + (out / "good").string()) == 0);
  CHECK(fs::exists(out / "good" / "stress.csv"));
  CHECK(run_binary("--config " + (fixtures / "malformed.conf").string() + " --output " + (out / "bad").string()) == 2);
  CHECK_FALSE(fs::exists(out / "bad"));
  CHECK(run_binary("--config " + (fixtures / "hostile.conf").string() + " --output " + (out / "hostile").string()) == 3);
  const auto report = nlohmann::json::parse(slurp(out / "hostile" / "report.json"));
  CHECK(report["status"] == "failed");
  CHECK_FALSE(fs::exists(out / "hostile" / "stress.csv"));
  CHECK(run_binary("--config " + (fixtures / "missing.conf").string()) == 2);
  CHECK(run_binary("--config " + (fixtures / "good.conf").string() + " --mode fly") == 2);
  fs::remove_all(out.parent_path());
}
