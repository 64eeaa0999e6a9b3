#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <utility>

#include "whcontact/analysis.hpp"
#include "whcontact/cli.hpp"
#include "whcontact/oracle.hpp"
#include "whcontact/wiener_hopf.hpp"

namespace whcontact::cli {

namespace {

using json = nlohmann::ordered_json;
using Artifacts = std::vector<std::pair<std::string, std::string>>;

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

// nlohmann writes non-finite numbers as null; keep them readable instead.
json jnum(double v) { return std::isfinite(v) ? json(v) : json(num(v)); }

json params_json(const ModelParams& p) {
  return {{"lambda", p.lambda}, {"k", p.k}, {"kappa", p.kappa()}, {"T", p.T},
          {"case", whcontact::to_string(p.kind)}};
}

json certificate_json(const wh::FactorizationCertificate& c) {
  json samples = json::array();
  for (std::size_t i = 0; i < c.s_samples.size(); ++i) {
    samples.push_back({{"s", c.s_samples[i]},
                       {"G", c.G_values[i]},
                       {"Xplus", {c.Xplus_values[i].real(), c.Xplus_values[i].imag()}},
                       {"Xminus", {c.Xminus_values[i].real(), c.Xminus_values[i].imag()}}});
  }
  return {{"passed", c.passed()},
          {"tolerance", c.tolerance},
          {"max_jump_residual", c.max_jump_residual},
          {"infinity_residual", c.infinity_residual},
          {"min_modulus", c.min_modulus},
          {"samples", samples}};
}

Artifacts solve(const RunConfig& config, json& report) {
  const auto params = model_params(config);
  const auto c = wh::CoefficientCase::from(params);
  const auto solution = wh::spectral_solution(c, config.tolerances);
  const auto stress = wh::contact_stress(solution, x_grid(config), config.tolerances);

  std::string csv = "x,tau,phi,method\n";
  for (std::size_t i = 0; i < stress.x.size(); ++i)
    csv += num(stress.x[i]) + "," + num(stress.tau[i]) + "," + num(stress.phi[i]) + "," +
           to_string(stress.method) + "\n";

  json cert = certificate_json(solution.certificate());
  cert["params"] = params_json(params);
  json diag = json::object();
  for (const auto& [k, v] : stress.diagnostics) diag[k] = jnum(v);
  report["diagnostics"] = diag;
  return {{"stress.csv", csv}, {"certificate.json", cert.dump(2) + "\n"}};
}

Artifacts sweep(const RunConfig& config, json& report) {
  const Method method =
      config.case_choice == CaseChoice::case_a ? Method::wiener_hopf_A : Method::wiener_hopf_B;
  const auto table = analysis::sweep_table(config.material, config.k_list, method, config.tolerances);
  const auto ratio = table.ratio_to_first_row();
  std::string csv = "k,tau0,alpha,ratio_to_first_row\n";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    csv += num(r.k) + "," + num(r.tau0) + "," + num(r.alpha) + "," + num(ratio[i]) + "\n";
  }
  report["diagnostics"] = {{"trend_monotone", table.trend_monotone},
                           {"method", to_string(method)},
                           {"rows", table.rows.size()}};
  return {{"sweep.csv", csv}};
}

Artifacts validate(const RunConfig& config, json& report) {
  const auto diag = analysis::cross_validate(model_params(config), oracle::GridSpec{}, config.tolerances);
  json d = json::object();
  for (const auto& [k, v] : diag) d[k] = jnum(v);
  report["diagnostics"] = d;
  return {};
}

void write_all(const std::string& dir, const Artifacts& files) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, body] : files) {
    std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
    out << body;
    if (!out) throw std::runtime_error("cannot write " + (std::filesystem::path(dir) / name).string());
  }
}

}  // namespace

int run(const RunConfig& config, std::ostream& log, bool verbose) {
  json report;
  report["mode"] = to_string(config.mode);
  Artifacts files;
  int status = exit_code::success;
  try {
    report["params"] = params_json(model_params(config));
    if (verbose) log << validation_summary(config) << "\n";
    switch (config.mode) {
      case Mode::solve: files = solve(config, report); break;
      case Mode::sweep: files = sweep(config, report); break;
      case Mode::validate: files = validate(config, report); break;
    }
    report["status"] = "ok";
  } catch (const Error& e) {
    report["status"] = "failed";
    report["error"] = {{"code", whcontact::to_string(e.code())}, {"message", e.what()}};
    log << "numerical failure: " << e.what() << "\n";
    files.clear();
    status = exit_code::numerical_failure;
  }
  files.emplace_back("report.json", report.dump(2) + "\n");
  try {
    write_all(config.output_dir, files);
  } catch (const std::exception& e) {
    log << e.what() << "\n";
    return exit_code::numerical_failure;
  }
  if (verbose && status == exit_code::success)
    for (const auto& [name, body] : files) log << "wrote " << config.output_dir << "/" << name << "\n";
  return status;
}

}  // namespace whcontact::cli
