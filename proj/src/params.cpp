#include "whcontact/params.hpp"

#include <cmath>
#include <sstream>

#include "whcontact/error.hpp"

namespace whcontact {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::invalid_material: return "invalid-material";
    case ErrorCode::case_mismatch: return "case-mismatch";
    case ErrorCode::nonconvergence: return "nonconvergence";
    case ErrorCode::singular_endpoint: return "singular-endpoint";
    case ErrorCode::on_axis: return "on-axis";
    case ErrorCode::lower_half_plane: return "lower-half-plane";
    case ErrorCode::certificate_failed: return "certificate-failed";
    case ErrorCode::tail_fit_failed: return "tail-fit-failed";
    case ErrorCode::realness_violation: return "realness-violation";
    case ErrorCode::singular_system: return "singular-system";
    case ErrorCode::k_zero_unsupported: return "k-zero-unsupported";
    case ErrorCode::probe_out_of_range: return "probe-out-of-range";
    case ErrorCode::sign_change_in_window: return "sign-change-in-window";
    case ErrorCode::too_few_points: return "too-few-points";
    case ErrorCode::insufficient_domain: return "insufficient-domain";
    case ErrorCode::config_parse: return "config-parse-error";
  }
  return "unknown";
}

const char* to_string(CaseKind kind) noexcept {
  switch (kind) {
    case CaseKind::case_a: return "case_a";
    case CaseKind::case_b: return "case_b";
    case CaseKind::rigid_limit: return "rigid";
  }
  return "unknown";
}

CaseKind case_kind_from_string(const std::string& name) {
  if (name == "case_a") return CaseKind::case_a;
  if (name == "case_b") return CaseKind::case_b;
  if (name == "rigid") return CaseKind::rigid_limit;
  throw Error(ErrorCode::invalid_argument, "unknown case '" + name + "'");
}

std::vector<std::string> MaterialSpec::violations() const {
  std::vector<std::string> out;
  auto check = [&](bool ok, const char* field, const char* bound, double value) {
    if (ok) return;
    std::ostringstream os;
    os << field << " = " << value << " violates " << bound;
    out.push_back(os.str());
  };
  check(std::isfinite(E1) && E1 > 0.0, "E1", "E1 > 0", E1);
  check(std::isfinite(nu1) && nu1 >= 0.0 && nu1 < 1.0, "nu1", "0 <= nu1 < 1", nu1);
  check(std::isfinite(h1) && h1 > 0.0, "h1", "h1 > 0", h1);
  check(std::isfinite(E2) && E2 > 0.0, "E2", "E2 > 0", E2);
  check(std::isfinite(nu2) && nu2 >= 0.0 && nu2 < 0.5, "nu2", "0 <= nu2 < 0.5", nu2);
  check(std::isfinite(h0) && h0 >= 0.0, "h0", "h0 >= 0", h0);
  check(std::isfinite(mu0) && mu0 > 0.0, "mu0", "mu0 > 0", mu0);
  check(std::isfinite(T), "T", "finite T", T);
  return out;
}

void MaterialSpec::validate() const {
  const auto bad = violations();
  if (!bad.empty()) throw Error(ErrorCode::invalid_material, bad.front());
}

double patch_stiffness(const MaterialSpec& spec) {
  return spec.E1 * spec.h1 / (1.0 - spec.nu1 * spec.nu1);
}

double plate_compliance(const MaterialSpec& spec) {
  return 2.0 * (1.0 - spec.nu2 * spec.nu2) / spec.E2;
}

CaseKind auto_case(double k) noexcept {
  return k > 0.0 ? CaseKind::case_b : CaseKind::rigid_limit;
}

ModelParams make_model_params(double lambda, double k, double T, CaseKind kind) {
  if (!(std::isfinite(lambda) && lambda > 0.0))
    throw Error(ErrorCode::invalid_argument, "lambda must be positive");
  if (!(std::isfinite(k) && k >= 0.0))
    throw Error(ErrorCode::invalid_argument, "k must be non-negative");
  if (!std::isfinite(T)) throw Error(ErrorCode::invalid_argument, "T must be finite");
  if (kind == CaseKind::rigid_limit && k != 0.0)
    throw Error(ErrorCode::case_mismatch, "rigid limit requested with k > 0");
  if (kind != CaseKind::rigid_limit && k == 0.0)
    throw Error(ErrorCode::case_mismatch,
                std::string(to_string(kind)) + " requested with k = 0");
  ModelParams p;
  p.lambda = lambda;
  p.k = k;
  p.ktilde = k / lambda;
  p.T = T;
  p.kind = kind;
  return p;
}

ModelParams derive_model_params(const MaterialSpec& spec, CaseKind kind) {
  spec.validate();
  const double e0 = patch_stiffness(spec);
  const double lambda = plate_compliance(spec) * e0;
  const double k = (spec.h0 / spec.mu0) * e0;
  return make_model_params(lambda, k, spec.T, kind);
}

}  // namespace whcontact
