#pragma once

#include <string>
#include <vector>

namespace whcontact {

/// Raw physical constants of the plate, the patch, the glue layer and the end
/// load. SI units throughout.
struct MaterialSpec {
  double E1 = 0.0;   ///< patch Young modulus (Pa)
  double nu1 = 0.0;  ///< patch Poisson ratio
  double h1 = 0.0;   ///< patch thickness (m)
  double E2 = 0.0;   ///< plate Young modulus (Pa)
  double nu2 = 0.0;  ///< plate Poisson ratio
  double h0 = 0.0;   ///< glue layer thickness (m)
  double mu0 = 0.0;  ///< glue shear modulus (Pa)
  double T = 1.0;    ///< end load (N/m)

  /// Every violated bound, one message per field.
  std::vector<std::string> violations() const;
  /// Throws Error(invalid_material) naming the first violated bound.
  void validate() const;

  bool operator==(const MaterialSpec&) const = default;
};

/// Which factorization of the Riemann problem coefficient to use.
enum class CaseKind { case_a, case_b, rigid_limit };

const char* to_string(CaseKind kind) noexcept;
CaseKind case_kind_from_string(const std::string& name);

/// Model constants of the integro-differential equation
///   phi - (lambda/pi) PV int_0^inf phi'(t) dt/(t - x) - k phi'' = 0.
struct ModelParams {
  double lambda = 1.0;  ///< plate compliance times patch stiffness (m)
  double k = 0.0;       ///< glue compliance times patch stiffness (m^2)
  double ktilde = 0.0;  ///< k / lambda
  double T = 1.0;       ///< end load (N/m)
  CaseKind kind = CaseKind::case_b;

  /// Glue stiffness in units of lambda: k / lambda^2.
  double kappa() const noexcept { return k / (lambda * lambda); }
};

/// E0 = E1 h1 / (1 - nu1^2).
double patch_stiffness(const MaterialSpec& spec);

/// b = 2 (1 - nu2^2) / E2.
double plate_compliance(const MaterialSpec& spec);

ModelParams derive_model_params(const MaterialSpec& spec, CaseKind kind);

/// Builds params directly from (lambda, k, T), enforcing the same case rules.
ModelParams make_model_params(double lambda, double k, double T, CaseKind kind);

/// case_b for k > 0, rigid_limit for k == 0.
CaseKind auto_case(double k) noexcept;

}  // namespace whcontact
