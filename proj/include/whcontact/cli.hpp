#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "whcontact/error.hpp"
#include "whcontact/params.hpp"
#include "whcontact/quadrature.hpp"

namespace whcontact::cli {

enum class Mode { solve, sweep, validate };
enum class CaseChoice { automatic, case_a, case_b, rigid };
enum class Spacing { log, linear };

const char* to_string(Mode m) noexcept;
const char* to_string(CaseChoice c) noexcept;
const char* to_string(Spacing s) noexcept;
std::optional<Mode> mode_from_string(std::string_view name);

struct RunConfig {
  MaterialSpec material;
  Mode mode = Mode::solve;
  CaseChoice case_choice = CaseChoice::automatic;
  double x_min = 0.0;  ///< m
  double x_max = 0.0;  ///< m
  int points = 0;
  Spacing spacing = Spacing::log;
  std::vector<double> k_list;  ///< m^2, sweep mode
  quad::QuadratureSpec tolerances;
  std::string output_dir = "whcontact-out";

  bool operator==(const RunConfig&) const = default;
};

/// Parse failure carrying one message per offending line or field.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct Overrides {
  std::optional<Mode> mode;
  std::optional<std::string> output_dir;
};

// Document format: one `key = value` per line, `#` starts a comment, lists
// are comma separated. Keys are the RunConfig field names; the case field is
// spelled `case`. Required: E1 nu1 h1 E2 nu2 h0 mu0 T mode, plus x_min x_max
// points in solve mode and k_list in sweep mode.
RunConfig parse_config(std::string_view document, const Overrides& overrides = {});

/// Text form accepted by parse_config; doubles keep 17 significant digits.
std::string emit_config(const RunConfig& config);

/// Derived model constants and the selected factorization case.
ModelParams model_params(const RunConfig& config);

/// One-paragraph echo of the derived constants (lambda, k, k / lambda^2, case).
std::string validation_summary(const RunConfig& config);

/// The x grid of solve mode.
std::vector<double> x_grid(const RunConfig& config);

namespace exit_code {
inline constexpr int success = 0;
inline constexpr int config_error = 2;
inline constexpr int numerical_failure = 3;
}  // namespace exit_code

/// Runs the configured mode and writes its artifacts into output_dir:
/// solve -> stress.csv, certificate.json; sweep -> sweep.csv;
/// validate -> report.json with the cross-validation figures. report.json is
/// also written (with the error) when a numerical step fails.
int run(const RunConfig& config, std::ostream& log, bool verbose = false);

}  // namespace whcontact::cli
