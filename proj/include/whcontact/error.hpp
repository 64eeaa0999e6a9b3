#pragma once

#include <stdexcept>
#include <string>

namespace whcontact {

enum class ErrorCode {
  invalid_argument,
  invalid_material,
  case_mismatch,
  nonconvergence,
  singular_endpoint,
  on_axis,
  lower_half_plane,
  certificate_failed,
  tail_fit_failed,
  realness_violation,
  singular_system,
  k_zero_unsupported,
  probe_out_of_range,
  sign_change_in_window,
  too_few_points,
  insufficient_domain,
  config_parse,
};

const char* to_string(ErrorCode code) noexcept;

// All library failures are reported through this type; code() identifies the
// failure class for callers that need to branch on it (the CLI maps it to an
// exit status).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace whcontact
