#pragma once

#include <stdexcept>
#include <string>

namespace psu {

enum class ErrorCode {
  invalid_argument,
  domain_violation,
  one_sided_limit,
  buchdahl_violation,
  audit_refused,
  not_rigid,
  non_null_initial_data,
  step_underflow,
  guard_band,
  no_minimal_boundary,
  config,
  io,
};

const char* to_string(ErrorCode code);

// Single exception type for the core; the C API maps `code()` onto psu_status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, double detail = 0.0)
      : std::runtime_error(what), code_(code), detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  // Auxiliary number carried by some errors (Buchdahl ratio, failing residual).
  double detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  double detail_;
};

}  // namespace psu
