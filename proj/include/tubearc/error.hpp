#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tubearc {

enum class ErrorCode {
  invalid_argument,
  invalid_config,
  index_out_of_range,
  ill_conditioned_overlap,
  hermiticity_failure,
  io_failure,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; `code()` is what the CLI reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tubearc
