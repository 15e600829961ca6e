#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flatmod {

enum class ErrorCode {
  InvalidInput,
  InvalidArgument,
  InvalidClass,
  InvalidTarget,
  IllConditioned,
  NotSimilar,
  Capacity,
  UnsupportedClass,
  UnsupportedTarget,
  NoConstruction,
  UnsolvableByTheorem,
};

/// Machine-readable name used in JSON error objects ("ill-conditioned", ...).
std::string_view error_code_name(ErrorCode code);

/// Every failure the library reports. `detail` carries an optional numeric
/// payload: the cluster diameter for ill-conditioned eigenvalue clusters,
/// the offending residual for rejected targets.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, double detail = 0.0)
      : std::runtime_error(message), code_(code), detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  double detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  double detail_;
};

}  // namespace flatmod
