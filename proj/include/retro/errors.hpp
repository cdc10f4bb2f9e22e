#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace retro {

enum class ErrorKind {
  invalid_argument,
  out_of_range,
  out_of_domain,
  singular_system,
  incompatible_system,
  convergence_failure,
  internal_consistency,
  ill_conditioned,
  quadrature_failure,
  amplification_overflow,
  domain_error,
  not_implemented,
  numerical_failure,
  config_error,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

  /// Config/validation problems as opposed to numerical breakdowns.
  bool is_config_error() const noexcept;

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace retro
