#include "retro/errors.hpp"

namespace retro {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::out_of_range: return "out-of-range";
    case ErrorKind::out_of_domain: return "out-of-domain";
    case ErrorKind::singular_system: return "singular-system";
    case ErrorKind::incompatible_system: return "incompatible-system";
    case ErrorKind::convergence_failure: return "convergence-failure";
    case ErrorKind::internal_consistency: return "internal-consistency";
    case ErrorKind::ill_conditioned: return "ill-conditioned";
    case ErrorKind::quadrature_failure: return "quadrature-failure";
    case ErrorKind::amplification_overflow: return "amplification-overflow";
    case ErrorKind::domain_error: return "domain-error";
    case ErrorKind::not_implemented: return "not-implemented";
    case ErrorKind::numerical_failure: return "numerical-failure";
    case ErrorKind::config_error: return "config-error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

bool Error::is_config_error() const noexcept {
  return kind_ == ErrorKind::config_error || kind_ == ErrorKind::invalid_argument ||
         kind_ == ErrorKind::not_implemented || kind_ == ErrorKind::domain_error;
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace retro
