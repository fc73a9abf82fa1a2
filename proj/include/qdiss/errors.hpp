#pragma once

#include <stdexcept>
#include <string>

namespace qdiss {

/// Raised when an input violates a numeric precondition (non-Hermitian,
/// negative spectrum, not a family state, ...).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the closed-form propagators when |alpha| = 1. The closed-form
/// coefficients carry 1/(1 +- alpha) factors there; use integrate_rk4.
class ClosedFormUnavailable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace qdiss
