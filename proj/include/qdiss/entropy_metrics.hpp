#pragma once

#include "qdiss/state_model.hpp"

namespace qdiss {

/// Quantum relative entropy S(rho1 || rho2) in nats. `infinite` is set when
/// supp(rho1) is not contained in supp(rho2); `value` is then +inf.
struct RelEntropyValue {
  double value;
  bool infinite;
};

/// -Tr rho log rho with 0 log 0 = 0.
double von_neumann_entropy(const DensityMatrix& rho);
double von_neumann_entropy(const FamilyState& s);

RelEntropyValue relative_entropy(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Co-diagonal shortcut: the classical KL divergence of the weight vectors.
RelEntropyValue relative_entropy(const FamilyState& s1, const FamilyState& s2);

/// sigma = -d/dt S(rho_t || rho_inf) for the family trajectory from s0.
///
/// Uses the analytic weight derivatives. Returns 0 for c = 1 (the singlet is
/// a fixed point) and +inf when a weight vanishes while its derivative does
/// not, which only happens at t = 0.
double entropy_rate(const FamilyState& s0, double alpha, double t);

}  // namespace qdiss
