#pragma once

#include <span>
#include <vector>

#include "qdiss/matrix_core.hpp"
#include "qdiss/state_model.hpp"

namespace qdiss {

// Time is measured in units where the overall dissipative strength is 1:
// the Kossakowski matrix below has unit diagonal, which fixes the decay
// constants e^{-4t} ... e^{-12t} of the closed-form solution.

/// Kossakowski asymmetry alpha (alpha^2 <= 1) and the free frequency omega of
/// the Hamiltonian (omega/2) Sigma_3.
class ModelParams {
 public:
  explicit ModelParams(double alpha, double omega = 1.0);

  double alpha() const { return alpha_; }
  double omega() const { return omega_; }

 private:
  double alpha_;
  double omega_;
};

/// A = [[1, i alpha, 0], [-i alpha, 1, 0], [0, 0, 1]]; PSD iff alpha^2 <= 1.
Eigen::Matrix3cd kossakowski_matrix(double alpha);

/// E_+- = e^{-8t} {cosh, sinh}(4t sqrt(1-alpha^2)),
/// F_+- = e^{-8t} {cosh, sinh}(2t sqrt(4-3alpha^2)).
struct Kernels {
  double e_plus;
  double e_minus;
  double f_plus;
  double f_minus;
};

/// Evaluated as sums of decaying exponentials, so large t underflows to 0
/// instead of overflowing. Throws std::invalid_argument for t < 0 or
/// |alpha| > 1.
Kernels kernels(double alpha, double t);

/// Closed-form evolution of a diagonal-family state. c is conserved exactly.
/// Throws ClosedFormUnavailable for |alpha| = 1.
FamilyState evolve_family(const FamilyState& s0, double alpha, double t);

/// Closed-form evolution of an arbitrary two-qubit state: decoupled
/// coherences, the coupled (13, 32) pair, the coupled populations, then the
/// Schroedinger-picture phases. Throws ClosedFormUnavailable for |alpha| = 1.
DensityMatrix evolve_full(const DensityMatrix& rho0, const ModelParams& params,
                          double t);

/// The generator
///   L[rho] = -i (omega/2) [Sigma_3, rho]
///            + sum_ij A_ij (Sigma_i rho Sigma_j - {Sigma_j Sigma_i, rho}/2)
/// applied once.
ComplexMatrix4 lindblad_rhs(const ComplexMatrix4& rho, const ModelParams& params);
ComplexMatrix4 lindblad_rhs(const DensityMatrix& rho, const ModelParams& params);

/// Classical fixed-step RK4 on lindblad_rhs. Steps are t/ceil(t/dt).
DensityMatrix integrate_rk4(const DensityMatrix& rho0, const ModelParams& params,
                            double t, double dt = 1e-4);

/// RK4 trajectory sampled at ascending `times` in a single pass.
std::vector<DensityMatrix> integrate_rk4_samples(const DensityMatrix& rho0,
                                                 const ModelParams& params,
                                                 std::span<const double> times,
                                                 double dt = 1e-4);

/// The stationary state reached from every family state with weight c on |4>.
FamilyState asymptotic_state(double c, double alpha);

/// Time derivatives of the evolved family weights.
struct FamilyRate {
  double da;
  double db;
  double dd;
};

FamilyRate family_rate(const FamilyState& s0, double alpha, double t);

}  // namespace qdiss
