#pragma once

// Dense 4x4 / 2x2 complex linear algebra used by the two-qubit model.
// Logarithms are natural logarithms throughout; entropies are in nats.

#include <complex>

#include <Eigen/Dense>

namespace qdiss {

using Complex = std::complex<double>;
using ComplexMatrix2 = Eigen::Matrix2cd;
using ComplexMatrix4 = Eigen::Matrix4cd;
using ComplexVector4 = Eigen::Vector4cd;
using RealVector4 = Eigen::Vector4d;

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kSupportCutoff = 1e-12;
inline constexpr double kNegativityTolerance = 1e-10;

/// Eigen-decomposition of a Hermitian 4x4 matrix.
///
/// Eigenvalues are ascending. Column k of `eigenvectors` belongs to
/// eigenvalue k and is phase-fixed so that its largest-magnitude component
/// is real and positive.
struct Spectrum4 {
  RealVector4 eigenvalues;
  ComplexMatrix4 eigenvectors;

  /// sum_k lambda_k |v_k><v_k|
  ComplexMatrix4 reconstruct() const;
};

/// Largest entrywise |m - m^dagger|.
double max_asymmetry(const ComplexMatrix4& m);

/// Throws NumericError (reporting the asymmetry) if m is not Hermitian
/// within kHermitianTolerance.
Spectrum4 eig_hermitian(const ComplexMatrix4& m);

/// Apply a real scalar function to the spectrum of a Hermitian matrix.
template <typename Fn>
ComplexMatrix4 apply_spectral(const Spectrum4& spec, Fn&& fn) {
  ComplexMatrix4 out = ComplexMatrix4::Zero();
  for (int k = 0; k < 4; ++k) {
    const ComplexVector4 v = spec.eigenvectors.col(k);
    out += fn(spec.eigenvalues(k)) * (v * v.adjoint());
  }
  return out;
}

/// Logarithm on the support: eigenvalues below `cutoff` contribute 0.
/// Throws NumericError if an eigenvalue is below -kNegativityTolerance.
ComplexMatrix4 mat_log_support(const ComplexMatrix4& m,
                               double cutoff = kSupportCutoff);

/// exp of a Hermitian matrix via its eigendecomposition.
ComplexMatrix4 mat_exp_hermitian(const ComplexMatrix4& m);

/// Principal square root of a PSD matrix; small negative eigenvalues are
/// clamped to zero.
ComplexMatrix4 mat_sqrt_psd(const ComplexMatrix4& m);

/// Transpose of the second tensor factor in the |q1 q2> ordering
/// |00>,|01>,|10>,|11>.
ComplexMatrix4 partial_transpose_second(const ComplexMatrix4& m);

ComplexMatrix4 kron(const ComplexMatrix2& lhs, const ComplexMatrix2& rhs);

/// Pauli matrices and the collective operators Sigma_i = s_i (x) I + I (x) s_i,
/// Sigma_+- = (Sigma_1 +- i Sigma_2) / 2.
struct PauliOps {
  ComplexMatrix2 sigma1, sigma2, sigma3;
  ComplexMatrix4 big_sigma1, big_sigma2, big_sigma3;
  ComplexMatrix4 sigma_plus, sigma_minus;
};

const PauliOps& pauli_ops();

}  // namespace qdiss
