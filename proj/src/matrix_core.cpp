#include "qdiss/matrix_core.hpp"

#include <cmath>
#include <sstream>

#include "qdiss/errors.hpp"

namespace qdiss {

ComplexMatrix4 Spectrum4::reconstruct() const {
  return apply_spectral(*this, [](double x) { return x; });
}

double max_asymmetry(const ComplexMatrix4& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Spectrum4 eig_hermitian(const ComplexMatrix4& m) {
  const double asym = max_asymmetry(m);
  if (!(asym <= kHermitianTolerance)) {
    std::ostringstream msg;
    msg << "eig_hermitian: matrix is not Hermitian (max |m - m^dagger| = "
        << asym << ")";
    throw NumericError(msg.str());
  }
  const ComplexMatrix4 sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix4> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eig_hermitian: eigensolver did not converge");
  }
  Spectrum4 spec{solver.eigenvalues(), solver.eigenvectors()};
  for (int k = 0; k < 4; ++k) {
    auto v = spec.eigenvectors.col(k);
    int pivot = 0;
    for (int i = 1; i < 4; ++i) {
      // A small margin keeps the pivot choice stable under roundoff when
      // two components have equal magnitude.
      if (std::abs(v(i)) > std::abs(v(pivot)) + 1e-12) pivot = i;
    }
    const Complex z = v(pivot);
    if (std::abs(z) > 0.0) v *= std::conj(z) / std::abs(z);
  }
  return spec;
}

ComplexMatrix4 mat_log_support(const ComplexMatrix4& m, double cutoff) {
  const Spectrum4 spec = eig_hermitian(m);
  if (spec.eigenvalues(0) < -kNegativityTolerance) {
    std::ostringstream msg;
    msg << "mat_log_support: negative eigenvalue " << spec.eigenvalues(0);
    throw NumericError(msg.str());
  }
  return apply_spectral(
      spec, [cutoff](double x) { return x < cutoff ? 0.0 : std::log(x); });
}

ComplexMatrix4 mat_exp_hermitian(const ComplexMatrix4& m) {
  return apply_spectral(eig_hermitian(m), [](double x) { return std::exp(x); });
}

ComplexMatrix4 mat_sqrt_psd(const ComplexMatrix4& m) {
  return apply_spectral(eig_hermitian(m),
                        [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

ComplexMatrix4 partial_transpose_second(const ComplexMatrix4& m) {
  ComplexMatrix4 out;
  for (int i1 = 0; i1 < 2; ++i1)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int i2 = 0; i2 < 2; ++i2)
        for (int j2 = 0; j2 < 2; ++j2)
          out(2 * i1 + j1, 2 * i2 + j2) = m(2 * i1 + j2, 2 * i2 + j1);
  return out;
}

ComplexMatrix4 kron(const ComplexMatrix2& lhs, const ComplexMatrix2& rhs) {
  ComplexMatrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = lhs(i, j) * rhs;
  return out;
}

namespace {

PauliOps make_pauli_ops() {
  const Complex i(0.0, 1.0);
  PauliOps ops;
  ops.sigma1 << 0.0, 1.0, 1.0, 0.0;
  ops.sigma2 << 0.0, -i, i, 0.0;
  ops.sigma3 << 1.0, 0.0, 0.0, -1.0;
  const ComplexMatrix2 id = ComplexMatrix2::Identity();
  ops.big_sigma1 = kron(ops.sigma1, id) + kron(id, ops.sigma1);
  ops.big_sigma2 = kron(ops.sigma2, id) + kron(id, ops.sigma2);
  ops.big_sigma3 = kron(ops.sigma3, id) + kron(id, ops.sigma3);
  ops.sigma_plus = 0.5 * (ops.big_sigma1 + i * ops.big_sigma2);
  ops.sigma_minus = 0.5 * (ops.big_sigma1 - i * ops.big_sigma2);
  return ops;
}

}  // namespace

const PauliOps& pauli_ops() {
  static const PauliOps ops = make_pauli_ops();
  return ops;
}

}  // namespace qdiss
