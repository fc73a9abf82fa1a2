#include "qdiss/state_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "qdiss/errors.hpp"

namespace qdiss {

namespace {

double clamp_weight(double w, const char* name) {
  if (!std::isfinite(w)) {
    throw std::invalid_argument(std::string("FamilyState: weight ") + name +
                                " is not finite");
  }
  if (w < 0.0) {
    if (w < -kWeightClamp) {
      std::ostringstream msg;
      msg << "FamilyState: weight " << name << " = " << w << " is negative";
      throw std::invalid_argument(msg.str());
    }
    return 0.0;
  }
  return w;
}

}  // namespace

FamilyState::FamilyState(double a, double b, double c, double d)
    : a_(clamp_weight(a, "a")),
      b_(clamp_weight(b, "b")),
      c_(clamp_weight(c, "c")),
      d_(clamp_weight(d, "d")) {
  const double total = a_ + b_ + c_ + d_;
  if (std::abs(total - 1.0) > kTraceTolerance) {
    std::ostringstream msg;
    msg << "FamilyState: weights sum to " << total << ", expected 1";
    throw std::invalid_argument(msg.str());
  }
}

DensityMatrix::DensityMatrix(const ComplexMatrix4& m) {
  const Spectrum4 spec = eig_hermitian(m);
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    std::ostringstream msg;
    msg << "DensityMatrix: trace " << tr << " differs from 1";
    throw NumericError(msg.str());
  }
  if (spec.eigenvalues(0) < -kPositivityTolerance) {
    std::ostringstream msg;
    msg << "DensityMatrix: negative eigenvalue " << spec.eigenvalues(0);
    throw NumericError(msg.str());
  }
  m_ = 0.5 * (m + m.adjoint());
}

const ComplexMatrix4& bell_like_basis() {
  static const ComplexMatrix4 basis = [] {
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix4 u = ComplexMatrix4::Zero();
    u(0, 0) = 1.0;  // |1> = |00>
    u(3, 1) = 1.0;  // |2> = |11>
    u(1, 2) = r;    // |3> = (|01> + |10>)/sqrt2
    u(2, 2) = r;
    u(1, 3) = r;    // |4> = (|01> - |10>)/sqrt2
    u(2, 3) = -r;
    return u;
  }();
  return basis;
}

ComplexMatrix4 to_bell_like(const ComplexMatrix4& m) {
  const ComplexMatrix4& u = bell_like_basis();
  return u.adjoint() * m * u;
}

ComplexMatrix4 from_bell_like(const ComplexMatrix4& m) {
  const ComplexMatrix4& u = bell_like_basis();
  return u * m * u.adjoint();
}

DensityMatrix family_to_matrix(const FamilyState& s) {
  ComplexMatrix4 m = ComplexMatrix4::Zero();
  m(0, 0) = s.a();
  m(1, 1) = m(2, 2) = 0.5 * (s.b() + s.c());
  m(1, 2) = m(2, 1) = 0.5 * (s.b() - s.c());
  m(3, 3) = s.d();
  return DensityMatrix(m);
}

FamilyState matrix_to_family(const DensityMatrix& rho) {
  const ComplexMatrix4 p = to_bell_like(rho.matrix());
  double worst = 0.0;
  int wi = 0, wj = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double mag = i == j ? std::abs(p(i, i).imag()) : std::abs(p(i, j));
      if (mag > worst) {
        worst = mag;
        wi = i;
        wj = j;
      }
    }
  }
  if (worst > kFamilyTolerance) {
    std::ostringstream msg;
    msg << "matrix_to_family: state is not diagonal in the |1>..|4> basis "
           "(|<"
        << wi + 1 << "|rho|" << wj + 1 << ">| = " << worst << ")";
    throw NumericError(msg.str());
  }
  // Renormalise away roundoff so the FamilyState invariant holds exactly.
  double a = p(0, 0).real(), d = p(1, 1).real();
  double b = p(2, 2).real(), c = p(3, 3).real();
  const double total = a + b + c + d;
  return FamilyState(a / total, b / total, c / total, d / total);
}

double concurrence(const DensityMatrix& rho) {
  // The lambda_i are the singular values of sqrt(rho) sqrt(rho~), with
  // sqrt(rho~) = (s2 x s2) conj(sqrt(rho)) (s2 x s2). Taking singular values
  // directly avoids square roots of roundoff-level eigenvalues.
  const PauliOps& ops = pauli_ops();
  const ComplexMatrix4 yy = kron(ops.sigma2, ops.sigma2);
  const ComplexMatrix4 root = apply_spectral(
      eig_hermitian(rho.matrix()),
      [](double x) { return x > kSupportCutoff ? std::sqrt(x) : 0.0; });
  const ComplexMatrix4 x = root * yy * root.conjugate() * yy;
  const Eigen::JacobiSVD<ComplexMatrix4> svd(x);
  const RealVector4 lam = svd.singularValues();  // descending
  return std::max(0.0, lam(0) - lam(1) - lam(2) - lam(3));
}

double concurrence_signed_family(const FamilyState& s) {
  return std::abs(s.b() - s.c()) - 2.0 * std::sqrt(s.a() * s.d());
}

double concurrence_family(const FamilyState& s) {
  return std::max(0.0, concurrence_signed_family(s));
}

bool is_separable_ppt(const DensityMatrix& rho) {
  ComplexMatrix4 pt = partial_transpose_second(rho.matrix());
  const double min_ev = eig_hermitian(pt).eigenvalues(0);
  return min_ev >= -kPositivityTolerance;
}

}  // namespace qdiss
