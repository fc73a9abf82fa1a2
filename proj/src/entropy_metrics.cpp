#include "qdiss/entropy_metrics.hpp"

#include <cmath>
#include <limits>

#include "qdiss/propagator.hpp"

namespace qdiss {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

double von_neumann_entropy(const DensityMatrix& rho) {
  const RealVector4 ev = eig_hermitian(rho.matrix()).eigenvalues;
  double s = 0.0;
  for (int k = 0; k < 4; ++k)
    if (ev(k) >= kSupportCutoff) s -= xlogx(ev(k));
  return std::max(0.0, s);
}

double von_neumann_entropy(const FamilyState& s) {
  double h = 0.0;
  for (double w : s.weights()) h -= xlogx(w);
  return std::max(0.0, h);
}

RelEntropyValue relative_entropy(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  const Spectrum4 s1 = eig_hermitian(rho1.matrix());
  const Spectrum4 s2 = eig_hermitian(rho2.matrix());
  // Weight of rho1 on the kernel of rho2.
  double leak = 0.0;
  for (int k = 0; k < 4; ++k) {
    if (s2.eigenvalues(k) < kSupportCutoff) {
      const ComplexVector4 v = s2.eigenvectors.col(k);
      leak += (v.adjoint() * rho1.matrix() * v)(0, 0).real();
    }
  }
  if (leak > kSupportCutoff) return {kInf, true};

  double value = 0.0;
  for (int k = 0; k < 4; ++k) value += xlogx(std::max(s1.eigenvalues(k), 0.0));
  const ComplexMatrix4 log2 = mat_log_support(rho2.matrix());
  value -= (rho1.matrix() * log2).trace().real();
  return {value, false};
}

RelEntropyValue relative_entropy(const FamilyState& s1, const FamilyState& s2) {
  const auto p = s1.weights();
  const auto q = s2.weights();
  double value = 0.0;
  for (int k = 0; k < 4; ++k) {
    if (p[k] <= 0.0) continue;
    if (q[k] <= 0.0) return {kInf, true};
    value += p[k] * std::log(p[k] / q[k]);
  }
  return {value, false};
}

double entropy_rate(const FamilyState& s0, double alpha, double t) {
  if (s0.c() >= 1.0) return 0.0;
  const FamilyState st = evolve_family(s0, alpha, t);
  const FamilyState inf = asymptotic_state(s0.c(), alpha);
  const FamilyRate rate = family_rate(s0, alpha, t);

  const double weight[3] = {st.a(), st.b(), st.d()};
  const double target[3] = {inf.a(), inf.b(), inf.d()};
  const double deriv[3] = {rate.da, rate.db, rate.dd};
  double sigma = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (deriv[i] == 0.0) continue;
    if (weight[i] <= 0.0) return kInf;
    sigma += deriv[i] * std::log(target[i] / weight[i]);
  }
  return sigma;
}

}  // namespace qdiss
