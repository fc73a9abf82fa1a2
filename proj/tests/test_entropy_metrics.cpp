#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qdiss/entropy_metrics.hpp"
#include "qdiss/experiment.hpp"
#include "qdiss/propagator.hpp"
#include "test_support.hpp"

using namespace qdiss;
using namespace qdiss::testing;

namespace {

// Double sum over both eigenbases: sum_i p_i log p_i - sum_ij p_i |<a_i|b_j>|^2 log q_j.
double relative_entropy_oracle(const ComplexMatrix4& r1, const ComplexMatrix4& r2) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix4> e1(r1), e2(r2);
  double out = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double p = e1.eigenvalues()(i);
    if (p <= 1e-14) continue;
    out += p * std::log(p);
    for (int j = 0; j < 4; ++j) {
      const double overlap = std::norm(e1.eigenvectors().col(i).dot(e2.eigenvectors().col(j)));
      out -= p * overlap * std::log(e2.eigenvalues()(j));
    }
  }
  return out;
}

double rel_to_asymptote(const FamilyState& s0, double alpha, double t) {
  return relative_entropy(evolve_family(s0, alpha, t), asymptotic_state(s0.c(), alpha)).value;
}

}  // namespace

TEST_CASE("von Neumann entropy examples") {
  CHECK(von_neumann_entropy(FamilyState(1, 0, 0, 0)) == 0.0);
  CHECK(std::abs(von_neumann_entropy(DensityMatrix(singlet_projector()))) < 1e-12);
  const DensityMatrix mixed(ComplexMatrix4::Identity() / 4.0);
  CHECK(std::abs(von_neumann_entropy(mixed) - std::log(4.0)) < 1e-14);
  const FamilyState s(0.1, 0.1, 0.7, 0.1);
  const double expect = -(3 * 0.1 * std::log(0.1) + 0.7 * std::log(0.7));
  CHECK(std::abs(von_neumann_entropy(s) - expect) < 1e-14);
  CHECK(std::abs(von_neumann_entropy(family_to_matrix(s)) - expect) < 1e-12);

  for (int i = 0; i < 200; ++i) {
    const double ent = von_neumann_entropy(random_density());
    CHECK(ent >= -1e-12);
    CHECK(ent <= std::log(4.0) + 1e-12);
  }
}

TEST_CASE("relative entropy examples") {
  const DensityMatrix rho = random_density();
  CHECK(std::abs(relative_entropy(rho, rho).value) < 1e-12);

  const DensityMatrix pure(projector(bell_like_basis().col(0)));
  const DensityMatrix mixed(ComplexMatrix4::Identity() / 4.0);
  const RelEntropyValue pm = relative_entropy(pure, mixed);
  CHECK_FALSE(pm.infinite);
  CHECK(std::abs(pm.value - std::log(4.0)) < 1e-12);

  const RelEntropyValue mp = relative_entropy(mixed, pure);
  CHECK(mp.infinite);
  CHECK(std::isinf(mp.value));

  // Separable reference state against its own asymptote at alpha = 1/2:
  // 0.5 log(0.5 / (3/26)) + 0.5 log(0.5 / 0.5).
  const RelEntropyValue kl =
      relative_entropy(FamilyState(0, 0.5, 0.5, 0), asymptotic_state(0.5, 0.5));
  CHECK_FALSE(kl.infinite);
  CHECK(std::abs(kl.value - 0.5 * std::log(13.0 / 3.0)) < 1e-14);

  const RelEntropyValue fam_inf =
      relative_entropy(FamilyState(0.5, 0, 0, 0.5), FamilyState(0, 0.5, 0, 0.5));
  CHECK(fam_inf.infinite);
}

TEST_CASE("relative entropy: co-diagonal states reduce to classical KL") {
  for (int i = 0; i < 500; ++i) {
    const FamilyState s1 = random_family();
    const FamilyState s2 = random_family();
    const RelEntropyValue q = relative_entropy(family_to_matrix(s1), family_to_matrix(s2));
    const RelEntropyValue c = relative_entropy(s1, s2);
    CHECK(q.infinite == c.infinite);
    CHECK(std::abs(q.value - c.value) < 1e-12);
  }
}

TEST_CASE("relative entropy: general states against the eigenbasis oracle") {
  for (int i = 0; i < 300; ++i) {
    const DensityMatrix r1 = random_density();
    const DensityMatrix r2 = random_density();
    const RelEntropyValue v = relative_entropy(r1, r2);
    CHECK_FALSE(v.infinite);
    CHECK(v.value >= -1e-12);
    CHECK(std::abs(v.value - relative_entropy_oracle(r1.matrix(), r2.matrix())) < 1e-9);
  }
}

TEST_CASE("relative entropy contracts under the dynamics") {
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix r1 = random_density();
    const DensityMatrix r2 = random_density();
    const ModelParams p(uniform(-0.95, 0.95), uniform(0.0, 2.0));
    const double t = uniform(0.0, 1.0);
    const double before = relative_entropy(r1, r2).value;
    const double after = relative_entropy(evolve_full(r1, p, t), evolve_full(r2, p, t)).value;
    CHECK(after <= before + 1e-10);
  }
}

TEST_CASE("relative entropy to the asymptote is nonincreasing") {
  for (int i = 0; i < 100; ++i) {
    const FamilyState s0 = random_family();
    const double alpha = uniform(-0.95, 0.95);
    double prev = rel_to_asymptote(s0, alpha, 0.0);
    for (double t = 0.02; t <= 2.0; t += 0.02) {
      const double cur = rel_to_asymptote(s0, alpha, t);
      CHECK(cur <= prev + 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("entropy_rate") {
  CHECK(std::abs(entropy_rate(asymptotic_state(0.3, 0.4), 0.4, 0.5)) < 1e-15);
  CHECK(entropy_rate(FamilyState(0, 0, 1, 0), 0.4, 0.5) == 0.0);
  CHECK(std::isinf(entropy_rate(FamilyState(1, 0, 0, 0), 0.5, 0.0)));
  CHECK(std::abs(entropy_rate(FamilyState(1, 0, 0, 0), 0.5, 40.0)) < 1e-12);

  const double h = 1e-6;
  for (int i = 0; i < 200; ++i) {
    const FamilyState s0 = i < 5 ? case_state(i + 1) : random_family();
    const double alpha = uniform(-0.95, 0.95);
    const double t = uniform(0.01, 2.0);
    const double sigma = entropy_rate(s0, alpha, t);
    const double fd =
        -(rel_to_asymptote(s0, alpha, t + h) - rel_to_asymptote(s0, alpha, t - h)) / (2 * h);
    CHECK(sigma >= 0.0);
    CHECK(std::abs(sigma - fd) < 1e-6);
  }
}
