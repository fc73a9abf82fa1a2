#include <cmath>

#include "doctest.h"
#include "qdiss/errors.hpp"
#include "qdiss/matrix_core.hpp"
#include "test_support.hpp"

using namespace qdiss;
using namespace qdiss::testing;

TEST_CASE("eig_hermitian on simple spectra") {
  SUBCASE("scalar matrix") {
    const Spectrum4 s = eig_hermitian(ComplexMatrix4::Identity() / 4.0);
    for (int k = 0; k < 4; ++k) CHECK(s.eigenvalues(k) == doctest::Approx(0.25).epsilon(1e-14));
  }
  SUBCASE("singlet projector") {
    const Spectrum4 s = eig_hermitian(singlet_projector());
    CHECK(std::abs(s.eigenvalues(0)) < 1e-14);
    CHECK(std::abs(s.eigenvalues(1)) < 1e-14);
    CHECK(std::abs(s.eigenvalues(2)) < 1e-14);
    CHECK(std::abs(s.eigenvalues(3) - 1.0) < 1e-14);
  }
  SUBCASE("diagonal input comes back sorted") {
    ComplexMatrix4 m = ComplexMatrix4::Zero();
    m.diagonal() << 0.1, 0.4, 0.3, 0.2;
    const Spectrum4 s = eig_hermitian(m);
    const double expected[4] = {0.1, 0.2, 0.3, 0.4};
    for (int k = 0; k < 4; ++k) CHECK(std::abs(s.eigenvalues(k) - expected[k]) < 1e-15);
  }
}

TEST_CASE("eig_hermitian rejects non-Hermitian input") {
  ComplexMatrix4 m = ComplexMatrix4::Identity();
  m(0, 1) = 0.5;
  CHECK_THROWS_AS(eig_hermitian(m), NumericError);
  try {
    eig_hermitian(m);
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("0.5") != std::string::npos);
  }
}

TEST_CASE("eigendecomposition properties on random Hermitian matrices") {
  for (int trial = 0; trial < 200; ++trial) {
    const ComplexMatrix4 m = random_hermitian();
    const Spectrum4 s = eig_hermitian(m);
    CHECK(max_abs_diff(s.reconstruct(), m) < 1e-10);
    const ComplexMatrix4 gram = s.eigenvectors.adjoint() * s.eigenvectors;
    CHECK(max_abs_diff(gram, ComplexMatrix4::Identity()) < 1e-10);
    for (int k = 0; k + 1 < 4; ++k) CHECK(s.eigenvalues(k) <= s.eigenvalues(k + 1));

    // Unitary from another random Hermitian matrix.
    const ComplexMatrix4 u = eig_hermitian(random_hermitian()).eigenvectors;
    const Spectrum4 rotated = eig_hermitian(u * m * u.adjoint());
    CHECK((rotated.eigenvalues - s.eigenvalues).cwiseAbs().maxCoeff() < 1e-10);

    // Phase convention: largest component is real and positive.
    for (int k = 0; k < 4; ++k) {
      int pivot = 0;
      for (int i = 1; i < 4; ++i)
        if (std::abs(s.eigenvectors(i, k)) > std::abs(s.eigenvectors(pivot, k)) + 1e-12) pivot = i;
      CHECK(std::abs(s.eigenvectors(pivot, k).imag()) < 1e-14);
      CHECK(s.eigenvectors(pivot, k).real() > 0.0);
    }
  }
}

TEST_CASE("eig_hermitian is deterministic") {
  const ComplexMatrix4 m = random_hermitian();
  const Spectrum4 a = eig_hermitian(m);
  const Spectrum4 b = eig_hermitian(m);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvectors == b.eigenvectors);
}

TEST_CASE("mat_log_support") {
  CHECK(mat_log_support(ComplexMatrix4::Identity()).cwiseAbs().maxCoeff() < 1e-15);

  ComplexMatrix4 half = ComplexMatrix4::Zero();
  half(0, 0) = half(1, 1) = 0.5;
  ComplexMatrix4 expected = ComplexMatrix4::Zero();
  expected(0, 0) = expected(1, 1) = std::log(0.5);
  CHECK(max_abs_diff(mat_log_support(half), expected) < 1e-14);

  const ComplexMatrix4 mixed = ComplexMatrix4::Identity() / 4.0;
  CHECK(max_abs_diff(mat_log_support(mixed), std::log(0.25) * ComplexMatrix4::Identity()) < 1e-14);
  CHECK(std::log(0.25) == doctest::Approx(-1.3863).epsilon(1e-4));

  ComplexMatrix4 neg = ComplexMatrix4::Identity();
  neg(3, 3) = -1e-6;
  CHECK_THROWS_AS(mat_log_support(neg), NumericError);
}

TEST_CASE("exp inverts the support logarithm on positive matrices") {
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix4 g = random_complex();
    ComplexMatrix4 m = g * g.adjoint() + 0.05 * ComplexMatrix4::Identity();
    m = 0.5 * (m + m.adjoint());
    CHECK(max_abs_diff(mat_exp_hermitian(mat_log_support(m)), m) < 1e-9);
  }
}

TEST_CASE("partial_transpose_second") {
  CHECK(partial_transpose_second(ComplexMatrix4::Identity()) == ComplexMatrix4::Identity());

  ComplexMatrix4 diag = ComplexMatrix4::Zero();
  diag.diagonal() << 0.1, 0.2, 0.3, 0.4;
  CHECK(partial_transpose_second(diag) == diag);

  const ComplexMatrix4 pt = partial_transpose_second(singlet_projector());
  CHECK(std::abs(eig_hermitian(pt).eigenvalues(0) + 0.5) < 1e-14);

  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix4 m = random_complex();
    CHECK(partial_transpose_second(partial_transpose_second(m)) == m);
  }

  // Layout check against explicit elements: (00,01) <- (01,00), (00,11) <- (01,10).
  const ComplexMatrix4 m = random_complex();
  const ComplexMatrix4 t = partial_transpose_second(m);
  CHECK(t(0, 1) == m(1, 0));
  CHECK(t(0, 3) == m(1, 2));
  CHECK(t(1, 2) == m(0, 3));
  CHECK(t(2, 3) == m(3, 2));
}

TEST_CASE("collective operators act on the Bell-like basis") {
  const PauliOps& ops = pauli_ops();
  const double r = 1.0 / std::sqrt(2.0);
  const ComplexVector4 ket1(1, 0, 0, 0);
  const ComplexVector4 ket2(0, 0, 0, 1);
  const ComplexVector4 ket3(0, r, r, 0);
  const ComplexVector4 ket4(0, r, -r, 0);

  CHECK((ops.sigma_plus * ket2 - std::sqrt(2.0) * ket3).norm() < 1e-15);
  CHECK((ops.sigma_plus * ket3 - std::sqrt(2.0) * ket1).norm() < 1e-15);
  CHECK((ops.sigma_plus * ket1).norm() < 1e-15);
  CHECK((ops.sigma_plus * ket4).norm() < 1e-15);
  CHECK((ops.sigma_minus * ket1 - std::sqrt(2.0) * ket3).norm() < 1e-15);
  CHECK((ops.sigma_minus * ket3 - std::sqrt(2.0) * ket2).norm() < 1e-15);
  CHECK((ops.sigma_minus * ket2).norm() < 1e-15);
  CHECK((ops.sigma_minus * ket4).norm() < 1e-15);
  CHECK((ops.big_sigma3 * ket1 - 2.0 * ket1).norm() < 1e-15);
  CHECK((ops.big_sigma3 * ket2 + 2.0 * ket2).norm() < 1e-15);
  CHECK((ops.big_sigma3 * ket3).norm() < 1e-15);
  CHECK((ops.big_sigma3 * ket4).norm() < 1e-15);

  CHECK(max_abs_diff(ops.sigma_plus.adjoint(), ops.sigma_minus) < 1e-15);
  CHECK(max_abs_diff(kron(ops.sigma3, ops.sigma3).cwiseAbs(), ComplexMatrix4::Identity()) < 1e-15);
}
