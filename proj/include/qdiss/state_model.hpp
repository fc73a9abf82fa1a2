#pragma once

#include <array>

#include "qdiss/matrix_core.hpp"

namespace qdiss {

/// Weights of the diagonal family
///   rho = a|1><1| + d|2><2| + b|3><3| + c|4><4|
/// in the basis |1> = |00>, |2> = |11>, |3> = (|01>+|10>)/sqrt2,
/// |4> = (|01>-|10>)/sqrt2.
///
/// Construction clamps weights in [-1e-12, 0) to 0 and rejects anything more
/// negative or a total that differs from 1 by more than 1e-10.
class FamilyState {
 public:
  FamilyState(double a, double b, double c, double d);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }

  /// (a, b, c, d)
  std::array<double, 4> weights() const { return {a_, b_, c_, d_}; }

  friend bool operator==(const FamilyState&, const FamilyState&) = default;

 private:
  double a_, b_, c_, d_;
};

inline constexpr double kWeightClamp = 1e-12;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPositivityTolerance = 1e-9;
inline constexpr double kFamilyTolerance = 1e-9;

/// Two-qubit density matrix in the standard basis |00>,|01>,|10>,|11>.
/// Invariants (checked on construction): Hermitian, unit trace within 1e-10,
/// smallest eigenvalue >= -1e-9. The stored matrix is exactly Hermitian.
class DensityMatrix {
 public:
  explicit DensityMatrix(const ComplexMatrix4& m);

  const ComplexMatrix4& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

 private:
  ComplexMatrix4 m_;
};

/// Columns are |1>, |2>, |3>, |4> expressed in the standard basis.
const ComplexMatrix4& bell_like_basis();

/// <i|m|j> for the basis above.
ComplexMatrix4 to_bell_like(const ComplexMatrix4& m);
ComplexMatrix4 from_bell_like(const ComplexMatrix4& m);

DensityMatrix family_to_matrix(const FamilyState& s);

/// Inverse of family_to_matrix. Throws NumericError if some matrix element
/// of rho outside the family diagonal exceeds 1e-9 in the |1>..|4> basis.
FamilyState matrix_to_family(const DensityMatrix& rho);

/// Wootters concurrence from the spectrum of sqrt(sqrt(rho) rho~ sqrt(rho)).
double concurrence(const DensityMatrix& rho);

/// max(0, |b - c| - 2 sqrt(ad))
double concurrence_family(const FamilyState& s);

/// |b - c| - 2 sqrt(ad), unclamped. Negative means separable.
double concurrence_signed_family(const FamilyState& s);

/// Peres-Horodecki test: min eigenvalue of the partial transpose >= -1e-9.
bool is_separable_ppt(const DensityMatrix& rho);

}  // namespace qdiss
