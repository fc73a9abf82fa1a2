#pragma once

#include "qdiss/state_model.hpp"

namespace qdiss {

/// Separable candidate x|1><1| + y|2><2| + u|3><3| + v|4><4| with
/// x + y + u + v = 1 and |u - v|/2 <= sqrt(xy).
struct SeparableDiagonal {
  double x;
  double y;
  double u;
  double v;

  /// Checks the simplex and PPT constraints to within `tol`.
  bool admissible(double tol = 1e-9) const;
};

/// Which side of the PPT boundary a saturated candidate sits on:
/// upper means u = (1 - (sqrt x - sqrt y)^2)/2 >= v, lower means v >= u.
enum class Branch { kInterior, kUpper, kLower };

struct ReeResult {
  double value;  // nats
  SeparableDiagonal closest;
  bool on_boundary;
  Branch branch;
  // The closed form missed its constraints by more than 1e-8 and the numeric
  // optimiser supplied value/closest instead.
  bool used_fallback = false;
};

/// a log x + d log y + b log u + c log v, dropping zero-weight terms.
/// -inf if a positively weighted variable is <= 0.
double separable_objective(const FamilyState& s, const SeparableDiagonal& sep);

/// Closest separable state and relative entropy of entanglement of a
/// diagonal-family state.
///
/// Entangled states are handled by the boundary stationarity conditions:
/// with multiplier m, y = x - a + d, v = c/(1 - m), u = b/(1 + m) (lower
/// branch) and m solves
///   A m^2 + 2 (c - b) m + (c - b)^2 - 4ad = 0,
///   A = (b + c)^2 + 2 (a + d)(b + c) + 4ad.
/// The upper branch swaps b and c. Both branches and both roots are tried;
/// the admissible candidate with the larger objective wins.
ReeResult closest_separable(const FamilyState& s);

double ree(const FamilyState& s);

/// Brute-force REE: grid over (sqrt x, sqrt y) on the saturated boundary for
/// both branches plus the interior candidate, then pattern-search refinement
/// of the best points down to a step of 1e-10. Returns -S(s) - max f.
double ree_numeric_oracle(const FamilyState& s, int grid = 200, int refine_iters = 400);

struct EntanglementRate {
  double value;
  double left;   // one-sided (E(t) - E(t-h))/h
  double right;  // one-sided (E(t+h) - E(t))/h
  // |b - c| - 2 sqrt(ad) changes sign inside [t-h, t+h]; value is the
  // one-sided difference that does not straddle the kink.
  bool at_kink;
  // Central differences at h and h/2 disagree by more than 1e-4.
  bool richardson_warning;
};

/// d/dt E[rho_t] along the family trajectory by finite differences.
/// Requires t >= h > 0.
EntanglementRate entanglement_rate(const FamilyState& s0, double alpha, double t,
                                   double h = 1e-5);

}  // namespace qdiss
