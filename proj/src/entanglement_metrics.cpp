#include "qdiss/entanglement_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qdiss/entropy_metrics.hpp"
#include "qdiss/propagator.hpp"

namespace qdiss {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kConstraintTolerance = 1e-8;

double neg_entropy(const FamilyState& s) { return -von_neumann_entropy(s); }

double saturation_gap(const SeparableDiagonal& p) {
  return std::abs(std::abs(p.u - p.v) - 2.0 * std::sqrt(std::max(p.x * p.y, 0.0)));
}

bool satisfies_boundary(const SeparableDiagonal& p, double tol) {
  return p.admissible(tol) && saturation_gap(p) <= tol;
}

// Lower-branch stationary points (v >= u) for weights (a, small, big, d),
// where `small` multiplies log u and `big` multiplies log v.
std::vector<SeparableDiagonal> lower_branch_candidates(double a, double small,
                                                       double big, double d) {
  std::vector<SeparableDiagonal> out;
  const double k = big - small;
  const double sum = small + big;
  const double quad = sum * sum + 2.0 * (a + d) * sum + 4.0 * a * d;
  const double cst = k * k - 4.0 * a * d;
  if (!(quad > 0.0)) return out;
  const double disc = std::max(0.0, k * k - quad * cst);
  const double root = std::sqrt(disc);
  // Stable pair of roots of quad m^2 + 2k m + cst = 0.
  const double qq = -(k + std::copysign(root, k == 0.0 ? 1.0 : k));
  std::vector<double> roots;
  if (qq != 0.0) {
    roots.push_back(qq / quad);
    roots.push_back(cst / qq);
  } else {
    roots.push_back(0.0);
  }
  for (double m : roots) {
    const double gap = 1.0 - m * m;
    if (!(gap > 1e-14)) continue;
    const double w = (k + m * sum) / (2.0 * gap);  // sqrt(xy)
    if (w < -1e-14) continue;
    SeparableDiagonal p{a - m * w, d - m * w, small / (1.0 + m), big / (1.0 - m)};
    if (p.admissible(kConstraintTolerance)) out.push_back(p);
  }
  return out;
}

struct Candidate {
  SeparableDiagonal point;
  Branch branch;
  double objective;
};

SeparableDiagonal boundary_point(double sx, double sy, Branch branch) {
  const double diff = (sx - sy) * (sx - sy);
  const double sum = (sx + sy) * (sx + sy);
  const double hi = 0.5 * (1.0 - diff);
  const double lo = 0.5 * (1.0 - sum);
  if (branch == Branch::kUpper) return {sx * sx, sy * sy, hi, lo};
  return {sx * sx, sy * sy, lo, hi};
}

}  // namespace

bool SeparableDiagonal::admissible(double tol) const {
  if (x < -tol || y < -tol || u < -tol || v < -tol) return false;
  if (std::abs(x + y + u + v - 1.0) > tol) return false;
  return std::abs(u - v) / 2.0 <= std::sqrt(std::max(x * y, 0.0)) + tol;
}

double separable_objective(const FamilyState& s, const SeparableDiagonal& sep) {
  const double w[4] = {s.a(), s.d(), s.b(), s.c()};
  const double z[4] = {sep.x, sep.y, sep.u, sep.v};
  double f = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (w[i] <= 0.0) continue;
    if (!(z[i] > 0.0)) return kNegInf;
    f += w[i] * std::log(z[i]);
  }
  return f;
}

ReeResult closest_separable(const FamilyState& s) {
  if (concurrence_signed_family(s) <= 0.0) {
    return {0.0, {s.a(), s.d(), s.b(), s.c()}, false, Branch::kInterior};
  }

  std::optional<Candidate> best;
  auto consider = [&](const SeparableDiagonal& p, Branch br) {
    const double f = separable_objective(s, p);
    if (!best || f > best->objective) best = Candidate{p, br, f};
  };

  // Pure |3> or |4>: the multiplier sits at the pole m = -1 and the optimum
  // is x = y = 0, u = v = 1/2.
  if (std::max(s.b(), s.c()) >= 1.0 - 1e-15) {
    consider({0.0, 0.0, 0.5, 0.5}, s.c() >= s.b() ? Branch::kLower : Branch::kUpper);
  } else {
    for (const auto& p : lower_branch_candidates(s.a(), s.b(), s.c(), s.d()))
      consider(p, Branch::kLower);
    for (const auto& p : lower_branch_candidates(s.a(), s.c(), s.b(), s.d()))
      consider({p.x, p.y, p.v, p.u}, Branch::kUpper);
  }

  if (!best || !std::isfinite(best->objective) ||
      !satisfies_boundary(best->point, kConstraintTolerance)) {
    // Fall back to the brute-force optimiser; it only yields the value, so
    // the closest point is reported from the best admissible candidate if
    // one exists.
    const double value = ree_numeric_oracle(s);
    ReeResult r{value, best ? best->point : SeparableDiagonal{0, 0, 0.5, 0.5}, true,
                best ? best->branch : Branch::kLower, true};
    return r;
  }
  const double value = std::max(0.0, neg_entropy(s) - best->objective);
  return {value, best->point, true, best->branch};
}

double ree(const FamilyState& s) { return closest_separable(s).value; }

double ree_numeric_oracle(const FamilyState& s, int grid, int refine_iters) {
  if (grid < 100) throw std::invalid_argument("ree_numeric_oracle: grid must be >= 100");

  double best = kNegInf;
  const SeparableDiagonal interior{s.a(), s.d(), s.b(), s.c()};
  if (interior.admissible(0.0)) best = separable_objective(s, interior);

  for (Branch br : {Branch::kUpper, Branch::kLower}) {
    auto f = [&](double sx, double sy) {
      if (sx < 0.0 || sy < 0.0 || sx + sy > 1.0) return kNegInf;
      return separable_objective(s, boundary_point(sx, sy, br));
    };
    // Coarse grid; keep a handful of the best points as refinement seeds.
    struct Seed {
      double f, sx, sy;
    };
    std::vector<Seed> seeds;
    const double step0 = 1.0 / grid;
    for (int i = 0; i <= grid; ++i) {
      for (int j = 0; i + j <= grid; ++j) {
        const double val = f(i * step0, j * step0);
        if (val == kNegInf) continue;
        seeds.push_back({val, i * step0, j * step0});
      }
    }
    const std::size_t keep = std::min<std::size_t>(4, seeds.size());
    std::partial_sort(seeds.begin(), seeds.begin() + keep, seeds.end(),
                      [](const Seed& l, const Seed& r) { return l.f > r.f; });
    seeds.resize(keep);

    static constexpr double dirs[8][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                          {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};
    for (Seed seed : seeds) {
      double step = step0;
      for (int it = 0; it < refine_iters && step > 1e-10; ++it) {
        bool moved = false;
        for (const auto& dir : dirs) {
          const double nx = seed.sx + step * dir[0];
          const double ny = seed.sy + step * dir[1];
          const double val = f(nx, ny);
          if (val > seed.f) {
            seed = {val, nx, ny};
            moved = true;
          }
        }
        if (!moved) step *= 0.5;
      }
      best = std::max(best, seed.f);
    }
  }
  return std::max(0.0, neg_entropy(s) - best);
}

EntanglementRate entanglement_rate(const FamilyState& s0, double alpha, double t,
                                   double h) {
  if (!(h > 0.0) || !(t >= h)) {
    throw std::invalid_argument("entanglement_rate: requires t >= h > 0");
  }
  auto state = [&](double tau) { return evolve_family(s0, alpha, tau); };
  auto ent = [&](double tau) { return ree(state(tau)); };

  const double e_lo = ent(t - h);
  const double e_mid = ent(t);
  const double e_hi = ent(t + h);
  EntanglementRate r{};
  r.left = (e_mid - e_lo) / h;
  r.right = (e_hi - e_mid) / h;

  const bool ent_lo = concurrence_signed_family(state(t - h)) > 0.0;
  const bool ent_mid = concurrence_signed_family(state(t)) > 0.0;
  const bool ent_hi = concurrence_signed_family(state(t + h)) > 0.0;
  r.at_kink = ent_lo != ent_mid || ent_mid != ent_hi;

  if (r.at_kink) {
    r.value = ent_mid != ent_hi ? r.left : r.right;
    return r;
  }
  r.value = (e_hi - e_lo) / (2.0 * h);
  const double half = 0.5 * h;
  const double fine = (ent(t + half) - ent(t - half)) / h;
  r.richardson_warning = std::abs(fine - r.value) > 1e-4;
  return r;
}

}  // namespace qdiss
