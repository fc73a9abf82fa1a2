#include "qdiss/propagator.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "qdiss/errors.hpp"

namespace qdiss {

namespace {

void require_time(double t, const char* where) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    std::ostringstream msg;
    msg << where << ": time must be finite and >= 0 (got " << t << ")";
    throw std::invalid_argument(msg.str());
  }
}

void require_alpha(double alpha, const char* where) {
  if (!std::isfinite(alpha) || alpha * alpha > 1.0) {
    std::ostringstream msg;
    msg << where << ": alpha must satisfy alpha^2 <= 1 (got " << alpha << ")";
    throw std::invalid_argument(msg.str());
  }
}

void require_open_alpha(double alpha, const char* where) {
  require_alpha(alpha, where);
  if (std::abs(alpha) >= 1.0) {
    throw ClosedFormUnavailable(std::string(where) +
                                ": closed form is singular at |alpha| = 1; "
                                "use integrate_rk4");
  }
}

// a_t = inf + minus * E_- + plus * E_+ for each of the weights (a, b, d).
struct PopulationCoefficients {
  std::array<double, 3> inf;
  std::array<double, 3> minus;
  std::array<double, 3> plus;
};

// populations (p1, p2, p3) = (<1|rho|1>, <2|rho|2>, <3|rho|3>), i.e. (a, d, b)
// for a family state. Returned arrays are ordered (p1, p3, p2) = (a, b, d).
PopulationCoefficients population_coefficients(double p1, double p2, double p3,
                                               double alpha) {
  const double al = alpha;
  const double den = 3.0 + al * al;
  const double q = std::sqrt(1.0 - al * al);
  const double r = p1 + p2 + p3;
  const double op = 1.0 + al;
  const double om = 1.0 - al;
  const double o2 = 1.0 - al * al;

  // The combination u recurs in the p1 and p2 coefficients; w likewise.
  const double u = 2.0 * op * p1 - om * om * (p3 + p2);
  const double w = op * op * p1 - 2.0 * om * p2 + op * op * p3;

  PopulationCoefficients c{};
  c.inf = {om * om / den * r, o2 / den * r, op * op / den * r};
  c.minus = {q * w / (op * den),
             q * (op * op * op * p1 + om * om * om * p2 - 2.0 * o2 * p3) /
                 (den * o2),
             -q * u / (om * den)};
  c.plus = {u / den, (2.0 * (1.0 + al * al) * p3 - o2 * (p1 + p2)) / den,
            -w / den};
  return c;
}

FamilyState family_from_populations(const PopulationCoefficients& k, double c,
                                    const Kernels& ker) {
  std::array<double, 3> v{};
  for (int i = 0; i < 3; ++i)
    v[i] = k.inf[i] + k.minus[i] * ker.e_minus + k.plus[i] * ker.e_plus;
  return FamilyState(v[0], v[1], c, v[2]);
}

// Hermitian 4x4 <-> 16 real coordinates: Re rho_ij for i <= j (10), then
// Im rho_ij for i < j (6). Any real coordinate vector is Hermitian, so the
// RK4 iterate never needs explicit re-Hermitisation.
using Real16 = Eigen::Matrix<double, 16, 1>;
using RealGenerator = Eigen::Matrix<double, 16, 16>;

Real16 to_coordinates(const ComplexMatrix4& m) {
  Real16 x;
  int k = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) x(k++) = 0.5 * (m(i, j) + std::conj(m(j, i))).real();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      x(k++) = 0.5 * (m(i, j) + std::conj(m(j, i))).imag();
  return x;
}

ComplexMatrix4 from_coordinates(const Real16& x) {
  ComplexMatrix4 m;
  int k = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      m(i, j) = x(k);
      m(j, i) = x(k);
      ++k;
    }
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      m(i, j) += Complex(0.0, x(k));
      m(j, i) -= Complex(0.0, x(k));
      ++k;
    }
  return m;
}

RealGenerator real_generator(const ModelParams& params) {
  RealGenerator g;
  for (int k = 0; k < 16; ++k) {
    Real16 e = Real16::Zero();
    e(k) = 1.0;
    g.col(k) = to_coordinates(lindblad_rhs(from_coordinates(e), params));
  }
  return g;
}

Real16 rk4_advance(const RealGenerator& g, Real16 x, double span, double dt) {
  if (span <= 0.0) return x;
  const double steps_real = std::ceil(span / dt - 1e-9);
  if (!(steps_real < 1e10)) {
    throw std::invalid_argument("integrate_rk4: step count overflow");
  }
  const long steps = std::max(1L, static_cast<long>(steps_real));
  const double h = span / static_cast<double>(steps);
  for (long n = 0; n < steps; ++n) {
    const Real16 k1 = g * x;
    const Real16 k2 = g * (x + 0.5 * h * k1);
    const Real16 k3 = g * (x + 0.5 * h * k2);
    const Real16 k4 = g * (x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

}  // namespace

ModelParams::ModelParams(double alpha, double omega) : alpha_(alpha), omega_(omega) {
  require_alpha(alpha, "ModelParams");
  if (!std::isfinite(omega)) {
    throw std::invalid_argument("ModelParams: omega must be finite");
  }
}

Eigen::Matrix3cd kossakowski_matrix(double alpha) {
  const Complex i(0.0, 1.0);
  Eigen::Matrix3cd a;
  a << 1.0, i * alpha, 0.0,  //
      -i * alpha, 1.0, 0.0,  //
      0.0, 0.0, 1.0;
  return a;
}

Kernels kernels(double alpha, double t) {
  require_alpha(alpha, "kernels");
  require_time(t, "kernels");
  const double ke = 4.0 * std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
  const double kf = 2.0 * std::sqrt(4.0 - 3.0 * alpha * alpha);
  const double e_slow = std::exp((-8.0 + ke) * t);
  const double e_fast = std::exp((-8.0 - ke) * t);
  const double f_slow = std::exp((-8.0 + kf) * t);
  const double f_fast = std::exp((-8.0 - kf) * t);
  return {0.5 * (e_slow + e_fast), 0.5 * (e_slow - e_fast),
          0.5 * (f_slow + f_fast), 0.5 * (f_slow - f_fast)};
}

FamilyState evolve_family(const FamilyState& s0, double alpha, double t) {
  require_open_alpha(alpha, "evolve_family");
  require_time(t, "evolve_family");
  const auto coeff = population_coefficients(s0.a(), s0.d(), s0.b(), alpha);
  return family_from_populations(coeff, s0.c(), kernels(alpha, t));
}

FamilyRate family_rate(const FamilyState& s0, double alpha, double t) {
  require_open_alpha(alpha, "family_rate");
  require_time(t, "family_rate");
  const auto coeff = population_coefficients(s0.a(), s0.d(), s0.b(), alpha);
  const Kernels k = kernels(alpha, t);
  const double kappa = 4.0 * std::sqrt(1.0 - alpha * alpha);
  const double de_plus = -8.0 * k.e_plus + kappa * k.e_minus;
  const double de_minus = -8.0 * k.e_minus + kappa * k.e_plus;
  std::array<double, 3> r{};
  for (int i = 0; i < 3; ++i)
    r[i] = coeff.minus[i] * de_minus + coeff.plus[i] * de_plus;
  return {r[0], r[1], r[2]};
}

DensityMatrix evolve_full(const DensityMatrix& rho0, const ModelParams& params,
                          double t) {
  const double al = params.alpha();
  require_open_alpha(al, "evolve_full");
  require_time(t, "evolve_full");

  // p(i, j) = <i+1|rho|j+1> in the |1>..|4> basis (interaction picture at t=0).
  const ComplexMatrix4 p = to_bell_like(rho0.matrix());
  const Kernels k = kernels(al, t);
  ComplexMatrix4 q = ComplexMatrix4::Zero();

  const auto pops = population_coefficients(p(0, 0).real(), p(1, 1).real(),
                                            p(2, 2).real(), al);
  const std::array<double, 3> e = {
      pops.inf[0] + pops.minus[0] * k.e_minus + pops.plus[0] * k.e_plus,
      pops.inf[1] + pops.minus[1] * k.e_minus + pops.plus[1] * k.e_plus,
      pops.inf[2] + pops.minus[2] * k.e_minus + pops.plus[2] * k.e_plus};
  q(0, 0) = e[0];
  q(2, 2) = e[1];
  q(1, 1) = e[2];
  q(3, 3) = p(3, 3).real();

  q(0, 1) = p(0, 1) * std::exp(-12.0 * t);
  q(0, 3) = p(0, 3) * std::exp(-2.0 * (2.0 + al) * t);
  q(1, 3) = p(1, 3) * std::exp(-2.0 * (2.0 - al) * t);
  q(2, 3) = p(2, 3) * std::exp(-4.0 * t);

  const double s = std::sqrt(4.0 - 3.0 * al * al);
  const Complex r13 = p(0, 2);
  const Complex r32 = p(2, 1);
  q(0, 2) = r13 * k.f_plus + (2.0 * (1.0 - al) * r32 - al * r13) / s * k.f_minus;
  const Complex q32 = r32 * k.f_plus + (2.0 * (1.0 + al) * r13 + al * r32) / s * k.f_minus;
  q(1, 2) = std::conj(q32);

  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) q(j, i) = std::conj(q(i, j));

  // Back to the Schroedinger picture: H = (omega/2) Sigma_3 has energies
  // (omega, -omega, 0, 0) on |1>..|4>, so rho_ij picks up e^{-i(E_i-E_j)t}.
  const std::array<double, 4> energy = {params.omega(), -params.omega(), 0.0, 0.0};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) q(i, j) *= std::polar(1.0, -(energy[i] - energy[j]) * t);

  return DensityMatrix(from_bell_like(q));
}

ComplexMatrix4 lindblad_rhs(const ComplexMatrix4& rho, const ModelParams& params) {
  const PauliOps& ops = pauli_ops();
  const std::array<const ComplexMatrix4*, 3> big = {&ops.big_sigma1, &ops.big_sigma2,
                                                   &ops.big_sigma3};
  const Eigen::Matrix3cd a = kossakowski_matrix(params.alpha());
  const Complex i(0.0, 1.0);

  ComplexMatrix4 out =
      -i * (0.5 * params.omega()) * (ops.big_sigma3 * rho - rho * ops.big_sigma3);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      if (a(r, c) == Complex(0.0, 0.0)) continue;
      const ComplexMatrix4& si = *big[r];
      const ComplexMatrix4& sj = *big[c];
      const ComplexMatrix4 ji = sj * si;
      out += a(r, c) * (si * rho * sj - 0.5 * (ji * rho + rho * ji));
    }
  }
  return out;
}

ComplexMatrix4 lindblad_rhs(const DensityMatrix& rho, const ModelParams& params) {
  return lindblad_rhs(rho.matrix(), params);
}

DensityMatrix integrate_rk4(const DensityMatrix& rho0, const ModelParams& params,
                            double t, double dt) {
  const double times[] = {t};
  return integrate_rk4_samples(rho0, params, times, dt).front();
}

std::vector<DensityMatrix> integrate_rk4_samples(const DensityMatrix& rho0,
                                                 const ModelParams& params,
                                                 std::span<const double> times,
                                                 double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("integrate_rk4: dt must be > 0");
  }
  const RealGenerator g = real_generator(params);
  std::vector<DensityMatrix> out;
  out.reserve(times.size());
  Real16 x = to_coordinates(rho0.matrix());
  double now = 0.0;
  for (double t : times) {
    require_time(t, "integrate_rk4");
    if (t < now) throw std::invalid_argument("integrate_rk4: times must ascend");
    x = rk4_advance(g, x, t - now, dt);
    now = t;
    out.emplace_back(from_coordinates(x));
  }
  return out;
}

FamilyState asymptotic_state(double c, double alpha) {
  require_alpha(alpha, "asymptotic_state");
  if (!(c >= 0.0 && c <= 1.0)) {
    throw std::invalid_argument("asymptotic_state: c must lie in [0, 1]");
  }
  const double den = 3.0 + alpha * alpha;
  const double rest = 1.0 - c;
  const double a = (1.0 - alpha) * (1.0 - alpha) * rest / den;
  const double b = (1.0 - alpha * alpha) * rest / den;
  const double d = (1.0 + alpha) * (1.0 + alpha) * rest / den;
  return FamilyState(a, b, c, d);
}

}  // namespace qdiss
