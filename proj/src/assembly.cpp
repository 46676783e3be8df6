#include "phasewave/assembly.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "phasewave/special_functions.hpp"

namespace phasewave::assembly {

namespace {

/// Relative slack allowed between independently supplied copies of the same
/// invariant (coupling c vs. root product, envelope E vs. branch E).
constexpr double kCoherenceTol = 1e-8;

/// Relative accuracy target for each piece of the phase quadrature. The
/// one-period integral is multiplied by large period counts, so it is held
/// to near machine accuracy.
constexpr double kPhaseQuadTol = 1e-12;

/// Chunk width for soliton-profile quadrature, in units of the branch decay
/// scale 1/lambda: panels short enough that the adaptive rule cannot step
/// over the localized feature.
constexpr double kSolitonChunk = 16.0;

/// Distance (again in units of 1/lambda) beyond which a dark profile's
/// sech^2 correction underflows: past it 1/W equals 1/W_background exactly
/// in double precision, so tail segments integrate in closed form.
constexpr double kDarkTailCut = 64.0;

bool nearly_equal(double a, double b, double rel) {
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= rel * scale;
}

double component_delta(const StationarySolution& sol, int j) {
  if (j != 0 && j != 1) {
    throw DomainError("component index must be 0 or 1, got " +
                      std::to_string(j));
  }
  return j == 0 ? sol.coupling.delta1 : sol.coupling.delta2;
}

/// Reciprocal branch profile 1/W at canonical coordinate y. Lattice points
/// of the unbounded branch are the profile's poles, where 1/W tends to zero
/// smoothly; a vanishing or negative profile (bright branch outside its
/// positive window) makes the phase integrand singular instead.
double reciprocal_profile(const branches::BranchSolution& b, double y) {
  double W = 0.0;
  try {
    W = branches::eval_branch(b, y).first;
  } catch (const PoleError&) {
    return 0.0;
  }
  if (!(W > 0.0)) {
    throw SingularPathError(
        "phase path crosses a vanishing amplitude: W = " + std::to_string(W) +
        " at stretched coordinate y = " + std::to_string(y));
  }
  return 1.0 / W;
}

/// Adaptive quadrature of 1/W over [lo, hi] with a tolerance scaled by a
/// rough local magnitude estimate (endpoints are always finite: 1/W is
/// bounded by 1/min W on positive branches).
double quad_reciprocal(const branches::BranchSolution& b, double lo,
                       double hi) {
  if (lo == hi) return 0.0;
  auto f = [&](double y) { return reciprocal_profile(b, y); };
  const double rough = 0.5 * (f(lo) + f(hi)) * (hi - lo);
  const double tol = kPhaseQuadTol * std::max(1.0, std::fabs(rough));
  return special::integrate_adaptive(f, lo, hi, tol);
}

/// Integral of dy / W(y) from y_a to y_b.
///
/// In the stretched coordinate the phase integrand is the bare reciprocal
/// profile, so oscillatory branches are handled exactly by periodicity:
/// whole periods contribute an integer multiple of the one-period integral
/// and only a sub-period remainder is quadratured, keeping the cost and the
/// relative error independent of how many periods the path spans (decaying
/// envelopes stretch y(x) by many orders of magnitude). Soliton branches
/// use short panels around their localized feature; dark tails where the
/// sech^2 correction has underflowed integrate in closed form.
double reciprocal_integral(const branches::BranchSolution& b, double y_a,
                           double y_b) {
  if (y_a == y_b) return 0.0;
  if (y_b < y_a) return -reciprocal_integral(b, y_b, y_a);

  const double period = branches::branch_period(b);
  // Centered coordinate: the profile is periodic (or localized) about y0.
  const double w_a = y_a - b.y0;
  const double w_b = y_b - b.y0;
  const double width = w_b - w_a;

  if (std::isfinite(period)) {
    const double whole = std::floor(width / period);
    const double remainder = std::fma(-whole, period, width);
    // One-period integral, held to near machine accuracy because it is
    // scaled by the (possibly huge) period count.
    const double base =
        whole > 0.0 ? quad_reciprocal(b, b.y0, b.y0 + period) : 0.0;
    // Reduce the start point into the base cell; fmod is exact, so the
    // reduction adds no rounding of its own.
    double w0 = std::fmod(w_a, period);
    if (w0 < 0.0) w0 += period;
    return whole * base +
           quad_reciprocal(b, b.y0 + w0, b.y0 + w0 + remainder);
  }

  if (b.lambda == 0.0) {
    // Constant profile: closed form.
    return width * reciprocal_profile(b, b.y0);
  }

  if (b.kind == branches::BranchKind::DarkSoliton) {
    // Split off the flat tails, where 1/W equals the background value to
    // the last bit, and panel only the dip.
    const double cut = kDarkTailCut / b.lambda;
    const double background =
        2.0 / (b.roots.W2 + b.roots.W3);  // 1 / W_background
    double total = 0.0;
    double lo = w_a;
    if (lo < -cut) {
      const double hi = std::min(w_b, -cut);
      total += (hi - lo) * background;
      lo = hi;
    }
    if (lo < w_b && lo < cut) {
      const double hi = std::min(w_b, cut);
      const double chunk = kSolitonChunk / b.lambda;
      while (lo < hi) {
        const double next = std::min(hi, lo + chunk);
        total += quad_reciprocal(b, b.y0 + lo, b.y0 + next);
        lo = next;
      }
    }
    if (lo < w_b) {
      total += (w_b - lo) * background;
    }
    return total;
  }

  // Bright soliton: the positive window is finite, so the path is short
  // (outside it the integrand raises SingularPathError).
  const double chunk = kSolitonChunk / b.lambda;
  double total = 0.0;
  double lo = w_a;
  while (lo < w_b) {
    const double next = std::min(w_b, lo + chunk);
    total += quad_reciprocal(b, b.y0 + lo, b.y0 + next);
    lo = next;
  }
  return total;
}

/// Phase increment theta_j(v) - theta_j(u). The substitution dy = dx / a
/// collapses s_j / R_j^2 = s_j / (delta_j^2 a W) to (s_j / delta_j^2) / W in
/// the stretched coordinate.
double phase_increment(const StationarySolution& sol, int j, double u,
                       double v) {
  const double s = phase_strength(sol, j);
  if (s == 0.0 || u == v) return 0.0;
  const double delta = component_delta(sol, j);
  const double y_u = scaling::canonical_y(sol.envelope, u);
  const double y_v = scaling::canonical_y(sol.envelope, v);
  return s / (delta * delta) * reciprocal_integral(sol.branch, y_u, y_v);
}

/// Unwrapped phases of component j at the sorted nodes xs, anchored at
/// theta_j(0) = 0 (so the first node generally carries a nonzero phase).
std::vector<double> phase_profile(const StationarySolution& sol, int j,
                                  const std::vector<double>& xs) {
  std::vector<double> theta(xs.size(), 0.0);
  if (xs.empty() || phase_strength(sol, j) == 0.0) return theta;
  theta[0] = phase_increment(sol, j, 0.0, xs[0]);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    theta[i] = theta[i - 1] + phase_increment(sol, j, xs[i - 1], xs[i]);
  }
  return theta;
}

void require_power_of_two(std::size_t n) {
  if (n < 64 || (n & (n - 1)) != 0) {
    throw DomainError("spectral grids need a power-of-two node count >= 64, got " +
                      std::to_string(n));
  }
}

}  // namespace

StationarySolution make_stationary(const scaling::ScalingSpec& envelope,
                                   const branches::Coupling& coupling,
                                   const branches::BranchSolution& branch,
                                   std::array<int, 2> phase_sign) {
  for (int s : phase_sign) {
    if (s != 1 && s != -1) {
      throw DomainError("phase_sign entries must be +1 or -1, got " +
                        std::to_string(s));
    }
  }
  if (coupling.sigma != branch.sigma) {
    throw DomainError("coupling built for sigma = " +
                      std::to_string(coupling.sigma) +
                      " cannot drive a branch with sigma = " +
                      std::to_string(branch.sigma));
  }

  StationarySolution sol;
  sol.envelope = envelope;
  sol.coupling = coupling;
  sol.branch = branch;
  sol.invariants = branches::invariants_from_roots(branch.roots, branch.sigma);
  sol.phase_sign = phase_sign;

  if (!nearly_equal(coupling.c, sol.invariants.c, kCoherenceTol)) {
    throw InconsistencyError(
        "coupling product invariant c = " + std::to_string(coupling.c) +
        " disagrees with the branch roots' product " +
        std::to_string(sol.invariants.c));
  }
  const double envelope_E = scaling::first_integral_E_closed(envelope);
  if (!nearly_equal(envelope_E, sol.invariants.E, kCoherenceTol)) {
    throw InconsistencyError(
        "envelope conserved constant E = " + std::to_string(envelope_E) +
        " disagrees with the branch value " + std::to_string(sol.invariants.E));
  }

  sol.mu = scaling::chemical_potential(envelope);
  return sol;
}

double phase_strength(const StationarySolution& sol, int j) {
  component_delta(sol, j);  // validates j
  const double s = j == 0 ? sol.coupling.s1 : sol.coupling.s2;
  return static_cast<double>(sol.phase_sign[static_cast<std::size_t>(j)]) * s;
}

std::pair<double, double> amplitude_at(const StationarySolution& sol, int j,
                                       double x) {
  const double delta = component_delta(sol, j);
  if (delta == 0.0) return {0.0, 0.0};

  const scaling::ScalingDerivatives sd = scaling::eval_scaling(sol.envelope, x);
  const double y = scaling::canonical_y(sol.envelope, x);
  const auto [W, dW] = branches::eval_branch(sol.branch, y);
  if (!(W > 0.0)) {
    throw PositivityError("amplitude requires a positive branch profile; W = " +
                          std::to_string(W) + " at x = " + std::to_string(x));
  }
  // S(x) = a W(y(x)); with dy/dx = 1/a the product rule gives
  // S' = a' W + W'(y).
  const double S = sd.a * W;
  const double dS = sd.da * W + dW;
  const double R = delta * std::sqrt(S);
  return {R, delta * dS / (2.0 * std::sqrt(S))};
}

double amplitude_second_derivative(const StationarySolution& sol, int j,
                                   double x) {
  const double delta = component_delta(sol, j);
  if (delta == 0.0) return 0.0;

  const scaling::ScalingDerivatives sd = scaling::eval_scaling(sol.envelope, x);
  const double y = scaling::canonical_y(sol.envelope, x);
  const auto [W, dW] = branches::eval_branch(sol.branch, y);
  if (!(W > 0.0)) {
    throw PositivityError("amplitude requires a positive branch profile; W = " +
                          std::to_string(W) + " at x = " + std::to_string(x));
  }
  const double d2W = branches::branch_second_derivative(sol.invariants, W);
  const double S = sd.a * W;
  const double dS = sd.da * W + dW;
  // S'' = a'' W + (a' W'(y) + W''(y)) / a, again through dy/dx = 1/a.
  const double d2S = sd.d2a * W + (sd.da * dW + d2W) / sd.a;
  const double sqrtS = std::sqrt(S);
  return delta * (d2S / (2.0 * sqrtS) - dS * dS / (4.0 * S * sqrtS));
}

double phase_at(const StationarySolution& sol, int j, double x) {
  return phase_increment(sol, j, 0.0, x);
}

std::array<std::complex<double>, 2> field_at(const StationarySolution& sol,
                                             double t, double x) {
  std::array<std::complex<double>, 2> psi;
  for (int j = 0; j < 2; ++j) {
    const double R = amplitude_at(sol, j, x).first;
    const double theta =
        R == 0.0 ? 0.0 : phase_at(sol, j, x) + sol.mu * t;
    psi[static_cast<std::size_t>(j)] = std::polar(R, theta);
  }
  return psi;
}

FieldGrid sample_fields(const StationarySolution& sol, double x_lo,
                        double x_hi, std::size_t n, double t) {
  require_power_of_two(n);
  if (!(x_hi > x_lo)) {
    throw DomainError("sampling window must have x_hi > x_lo");
  }

  FieldGrid grid;
  grid.x_lo = x_lo;
  grid.spacing = (x_hi - x_lo) / static_cast<double>(n);
  grid.t = t;
  grid.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid.x[i] = x_lo + static_cast<double>(i) * grid.spacing;
  }

  grid.psi1.resize(n);
  grid.psi2.resize(n);
  for (int j = 0; j < 2; ++j) {
    const std::vector<double> theta = phase_profile(sol, j, grid.x);
    auto& psi = j == 0 ? grid.psi1 : grid.psi2;
    for (std::size_t i = 0; i < n; ++i) {
      const double R = amplitude_at(sol, j, grid.x[i]).first;
      psi[i] = std::polar(R, R == 0.0 ? 0.0 : theta[i] + sol.mu * t);
    }
  }
  return grid;
}

SolutionTable sample_solution(const StationarySolution& sol, double x_lo,
                              double x_hi, std::size_t n) {
  if (n < 2) {
    throw DomainError("solution tables need at least 2 nodes, got " +
                      std::to_string(n));
  }
  if (!(x_hi > x_lo)) {
    throw DomainError("sampling window must have x_hi > x_lo");
  }

  SolutionTable tab;
  tab.x.resize(n);
  const double step = (x_hi - x_lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    tab.x[i] = (i + 1 == n) ? x_hi : x_lo + static_cast<double>(i) * step;
  }

  tab.y = scaling::canonical_y_grid(sol.envelope, tab.x);
  tab.a.resize(n);
  tab.g11.resize(n);
  tab.g12.resize(n);
  tab.g21.resize(n);
  tab.g22.resize(n);
  tab.R1.resize(n);
  tab.R2.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    tab.a[i] = scaling::eval_scaling(sol.envelope, tab.x[i]).a;
    const std::array<double, 4> g = scaling::coefficients_from_scaling(
        sol.envelope, sol.coupling.h, tab.x[i]);
    tab.g11[i] = g[0];
    tab.g12[i] = g[1];
    tab.g21[i] = g[2];
    tab.g22[i] = g[3];
    tab.R1[i] = amplitude_at(sol, 0, tab.x[i]).first;
    tab.R2[i] = amplitude_at(sol, 1, tab.x[i]).first;
  }
  tab.theta1 = phase_profile(sol, 0, tab.x);
  tab.theta2 = phase_profile(sol, 1, tab.x);
  return tab;
}

void write_csv(const SolutionTable& table, std::ostream& out) {
  out << "x,a,y,g11,g12,g21,g22,R1,R2,theta1,theta2\n";
  char buf[32];
  auto put = [&](double v, char sep) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf << sep;
  };
  for (std::size_t i = 0; i < table.x.size(); ++i) {
    put(table.x[i], ',');
    put(table.a[i], ',');
    put(table.y[i], ',');
    put(table.g11[i], ',');
    put(table.g12[i], ',');
    put(table.g21[i], ',');
    put(table.g22[i], ',');
    put(table.R1[i], ',');
    put(table.R2[i], ',');
    put(table.theta1[i], ',');
    put(table.theta2[i], '\n');
  }
}

}  // namespace phasewave::assembly
