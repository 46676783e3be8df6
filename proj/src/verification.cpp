#include "phasewave/verification.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "phasewave/fft.hpp"
#include "phasewave/scaling.hpp"
#include "phasewave/special_functions.hpp"

namespace phasewave::verification {

namespace {

// ---------------------------------------------------------------------------
// Extended-precision kernels (long double; 80-bit on x86-64). These are the
// verification side's own implementations - independent of the double
// pipeline used by assembly - so the residual check does not reuse the code
// it is checking. Naive term-by-term evaluation loses ~8 digits to
// cancellation in decaying-envelope tails; the extra mantissa bits keep the
// evaluation noise below the mathematical residual.
// ---------------------------------------------------------------------------

using ld = long double;

constexpr ld kPiL = 3.141592653589793238462643383279502884L;
/// Landen-scale truncation for the extended Jacobi evaluation; the error
/// enters squared, at the long-double epsilon level.
constexpr ld kLandenStopL = 3e-10L;
constexpr int kScaleMaxIter = 32;

/// Localization threshold for the periodic propagation window: boundary
/// amplitudes must stay below this for the wrap-around to be harmless.
constexpr double kLocalizationThreshold = 1e-4;
/// Field magnitude treated as a blow-up during propagation.
constexpr double kBlowUpGuard = 1e8;
/// Step size of the Runge-Kutta profile oracle.
constexpr double kOracleStep = 1e-3;
/// A grid under-resolves the branch when the local stretched step exceeds
/// this fraction of the feature scale.
constexpr double kResolutionFraction = 0.2;

/// Complete elliptic integral K(k) by the arithmetic-geometric mean.
ld agm_K(ld k) {
  if (!(k >= 0.0L) || k >= 1.0L) {
    throw DomainError("verification: elliptic modulus must be in [0, 1)");
  }
  ld a = 1.0L;
  ld b = std::sqrt((1.0L - k) * (1.0L + k));
  const ld eps = std::numeric_limits<ld>::epsilon();
  for (int i = 0; i < kScaleMaxIter && std::fabs(a - b) > eps * a; ++i) {
    const ld am = 0.5L * (a + b);
    b = std::sqrt(a * b);
    a = am;
  }
  return kPiL / (a + b);
}

struct JacobiL {
  ld sn, cn, dn;
};

/// Bulirsch's descending Landen scale with the backward recurrence for dn.
JacobiL sncndn_l(ld u, ld k) {
  if (k == 0.0L) return {std::sin(u), std::cos(u), 1.0L};
  ld mc = (1.0L - k) * (1.0L + k);
  if (mc == 0.0L) {
    const ld s = 1.0L / std::cosh(u);
    return {std::tanh(u), s, s};
  }
  ld em[kScaleMaxIter], en[kScaleMaxIter];
  ld a = 1.0L, dn = 1.0L, c = 0.0L;
  int l = 0;
  for (int i = 0; i < kScaleMaxIter; ++i) {
    l = i;
    em[i] = a;
    mc = std::sqrt(mc);
    en[i] = mc;
    c = 0.5L * (a + mc);
    if (std::fabs(a - mc) <= kLandenStopL * a) break;
    mc *= a;
    a = c;
  }
  const ld phi = c * u;
  ld sn = std::sin(phi), cn = std::cos(phi);
  if (sn != 0.0L) {
    a = cn / sn;
    c *= a;
    for (int i = l; i >= 0; --i) {
      const ld b = em[i];
      a *= c;
      c *= dn;
      dn = (en[i] + a) / (b + a);
      a = c / b;
    }
    a = 1.0L / std::sqrt(c * c + 1.0L);
    sn = (sn >= 0.0L) ? a : -a;
    cn = c * sn;
  }
  return {sn, cn, dn};
}

/// int_0^z exp(t^2) dt by the everywhere-positive Maclaurin series.
ld integral_exp_t2_l(ld z) {
  const ld z2 = z * z;
  ld term = z, sum = z;
  for (int n = 1; n < 600; ++n) {
    term *= z2 / static_cast<ld>(n);
    const ld add = term / static_cast<ld>(2 * n + 1);
    sum += add;
    if (std::fabs(add) < 1e-21L * std::fabs(sum)) break;
  }
  if (!std::isfinite(sum)) {
    throw DomainError("verification: Gaussian map overflows at this x");
  }
  return sum;
}

struct EnvelopeL {
  ld a, da, d2a;
};

EnvelopeL eval_envelope_l(const scaling::ScalingSpec& spec, ld x) {
  using scaling::Family;
  EnvelopeL e{1.0L, 0.0L, 0.0L};
  const ld C1 = spec.C1, C2 = spec.C2, C3 = spec.C3;
  switch (spec.family) {
    case Family::Trig: {
      const ld w = spec.omega;
      const ld s = std::sin(w * x), c = std::cos(w * x);
      e.a = C1 * s + C2 * c + C3;
      e.da = w * (C1 * c - C2 * s);
      e.d2a = -w * w * (C1 * s + C2 * c);
      break;
    }
    case Family::Exp: {
      const ld w = spec.omega;
      const ld ep = std::exp(w * x), em = std::exp(-w * x);
      e.a = C1 * ep + C2 * em + C3;
      e.da = w * (C1 * ep - C2 * em);
      e.d2a = w * w * (C1 * ep + C2 * em);
      break;
    }
    case Family::Gaussian: {
      const ld mu = spec.mu;
      const ld g = std::exp(mu * x * x);
      e.a = g;
      e.da = 2.0L * mu * x * g;
      e.d2a = (2.0L * mu + 4.0L * mu * mu * x * x) * g;
      break;
    }
    case Family::Constant:
      break;
  }
  return e;
}

/// Canonical stretched coordinate in extended precision. The exponential
/// family keeps the double map: a growing envelope has no tail cancellation
/// to fight, so double accuracy suffices there.
ld canonical_y_l(const scaling::ScalingSpec& spec, ld x) {
  using scaling::Family;
  switch (spec.family) {
    case Family::Constant:
      return x;
    case Family::Gaussian: {
      const ld r = std::sqrt(static_cast<ld>(-spec.mu));
      return integral_exp_t2_l(r * x) / r;
    }
    case Family::Trig: {
      const ld C1 = spec.C1, C2 = spec.C2, C3 = spec.C3;
      const ld w = spec.omega;
      const ld R = std::hypot(C1, C2);
      const ld root = std::sqrt((C3 - R) * (C3 + R));
      const ld beta = std::sqrt((C3 - R) / (C3 + R));
      const ld phi = (R == 0.0L) ? 0.0L : std::atan2(C1, C2);
      const auto antider = [&](ld u) {
        const ld v = 0.5L * u;
        const ld n = std::round(v / kPiL);
        const ld vh = v - n * kPiL;
        return 2.0L / root *
               (std::atan2(beta * std::sin(vh), std::cos(vh)) + kPiL * n);
      };
      return (antider(w * x - phi) - antider(-phi)) / w;
    }
    case Family::Exp:
      return static_cast<ld>(
          scaling::canonical_y(spec, static_cast<double>(x)));
  }
  return x;
}

/// Linear-restoring coefficient p(x) = -mu - V(x), closed form per family.
ld p_coefficient_l(const scaling::ScalingSpec& spec, ld x) {
  using scaling::Family;
  switch (spec.family) {
    case Family::Trig: {
      const ld w = spec.omega;
      return w * w / 4.0L;
    }
    case Family::Exp: {
      const ld w = spec.omega;
      return -w * w / 4.0L;
    }
    case Family::Gaussian: {
      const ld mu = spec.mu;
      return -mu - mu * mu * x * x;
    }
    case Family::Constant:
      return static_cast<ld>(-spec.mu);
  }
  return 0.0L;
}

struct BranchEvalL {
  ld W, dW;
};

/// Branch profile W(y) and dW/dy in extended precision, with the elliptic
/// argument reduced modulo the real period 2K before evaluation: sn^2 and
/// sn cn dn are invariant under u -> u + 2K, so huge stretched coordinates
/// (decaying envelopes reach y ~ 1e6 and beyond) lose no accuracy.
BranchEvalL eval_branch_l(const branches::BranchSolution& b, ld y) {
  using branches::BranchKind;
  const ld W1 = b.roots.W1, W2 = b.roots.W2, W3 = b.roots.W3;
  const ld lambda2 = W3 - W1;
  if (lambda2 <= 0.0L) return {W1, 0.0L};  // fully degenerate: constant
  const ld lambda = std::sqrt(lambda2);
  ld u = lambda * (y - static_cast<ld>(b.y0));

  if (b.kind == BranchKind::DarkSoliton) {
    const ld Wb = 0.5L * (W2 + W3);
    const ld h = Wb - W1;
    const ld th = std::sqrt(h) * (y - static_cast<ld>(b.y0));
    const ld se = 1.0L / std::cosh(th);
    const ld ta = std::tanh(th);
    return {Wb - h * se * se, 2.0L * h * std::sqrt(h) * se * se * ta};
  }
  if (b.kind == BranchKind::BrightSoliton) {
    const ld Wm = 0.5L * (W1 + W2);
    const ld h = W3 - Wm;
    const ld th = std::sqrt(h) * (y - static_cast<ld>(b.y0));
    const ld se = 1.0L / std::cosh(th);
    const ld ta = std::tanh(th);
    return {Wm + h * se * se, -2.0L * h * std::sqrt(h) * se * se * ta};
  }

  // Elliptic kinds share the argument scale lambda and differ in modulus.
  ld m2 = 0.0L;  // k^2
  if (b.kind == BranchKind::FiniteSnNegSigma) {
    m2 = (W3 - W2) / lambda2;
  } else {
    m2 = (W2 - W1) / lambda2;
  }
  m2 = std::min(std::max(m2, 0.0L), 1.0L);
  const ld k = std::sqrt(m2);
  if (k < 1.0L && k > 0.0L) {
    const ld period = 2.0L * agm_K(k);
    u = std::remainder(u, period);
  }
  const JacobiL j = sncndn_l(u, k);
  const ld sn2 = j.sn * j.sn;
  const ld scd = j.sn * j.cn * j.dn;
  switch (b.kind) {
    case BranchKind::FiniteSn:
      return {W1 + (W2 - W1) * sn2, 2.0L * lambda * (W2 - W1) * scd};
    case BranchKind::FiniteSnNegSigma:
      return {W3 - (W3 - W2) * sn2, -2.0L * lambda * (W3 - W2) * scd};
    case BranchKind::SingularSn: {
      if (std::fabs(j.sn) < 1e-15L) {
        throw PoleError("verification: unbounded branch evaluated at a pole");
      }
      const ld inv = 1.0L / sn2;
      return {W1 + (W3 - W1) * inv,
              -2.0L * lambda * (W3 - W1) * j.cn * j.dn / (sn2 * j.sn)};
    }
    default:
      break;
  }
  return {W1, 0.0L};
}

/// Feature scale of a branch in the stretched coordinate: a quarter period
/// for oscillatory kinds, the decay length for solitons, infinite for a
/// constant profile.
double branch_feature_scale(const branches::BranchSolution& b) {
  const double period = branches::branch_period(b);
  if (std::isfinite(period)) return period / 4.0;
  if (b.lambda > 0.0) return 1.0 / b.lambda;
  return std::numeric_limits<double>::infinity();
}

}  // namespace

ResidualReport stationary_ode_residual(const assembly::StationarySolution& sol,
                                       const std::vector<double>& xs) {
  if (xs.empty()) {
    throw DomainError("stationary_ode_residual: need at least one sample");
  }

  const ld delta[2] = {static_cast<ld>(sol.coupling.delta1),
                       static_cast<ld>(sol.coupling.delta2)};
  const ld s2[2] = {
      static_cast<ld>(sol.coupling.s1) * static_cast<ld>(sol.coupling.s1),
      static_cast<ld>(sol.coupling.s2) * static_cast<ld>(sol.coupling.s2)};
  const ld h[4] = {static_cast<ld>(sol.coupling.h[0]),
                   static_cast<ld>(sol.coupling.h[1]),
                   static_cast<ld>(sol.coupling.h[2]),
                   static_cast<ld>(sol.coupling.h[3])};

  // Invariants in extended precision, straight from the roots.
  const ld W1 = sol.branch.roots.W1, W2 = sol.branch.roots.W2,
           W3 = sol.branch.roots.W3;
  const ld sg = static_cast<ld>(sol.branch.sigma);
  const ld E = sg * (W1 + W2 + W3);
  const ld C0 = sg * (W1 * W2 + W1 * W3 + W2 * W3);

  ResidualReport rep;
  rep.check_kind = "stationary-ode";
  rep.grid_size = xs.size();

  ld sum_sq = 0.0L;
  for (const double x : xs) {
    const EnvelopeL env = eval_envelope_l(sol.envelope, x);
    const ld y = canonical_y_l(sol.envelope, x);
    const BranchEvalL br = eval_branch_l(sol.branch, y);
    if (!(br.W > 0.0L)) {
      throw PositivityError(
          "stationary_ode_residual: branch profile is not positive at x = " +
          std::to_string(x));
    }
    const ld d2W = 6.0L * sg * br.W * br.W - 4.0L * E * br.W + 2.0L * C0;

    const ld S = env.a * br.W;
    const ld dS = env.da * br.W + br.dW;
    const ld d2S = env.d2a * br.W + (env.da * br.dW + d2W) / env.a;
    const ld sqrtS = std::sqrt(S);

    ld R[2], d2R[2];
    for (int j = 0; j < 2; ++j) {
      R[j] = delta[j] * sqrtS;
      d2R[j] =
          delta[j] * (d2S / (2.0L * sqrtS) - dS * dS / (4.0L * S * sqrtS));
    }

    const ld p = p_coefficient_l(sol.envelope, x);
    const ld a3 = env.a * env.a * env.a;
    for (int j = 0; j < 2; ++j) {
      if (delta[j] == 0.0L) continue;  // empty component: trivially satisfied
      const ld nonlinear = (h[2 * j] * R[0] * R[0] + h[2 * j + 1] * R[1] * R[1]) / a3;
      const ld F = d2R[j] + p * R[j] - s2[j] / (R[j] * R[j] * R[j]) -
                   nonlinear * R[j];
      const double aF = static_cast<double>(std::fabs(F));
      sum_sq += F * F;
      if (aF > rep.max_abs) {
        rep.max_abs = aF;
        rep.worst_x = x;
      }
    }
  }

  const double span = xs.back() - xs.front();
  const double spacing =
      xs.size() > 1 ? span / static_cast<double>(xs.size() - 1) : 1.0;
  rep.l2 = static_cast<double>(
      std::sqrt(static_cast<ld>(std::fabs(spacing)) * sum_sq));
  return rep;
}

PdeCoefficients pde_coefficients(const assembly::StationarySolution& sol,
                                 const std::vector<double>& xs) {
  PdeCoefficients coef;
  const std::size_t n = xs.size();
  coef.V.resize(n);
  coef.g11.resize(n);
  coef.g12.resize(n);
  coef.g21.resize(n);
  coef.g22.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    coef.V[i] = scaling::potential(sol.envelope, xs[i]);
    const std::array<double, 4> g =
        scaling::coefficients_from_scaling(sol.envelope, sol.coupling.h, xs[i]);
    coef.g11[i] = g[0];
    coef.g12[i] = g[1];
    coef.g21[i] = g[2];
    coef.g22[i] = g[3];
  }
  return coef;
}

ResidualReport pde_residual(const assembly::StationarySolution& sol,
                            const assembly::FieldGrid& grid) {
  const std::size_t n = grid.x.size();
  if (n < 5 || grid.psi1.size() != n || grid.psi2.size() != n) {
    throw DomainError("pde_residual: need a consistent grid with >= 5 nodes");
  }
  const double dx = grid.spacing;
  const double inv12h2 = 1.0 / (12.0 * dx * dx);
  const PdeCoefficients coef = pde_coefficients(sol, grid.x);
  const double mu = sol.mu;

  ResidualReport rep;
  rep.check_kind = "pde";
  rep.grid_size = n;

  // Under-resolution test: local stretched step vs. branch feature scale.
  const double feature = branch_feature_scale(sol.branch);
  if (std::isfinite(feature)) {
    for (std::size_t i = 0; i < n; ++i) {
      const double a = scaling::eval_scaling(sol.envelope, grid.x[i]).a;
      if (dx / a > kResolutionFraction * feature) {
        rep.resolution_warning = true;
        break;
      }
    }
  }

  double sum_sq = 0.0;
  const auto wrap = [n](std::size_t i, std::ptrdiff_t off) {
    const auto sn = static_cast<std::ptrdiff_t>(n);
    return static_cast<std::size_t>(
        (static_cast<std::ptrdiff_t>(i) + off + sn) % sn);
  };
  for (int j = 0; j < 2; ++j) {
    const auto& psi = (j == 0) ? grid.psi1 : grid.psi2;
    const auto& other = (j == 0) ? grid.psi2 : grid.psi1;
    // Self/cross coupling rows: component 1 pairs g11 with its own density
    // and g12 with the other's; component 2 pairs g22 with its own density
    // and g21 with the other's.
    const auto& gs = (j == 0) ? coef.g11 : coef.g22;
    const auto& gx = (j == 0) ? coef.g12 : coef.g21;
    for (std::size_t i = 0; i < n; ++i) {
      const std::complex<double> lap =
          (-psi[wrap(i, -2)] + 16.0 * psi[wrap(i, -1)] - 30.0 * psi[i] +
           16.0 * psi[wrap(i, +1)] - psi[wrap(i, +2)]) *
          inv12h2;
      const double dens_self = std::norm(psi[i]);
      const double dens_other = std::norm(other[i]);
      const std::complex<double> F =
          -mu * psi[i] + lap - coef.V[i] * psi[i] -
          (gs[i] * dens_self + gx[i] * dens_other) * psi[i];
      const double aF = std::abs(F);
      sum_sq += aF * aF;
      if (aF > rep.max_abs) {
        rep.max_abs = aF;
        rep.worst_x = grid.x[i];
      }
    }
  }
  rep.l2 = std::sqrt(dx * sum_sq);
  return rep;
}

void split_step_propagate(assembly::FieldGrid& grid,
                          const PdeCoefficients& coef, double dt,
                          std::size_t steps) {
  const std::size_t n = grid.x.size();
  if (grid.psi1.size() != n || grid.psi2.size() != n) {
    throw DomainError("split_step_propagate: field/grid size mismatch");
  }
  if (coef.V.size() != n || coef.g11.size() != n || coef.g12.size() != n ||
      coef.g21.size() != n || coef.g22.size() != n) {
    throw DomainError("split_step_propagate: coefficient/grid size mismatch");
  }
  if (!(dt > 0.0)) throw DomainError("split_step_propagate: dt must be > 0");

  const std::vector<double> ks = fft::wavenumbers(n, grid.spacing);
  std::vector<std::complex<double>> kinetic(n);
  for (std::size_t i = 0; i < n; ++i) {
    kinetic[i] = std::polar(1.0, -ks[i] * ks[i] * dt);
  }

  auto kick = [&](double tau) {
    for (std::size_t i = 0; i < n; ++i) {
      const double d1 = std::norm(grid.psi1[i]);
      const double d2 = std::norm(grid.psi2[i]);
      const double u1 = coef.V[i] + coef.g11[i] * d1 + coef.g12[i] * d2;
      const double u2 = coef.V[i] + coef.g21[i] * d1 + coef.g22[i] * d2;
      grid.psi1[i] *= std::polar(1.0, -tau * u1);
      grid.psi2[i] *= std::polar(1.0, -tau * u2);
    }
  };
  auto guard = [&](std::size_t step) {
    for (std::size_t i = 0; i < n; ++i) {
      const double m = std::max(std::abs(grid.psi1[i]), std::abs(grid.psi2[i]));
      if (!std::isfinite(m) || m > kBlowUpGuard) {
        throw BlowUpError("split_step_propagate: field blew up after " +
                              std::to_string(step) + " steps",
                          grid.t + dt * static_cast<double>(step));
      }
    }
  };

  for (std::size_t step = 0; step < steps; ++step) {
    kick(0.5 * dt);
    fft::forward(grid.psi1);
    fft::forward(grid.psi2);
    for (std::size_t i = 0; i < n; ++i) {
      grid.psi1[i] *= kinetic[i];
      grid.psi2[i] *= kinetic[i];
    }
    fft::inverse(grid.psi1);
    fft::inverse(grid.psi2);
    kick(0.5 * dt);
    guard(step + 1);
  }
  grid.t += dt * static_cast<double>(steps);
}

PropagationReport propagate_and_compare(
    const assembly::StationarySolution& sol, double x_lo, double x_hi,
    std::size_t n, double dt, std::size_t steps) {
  assembly::FieldGrid grid = assembly::sample_fields(sol, x_lo, x_hi, n, 0.0);

  for (const auto* psi : {&grid.psi1, &grid.psi2}) {
    const double edge =
        std::max(std::abs(psi->front()), std::abs(psi->back()));
    if (edge >= kLocalizationThreshold) {
      throw BoundaryError(
          "propagate_and_compare: boundary amplitude " + std::to_string(edge) +
          " is not localized on the window; the spectral step wraps "
          "periodically - use the stationary residual check for delocalized "
          "solutions");
    }
  }

  const std::vector<std::complex<double>> psi1_0 = grid.psi1;
  const std::vector<std::complex<double>> psi2_0 = grid.psi2;
  const PdeCoefficients coef = pde_coefficients(sol, grid.x);
  split_step_propagate(grid, coef, dt, steps);
  const double T = dt * static_cast<double>(steps);

  PropagationReport rep;
  rep.steps = steps;
  rep.dt = dt;

  for (int j = 0; j < 2; ++j) {
    const auto& now = (j == 0) ? grid.psi1 : grid.psi2;
    const auto& then = (j == 0) ? psi1_0 : psi2_0;
    double drift = 0.0, n0 = 0.0, nT = 0.0, peak = -1.0;
    std::size_t peak_idx = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double R = std::abs(then[i]);
      drift = std::max(drift, std::fabs(std::abs(now[i]) - R));
      n0 += R * R;
      nT += std::norm(now[i]);
      if (R > peak) {
        peak = R;
        peak_idx = i;
      }
    }
    rep.modulus_drift[static_cast<std::size_t>(j)] = drift;
    rep.norm_drift[static_cast<std::size_t>(j)] =
        n0 > 0.0 ? std::fabs(nT / n0 - 1.0) : 0.0;
    if (peak > 0.0) {
      const double rate =
          std::arg(now[peak_idx] * std::conj(then[peak_idx])) / T;
      rep.phase_rate_error =
          std::max(rep.phase_rate_error, std::fabs(rate - sol.mu));
    }
  }
  return rep;
}

OracleReport oracle_compare(const branches::BranchSolution& branch,
                            double y_lo, double y_hi, std::size_t samples) {
  if (!(y_hi > y_lo)) {
    throw DomainError("oracle_compare: need y_hi > y_lo");
  }
  if (samples < 2) {
    throw DomainError("oracle_compare: need at least 2 samples");
  }
  const branches::Invariants inv =
      branches::invariants_from_roots(branch.roots, branch.sigma);
  const double E = inv.E, nu = inv.c, C0 = inv.C0;
  const double sg = static_cast<double>(inv.sigma);

  const auto [W0, dW0] = branches::eval_branch(branch, y_lo);
  if (!(W0 > 0.0)) {
    throw PositivityError(
        "oracle_compare: branch profile must be positive at y_lo");
  }
  const double phi0 = std::sqrt(W0);
  const double dphi0 = dW0 / (2.0 * phi0);

  const auto rhs = [&](double, const std::vector<double>& s,
                       std::vector<double>& ds) {
    ds[0] = s[1];
    const double phi = s[0];
    ds[1] = -E * phi + nu / (phi * phi * phi) + 2.0 * sg * phi * phi * phi;
  };
  const special::RkTrajectory traj =
      special::rk_integrate(rhs, {phi0, dphi0}, y_lo, y_hi, kOracleStep);

  OracleReport rep;
  const std::size_t total = traj.times.size();
  const std::size_t stride = std::max<std::size_t>(1, total / samples);
  for (std::size_t idx = 0; idx < total; idx += stride) {
    const std::size_t i = std::min(idx, total - 1);
    const double y = traj.times[i];
    const double phi = traj.states[i][0];
    const double dphi = traj.states[i][1];
    const double Wref = branches::eval_branch(branch, y).first;
    rep.max_profile_diff = std::max(
        rep.max_profile_diff, std::fabs(phi - std::sqrt(Wref)));
    const double Q = dphi * dphi + E * phi * phi + nu / (phi * phi) -
                     sg * phi * phi * phi * phi;
    rep.max_invariant_drift =
        std::max(rep.max_invariant_drift, std::fabs(Q - C0));
    ++rep.samples;
  }
  return rep;
}

}  // namespace phasewave::verification
