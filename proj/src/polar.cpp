#include "phasewave/polar.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "phasewave/special_functions.hpp"

namespace phasewave::polar {

namespace {

/// Tolerance of the stretched-coordinate quadrature.
constexpr double kZetaQuadTol = 1e-11;

/// Relative tolerance for the repeated-root (dark-type) radial orbit.
constexpr double kRootMergeTol = 1e-9;

/// Allowed roundoff excursion of tau beyond [0, 1].
constexpr double kTauSlack = 1e-12;

const double kSqrt2 = std::sqrt(2.0);

}  // namespace

branches::RootTriple radial_roots(double E, double K1, double K2) {
  return branches::roots_from_invariants({2.0 * E, 2.0 * K2, 2.0 * K1, 1});
}

PolarSpec make_polar(double K1, double K2, double E, double c1, double c2,
                     double zeta0) {
  if (!(K1 > 0.0)) {
    throw DomainError("angular constant K1 must be positive, got " +
                      std::to_string(K1));
  }
  if (c1 < 0.0 || c2 < 0.0) {
    throw DomainError("phase strengths c1, c2 must be nonnegative");
  }

  PolarSpec spec;
  spec.E = E;
  spec.K1 = K1;
  spec.K2 = K2;
  spec.c1 = c1;
  spec.c2 = c2;
  spec.zeta0 = zeta0;

  // Angular admissibility: tau = sin^2(gamma) must oscillate inside [0, 1].
  spec.b = K1 - c1 * c1 + c2 * c2;
  spec.Delta = spec.b * spec.b - 4.0 * K1 * c2 * c2;
  if (spec.Delta < 0.0) {
    throw RealSolutionImpossibleError(
        "angular oscillation amplitude is imaginary: b^2 - 4 K1 c2^2 = " +
        std::to_string(spec.Delta));
  }
  if (spec.b <= 0.0) {
    throw RealSolutionImpossibleError(
        "angular center b = K1 - c1^2 + c2^2 must be positive, got " +
        std::to_string(spec.b));
  }
  const double tau_max = (spec.b + std::sqrt(spec.Delta)) / (2.0 * K1);
  if (tau_max > 1.0 + kTauSlack) {
    throw RealSolutionImpossibleError(
        "component share sin^2(gamma) would reach " + std::to_string(tau_max) +
        " > 1; requires c2^2 <= K1 + c1^2");
  }

  // Radial branch: S^3 - 2E S^2 + 2 K2 S - 2 K1 = 0 gives the turning
  // points; invariants of the standard-speed form are sigma * Vieta.
  spec.radial_roots = radial_roots(E, K1, K2);
  if (!(spec.radial_roots.W1 > 0.0)) {
    throw PositivityError(
        "radial orbit reaches S = " + std::to_string(spec.radial_roots.W1) +
        " <= 0; U^-3 forbids a vanishing total amplitude");
  }
  const bool dark_type =
      std::abs(spec.radial_roots.W3 - spec.radial_roots.W2) <=
      kRootMergeTol * std::max(1.0, std::abs(spec.radial_roots.W3));
  spec.radial = branches::make_branch(dark_type ? branches::BranchKind::DarkSoliton
                                                : branches::BranchKind::FiniteSn,
                                      spec.radial_roots, 1, 0.0);
  return spec;
}

std::pair<double, double> radial_amplitude(const PolarSpec& spec, double y) {
  // S(y) = W(y / sqrt(2)) maps the standard-speed branch (W'^2 = 4 prod)
  // onto the radial first integral (S'^2 = 2 prod).
  const auto [S, dW] = branches::eval_branch(spec.radial, y / kSqrt2);
  const double dS = dW / kSqrt2;
  const double U = std::sqrt(S);
  return {U, dS / (2.0 * U)};
}

double zeta_of_y(const PolarSpec& spec, double y) {
  if (y == 0.0) return 0.0;
  const auto integrand = [&spec](double s) {
    return 1.0 / branches::eval_branch(spec.radial, s / kSqrt2).first;
  };
  return special::integrate_adaptive(integrand, 0.0, y, kZetaQuadTol);
}

std::vector<double> zeta_grid(const PolarSpec& spec,
                              const std::vector<double>& ys) {
  if (ys.empty()) return {};
  const auto integrand = [&spec](double s) {
    return 1.0 / branches::eval_branch(spec.radial, s / kSqrt2).first;
  };
  // Cumulative from the first grid point, then anchored to zeta(ys[0]).
  std::vector<double> zs = special::integrate_cumulative(integrand, ys, kZetaQuadTol);
  const double anchor = zeta_of_y(spec, ys.front());
  for (double& z : zs) z += anchor;
  return zs;
}

AngularState angular_state(const PolarSpec& spec, double zeta) {
  const double rootK1 = std::sqrt(spec.K1);
  const double rootDelta = std::sqrt(spec.Delta);
  const double arg = 2.0 * rootK1 * (zeta - spec.zeta0);
  AngularState st;
  st.tau = (spec.b + rootDelta * std::sin(arg)) / (2.0 * spec.K1);
  st.dtau = rootDelta * std::cos(arg) / rootK1;
  if (st.tau < -kTauSlack || st.tau > 1.0 + kTauSlack) {
    throw DomainError("sin^2(gamma) = " + std::to_string(st.tau) +
                      " outside [0, 1] at zeta = " + std::to_string(zeta));
  }
  const double tau_cl = std::fmin(std::fmax(st.tau, 0.0), 1.0);
  st.gamma = std::asin(std::sqrt(tau_cl));
  const double denom = 2.0 * std::sqrt(tau_cl * (1.0 - tau_cl));
  st.dgamma = denom > 0.0 ? st.dtau / denom
                          : std::numeric_limits<double>::infinity();
  return st;
}

std::pair<double, double> components_at(const PolarSpec& spec, double y) {
  const double U = radial_amplitude(spec, y).first;
  const AngularState st = angular_state(spec, zeta_of_y(spec, y));
  return {U * std::cos(st.gamma), U * std::sin(st.gamma)};
}

double angular_first_integral_residual(const PolarSpec& spec, double zeta) {
  const AngularState st = angular_state(spec, zeta);
  const double cg = std::cos(st.gamma);
  const double sg = std::sin(st.gamma);
  const double value = st.dgamma * st.dgamma + spec.c1 * spec.c1 / (cg * cg) +
                       spec.c2 * spec.c2 / (sg * sg);
  return std::abs(value - spec.K1);
}

double radial_first_integral_residual(const PolarSpec& spec, double y) {
  const auto [U, dU] = radial_amplitude(spec, y);
  const double U2 = U * U;
  const double value =
      dU * dU + spec.E * U2 + spec.K1 / U2 - 0.5 * U2 * U2;
  return std::abs(value - spec.K2);
}

PolarReport polar_reconstruct(const PolarSpec& spec, double y_lo, double y_hi,
                              int n) {
  if (n < 9 || !(y_hi > y_lo)) {
    throw DomainError("polar_reconstruct needs an increasing window and n >= 9");
  }
  const double h = (y_hi - y_lo) / (n - 1);
  std::vector<double> ys(n);
  for (int i = 0; i < n; ++i) ys[i] = y_lo + i * h;

  const std::vector<double> zs = zeta_grid(spec, ys);
  std::vector<double> u1(n), u2(n);
  PolarReport rep;
  rep.grid_size = n;
  for (int i = 0; i < n; ++i) {
    const double U = radial_amplitude(spec, ys[i]).first;
    const AngularState st = angular_state(spec, zs[i]);
    u1[i] = U * std::cos(st.gamma);
    u2[i] = U * std::sin(st.gamma);
    rep.max_angular_residual = std::max(
        rep.max_angular_residual, angular_first_integral_residual(spec, zs[i]));
    rep.max_radial_residual = std::max(
        rep.max_radial_residual, radial_first_integral_residual(spec, ys[i]));
  }

  // Five-point second difference on interior points.
  const auto second = [&](const std::vector<double>& u, int i) {
    return (-u[i - 2] + 16.0 * u[i - 1] - 30.0 * u[i] + 16.0 * u[i + 1] -
            u[i + 2]) /
           (12.0 * h * h);
  };
  for (int i = 2; i + 2 < n; ++i) {
    const double total = u1[i] * u1[i] + u2[i] * u2[i];
    const double r1 = second(u1, i) + spec.E * u1[i] -
                      spec.c1 * spec.c1 / (u1[i] * u1[i] * u1[i]) -
                      total * u1[i];
    const double r2 = second(u2, i) + spec.E * u2[i] -
                      spec.c2 * spec.c2 / (u2[i] * u2[i] * u2[i]) -
                      total * u2[i];
    const double worst = std::max(std::abs(r1), std::abs(r2));
    if (worst > rep.max_component_residual) {
      rep.max_component_residual = worst;
      rep.worst_y = ys[i];
    }
  }
  return rep;
}

}  // namespace phasewave::polar
