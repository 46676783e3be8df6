// Non-proportional solutions of the isotropic (h == 1) two-component
// system in polar form: U1 = U(y) cos(gamma), U2 = U(y) sin(gamma).
//
// The radial amplitude S = U^2 obeys S'^2 = 2 (S^3 - 2E S^2 + 2 K2 S - 2 K1),
// an elliptic branch on the half-speed scale, while the mixing angle gamma
// depends on y only through the stretched coordinate zeta = int dy / U^2 and
// carries the per-component phase strengths (c1, c2) with nu_j = c_j^2.
#pragma once

#include <utility>
#include <vector>

#include "phasewave/branches.hpp"
#include "phasewave/errors.hpp"

namespace phasewave::polar {

/// Fully determined polar-sector solution data.
struct PolarSpec {
  double E = 0.0;    ///< linear-restoring coefficient of both components
  double K1 = 0.0;   ///< angular first-integral constant, must be positive
  double K2 = 0.0;   ///< radial first-integral constant
  double c1 = 0.0;   ///< phase strength of component 1 (nu_1 = c1^2)
  double c2 = 0.0;   ///< phase strength of component 2 (nu_2 = c2^2)
  double zeta0 = 0.0;  ///< angular phase origin in the stretched coordinate
  double b = 0.0;      ///< K1 - c1^2 + c2^2 (angular oscillation center scale)
  double Delta = 0.0;  ///< b^2 - 4 K1 c2^2 (squared oscillation amplitude)
  branches::RootTriple radial_roots;  ///< roots of S^3 - 2E S^2 + 2K2 S - 2K1
  branches::BranchSolution radial;    ///< standard-speed branch; S(y) = W(y/sqrt(2))
};

/// Instantaneous angular data at one stretched coordinate zeta.
struct AngularState {
  double tau = 0.0;     ///< sin^2(gamma)
  double dtau = 0.0;    ///< d tau / d zeta
  double gamma = 0.0;   ///< mixing angle, in [0, pi/2]
  double dgamma = 0.0;  ///< d gamma / d zeta
};

/// Finite-difference residual summary of the reconstructed polar solution.
struct PolarReport {
  double max_component_residual = 0.0;  ///< worst of both coupled equations
  double max_angular_residual = 0.0;    ///< angular first integral vs K1
  double max_radial_residual = 0.0;     ///< radial first integral vs K2
  double worst_y = 0.0;                 ///< location of the worst component residual
  int grid_size = 0;
};

/// Turning points of the radial orbit: roots of S^3 - 2E S^2 + 2K2 S - 2K1,
/// i.e. the branch cubic with doubled invariants (sigma = +1).
branches::RootTriple radial_roots(double E, double K1, double K2);

/// Build the polar solution from the invariants (K1, K2, E) and phase
/// strengths (c1, c2); the radial orbit starts at its minimum at y = 0.
///
/// Throws DomainError for K1 <= 0 or negative phase strengths;
/// BranchUnavailableError when the radial cubic has a complex pair;
/// PositivityError when the attained radial range is not strictly positive;
/// RealSolutionImpossibleError when the angular oscillation is impossible
/// (Delta < 0, b <= 0) or one component's share would exceed the whole
/// (b + sqrt(Delta) > 2 K1).
PolarSpec make_polar(double K1, double K2, double E, double c1, double c2,
                     double zeta0);

/// (U, dU/dy) of the radial amplitude U(y) = sqrt(S(y)).
std::pair<double, double> radial_amplitude(const PolarSpec& spec, double y);

/// Stretched coordinate zeta(y) = int_0^y ds / S(s), an odd function of y.
double zeta_of_y(const PolarSpec& spec, double y);

/// zeta at each point of the sorted grid ys (single cumulative sweep).
std::vector<double> zeta_grid(const PolarSpec& spec,
                              const std::vector<double>& ys);

/// Angular state at stretched coordinate zeta:
/// tau = [b + sqrt(Delta) sin(2 sqrt(K1) (zeta - zeta0))] / (2 K1).
///
/// Throws DomainError if roundoff-exceeding tau falls outside [0, 1].
AngularState angular_state(const PolarSpec& spec, double zeta);

/// Component pair (U1, U2) = U(y) (cos gamma, sin gamma) at y.
std::pair<double, double> components_at(const PolarSpec& spec, double y);

/// |gamma'^2 + c1^2/cos^2 gamma + c2^2/sin^2 gamma - K1| at zeta.
double angular_first_integral_residual(const PolarSpec& spec, double zeta);

/// |U'^2 + E U^2 + K1 U^-2 - U^4/2 - K2| at y.
double radial_first_integral_residual(const PolarSpec& spec, double y);

/// Reconstruct (U1, U2) on a uniform n-point grid over [y_lo, y_hi] and
/// report the worst residual of the coupled system
/// U_j'' + E U_j = c_j^2 U_j^-3 + (U1^2 + U2^2) U_j (second derivatives by
/// five-point central differences on interior points), together with the
/// worst angular and radial first-integral residuals.
PolarReport polar_reconstruct(const PolarSpec& spec, double y_lo, double y_hi,
                              int n);

}  // namespace phasewave::polar
