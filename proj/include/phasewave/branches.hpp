// Closed-form solution branches of the autonomous reduced system.
//
// The squared proportional amplitude W(y) = Phi(y)^2 obeys the first
// integral W'^2 = 4 sigma (W - W1)(W - W2)(W - W3) with sigma in {+1, -1};
// the elementary symmetric functions of the ordered roots W1 <= W2 <= W3
// fix the invariants (E, C0, c) = sigma * (sum, pair sum, product). Each
// admissible sign/root configuration yields one elliptic or hyperbolic
// branch below.
#pragma once

#include <array>
#include <utility>
#include <vector>

#include "phasewave/errors.hpp"

namespace phasewave::branches {

/// Roots of the branch cubic in ascending order.
struct RootTriple {
  double W1 = 0.0;
  double W2 = 0.0;
  double W3 = 0.0;
};

/// First-integral invariants of the reduced amplitude equation, together
/// with the sign sigma of the leading cubic coefficient.
struct Invariants {
  double E = 0.0;   // linear-restoring coefficient (shared with the scaling pair)
  double C0 = 0.0;  // additive first-integral constant
  double c = 0.0;   // inverse-square term weight (product invariant)
  int sigma = 1;    // +1 or -1
};

enum class BranchKind {
  FiniteSn,         // sigma=+1, oscillates in [W1, W2]
  DarkSoliton,      // sigma=+1, W2=W3: localized dip on the W2 background
  SingularSn,       // sigma=+1, unbounded branch W >= W3 with poles
  FiniteSnNegSigma, // sigma=-1, oscillates in [W2, W3]
  BrightSoliton     // sigma=-1, W1=W2: localized hump peaking at W3
};

/// One evaluated branch: kind, roots, sign, center, and the derived
/// elliptic parameters lambda (argument scale) and k (modulus).
struct BranchSolution {
  BranchKind kind = BranchKind::FiniteSn;
  RootTriple roots;
  int sigma = 1;
  double y0 = 0.0;
  double lambda = 0.0;  // sqrt(W3 - W1)
  double k = 0.0;       // branch modulus, in [0, 1]
};

/// Solve the branch cubic W^3 - (E/sigma) W^2 + (C0/sigma) W - c/sigma = 0.
/// All three roots must be real for a branch to exist; a complex pair raises
/// BranchUnavailableError carrying the cubic's discriminant.
RootTriple roots_from_invariants(const Invariants& inv);

/// Elementary symmetric functions of the roots, scaled by sigma.
Invariants invariants_from_roots(const RootTriple& roots, int sigma);

/// Weierstrass invariants (g2, g3) = (-4 C0/sigma, 4 c/sigma) of the same
/// first integral in its cubic normal form.
std::pair<double, double> weierstrass_invariants(const Invariants& inv);

/// Proportional-ansatz coupling data: amplitudes delta_j with
/// h_j1 delta1^2 + h_j2 delta2^2 = 2 sigma, the per-component inverse-cube
/// coefficients c_j = c delta_j^4, and the phase strengths s_j = sqrt(c_j).
struct Coupling {
  std::array<double, 4> h = {0, 0, 0, 0};  // row-major {h11, h12, h21, h22}
  int sigma = 1;
  double c = 0.0;            // product invariant of the shared branch
  double mixing_ratio = 0.0; // delta1^2 / delta2^2
  double delta1 = 0.0;
  double delta2 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
};

/// Derive the proportional coupling from the interaction matrix h, the
/// product invariant c > 0, and sigma. Throws:
///  - RealSolutionImpossibleError when c <= 0, the mixing ratio is negative,
///    or the sign of (m_s h11 + h12) conflicts with sigma;
///  - IncompatibleCouplingError when h11 = h21 with h22 != h12 (no mixing
///    ratio exists) or when the matrix is fully degenerate (h11 = h21 and
///    h22 = h12) and no user constants are supplied - use the overload.
Coupling derive_coupling(const std::array<double, 4>& h, double c, int sigma);

/// Fully degenerate interaction matrix (both rows equal): the constraint
/// fixes only a line of (delta1^2, delta2^2); the caller supplies the
/// per-component constants (c1, c2), validated against
/// sqrt(c1) h11 + sqrt(c2) h12 = 2 sigma sqrt(c).
Coupling derive_coupling(const std::array<double, 4>& h, double c, int sigma,
                         double c1, double c2);

/// One-component reduction delta1 = 0: only the second diagonal constraint
/// remains, giving delta2^2 = 2 sigma / h22 and c2 = 4 c / h22^2.
Coupling derive_coupling_zero_component(const std::array<double, 4>& h,
                                        double c, int sigma);

/// Construct a branch. Validates root ordering, the sigma/kind pairing, and
/// nonnegativity of the branch's attained W-range (BrightSoliton may have
/// W1 < 0; its positive window is finite - see positive_window).
BranchSolution make_branch(BranchKind kind, const RootTriple& roots, int sigma,
                           double y0);

/// (W, dW/dy) at canonical coordinate y. SingularSn poles raise PoleError.
std::pair<double, double> eval_branch(const BranchSolution& b, double y);

/// W'' from the differentiated first integral: 6 sigma W^2 - 4 E W + 2 C0.
double branch_second_derivative(const Invariants& inv, double W);

/// Half-width of the maximal interval around y0 on which W >= 0
/// (infinity when the branch range is nonnegative).
double positive_window(const BranchSolution& b);

/// Period of the branch in y (infinity for the soliton branches).
double branch_period(const BranchSolution& b);

/// max |W'^2 - 4 sigma (W-W1)(W-W2)(W-W3)| over the grid.
double branch_first_integral_residual(const BranchSolution& b,
                                      const std::vector<double>& ys);

/// Consistency data for the modulus/invariant relation
/// 108 g3^2 (1-k^2+k^4)^3 = g2^3 ((k^2+1)(k^2-2)(2k^2-1))^2.
struct WeierstrassCheck {
  double relation_residual = 0.0;  // LHS - RHS of the relation above
  double discriminant = 0.0;       // g2^3 - 27 g3^2
  bool applicable = false;         // false when g2 g3 = 0 (relation trivial)
};

/// Evaluate the relation at squared modulus k2 for invariants (g2, g3).
WeierstrassCheck weierstrass_consistency(double k2, double g2, double g3);

}  // namespace phasewave::branches
