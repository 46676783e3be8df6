#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "phasewave/errors.hpp"

namespace phasewave::special {

/// Values of the three Jacobi elliptic functions at a common argument.
struct EllipticTriple {
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
};

/// Roots of a monic real cubic, sorted by real part (ties by imaginary part).
struct CubicRoots {
  std::array<std::complex<double>, 3> roots{};
  double discriminant = 0.0;  ///< classic cubic discriminant; >= 0 iff all real
  bool all_real = false;
};

/// Complete elliptic integral of the first kind, modulus convention K(k).
///
/// Computed from the arithmetic-geometric mean: K = pi / (2 agm(1, k')).
/// Relative error well below 1e-13 for k in [0, 1).
///
/// Throws DomainError for k < 0 or k >= 1 (logarithmic divergence at k = 1).
double complete_elliptic_K(double k);

/// Jacobi elliptic functions sn, cn, dn of (u, k), modulus convention.
///
/// Evaluated by Bulirsch's descending Landen scale with a backward
/// recurrence for dn; accurate to ~1e-15 uniformly in u, including the
/// quarter periods. The endpoint moduli are exact special cases: k = 0
/// gives (sin, cos, 1) and k = 1 gives (tanh, sech, sech).
///
/// Throws DomainError for k outside [0, 1] or non-finite u.
EllipticTriple jacobi_sn_cn_dn(double u, double k);

/// Error function. Delegates to std::erf (absolute error < 1e-12 on finite
/// reals); exposed here so all kernels used by the solver live in one place.
double erf(double x);

/// Roots of the monic cubic x^3 + p2 x^2 + p1 x + p0.
///
/// Three real roots (positive discriminant) are computed by the
/// trigonometric method, which stays stable for nearly degenerate root
/// pairs; the one-real-root case by a cancellation-safe Cardano form;
/// vanishing discriminant by the closed repeated-root formulas. Real roots
/// are polished by one guarded Newton step on the original cubic.
CubicRoots real_cubic_roots(double p2, double p1, double p0);

/// Adaptive Simpson quadrature of f over [a, b] with absolute tolerance tol.
///
/// Interval-sum error model with Richardson correction; recursion depth is
/// capped at 60. Exceeding the cap throws AccuracyError carrying the best
/// estimate assembled so far.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol);

/// Cumulative adaptive quadrature of f at the sorted sample points xs.
///
/// Returns F with F[0] = 0 and F[i] = integral from xs[0] to xs[i], each
/// panel integrated adaptively so the total absolute error is below tol.
std::vector<double> integrate_cumulative(const std::function<double(double)>& f,
                                         const std::vector<double>& xs,
                                         double tol);

/// Weierstrass elliptic function P(y) for invariants (g2, g3) in the
/// three-real-root (rhombic/rectangular) case.
///
/// Solves 4 t^3 - g2 t - g3 = 0 for e1 >= e2 >= e3 and evaluates
/// P(y) = e3 + (e1 - e3) / sn^2(y sqrt(e1 - e3), k), k^2 = (e2-e3)/(e1-e3).
///
/// Throws DomainError for g2 < 0, for the complex-root lattice (out of
/// scope), and PoleError for |y| < 1e-8 or evaluation at a lattice point.
double weierstrass_p(double y, double g2, double g3);

/// One ODE trajectory produced by rk_integrate.
struct RkTrajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
};

/// Classical fixed-step 4th-order Runge-Kutta integration of y' = f(t, y)
/// from t0 to t1 (t1 > t0) with the given step; the final partial step is
/// shortened to land exactly on t1. Global error O(step^4).
///
/// Throws BlowUpError (carrying the last valid time) if the state norm
/// exceeds 1e12 or turns non-finite.
RkTrajectory rk_integrate(
    const std::function<void(double, const std::vector<double>&,
                             std::vector<double>&)>& f,
    const std::vector<double>& y0, double t0, double t1, double step);

}  // namespace phasewave::special
