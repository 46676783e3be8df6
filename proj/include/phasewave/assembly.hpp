#pragma once
/// Assembly of full two-component stationary fields from an envelope, a
/// shared amplitude branch, and the coupling amplitudes / phase strengths.
///
/// A stationary pair has the form
///   psi_j(x, t) = R_j(x) exp(i (theta_j(x) + mu t)),      j = 1, 2,
///   R_j(x)      = delta_j sqrt(a(x) W(y(x))),
///   theta_j'(x) = s_j / R_j(x)^2   with theta_j(0) = 0,
/// where a is the envelope, y the canonical stretched coordinate, W the
/// shared branch profile, and s_j the (signed) phase strengths. Both
/// components share the chemical potential mu fixed by the envelope family.

#include <array>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "phasewave/branches.hpp"
#include "phasewave/errors.hpp"
#include "phasewave/scaling.hpp"

namespace phasewave::assembly {

/// A fully assembled stationary two-component solution.
///
/// Invariants, enforced by make_stationary:
///  - coupling.sigma == branch.sigma,
///  - coupling.c matches the product invariant of the branch roots,
///  - the envelope's conserved constant matches the branch E,
///  - phase_sign entries are +1 or -1.
/// Amplitudes inherit strict positivity from the branch except for bright
/// branches with a negative floor, which are only defined on their positive
/// window; evaluation outside it raises PositivityError.
struct StationarySolution {
  scaling::ScalingSpec envelope;
  branches::Coupling coupling;
  branches::BranchSolution branch;
  branches::Invariants invariants;
  double mu = 0.0;
  std::array<int, 2> phase_sign = {1, 1};
};

/// Cross-validate the three ingredients and assemble a solution.
///
/// Throws DomainError on a sigma mismatch or a bad phase_sign entry and
/// InconsistencyError when the coupling's product invariant or the
/// envelope's conserved constant disagree with the branch roots.
StationarySolution make_stationary(const scaling::ScalingSpec& envelope,
                                   const branches::Coupling& coupling,
                                   const branches::BranchSolution& branch,
                                   std::array<int, 2> phase_sign = {1, 1});

/// Signed phase strength s_j of component j (0-based), including the sign
/// choice made at assembly time.
double phase_strength(const StationarySolution& sol, int j);

/// Amplitude R_j(x) and its derivative dR_j/dx, both by analytic chain rule
/// through the envelope and the stretched coordinate (no differencing).
/// Throws PositivityError where the branch profile is not positive.
std::pair<double, double> amplitude_at(const StationarySolution& sol, int j,
                                       double x);

/// Analytic second derivative d^2 R_j / dx^2, using the branch's polynomial
/// second-derivative identity. Needed by residual checks that would lose
/// digits to finite differencing.
double amplitude_second_derivative(const StationarySolution& sol, int j,
                                   double x);

/// Accumulated phase theta_j(x), with theta_j(0) = 0. The quadrature slices
/// the path into short panels and resolves each to a tolerance scaled by the
/// local panel magnitude, so integrands that grow by many orders of
/// magnitude (narrow amplitudes under a decaying envelope) keep full
/// relative accuracy instead of failing an absolute target.
double phase_at(const StationarySolution& sol, int j, double x);

/// Complex pair (psi_1, psi_2) at time t and position x.
std::array<std::complex<double>, 2> field_at(const StationarySolution& sol,
                                             double t, double x);

/// Uniform complex-field sampling, ready for spectral propagation: n nodes
/// at spacing (x_hi - x_lo)/n with the right endpoint excluded (periodic
/// convention). n must be a power of two, at least 64.
struct FieldGrid {
  double x_lo = 0.0;
  double spacing = 0.0;
  double t = 0.0;
  std::vector<double> x;
  std::vector<std::complex<double>> psi1;
  std::vector<std::complex<double>> psi2;
};

FieldGrid sample_fields(const StationarySolution& sol, double x_lo,
                        double x_hi, std::size_t n, double t);

/// Real-valued solution table for export and verification: envelope,
/// stretched coordinate, effective couplings g_ij = h_ij / a^3, amplitudes,
/// and unwrapped phases at every node. Endpoints included, n >= 2 nodes.
struct SolutionTable {
  std::vector<double> x, a, y;
  std::vector<double> g11, g12, g21, g22;
  std::vector<double> R1, R2, theta1, theta2;
};

SolutionTable sample_solution(const StationarySolution& sol, double x_lo,
                              double x_hi, std::size_t n);

/// Write the table as CSV: one header line, then one row per node with
/// every value printed to 17 significant digits, LF line endings.
void write_csv(const SolutionTable& table, std::ostream& out);

}  // namespace phasewave::assembly
