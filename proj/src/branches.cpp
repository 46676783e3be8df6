#include "phasewave/branches.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "phasewave/special_functions.hpp"

namespace phasewave::branches {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Relative tolerance for detecting a repeated root in the soliton limits.
constexpr double kRootMergeTol = 1e-9;

/// Relative tolerance for detecting a degenerate interaction matrix.
constexpr double kDegenerateTol = 1e-14;

/// Absolute tolerance for the user-supplied degenerate compatibility check.
constexpr double kCompatibilityTol = 1e-10;

/// W below this (scaled) threshold counts as a genuine negativity violation.
constexpr double kNegativityTol = 1e-12;

/// |sn| below this raises PoleError on the singular branch.
constexpr double kPoleGuard = 1e-12;

void require_sigma(int sigma) {
  if (sigma != 1 && sigma != -1) {
    throw DomainError("sigma must be +1 or -1, got " + std::to_string(sigma));
  }
}

bool nearly_equal(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

Coupling finish_coupling(const std::array<double, 4>& h, double c, int sigma,
                         double delta1_sq, double delta2_sq,
                         double mixing_ratio) {
  Coupling out;
  out.h = h;
  out.sigma = sigma;
  out.c = c;
  out.mixing_ratio = mixing_ratio;
  out.delta1 = std::sqrt(delta1_sq);
  out.delta2 = std::sqrt(delta2_sq);
  out.c1 = c * delta1_sq * delta1_sq;
  out.c2 = c * delta2_sq * delta2_sq;
  out.s1 = std::sqrt(out.c1);
  out.s2 = std::sqrt(out.c2);
  return out;
}

}  // namespace

RootTriple roots_from_invariants(const Invariants& inv) {
  require_sigma(inv.sigma);
  const double s = static_cast<double>(inv.sigma);
  // W^3 - (E/sigma) W^2 + (C0/sigma) W - c/sigma = 0.
  const special::CubicRoots cubic =
      special::real_cubic_roots(-inv.E / s, inv.C0 / s, -inv.c / s);
  if (!cubic.all_real) {
    std::ostringstream msg;
    msg << "branch cubic has a complex-conjugate pair (discriminant "
        << cubic.discriminant << "); no real branch exists for E=" << inv.E
        << ", C0=" << inv.C0 << ", c=" << inv.c << ", sigma=" << inv.sigma;
    throw BranchUnavailableError(msg.str(), cubic.discriminant);
  }
  std::array<double, 3> w = {cubic.roots[0].real(), cubic.roots[1].real(),
                             cubic.roots[2].real()};
  std::sort(w.begin(), w.end());
  return RootTriple{w[0], w[1], w[2]};
}

Invariants invariants_from_roots(const RootTriple& roots, int sigma) {
  require_sigma(sigma);
  const double s = static_cast<double>(sigma);
  Invariants inv;
  inv.sigma = sigma;
  inv.E = s * (roots.W1 + roots.W2 + roots.W3);
  inv.C0 = s * (roots.W1 * roots.W2 + roots.W1 * roots.W3 + roots.W2 * roots.W3);
  inv.c = s * (roots.W1 * roots.W2 * roots.W3);
  return inv;
}

std::pair<double, double> weierstrass_invariants(const Invariants& inv) {
  require_sigma(inv.sigma);
  const double s = static_cast<double>(inv.sigma);
  return {-4.0 * inv.C0 / s, 4.0 * inv.c / s};
}

Coupling derive_coupling(const std::array<double, 4>& h, double c, int sigma) {
  require_sigma(sigma);
  if (!(c > 0.0)) {
    throw RealSolutionImpossibleError(
        "product invariant c must be positive for real phase strengths, got " +
        std::to_string(c));
  }
  const double h11 = h[0], h12 = h[1], h21 = h[2], h22 = h[3];
  const double row_scale = std::abs(h11) + std::abs(h21);
  if (std::abs(h11 - h21) <= kDegenerateTol * std::max(1.0, row_scale)) {
    if (std::abs(h22 - h12) <=
        kDegenerateTol * std::max(1.0, std::abs(h22) + std::abs(h12))) {
      throw IncompatibleCouplingError(
          "interaction matrix is fully degenerate (equal rows); the "
          "amplitude split is underdetermined - supply (c1, c2) explicitly");
    }
    throw IncompatibleCouplingError(
        "h11 = h21 with h22 != h12: the two constraint rows are parallel in "
        "delta1^2 but not in delta2^2, so no mixing ratio exists");
  }
  const double mixing_ratio = (h22 - h12) / (h11 - h21);
  if (mixing_ratio < 0.0) {
    throw RealSolutionImpossibleError(
        "mixing ratio delta1^2/delta2^2 = " + std::to_string(mixing_ratio) +
        " is negative; the proportional ansatz has no real amplitudes");
  }
  const double D = mixing_ratio * h11 + h12;
  if (D == 0.0) {
    throw IncompatibleCouplingError(
        "constraint row collapses to 0 = 2 sigma; no amplitude scale exists");
  }
  if ((D > 0.0) != (sigma > 0)) {
    throw RealSolutionImpossibleError(
        "sign of m_s h11 + h12 conflicts with sigma: delta2^2 = 2 sigma / " +
        std::to_string(D) + " would be negative");
  }
  const double delta2_sq = 2.0 * sigma / D;
  const double delta1_sq = mixing_ratio * delta2_sq;
  return finish_coupling(h, c, sigma, delta1_sq, delta2_sq, mixing_ratio);
}

Coupling derive_coupling(const std::array<double, 4>& h, double c, int sigma,
                         double c1, double c2) {
  require_sigma(sigma);
  if (!(c > 0.0)) {
    throw RealSolutionImpossibleError(
        "product invariant c must be positive for real phase strengths, got " +
        std::to_string(c));
  }
  const double h11 = h[0], h12 = h[1], h21 = h[2], h22 = h[3];
  if (!nearly_equal(h11, h21, kDegenerateTol) ||
      !nearly_equal(h12, h22, kDegenerateTol)) {
    throw DomainError(
        "the (c1, c2) overload applies only to a fully degenerate "
        "interaction matrix (both rows equal)");
  }
  if (c1 < 0.0 || c2 < 0.0) {
    throw DomainError("per-component constants c1, c2 must be nonnegative");
  }
  // delta_j^2 = sqrt(c_j / c) must satisfy the single remaining constraint.
  const double gap =
      std::sqrt(c1) * h11 + std::sqrt(c2) * h12 - 2.0 * sigma * std::sqrt(c);
  if (std::abs(gap) >= kCompatibilityTol) {
    std::ostringstream msg;
    msg << "supplied (c1, c2) violate sqrt(c1) h11 + sqrt(c2) h12 = 2 sigma "
           "sqrt(c) by "
        << gap;
    throw IncompatibleCouplingError(msg.str());
  }
  const double delta1_sq = std::sqrt(c1 / c);
  const double delta2_sq = std::sqrt(c2 / c);
  const double mixing_ratio =
      delta2_sq == 0.0 ? kInf : delta1_sq / delta2_sq;
  return finish_coupling(h, c, sigma, delta1_sq, delta2_sq, mixing_ratio);
}

Coupling derive_coupling_zero_component(const std::array<double, 4>& h,
                                        double c, int sigma) {
  require_sigma(sigma);
  if (!(c > 0.0)) {
    throw RealSolutionImpossibleError(
        "product invariant c must be positive for real phase strengths, got " +
        std::to_string(c));
  }
  const double h22 = h[3];
  if (h22 == 0.0 || (h22 > 0.0) != (sigma > 0)) {
    throw RealSolutionImpossibleError(
        "one-component reduction needs sign(h22) = sigma: delta2^2 = "
        "2 sigma / h22 with h22 = " +
        std::to_string(h22));
  }
  const double delta2_sq = 2.0 * sigma / h22;
  Coupling out = finish_coupling(h, c, sigma, 0.0, delta2_sq, 0.0);
  return out;
}

BranchSolution make_branch(BranchKind kind, const RootTriple& roots, int sigma,
                           double y0) {
  require_sigma(sigma);
  if (!(roots.W1 <= roots.W2 && roots.W2 <= roots.W3)) {
    throw DomainError("branch roots must be in ascending order");
  }
  const bool needs_positive_sigma = kind == BranchKind::FiniteSn ||
                                    kind == BranchKind::DarkSoliton ||
                                    kind == BranchKind::SingularSn;
  if (needs_positive_sigma != (sigma == 1)) {
    throw DomainError("branch kind is incompatible with the supplied sigma");
  }
  if (kind == BranchKind::DarkSoliton &&
      !nearly_equal(roots.W2, roots.W3, kRootMergeTol)) {
    throw DomainError(
        "dark soliton needs the repeated-root configuration W2 = W3");
  }
  if (kind == BranchKind::BrightSoliton &&
      !nearly_equal(roots.W1, roots.W2, kRootMergeTol)) {
    throw DomainError(
        "bright soliton needs the repeated-root configuration W1 = W2");
  }
  // W = Phi^2 must stay nonnegative on the branch's attained range. The
  // bright branch is exempt: it may dip below zero outside positive_window.
  double attained_min = roots.W1;
  if (kind == BranchKind::FiniteSnNegSigma) attained_min = roots.W2;
  if (kind == BranchKind::SingularSn) attained_min = roots.W3;
  if (kind != BranchKind::BrightSoliton && attained_min < -kNegativityTol) {
    throw PositivityError(
        "branch range reaches W = " + std::to_string(attained_min) +
        " < 0; the squared amplitude cannot be negative");
  }

  BranchSolution b;
  b.kind = kind;
  b.roots = roots;
  b.sigma = sigma;
  b.y0 = y0;
  const double span = roots.W3 - roots.W1;
  if (span == 0.0) {
    b.lambda = 0.0;  // constant solution W == W1
    b.k = 0.0;
    return b;
  }
  b.lambda = std::sqrt(span);
  double k2 = 0.0;
  switch (kind) {
    case BranchKind::FiniteSn:
    case BranchKind::SingularSn:
      k2 = (roots.W2 - roots.W1) / span;
      break;
    case BranchKind::FiniteSnNegSigma:
      k2 = (roots.W3 - roots.W2) / span;
      break;
    case BranchKind::DarkSoliton:
    case BranchKind::BrightSoliton:
      k2 = 1.0;
      break;
  }
  b.k = std::sqrt(std::clamp(k2, 0.0, 1.0));
  return b;
}

std::pair<double, double> eval_branch(const BranchSolution& b, double y) {
  const double W1 = b.roots.W1, W2 = b.roots.W2, W3 = b.roots.W3;
  if (b.lambda == 0.0) return {W1, 0.0};
  const double yt = y - b.y0;
  switch (b.kind) {
    case BranchKind::FiniteSn: {
      const auto j = special::jacobi_sn_cn_dn(b.lambda * yt, b.k);
      const double W = W1 + (W2 - W1) * j.sn * j.sn;
      const double dW = 2.0 * b.lambda * (W2 - W1) * j.sn * j.cn * j.dn;
      return {W, dW};
    }
    case BranchKind::DarkSoliton: {
      const double Wb = 0.5 * (W2 + W3);
      const double depth = Wb - W1;
      const double theta = std::sqrt(depth) * yt;
      const double sech = 1.0 / std::cosh(theta);
      const double W = Wb - depth * sech * sech;
      const double dW =
          2.0 * depth * std::sqrt(depth) * sech * sech * std::tanh(theta);
      return {W, dW};
    }
    case BranchKind::SingularSn: {
      const auto j = special::jacobi_sn_cn_dn(b.lambda * yt, b.k);
      if (std::abs(j.sn) < kPoleGuard) {
        throw PoleError("singular branch pole: sn(lambda (y - y0)) = 0 at y = " +
                        std::to_string(y));
      }
      const double inv_sn2 = 1.0 / (j.sn * j.sn);
      const double W = W1 + (W3 - W1) * inv_sn2;
      const double dW =
          -2.0 * b.lambda * (W3 - W1) * j.cn * j.dn / (j.sn * j.sn * j.sn);
      return {W, dW};
    }
    case BranchKind::FiniteSnNegSigma: {
      const auto j = special::jacobi_sn_cn_dn(b.lambda * yt, b.k);
      const double W = W3 - (W3 - W2) * j.sn * j.sn;
      const double dW = -2.0 * b.lambda * (W3 - W2) * j.sn * j.cn * j.dn;
      return {W, dW};
    }
    case BranchKind::BrightSoliton: {
      const double Wm = 0.5 * (W1 + W2);
      const double height = W3 - Wm;
      const double theta = std::sqrt(height) * yt;
      const double sech = 1.0 / std::cosh(theta);
      const double W = Wm + height * sech * sech;
      const double dW =
          -2.0 * height * std::sqrt(height) * sech * sech * std::tanh(theta);
      return {W, dW};
    }
  }
  throw DomainError("unknown branch kind");
}

double branch_second_derivative(const Invariants& inv, double W) {
  return 6.0 * inv.sigma * W * W - 4.0 * inv.E * W + 2.0 * inv.C0;
}

double positive_window(const BranchSolution& b) {
  if (b.kind != BranchKind::BrightSoliton) return kInf;
  const double Wm = 0.5 * (b.roots.W1 + b.roots.W2);
  if (Wm >= 0.0) return kInf;
  const double height = b.roots.W3 - Wm;
  // W(y) = Wm + height sech^2 crosses zero where cosh^2 = height / (-Wm).
  return std::acosh(std::sqrt(height / -Wm)) / std::sqrt(height);
}

double branch_period(const BranchSolution& b) {
  if (b.lambda == 0.0) return kInf;
  switch (b.kind) {
    case BranchKind::FiniteSn:
    case BranchKind::SingularSn:
    case BranchKind::FiniteSnNegSigma:
      if (b.k >= 1.0) return kInf;  // soliton limit of the sn branches
      return 2.0 * special::complete_elliptic_K(b.k) / b.lambda;
    case BranchKind::DarkSoliton:
    case BranchKind::BrightSoliton:
      return kInf;
  }
  throw DomainError("unknown branch kind");
}

double branch_first_integral_residual(const BranchSolution& b,
                                      const std::vector<double>& ys) {
  double worst = 0.0;
  for (double y : ys) {
    const auto [W, dW] = eval_branch(b, y);
    const double rhs = 4.0 * b.sigma * (W - b.roots.W1) * (W - b.roots.W2) *
                       (W - b.roots.W3);
    worst = std::max(worst, std::abs(dW * dW - rhs));
  }
  return worst;
}

WeierstrassCheck weierstrass_consistency(double k2, double g2, double g3) {
  WeierstrassCheck out;
  const double f = 1.0 - k2 + k2 * k2;
  const double poly = (k2 + 1.0) * (k2 - 2.0) * (2.0 * k2 - 1.0);
  out.relation_residual =
      108.0 * g3 * g3 * f * f * f - g2 * g2 * g2 * poly * poly;
  out.discriminant = g2 * g2 * g2 - 27.0 * g3 * g3;
  out.applicable = g2 != 0.0 && g3 != 0.0;
  return out;
}

}  // namespace phasewave::branches
