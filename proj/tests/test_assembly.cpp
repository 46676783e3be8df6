#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "phasewave/assembly.hpp"
#include "phasewave/branches.hpp"
#include "phasewave/scaling.hpp"
#include "phasewave/special_functions.hpp"

namespace {

using namespace phasewave;

/// Tolerance for values frozen from high-precision closed-form evaluation.
constexpr double kFrozenTol = 1e-12;
/// Tolerance for frozen phase values (adaptive quadrature target is 1e-10
/// relative; the frozen references are good to 20 digits).
constexpr double kPhaseFrozenTol = 1e-9;
/// Tolerance when the same arithmetic is reassembled along another path.
constexpr double kConsistencyTol = 1e-14;
/// Tolerance for analytic derivatives against central differences.
constexpr double kDerivativeTol = 1e-7;

/// Trig frequency that makes the envelope's conserved constant E = 1.1 at
/// modulation depth 0.05: omega = 2 sqrt(1.1 / (1 - 0.05^2)).
constexpr double kOmegaDark = 2.1002446450169337;

/// Oscillating envelope + dark branch, both components populated.
assembly::StationarySolution dark_solution() {
  const auto env = scaling::make_trig(0.0, 0.05, 1.0, kOmegaDark);
  const auto coup = branches::derive_coupling({2.0, 1.0, 0.5, 2.0}, 0.025, 1);
  const auto br = branches::make_branch(branches::BranchKind::DarkSoliton,
                                        {0.1, 0.5, 0.5}, 1, 0.0);
  return assembly::make_stationary(env, coup, br);
}

/// Decaying Gaussian envelope + near-degenerate oscillatory branch
/// (sigma = -1); amplitudes localize, phases grow steeply in the tails.
assembly::StationarySolution gauss_solution() {
  const auto env = scaling::make_gaussian(-0.15);
  const auto coup =
      branches::derive_coupling({-2.0, -1.0, -0.5, -2.0}, 2.49999e-4, -1);
  const auto br = branches::make_branch(branches::BranchKind::FiniteSnNegSigma,
                                        {-0.1, 0.0499, 0.0501}, -1, 0.0);
  return assembly::make_stationary(env, coup, br);
}

}  // namespace

TEST_CASE("assembly cross-validates its ingredients") {
  const auto env = scaling::make_trig(0.0, 0.05, 1.0, kOmegaDark);
  const auto coup = branches::derive_coupling({2.0, 1.0, 0.5, 2.0}, 0.025, 1);
  const auto br = branches::make_branch(branches::BranchKind::DarkSoliton,
                                        {0.1, 0.5, 0.5}, 1, 0.0);

  const auto sol = assembly::make_stationary(env, coup, br);
  CHECK(sol.mu == doctest::Approx(-kOmegaDark * kOmegaDark / 4.0)
                      .epsilon(kFrozenTol));
  CHECK(sol.invariants.E == doctest::Approx(1.1).epsilon(kFrozenTol));
  CHECK(sol.invariants.C0 == doctest::Approx(0.35).epsilon(kFrozenTol));
  CHECK(sol.invariants.c == doctest::Approx(0.025).epsilon(kFrozenTol));
  CHECK(sol.phase_sign[0] == 1);
  CHECK(sol.phase_sign[1] == 1);

  // sigma mismatch: a focusing-side coupling cannot drive this branch.
  auto flipped = coup;
  flipped.sigma = -1;
  CHECK_THROWS_AS(assembly::make_stationary(env, flipped, br), DomainError);

  // Product invariant mismatch between coupling and roots.
  auto off_c = coup;
  off_c.c = 0.026;
  CHECK_THROWS_AS(assembly::make_stationary(env, off_c, br),
                  InconsistencyError);

  // Envelope tuned to a different conserved constant than the branch.
  const auto wrong_env = scaling::make_trig(0.0, 0.05, 1.0, 2.0);
  CHECK_THROWS_AS(assembly::make_stationary(wrong_env, coup, br),
                  InconsistencyError);

  // Phase signs are restricted to +1 / -1.
  CHECK_THROWS_AS(assembly::make_stationary(env, coup, br, {2, 1}),
                  DomainError);
  CHECK_THROWS_AS(assembly::make_stationary(env, coup, br, {1, 0}),
                  DomainError);
}

TEST_CASE("amplitudes compose the envelope with the branch profile") {
  const auto sol = dark_solution();
  const double delta1 = std::sqrt(4.0 / 7.0);
  const double delta2 = std::sqrt(6.0 / 7.0);

  // At the center: a(0) = 1.05, y(0) = 0, W(0) = W1 = 0.1.
  CHECK(assembly::amplitude_at(sol, 0, 0.0).first ==
        doctest::Approx(delta1 * std::sqrt(1.05 * 0.1)).epsilon(kFrozenTol));
  CHECK(assembly::amplitude_at(sol, 1, 0.0).first ==
        doctest::Approx(delta2 * std::sqrt(1.05 * 0.1)).epsilon(kFrozenTol));

  // Off-center the same composition holds against the other modules.
  for (double x : {0.8, -1.3, 2.9}) {
    const double a = scaling::eval_scaling(sol.envelope, x).a;
    const double y = scaling::canonical_y(sol.envelope, x);
    const double W = branches::eval_branch(sol.branch, y).first;
    CHECK(assembly::amplitude_at(sol, 0, x).first ==
          doctest::Approx(delta1 * std::sqrt(a * W)).epsilon(kConsistencyTol));
  }

  // The amplitude is even: even envelope, odd map, even branch.
  for (double x : {0.6, 1.9}) {
    CHECK(assembly::amplitude_at(sol, 1, x).first ==
          doctest::Approx(assembly::amplitude_at(sol, 1, -x).first)
              .epsilon(1e-12));
  }

  CHECK_THROWS_AS(assembly::amplitude_at(sol, 2, 0.0), DomainError);
  CHECK_THROWS_AS(assembly::amplitude_at(sol, -1, 0.0), DomainError);
}

TEST_CASE("amplitude derivatives agree with central differences") {
  const double h = 1e-5;
  for (const auto& sol : {dark_solution(), gauss_solution()}) {
    for (int j : {0, 1}) {
      for (double x : {0.3, 1.1, -2.4}) {
        const auto [R, dR] = assembly::amplitude_at(sol, j, x);
        const double fd = (assembly::amplitude_at(sol, j, x + h).first -
                           assembly::amplitude_at(sol, j, x - h).first) /
                          (2.0 * h);
        CHECK(dR == doctest::Approx(fd).epsilon(1e-8).scale(1.0));
        CHECK(R > 0.0);
      }
    }
  }
}

TEST_CASE("analytic second derivatives match differenced first derivatives") {
  const double h = 1e-6;
  for (const auto& sol : {dark_solution(), gauss_solution()}) {
    for (int j : {0, 1}) {
      for (double x : {0.4, -1.2, 2.2}) {
        const double d2 = assembly::amplitude_second_derivative(sol, j, x);
        const double fd = (assembly::amplitude_at(sol, j, x + h).second -
                           assembly::amplitude_at(sol, j, x - h).second) /
                          (2.0 * h);
        CHECK(d2 == doctest::Approx(fd).epsilon(kDerivativeTol).scale(1.0));
      }
    }
  }
}

TEST_CASE("phases accumulate the inverse-square current") {
  const auto sol = dark_solution();

  // Frozen reference: theta_1(1.0) for the dark-dark fixture, computed two
  // independent ways (high-precision ODE solve of the branch equation and
  // closed-form elliptic evaluation) agreeing to 19 digits.
  CHECK(assembly::phase_at(sol, 0, 1.0) ==
        doctest::Approx(1.1440725594957983).epsilon(kPhaseFrozenTol));
  CHECK(assembly::phase_at(sol, 0, 2.5) ==
        doctest::Approx(1.8714050345830119).epsilon(kPhaseFrozenTol));
  CHECK(assembly::phase_at(sol, 0, -1.7) ==
        doctest::Approx(-1.5504401136189117).epsilon(kPhaseFrozenTol));

  // Both components share the same phase profile here: s_j = sqrt(c)
  // delta_j^2 makes s_j / R_j^2 component-independent.
  CHECK(assembly::phase_at(sol, 1, 1.0) ==
        doctest::Approx(assembly::phase_at(sol, 0, 1.0)).epsilon(1e-9));

  // theta(0) = 0 and theta is odd for this even-envelope fixture.
  CHECK(assembly::phase_at(sol, 0, 0.0) == 0.0);
  CHECK(assembly::phase_at(sol, 1, -2.5) ==
        doctest::Approx(-assembly::phase_at(sol, 1, 2.5)).epsilon(1e-9));

  // Flipping the phase sign negates the accumulated phase.
  const auto flipped = assembly::make_stationary(
      sol.envelope, sol.coupling, sol.branch, {-1, 1});
  CHECK(assembly::phase_at(flipped, 0, 1.0) ==
        doctest::Approx(-assembly::phase_at(sol, 0, 1.0)).epsilon(1e-12));

  // Matter current: R^2 theta' recovers s_j (theta differenced).
  const double h = 1e-5;
  for (double x : {0.3, 0.9, 1.7}) {
    const double dtheta = (assembly::phase_at(sol, 0, x + h) -
                           assembly::phase_at(sol, 0, x - h)) /
                          (2.0 * h);
    const double R = assembly::amplitude_at(sol, 0, x).first;
    CHECK(R * R * dtheta ==
          doctest::Approx(assembly::phase_strength(sol, 0))
              .epsilon(1e-7)
              .scale(1.0));
  }
}

TEST_CASE("phases stay accurate under a steeply decaying envelope") {
  const auto sol = gauss_solution();
  CHECK(assembly::phase_at(sol, 0, 1.0) ==
        doctest::Approx(0.33218302712333057).epsilon(kPhaseFrozenTol));
  CHECK(assembly::phase_at(sol, 0, 4.0) ==
        doctest::Approx(3.7282711473089259).epsilon(kPhaseFrozenTol));

  // Amplitude deep in the tail: the stretched coordinate has already grown
  // to ~6.5e3, stressing the map series and the branch's period handling.
  CHECK(assembly::amplitude_at(sol, 0, 8.0).first ==
        doctest::Approx(0.0013924437896929687).epsilon(1e-11));
}

TEST_CASE("zero-strength components carry zero phase and zero field") {
  const auto env = scaling::make_trig(0.0, 0.1, 1.0, 2.1081851067789197);
  const auto coup =
      branches::derive_coupling_zero_component({2.0, 2.0, 0.5, 2.0}, 0.025, 1);
  const auto br = branches::make_branch(branches::BranchKind::DarkSoliton,
                                        {0.1, 0.5, 0.5}, 1, 0.0);
  const auto sol = assembly::make_stationary(env, coup, br);

  CHECK(assembly::phase_strength(sol, 0) == 0.0);
  CHECK(assembly::amplitude_at(sol, 0, 1.3).first == 0.0);
  CHECK(assembly::amplitude_at(sol, 0, 1.3).second == 0.0);
  CHECK(assembly::amplitude_second_derivative(sol, 0, 1.3) == 0.0);
  CHECK(assembly::phase_at(sol, 0, 2.3) == 0.0);

  const auto psi = assembly::field_at(sol, 0.7, 1.1);
  CHECK(std::abs(psi[0]) == 0.0);
  CHECK(std::abs(psi[1]) > 0.0);
}

TEST_CASE("fields combine amplitude, phase, and chemical rotation") {
  const auto sol = dark_solution();
  const double x = 0.7;
  const double R1 = assembly::amplitude_at(sol, 0, x).first;
  const double theta1 = assembly::phase_at(sol, 0, x);

  const auto psi0 = assembly::field_at(sol, 0.0, x);
  CHECK(std::abs(psi0[0]) == doctest::Approx(R1).epsilon(1e-15));
  CHECK(std::arg(psi0[0]) == doctest::Approx(theta1).epsilon(1e-12));

  // Time evolution is a pure rotation at the chemical potential.
  const double t = 0.25;
  const auto psit = assembly::field_at(sol, t, x);
  CHECK(std::abs(psit[0]) == doctest::Approx(R1).epsilon(1e-15));
  const std::complex<double> ratio = psit[0] / psi0[0];
  CHECK(std::arg(ratio) == doctest::Approx(sol.mu * t).epsilon(1e-12));
  CHECK(std::abs(ratio) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("field grids exclude the right endpoint and match point sampling") {
  const auto sol = dark_solution();
  const auto grid = assembly::sample_fields(sol, -6.0, 6.0, 256, 0.0);

  REQUIRE(grid.x.size() == 256);
  REQUIRE(grid.psi1.size() == 256);
  REQUIRE(grid.psi2.size() == 256);
  CHECK(grid.spacing == doctest::Approx(12.0 / 256.0).epsilon(1e-16));
  CHECK(grid.x.front() == -6.0);
  CHECK(grid.x.back() ==
        doctest::Approx(6.0 - grid.spacing).epsilon(1e-15));

  for (std::size_t i : {std::size_t{0}, std::size_t{7}, std::size_t{128},
                        std::size_t{255}}) {
    const auto psi = assembly::field_at(sol, 0.0, grid.x[i]);
    CHECK(std::abs(grid.psi1[i] - psi[0]) < 1e-8);
    CHECK(std::abs(grid.psi2[i] - psi[1]) < 1e-8);
  }

  // Spectral-readiness guard: node counts must be powers of two >= 64.
  CHECK_THROWS_AS(assembly::sample_fields(sol, -6.0, 6.0, 100, 0.0),
                  DomainError);
  CHECK_THROWS_AS(assembly::sample_fields(sol, -6.0, 6.0, 32, 0.0),
                  DomainError);
  CHECK_THROWS_AS(assembly::sample_fields(sol, 6.0, -6.0, 256, 0.0),
                  DomainError);
}

TEST_CASE("localized fixture has small boundary amplitudes and stable grids") {
  const auto sol = gauss_solution();
  const auto grid = assembly::sample_fields(sol, -12.0, 12.0, 1024, 0.0);

  // Propagation precondition: the fields effectively vanish at the window
  // edges (periodic wrap-around stays harmless).
  CHECK(std::abs(grid.psi1.front()) < 1e-4);
  CHECK(std::abs(grid.psi2.front()) < 1e-4);
  CHECK(std::abs(grid.psi1.back()) < 1e-4);
  CHECK(std::abs(grid.psi2.back()) < 1e-4);

  // Doubling the resolution reproduces the shared nodes: the phase
  // quadrature's relative targeting keeps even the fast-phase tails
  // consistent between decompositions.
  const auto fine = assembly::sample_fields(sol, -12.0, 12.0, 2048, 0.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.x.size(); ++i) {
    worst = std::max(worst, std::abs(fine.psi1[2 * i] - grid.psi1[i]));
    worst = std::max(worst, std::abs(fine.psi2[2 * i] - grid.psi2[i]));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("solution tables expose scaled couplings, amplitudes, and phases") {
  const auto sol = dark_solution();
  const auto tab = assembly::sample_solution(sol, -2.0, 2.0, 5);

  REQUIRE(tab.x.size() == 5);
  CHECK(tab.x[0] == -2.0);
  CHECK(tab.x[2] == 0.0);
  CHECK(tab.x[4] == 2.0);

  for (std::size_t i = 0; i < 5; ++i) {
    const double x = tab.x[i];
    const double a = scaling::eval_scaling(sol.envelope, x).a;
    CHECK(tab.a[i] == doctest::Approx(a).epsilon(kConsistencyTol));
    CHECK(tab.y[i] == doctest::Approx(scaling::canonical_y(sol.envelope, x))
                          .epsilon(1e-12)
                          .scale(1.0));
    CHECK(tab.g11[i] ==
          doctest::Approx(2.0 / (a * a * a)).epsilon(kConsistencyTol));
    CHECK(tab.g12[i] ==
          doctest::Approx(1.0 / (a * a * a)).epsilon(kConsistencyTol));
    CHECK(tab.g21[i] ==
          doctest::Approx(0.5 / (a * a * a)).epsilon(kConsistencyTol));
    CHECK(tab.g22[i] ==
          doctest::Approx(2.0 / (a * a * a)).epsilon(kConsistencyTol));
    CHECK(tab.R1[i] == doctest::Approx(assembly::amplitude_at(sol, 0, x).first)
                           .epsilon(kConsistencyTol));
    CHECK(tab.R2[i] == doctest::Approx(assembly::amplitude_at(sol, 1, x).first)
                           .epsilon(kConsistencyTol));
    CHECK(tab.theta1[i] == doctest::Approx(assembly::phase_at(sol, 0, x))
                               .epsilon(1e-9)
                               .scale(1.0));
    CHECK(tab.theta2[i] == doctest::Approx(assembly::phase_at(sol, 1, x))
                               .epsilon(1e-9)
                               .scale(1.0));
  }

  CHECK_THROWS_AS(assembly::sample_solution(sol, -2.0, 2.0, 1), DomainError);
  CHECK_THROWS_AS(assembly::sample_solution(sol, 2.0, -2.0, 5), DomainError);
}

TEST_CASE("csv output is exact to the last digit and line-feed terminated") {
  const auto sol = dark_solution();
  const auto tab = assembly::sample_solution(sol, -1.0, 1.0, 3);

  std::ostringstream out;
  assembly::write_csv(tab, out);
  const std::string text = out.str();

  CHECK(text.rfind("x,a,y,g11,g12,g21,g22,R1,R2,theta1,theta2\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);

  // One header plus one line per node.
  std::size_t lines = 0;
  for (char ch : text) lines += ch == '\n';
  CHECK(lines == 4);

  // Round-trip: the printed amplitude parses back to the exact double.
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  std::getline(in, line);  // first row
  std::vector<std::string> cells;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    cells.push_back(line.substr(pos, comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  REQUIRE(cells.size() == 11);
  CHECK(std::strtod(cells[7].c_str(), nullptr) == tab.R1[0]);
  CHECK(std::strtod(cells[9].c_str(), nullptr) == tab.theta1[0]);
  CHECK(std::strtod(cells[0].c_str(), nullptr) == -1.0);
}

TEST_CASE("constant envelopes reduce to the bare branch profile") {
  // E = -mu for a flat envelope; the dark branch needs E = 1.1.
  const auto env = scaling::make_constant(-1.1);
  const auto coup = branches::derive_coupling({2.0, 1.0, 0.5, 2.0}, 0.025, 1);
  const auto br = branches::make_branch(branches::BranchKind::DarkSoliton,
                                        {0.1, 0.5, 0.5}, 1, 0.0);
  const auto sol = assembly::make_stationary(env, coup, br);

  const double delta2 = std::sqrt(6.0 / 7.0);
  for (double x : {0.0, 0.9, -2.1}) {
    const double W = branches::eval_branch(sol.branch, x).first;
    CHECK(assembly::amplitude_at(sol, 1, x).first ==
          doctest::Approx(delta2 * std::sqrt(W)).epsilon(kConsistencyTol));
  }

  // Frozen reference: theta(1.5) = sqrt(c) * integral of 1/W on a flat
  // envelope (computed at 40 digits).
  CHECK(assembly::phase_at(sol, 0, 1.5) ==
        doctest::Approx(1.4504138389451393).epsilon(kPhaseFrozenTol));

  const auto tab = assembly::sample_solution(sol, 0.0, 1.0, 3);
  CHECK(tab.y[1] == doctest::Approx(tab.x[1]).epsilon(1e-15));
  CHECK(tab.g11[1] == 2.0);
}

TEST_CASE("perturbed couplings assemble without tripping coherence checks") {
  // Scaling one amplitude is the standard way to produce a near-solution
  // for residual sensitivity tests; the ingredient-level validation must
  // not reject it (the stored invariants are untouched).
  auto sol = dark_solution();
  auto bumped = sol.coupling;
  bumped.delta1 *= 1.01;
  const auto perturbed =
      assembly::make_stationary(sol.envelope, bumped, sol.branch);
  CHECK(assembly::amplitude_at(perturbed, 0, 0.4).first ==
        doctest::Approx(1.01 * assembly::amplitude_at(sol, 0, 0.4).first)
            .epsilon(1e-14));
}
