#pragma once

/// Flat key-value job configuration: parsing, validation, canonical
/// serialization, and assembly of the solution a config describes.
///
/// Format: one `key = value` per line, `#` starts a comment, blank lines
/// ignored. Nesting is spelled with dotted keys (`family.kind`, `roots.W1`).
/// Unknown keys are rejected with their line number so typos cannot silently
/// fall back to defaults.

#include <array>
#include <cstddef>
#include <string>

#include "phasewave/assembly.hpp"
#include "phasewave/branches.hpp"
#include "phasewave/polar.hpp"
#include "phasewave/scaling.hpp"

namespace phasewave::config {

enum class Mode { Pair, Polar };

/// Sampling window. In pair mode this is the physical x-window; in polar
/// mode it is the window in the shared coordinate of the polar system.
struct GridSpec {
  double x_lo = 0.0;
  double x_hi = 0.0;
  std::size_t n = 0;
};

/// Inputs of a polar-sector job (mode = polar, verification only).
struct PolarJob {
  double K1 = 0.0;
  double K2 = 0.0;
  double E = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double zeta0 = 0.0;
};

/// A fully resolved job: every derivable quantity (the third root, the
/// envelope frequency or chemical potential, the coupling split) has been
/// computed and validated, so builders below cannot fail for consistency
/// reasons the parser already checked.
struct JobConfig {
  Mode mode = Mode::Pair;

  // Pair mode: envelope.
  scaling::Family family = scaling::Family::Constant;
  double C1 = 0.0;
  double C2 = 0.0;
  double C3 = 1.0;
  double omega = 0.0;  // trig/exp families
  double mu = 0.0;     // gaussian/constant families
  std::string potential_kind;  // "zero" or "quadratic"

  // Pair mode: interaction and branch.
  std::array<double, 4> h = {0.0, 0.0, 0.0, 0.0};
  int sigma = 1;
  branches::RootTriple roots;
  branches::BranchKind branch_kind = branches::BranchKind::FiniteSn;
  double y0 = 0.0;
  // derive | degenerate | zero-component | manual
  std::string coupling_mode = "derive";
  double coupling_c1 = 0.0;  // degenerate mode only
  double coupling_c2 = 0.0;
  std::array<double, 2> manual_delta = {0.0, 0.0};  // manual mode only
  std::array<int, 2> phase_sign = {1, 1};
  std::array<double, 2> perturb = {1.0, 1.0};  // amplitude detuning factors

  // Polar mode.
  PolarJob polar;

  // Common.
  GridSpec grid;
  std::string csv_name = "solution.csv";
  std::string report_name = "report.txt";
};

/// Parse config text. Throws ConfigError naming the offending key and line
/// for: malformed lines, duplicate/unknown/missing keys, values of the wrong
/// type, conflicting specifications (e.g. both roots and invariants), and
/// any module precondition the described job would violate.
JobConfig parse_config(const std::string& text);

/// Read and parse a config file; the filename is prefixed to diagnostics.
JobConfig load_config(const std::string& path);

/// Canonical serialization: every effective key written explicitly
/// (including derived ones such as the third root and the envelope
/// frequency), derived coupling constants echoed as `# derived:` comments.
/// parse_config(canonical_text(cfg)) reproduces an equivalent config.
std::string canonical_text(const JobConfig& cfg);

/// Envelope described by a pair-mode config.
scaling::ScalingSpec envelope_spec(const JobConfig& cfg);

/// Coupling described by a pair-mode config (perturbation factors NOT yet
/// applied; build_solution applies them).
branches::Coupling build_coupling(const JobConfig& cfg);

/// Branch described by a pair-mode config.
branches::BranchSolution build_branch(const JobConfig& cfg);

/// Assemble the stationary pair a pair-mode config describes, including the
/// perturbation factors (a detuned solution assembles fine and is then
/// caught by the residual checks - that is the point of the detuning hook).
assembly::StationarySolution build_solution(const JobConfig& cfg);

/// Build the polar solution of a polar-mode config.
polar::PolarSpec build_polar(const JobConfig& cfg);

/// Copy cfg with one sweepable parameter replaced and every dependent
/// quantity re-derived (third root for gaussian envelopes, envelope
/// frequency for trig/exp, chemical potential for constant). Supported
/// names: "W1", "W3" (any family), "alpha" (trig modulation depth),
/// "mu" (gaussian exponent). Throws ConfigError for unknown names or
/// inapplicable families, and propagates validation errors for values that
/// break the configuration.
JobConfig with_parameter(const JobConfig& cfg, const std::string& name,
                         double value);

}  // namespace phasewave::config
