#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
// Unit tests of the key = value configuration layer, plus end-to-end runs of
// the command-line binary (path injected by the build as PHASEWAVE_CLI_PATH).
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "phasewave/assembly.hpp"
#include "phasewave/branches.hpp"
#include "phasewave/config.hpp"
#include "phasewave/errors.hpp"
#include "phasewave/polar.hpp"

namespace {

namespace fs = std::filesystem;
using namespace phasewave;

/// Frozen-decimal comparisons for scalars the parser derives.
constexpr double kDerivedTol = 1e-13;
/// Root recovery through the invariants route (cubic solve).
constexpr double kRootsTol = 1e-10;

/// Trig frequencies matching E = 1.1 at modulation depths 0.05 and 0.1.
constexpr double kOmegaAlpha005 = 2.1002446450169336;
constexpr double kOmegaAlpha010 = 2.1081851067789197;

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

/// Parse `text` expecting a ConfigError; returns its message ("" = no throw).
std::string config_error(const std::string& text) {
  try {
    (void)config::parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

/// Valid dark-pair body shared by most parser cases (mirrors the shipped
/// dark_dark configuration).
std::string dark_pair_text() {
  return "family.kind = trig\n"
         "family.alpha = 0.05\n"
         "h.h11 = 2\n"
         "h.h12 = 1\n"
         "h.h21 = 0.5\n"
         "h.h22 = 2\n"
         "sigma = 1\n"
         "roots.W1 = 0.1\n"
         "roots.W2 = 0.5\n"
         "roots.W3 = 0.5\n"
         "branch.kind = dark-soliton\n"
         "grid.x_lo = -4.5\n"
         "grid.x_hi = 4.5\n"
         "grid.n = 2048\n";
}

// ---------------------------------------------------------------------------
// Parsing: happy paths.
// ---------------------------------------------------------------------------

TEST_CASE("config: dark pair parses with a derived trig frequency") {
  const config::JobConfig cfg = config::parse_config(dark_pair_text());

  CHECK(cfg.mode == config::Mode::Pair);
  CHECK(cfg.family == scaling::Family::Trig);
  CHECK(cfg.C1 == 0.0);  // alpha shorthand: a = 1 + alpha cos(omega x)
  CHECK(cfg.C2 == 0.05);
  CHECK(cfg.C3 == 1.0);
  CHECK(std::abs(cfg.omega - kOmegaAlpha005) < kDerivedTol);
  CHECK(cfg.sigma == 1);
  CHECK(cfg.roots.W2 == 0.5);
  CHECK(cfg.branch_kind == branches::BranchKind::DarkSoliton);
  CHECK(cfg.coupling_mode == "derive");
  CHECK(cfg.phase_sign[0] == 1);
  CHECK(cfg.perturb[0] == 1.0);
  CHECK(cfg.grid.n == 2048);

  // The derived coupling matches the library's direct answer.
  const branches::Coupling cp = config::build_coupling(cfg);
  CHECK(cp.delta1 == doctest::Approx(std::sqrt(4.0 / 7.0)).epsilon(1e-14));
  CHECK(cp.delta2 == doctest::Approx(std::sqrt(6.0 / 7.0)).epsilon(1e-14));
  CHECK(cp.c == doctest::Approx(0.025).epsilon(1e-14));

  // And the full assembly is coherent (chemical potential of the trig family).
  const auto sol = config::build_solution(cfg);
  CHECK(sol.mu ==
        doctest::Approx(-cfg.omega * cfg.omega / 4.0).epsilon(1e-14));
}

TEST_CASE("config: omitted middle root is completed from the frequency") {
  // E = omega^2 / 4 = 0.9 at alpha = 0 forces W2 = 0.9 - 0.1 - 0.5 = 0.3.
  const std::string text =
      "family.kind = trig\n"
      "family.alpha = 0\n"
      "family.omega = 1.8973665961010275\n"  // 2 sqrt(0.9)
      "h.h11 = 2\n"
      "h.h12 = 1\n"
      "h.h21 = 0.5\n"
      "h.h22 = 2\n"
      "sigma = 1\n"
      "roots.W1 = 0.1\n"
      "roots.W3 = 0.5\n"
      "branch.kind = finite-sn\n"
      "grid.x_lo = -3\n"
      "grid.x_hi = 3\n"
      "grid.n = 256\n";
  const config::JobConfig cfg = config::parse_config(text);
  const double e_target =
      1.8973665961010275 * 1.8973665961010275 / 4.0;  // independent rederivation
  CHECK(cfg.roots.W2 ==
        doctest::Approx(e_target - 0.1 - 0.5).epsilon(1e-15));
  CHECK(std::abs(cfg.roots.W2 - 0.3) < kDerivedTol);
}

TEST_CASE("config: invariants route recovers the root triple") {
  // (E, C0, c) of the ascending triple {0.1, 0.3, 0.5} at sigma = +1.
  const std::string text =
      "family.kind = trig\n"
      "family.alpha = 0.05\n"
      "h.h11 = 2\n"
      "h.h12 = 1\n"
      "h.h21 = 0.5\n"
      "h.h22 = 2\n"
      "sigma = 1\n"
      "invariants.E = 0.9\n"
      "invariants.C0 = 0.23\n"
      "invariants.c = 0.015\n"
      "branch.kind = finite-sn\n"
      "grid.x_lo = -3\n"
      "grid.x_hi = 3\n"
      "grid.n = 256\n";
  const config::JobConfig cfg = config::parse_config(text);
  CHECK(std::abs(cfg.roots.W1 - 0.1) < kRootsTol);
  CHECK(std::abs(cfg.roots.W2 - 0.3) < kRootsTol);
  CHECK(std::abs(cfg.roots.W3 - 0.5) < kRootsTol);
  // Frequency was completed against the same first integral.
  const double closed = cfg.omega * cfg.omega * (1.0 - 0.05 * 0.05) / 4.0;
  CHECK(closed == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("config: polar job carries its derived angular constants") {
  const std::string text =
      "mode = polar\n"
      "polar.K1 = 1\n"
      "polar.K2 = 3\n"
      "polar.E = 2.25\n"
      "polar.c1 = 0.25\n"
      "polar.c2 = 0.25\n"
      "grid.x_lo = -2\n"
      "grid.x_hi = 2\n"
      "grid.n = 1601\n";
  const config::JobConfig cfg = config::parse_config(text);
  REQUIRE(cfg.mode == config::Mode::Polar);
  const polar::PolarSpec spec = config::build_polar(cfg);
  CHECK(spec.b == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(spec.Delta == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(spec.radial_roots.W1 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(spec.radial_roots.W3 == doctest::Approx(2.0).epsilon(1e-12));
}

// ---------------------------------------------------------------------------
// Parsing: coupling modes.
// ---------------------------------------------------------------------------

TEST_CASE("config: degenerate coupling takes explicit constants") {
  const std::string text =
      "family.kind = trig\n"
      "family.alpha = 0.05\n"
      "h.h11 = 2\n"
      "h.h12 = 1\n"
      "h.h21 = 2\n"
      "h.h22 = 1\n"
      "sigma = 1\n"
      "roots.W1 = 0.1\n"
      "roots.W2 = 0.5\n"
      "roots.W3 = 0.5\n"
      "branch.kind = dark-soliton\n"
      "coupling.mode = degenerate\n"
      "coupling.c1 = 0.00625\n"
      "coupling.c2 = 0.025\n"
      "grid.x_lo = -4.5\n"
      "grid.x_hi = 4.5\n"
      "grid.n = 256\n";
  const config::JobConfig cfg = config::parse_config(text);
  const branches::Coupling cp = config::build_coupling(cfg);
  CHECK(cp.delta1 == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(cp.delta2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(cp.c1 == doctest::Approx(0.00625).epsilon(1e-12));
  CHECK(cp.c2 == doctest::Approx(0.025).epsilon(1e-12));
}

TEST_CASE("config: zero-component coupling suppresses the first field") {
  const std::string text =
      "family.kind = trig\n"
      "family.alpha = 0.1\n"
      "h.h11 = 2\n"
      "h.h12 = 2\n"
      "h.h21 = 0.5\n"
      "h.h22 = 2\n"
      "sigma = 1\n"
      "roots.W1 = 0.1\n"
      "roots.W2 = 0.5\n"
      "roots.W3 = 0.5\n"
      "branch.kind = dark-soliton\n"
      "coupling.mode = zero-component\n"
      "grid.x_lo = -4.5\n"
      "grid.x_hi = 4.5\n"
      "grid.n = 256\n";
  const branches::Coupling cp =
      config::build_coupling(config::parse_config(text));
  CHECK(cp.delta1 == 0.0);
  CHECK(cp.s1 == 0.0);
  CHECK(cp.delta2 == doctest::Approx(1.0).epsilon(1e-14));  // 2 sigma / h22
  CHECK(cp.c2 == doctest::Approx(0.025).epsilon(1e-14));    // 4 c / h22^2
}

TEST_CASE("config: manual coupling carries a zero phase strength") {
  // Bright pair: c = sigma W1 W2 W3 = 0, which the derive mode must refuse
  // and the manual mode must accept with vanishing phase strengths.
  const std::string text =
      "family.kind = constant\n"
      "h.h11 = -2\n"
      "h.h12 = -1\n"
      "h.h21 = -0.5\n"
      "h.h22 = -2\n"
      "sigma = -1\n"
      "roots.W1 = 0\n"
      "roots.W2 = 0\n"
      "roots.W3 = 0.2\n"
      "branch.kind = bright-soliton\n"
      "coupling.mode = manual\n"
      "coupling.delta1 = 0.7559289460184544\n"  // sqrt(4/7)
      "coupling.delta2 = 0.9258200997725514\n"  // sqrt(6/7)
      "grid.x_lo = -55\n"
      "grid.x_hi = 55\n"
      "grid.n = 1024\n";
  const config::JobConfig cfg = config::parse_config(text);
  CHECK(cfg.mu == doctest::Approx(0.2).epsilon(1e-14));  // mu = -E = sigma sum W
  const branches::Coupling cp = config::build_coupling(cfg);
  CHECK(cp.c == 0.0);
  CHECK(cp.s1 == 0.0);
  CHECK(cp.s2 == 0.0);
  CHECK(cp.c1 == 0.0);
  CHECK(cp.mixing_ratio == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("config: manual amplitudes violating the constraint are rejected") {
  const std::string text =
      "family.kind = constant\n"
      "h.h11 = -2\n"
      "h.h12 = -1\n"
      "h.h21 = -0.5\n"
      "h.h22 = -2\n"
      "sigma = -1\n"
      "roots.W1 = 0\n"
      "roots.W2 = 0\n"
      "roots.W3 = 0.2\n"
      "branch.kind = bright-soliton\n"
      "coupling.mode = manual\n"
      "coupling.delta1 = 0.9\n"  // wrong: rows need delta1 = sqrt(4/7)
      "coupling.delta2 = 0.9258200997725514\n"
      "grid.x_lo = -55\n"
      "grid.x_hi = 55\n"
      "grid.n = 1024\n";
  const std::string msg = config_error(text);
  CHECK(contains(msg, "describes an invalid job"));
  CHECK(contains(msg, "violate amplitude constraint row"));
}

TEST_CASE("config: manual amplitudes need a nonnegative product invariant") {
  // Nondegenerate bright roots give c = sigma W1 W2 W3 = -0.002 < 0.
  const std::string text =
      "family.kind = gaussian\n"
      "family.mu = -0.15\n"
      "h.h11 = -2\n"
      "h.h12 = -1\n"
      "h.h21 = -0.5\n"
      "h.h22 = -2\n"
      "sigma = -1\n"
      "roots.W1 = -0.1\n"
      "roots.W2 = -0.1\n"
      "roots.W3 = 0.2\n"
      "branch.kind = bright-soliton\n"
      "coupling.mode = manual\n"
      "coupling.delta1 = 0.7559289460184544\n"
      "coupling.delta2 = 0.9258200997725514\n"
      "grid.x_lo = -12\n"
      "grid.x_hi = 12\n"
      "grid.n = 1024\n";
  const std::string msg = config_error(text);
  CHECK(contains(msg, "nonnegative product invariant"));
}

// ---------------------------------------------------------------------------
// Parsing: diagnostics.
// ---------------------------------------------------------------------------

TEST_CASE("config: unknown and duplicate keys name their lines") {
  CHECK(contains(config_error("famly.kind = trig\n" + dark_pair_text()),
                 "unknown key 'famly.kind' (line 1)"));
  CHECK(contains(config_error("sigma = 1\n" + dark_pair_text()),
                 "duplicate key 'sigma'"));
  CHECK(contains(config_error("just some words\n"), "expected 'key = value'"));
  CHECK(contains(config_error("sigma =\n"), "empty key or value"));
}

TEST_CASE("config: malformed values point at the offending key") {
  CHECK(contains(
      config_error(dark_pair_text() + "perturb.delta1_factor = banana\n"),
      "expected a finite number, got 'banana'"));
  std::string text = dark_pair_text();
  text.replace(text.find("grid.n = 2048"), 13, "grid.n = 20.5");
  CHECK(contains(config_error(text), "expected an integer"));
  text = dark_pair_text();
  text.replace(text.find("sigma = 1"), 9, "sigma = 2");
  CHECK(contains(config_error(text), "expected 1 or -1"));
}

TEST_CASE("config: roots and invariants are mutually exclusive") {
  CHECK(contains(config_error(dark_pair_text() + "invariants.E = 1.1\n"),
                 "give either roots.* or invariants.*, not both"));
  std::string text = dark_pair_text();
  // Drop all three root lines -> neither route is specified.
  text.erase(text.find("roots.W1 = 0.1\n"),
             std::string("roots.W1 = 0.1\nroots.W2 = 0.5\nroots.W3 = 0.5\n")
                 .size());
  CHECK(contains(config_error(text), "missing roots.W1/W3"));
}

TEST_CASE("config: an explicit frequency must match the first integral") {
  const std::string msg =
      config_error(dark_pair_text() + "family.omega = 2\n");
  CHECK(contains(msg, "frequency gives first integral E = 0.9975"));
  CHECK(contains(msg, "the roots demand E = 1.1"));
}

TEST_CASE("config: family-specific keys are policed") {
  std::string text = dark_pair_text();
  CHECK(contains(config_error(text + "family.mu = 0.1\n"),
                 "applies to gaussian/constant"));
  text.replace(text.find("family.kind = trig"), 18, "family.kind = exp ");
  CHECK(contains(config_error(text), "trig modulation depth"));
  CHECK(contains(config_error(dark_pair_text() + "family.C2 = 0.05\n"),
                 "give one or the other"));
  CHECK(contains(
      config_error(dark_pair_text() + "coupling.c1 = 0.1\n"),
      "apply to coupling.mode = degenerate only"));
  CHECK(contains(
      config_error(dark_pair_text() + "coupling.delta1 = 0.5\n"),
      "apply to coupling.mode = manual only"));
  CHECK(contains(config_error(dark_pair_text() + "perturb.delta2_factor = 0\n"),
                 "must be > 0"));
}

TEST_CASE("config: omitted middle root without a first-integral source") {
  std::string text = dark_pair_text();
  text.erase(text.find("roots.W2 = 0.5\n"), std::string("roots.W2 = 0.5\n").size());
  CHECK(contains(config_error(text), "roots.W2 omitted"));
}

TEST_CASE("config: gaussian envelopes pin the first integral at zero") {
  const std::string text =
      "family.kind = gaussian\n"
      "family.mu = -0.15\n"
      "h.h11 = -2\n"
      "h.h12 = -1\n"
      "h.h21 = -0.5\n"
      "h.h22 = -2\n"
      "sigma = -1\n"
      "roots.W1 = -0.1\n"
      "roots.W2 = 0.1\n"  // E = sigma sum W = -0.0501 != 0
      "roots.W3 = 0.0501\n"
      "branch.kind = finite-sn-neg\n"
      "grid.x_lo = -10\n"
      "grid.x_hi = 10\n"
      "grid.n = 2048\n";
  CHECK(contains(config_error(text), "pin the first integral at E = 0"));
}

TEST_CASE("config: end-to-end validation wraps library rejections") {
  // Descending roots reach make_branch, whose complaint is surfaced with the
  // configuration prefix.
  std::string text = dark_pair_text();
  text.replace(text.find("roots.W3 = 0.5"), 14, "roots.W3 = 0.3");
  const std::string msg = config_error(text);
  CHECK(contains(msg, "configuration describes an invalid job"));
}

// ---------------------------------------------------------------------------
// Canonical serialization and sweep rewriting.
// ---------------------------------------------------------------------------

TEST_CASE("config: canonical text is a parse fixed point") {
  const config::JobConfig first = config::parse_config(dark_pair_text());
  const std::string canon = config::canonical_text(first);
  const config::JobConfig second = config::parse_config(canon);
  CHECK(config::canonical_text(second) == canon);
  CHECK(second.omega == first.omega);  // bitwise: no re-derivation drift
  CHECK(second.C2 == first.C2);
  CHECK(second.roots.W2 == first.roots.W2);
  // Derived constants ride along as comments for the reader.
  CHECK(contains(canon, "# derived:"));
  CHECK(contains(canon, "lambda"));
}

TEST_CASE("config: sweep parameter rewriting re-derives the frequency") {
  const config::JobConfig base = config::parse_config(dark_pair_text());

  const config::JobConfig moved = config::with_parameter(base, "alpha", 0.1);
  CHECK(moved.C2 == 0.1);
  CHECK(std::abs(moved.omega - kOmegaAlpha010) < kDerivedTol);

  // Same value, same derivation: bitwise-identical frequency.
  const config::JobConfig same = config::with_parameter(base, "alpha", 0.05);
  CHECK(same.omega == base.omega);

  CHECK_THROWS_AS((void)config::with_parameter(base, "W3", 0.3), ConfigError);
  CHECK_THROWS_AS((void)config::with_parameter(base, "mu", -0.1), ConfigError);
  CHECK_THROWS_AS((void)config::with_parameter(base, "bogus", 1.0),
                  ConfigError);
}

TEST_CASE("config: gaussian sweeps keep the middle root pinned") {
  const std::string text =
      "family.kind = gaussian\n"
      "family.mu = -0.15\n"
      "h.h11 = -2\n"
      "h.h12 = -1\n"
      "h.h21 = -0.5\n"
      "h.h22 = -2\n"
      "sigma = -1\n"
      "roots.W1 = -0.1\n"
      "roots.W3 = 0.0501\n"
      "branch.kind = finite-sn-neg\n"
      "grid.x_lo = -10\n"
      "grid.x_hi = 10\n"
      "grid.n = 2048\n";
  const config::JobConfig base = config::parse_config(text);
  CHECK(base.roots.W2 == doctest::Approx(0.0499).epsilon(1e-14));
  const config::JobConfig moved = config::with_parameter(base, "W1", -0.09);
  CHECK(moved.roots.W2 ==
        doctest::Approx(0.09 - 0.0501).epsilon(1e-13));  // -(W1 + W3)
  // Values that push the pinned middle root past W3 are rejected whole.
  CHECK_THROWS_AS((void)config::with_parameter(base, "W1", -0.2), ConfigError);
}

// ---------------------------------------------------------------------------
// End-to-end binary runs.
// ---------------------------------------------------------------------------

/// Scratch directory inside the build tree, wiped once per test run.
const fs::path& scratch_root() {
  static const fs::path root = [] {
    fs::path p = fs::current_path() / "cli_scratch";
    std::error_code ec;
    fs::remove_all(p, ec);
    fs::create_directories(p);
    return p;
  }();
  return root;
}

fs::path shipped_config(const std::string& name) {
  return fs::path(PHASEWAVE_CONFIG_DIR) / name;
}

struct RunResult {
  int exit_code = -1;
  std::string output;  // merged stdout + stderr
};

/// Run the binary with `args`, capturing output and the real exit status.
RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path log =
      scratch_root() / ("cmd_" + std::to_string(counter++) + ".log");
  const std::string cmd = std::string(PHASEWAVE_CLI_PATH) + " " + args +
                          " > \"" + log.string() + "\" 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  if (raw != -1 && WIFEXITED(raw)) r.exit_code = WEXITSTATUS(raw);
  std::ifstream in(log, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.output = buf.str();
  return r;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file: " << p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (char ch : text) n += ch == '\n' ? 1 : 0;
  return n;
}

/// Split one CSV data line and return column `idx` as a double.
double csv_field(const std::string& line, std::size_t idx) {
  std::size_t start = 0;
  for (std::size_t i = 0; i < idx; ++i) {
    start = line.find(',', start);
    REQUIRE(start != std::string::npos);
    ++start;
  }
  return std::strtod(line.c_str() + start, nullptr);
}

TEST_CASE("cli: version and usage errors") {
  CHECK(run_cli("--version").exit_code == 0);
  CHECK(contains(run_cli("--version").output, "phasewave 1.0.0"));

  const RunResult none = run_cli("");
  CHECK(none.exit_code == 2);
  CHECK(contains(none.output, "no command given"));

  const RunResult missing = run_cli("solve --config /nonexistent.cfg");
  CHECK(missing.exit_code == 2);
  CHECK(contains(missing.output, "cannot open"));

  // Required keys are demanded before leftovers are swept up, so the stray
  // key must ride on top of an otherwise complete configuration.
  const fs::path bad = scratch_root() / "bad.cfg";
  std::ofstream(bad) << dark_pair_text() << "nonsense = 1\n";
  const RunResult unknown =
      run_cli("solve --config \"" + bad.string() + "\"");
  CHECK(unknown.exit_code == 2);
  CHECK(contains(unknown.output, "unknown key 'nonsense'"));

  const fs::path empty = scratch_root() / "empty.cfg";
  std::ofstream(empty) << "# nothing here\n";
  const RunResult missing_key =
      run_cli("solve --config \"" + empty.string() + "\"");
  CHECK(missing_key.exit_code == 2);
  CHECK(contains(missing_key.output, "missing required key 'family.kind'"));
}

TEST_CASE("cli: solve writes a deterministic table and canonical parameters") {
  const fs::path out_a = scratch_root() / "solve_a";
  const fs::path out_b = scratch_root() / "solve_b";

  const RunResult first = run_cli("solve --config \"" +
                                  shipped_config("dark_dark.cfg").string() +
                                  "\" --out \"" + out_a.string() + "\"");
  REQUIRE(first.exit_code == 0);
  CHECK(contains(first.output, "wrote"));

  const std::string csv = read_file(out_a / "solution.csv");
  CHECK(contains(csv, "x,a,y,g11,g12,g21,g22,R1,R2,theta1,theta2"));
  CHECK(count_lines(csv) == 2049);  // header + grid.n rows

  // Solving again from the emitted canonical parameters reproduces the table
  // byte for byte.
  const RunResult second =
      run_cli("solve --config \"" + (out_a / "params.cfg").string() +
              "\" --out \"" + out_b.string() + "\"");
  REQUIRE(second.exit_code == 0);
  CHECK(read_file(out_b / "solution.csv") == csv);
}

TEST_CASE("cli: verify accepts the exact pair and rejects a detuned one") {
  const fs::path out_ok = scratch_root() / "verify_ok";
  const RunResult ok = run_cli("verify --config \"" +
                               shipped_config("dark_dark.cfg").string() +
                               "\" --out \"" + out_ok.string() + "\"");
  CHECK(ok.exit_code == 0);
  CHECK(contains(read_file(out_ok / "report.txt"), "overall.pass = true"));

  // A 1% amplitude detuning must trip the stationary residual.
  const fs::path detuned = scratch_root() / "detuned.cfg";
  std::ofstream(detuned) << read_file(shipped_config("dark_dark.cfg"))
                         << "\nperturb.delta1_factor = 1.01\n";
  const fs::path out_bad = scratch_root() / "verify_bad";
  const RunResult bad = run_cli("verify --config \"" + detuned.string() +
                                "\" --out \"" + out_bad.string() + "\"");
  CHECK(bad.exit_code == 1);
  CHECK(contains(bad.output, "verification failed"));
  const std::string report = read_file(out_bad / "report.txt");
  CHECK(contains(report, "stationary.pass = false"));
  CHECK(contains(report, "overall.pass = false"));
}

TEST_CASE("cli: propagation refuses windows that are not background-free") {
  const RunResult r = run_cli("propagate --config \"" +
                              shipped_config("dark_dark.cfg").string() +
                              "\" --t-final 0.01 --dt 1e-3 --out \"" +
                              (scratch_root() / "prop_refused").string() +
                              "\"");
  CHECK(r.exit_code == 3);
  CHECK(contains(r.output, "boundary"));
}

TEST_CASE("cli: propagation of a localized pair reports drifts and snapshots") {
  const fs::path out = scratch_root() / "prop_bright";
  const RunResult r = run_cli("propagate --config \"" +
                              shipped_config("bright_pair.cfg").string() +
                              "\" --t-final 0.02 --dt 1e-3 --snapshots 0.01 "
                              "--out \"" + out.string() + "\"");
  REQUIRE_MESSAGE(r.exit_code == 0, r.output);
  const std::string report = read_file(out / "report.txt");
  CHECK(contains(report, "modulus_drift.1"));
  CHECK(contains(report, "snapshot.count = 1"));
  const std::string snap = read_file(out / "snapshot_00.csv");
  CHECK(snap.rfind("# t = 0.01\n", 0) == 0);
  CHECK(contains(snap, "x,R1,theta1,R2,theta2"));
}

TEST_CASE("cli: sweep solves each value into its own directory") {
  const fs::path out = scratch_root() / "sweep_alpha";
  const RunResult r = run_cli("sweep --config \"" +
                              shipped_config("dark_dark.cfg").string() +
                              "\" --param alpha --values 0.05,0.1 --out \"" +
                              out.string() + "\"");
  REQUIRE_MESSAGE(r.exit_code == 0, r.output);
  const std::string summary = read_file(out / "summary.txt");
  CHECK(contains(summary, "sweep.param = alpha"));
  CHECK(contains(summary, "sweep.count = 2"));
  CHECK(contains(summary, "value.0.status = ok"));
  CHECK(contains(summary, "value.1.status = ok"));

  // The base-value run is byte-identical to a plain solve.
  const fs::path solo = scratch_root() / "sweep_reference";
  REQUIRE(run_cli("solve --config \"" +
                  shipped_config("dark_dark.cfg").string() + "\" --out \"" +
                  solo.string() + "\"")
              .exit_code == 0);
  CHECK(read_file(out / "value_00" / "solution.csv") ==
        read_file(solo / "solution.csv"));
}

TEST_CASE("cli: sweep records invalid values without aborting the rest") {
  const fs::path out = scratch_root() / "sweep_mixed";
  // W3 = 0.3 undercuts the fixed middle root 0.5: that value must fail while
  // W3 = 0.5 still solves.
  const RunResult r = run_cli("sweep --config \"" +
                              shipped_config("dark_dark.cfg").string() +
                              "\" --param W3 --values 0.5,0.3 --out \"" +
                              out.string() + "\"");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.output, "some parameter values failed"));
  const std::string summary = read_file(out / "summary.txt");
  CHECK(contains(summary, "value.0.status = ok"));
  CHECK(contains(summary, "value.1.status = error"));
  CHECK(contains(summary, "describes an invalid job"));
}

TEST_CASE("cli: zero-component solve leaves the first field empty") {
  const fs::path out = scratch_root() / "solve_zero";
  REQUIRE(run_cli("solve --config \"" +
                  shipped_config("dark_zero.cfg").string() + "\" --out \"" +
                  out.string() + "\"")
              .exit_code == 0);
  const std::string csv = read_file(out / "solution.csv");
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  double max_r1 = 0.0;
  double max_theta1 = 0.0;
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    max_r1 = std::max(max_r1, std::abs(csv_field(line, 7)));
    max_theta1 = std::max(max_theta1, std::abs(csv_field(line, 9)));
    ++rows;
  }
  CHECK(rows == 2048);
  CHECK(max_r1 == 0.0);
  CHECK(max_theta1 == 0.0);
}

}  // namespace
