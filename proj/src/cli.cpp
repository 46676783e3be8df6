#include "phasewave/cli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "phasewave/assembly.hpp"
#include "phasewave/branches.hpp"
#include "phasewave/config.hpp"
#include "phasewave/errors.hpp"
#include "phasewave/polar.hpp"
#include "phasewave/scaling.hpp"
#include "phasewave/verification.hpp"

namespace phasewave::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "phasewave 1.0.0";

// Verification thresholds. Every check reports its measured value next to
// the threshold it was held to, so a report is interpretable on its own.
constexpr double kStationaryTol = 1e-7;      // reduced-ODE residual, max abs
constexpr double kFirstIntegralTol = 1e-8;   // branch first-integral drift
constexpr double kRelationTol = 1e-10;       // amplitude constraint rows
constexpr double kCompatTol = 1e-12;         // s_j^2/delta_j^4 vs shared c
constexpr double kCurrentTol = 1e-6;         // R^2 theta' vs s_j
constexpr double kPolarComponentTol = 1e-6;  // coupled-system FD residual
constexpr double kPolarIntegralTol = 1e-7;   // angular/radial first integrals
constexpr double kSelfTestTol = 1e-10;       // plane-wave propagation error

/// Fields whose edge amplitude reaches this are not localized enough for the
/// periodic spectral step (same threshold the propagation check applies).
constexpr double kEdgeThreshold = 1e-4;

/// Central-difference step for the phase-current probe.
constexpr double kCurrentFdStep = 1e-5;
constexpr int kCurrentProbes = 33;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw ConfigError("cannot write to '" + tmp.string() + "'");
    }
    out << content;
    out.flush();
    if (!out) {
      throw ConfigError("short write to '" + tmp.string() + "'");
    }
  }
  fs::rename(tmp, path);
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> xs(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = lo + step * static_cast<double>(i);
  }
  xs.back() = hi;
  return xs;
}

std::vector<double> parse_value_list(const std::string& text,
                                     const std::string& flag) {
  std::vector<double> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0' || !std::isfinite(v)) {
      throw ConfigError(flag + ": expected comma-separated numbers, got '" +
                        token + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) {
    throw ConfigError(flag + ": empty value list");
  }
  return out;
}

/// One verification check: measured value against its threshold.
struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass() const { return value <= threshold; }
  double severity() const { return value / threshold; }
};

/// Render key = value report lines for a group of checks and track overall
/// pass/fail plus the most-severe failing check.
class Report {
 public:
  void add_line(const std::string& key, const std::string& value) {
    body_ += key + " = " + value + "\n";
  }
  void add_line(const std::string& key, double value) {
    add_line(key, fmt(value));
  }
  void add_check(const Check& c) {
    checks_.push_back(c);
  }
  void finish() {
    bool all = true;
    for (const Check& c : checks_) {
      if (!c.pass() &&
          (worst_.name.empty() || c.severity() > worst_.severity())) {
        worst_ = c;
      }
      all = all && c.pass();
    }
    add_line("overall.pass", all ? "true" : "false");
    add_line("overall.worst", all ? "none" : worst_.name);
    pass_ = all;
  }
  bool pass() const { return pass_; }
  const Check& worst() const { return worst_; }
  const std::string& text() const { return body_; }

 private:
  std::string body_;
  std::vector<Check> checks_;
  Check worst_;
  bool pass_ = true;
};

/// Derived-constant lines shared by `solve` stdout and sweep summaries.
struct PairDerived {
  branches::Invariants inv;
  branches::Coupling coupling;
  branches::BranchSolution branch;
  double mu = 0.0;
  double period_y = 0.0;
};

PairDerived pair_derived(const config::JobConfig& cfg) {
  PairDerived d;
  d.inv = branches::invariants_from_roots(cfg.roots, cfg.sigma);
  d.coupling = config::build_coupling(cfg);
  d.branch = config::build_branch(cfg);
  d.mu = scaling::chemical_potential(config::envelope_spec(cfg));
  d.period_y = branches::branch_period(d.branch);
  return d;
}

void print_pair_derived(std::ostream& out, const PairDerived& d) {
  out << "invariants: E = " << fmt(d.inv.E) << ", C0 = " << fmt(d.inv.C0)
      << ", c = " << fmt(d.inv.c) << "\n";
  out << "coupling: mixing_ratio = " << fmt(d.coupling.mixing_ratio)
      << ", c1 = " << fmt(d.coupling.c1) << ", c2 = " << fmt(d.coupling.c2)
      << "\n";
  out << "amplitudes: delta1 = " << fmt(d.coupling.delta1)
      << ", delta2 = " << fmt(d.coupling.delta2) << "\n";
  out << "phase strengths: s1 = " << fmt(d.coupling.s1)
      << ", s2 = " << fmt(d.coupling.s2) << "\n";
  out << "branch: lambda = " << fmt(d.branch.lambda)
      << ", k = " << fmt(d.branch.k)
      << ", period_y = " << fmt(d.period_y) << "\n";
  out << "chemical potential: mu = " << fmt(d.mu) << "\n";
}

/// Count interior local maxima of the total density R1^2 + R2^2. A maximum
/// may be a plateau of equal samples (a symmetric peak can straddle two
/// nodes whose values agree to the last bit), so runs of ties count once.
int count_density_peaks(const assembly::SolutionTable& table) {
  const std::size_t n = table.x.size();
  std::vector<double> dens(n);
  for (std::size_t i = 0; i < n; ++i) {
    dens[i] = table.R1[i] * table.R1[i] + table.R2[i] * table.R2[i];
  }
  int peaks = 0;
  for (std::size_t i = 1; i + 1 < n;) {
    if (dens[i] <= dens[i - 1]) {
      ++i;
      continue;
    }
    std::size_t j = i;  // rising edge at i; absorb the plateau
    while (j + 1 < n && dens[j + 1] == dens[i]) ++j;
    if (j + 1 < n && dens[j + 1] < dens[i]) ++peaks;
    i = j + 1;
  }
  return peaks;
}

/// Sample the configured job and write solution.csv + params.cfg into
/// outdir. Returns the sampled table (pair mode) for reuse by sweeps.
assembly::SolutionTable solve_pair_into(const config::JobConfig& cfg,
                                        const fs::path& outdir) {
  const assembly::StationarySolution sol = config::build_solution(cfg);
  const assembly::SolutionTable table = assembly::sample_solution(
      sol, cfg.grid.x_lo, cfg.grid.x_hi, cfg.grid.n);
  std::ostringstream csv;
  assembly::write_csv(table, csv);
  fs::create_directories(outdir);
  write_file_atomic(outdir / cfg.csv_name, csv.str());
  write_file_atomic(outdir / "params.cfg", config::canonical_text(cfg));
  return table;
}

void solve_polar_into(const config::JobConfig& cfg, const fs::path& outdir) {
  const polar::PolarSpec spec = config::build_polar(cfg);
  const std::vector<double> ys =
      linspace(cfg.grid.x_lo, cfg.grid.x_hi, cfg.grid.n);
  const std::vector<double> zetas = polar::zeta_grid(spec, ys);
  std::ostringstream csv;
  csv << "y,U1,U2,U,zeta,tau\n";
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const auto [U, dU] = polar::radial_amplitude(spec, ys[i]);
    const polar::AngularState ang = polar::angular_state(spec, zetas[i]);
    const double U1 = U * std::cos(ang.gamma);
    const double U2 = U * std::sin(ang.gamma);
    csv << fmt(ys[i]) << ',' << fmt(U1) << ',' << fmt(U2) << ',' << fmt(U)
        << ',' << fmt(zetas[i]) << ',' << fmt(ang.tau) << '\n';
  }
  fs::create_directories(outdir);
  write_file_atomic(outdir / cfg.csv_name, csv.str());
  write_file_atomic(outdir / "params.cfg", config::canonical_text(cfg));
}

int cmd_solve(const std::string& cfg_path, const std::string& outdir) {
  const config::JobConfig cfg = config::load_config(cfg_path);
  const fs::path out(outdir);
  if (cfg.mode == config::Mode::Pair) {
    const assembly::SolutionTable table = solve_pair_into(cfg, out);
    print_pair_derived(std::cout, pair_derived(cfg));
    std::cout << "density peaks on window: " << count_density_peaks(table)
              << "\n";
    std::cout << "wrote " << (out / cfg.csv_name).string() << " ("
              << table.x.size() << " rows)\n";
  } else {
    solve_polar_into(cfg, out);
    const polar::PolarSpec spec = config::build_polar(cfg);
    std::cout << "radial roots: S1 = " << fmt(spec.radial_roots.W1)
              << ", S2 = " << fmt(spec.radial_roots.W2)
              << ", S3 = " << fmt(spec.radial_roots.W3) << "\n";
    std::cout << "angular: b = " << fmt(spec.b)
              << ", Delta = " << fmt(spec.Delta) << "\n";
    std::cout << "wrote " << (out / cfg.csv_name).string() << " ("
              << cfg.grid.n << " rows)\n";
  }
  std::cout << "wrote " << (out / "params.cfg").string() << "\n";
  return 0;
}

int finish_report(Report& report, const fs::path& report_path) {
  report.finish();
  write_file_atomic(report_path, report.text());
  std::cout << report.text();
  std::cout << "wrote " << report_path.string() << "\n";
  if (!report.pass()) {
    const Check& w = report.worst();
    std::cerr << "verification failed: " << w.name << " = " << fmt(w.value)
              << " exceeds threshold " << fmt(w.threshold) << "\n";
    return 1;
  }
  return 0;
}

int cmd_verify_pair(const config::JobConfig& cfg, const fs::path& outdir) {
  const assembly::StationarySolution sol = config::build_solution(cfg);
  const std::vector<double> xs =
      linspace(cfg.grid.x_lo, cfg.grid.x_hi, cfg.grid.n);

  Report report;
  report.add_line("check", "pair");
  report.add_line("grid.n", std::to_string(cfg.grid.n));

  // 1. Residual of the reduced amplitude ODE, extended-precision evaluation.
  const verification::ResidualReport stat =
      verification::stationary_ode_residual(sol, xs);
  report.add_line("stationary.max_abs", stat.max_abs);
  report.add_line("stationary.l2", stat.l2);
  report.add_line("stationary.worst_x", stat.worst_x);
  report.add_line("stationary.threshold", kStationaryTol);
  const Check stat_check{"stationary_ode_residual", stat.max_abs,
                         kStationaryTol};
  report.add_line("stationary.pass", stat_check.pass() ? "true" : "false");
  report.add_check(stat_check);

  // 2. Branch first integral along the stretched coordinate.
  const std::vector<double> ys =
      scaling::canonical_y_grid(sol.envelope, xs);
  const double fi = branches::branch_first_integral_residual(sol.branch, ys);
  report.add_line("first_integral.max_abs", fi);
  report.add_line("first_integral.threshold", kFirstIntegralTol);
  const Check fi_check{"branch_first_integral", fi, kFirstIntegralTol};
  report.add_line("first_integral.pass", fi_check.pass() ? "true" : "false");
  report.add_check(fi_check);

  // 3. Coupling consistency: the two amplitude-constraint rows (a row with a
  // vanishing component is vacuous) and the shared product invariant.
  const branches::Coupling& cpl = sol.coupling;
  const double d1sq = cpl.delta1 * cpl.delta1;
  const double d2sq = cpl.delta2 * cpl.delta2;
  const double two_sigma = 2.0 * static_cast<double>(cpl.sigma);
  double relation = 0.0;
  double compat = 0.0;
  for (int j = 0; j < 2; ++j) {
    const double delta_j = j == 0 ? cpl.delta1 : cpl.delta2;
    if (delta_j == 0.0) {
      report.add_line("coupling.relation" + std::to_string(j + 1), "vacuous");
      continue;
    }
    const double row = std::fabs(cpl.h[2 * j] * d1sq + cpl.h[2 * j + 1] * d2sq -
                                 two_sigma);
    relation = std::max(relation, row);
    report.add_line("coupling.relation" + std::to_string(j + 1), row);
    const double s_j = j == 0 ? cpl.s1 : cpl.s2;
    const double dev =
        std::fabs(s_j * s_j / (delta_j * delta_j * delta_j * delta_j) -
                  cpl.c);
    compat = std::max(compat, dev);
    report.add_line("coupling.compat" + std::to_string(j + 1), dev);
  }
  report.add_line("coupling.relation_threshold", kRelationTol);
  report.add_line("coupling.compat_threshold", kCompatTol);
  const Check rel_check{"coupling_relations", relation, kRelationTol};
  const Check compat_check{"coupling_compatibility", compat, kCompatTol};
  report.add_line("coupling.pass",
                  rel_check.pass() && compat_check.pass() ? "true" : "false");
  report.add_check(rel_check);
  report.add_check(compat_check);

  // 4. Phase-current constancy R_j^2 theta_j' = s_j at interior probes,
  // theta' by central differences through the phase quadrature. Where the
  // envelope compresses the stretched coordinate, one branch period spans
  // only P_y * a(x) in x, so the step shrinks with it to keep the quotient
  // from averaging over whole oscillations of the integrand.
  const double period_y = branches::branch_period(sol.branch);
  double current = 0.0;
  for (int i = 0; i < kCurrentProbes; ++i) {
    const double x = cfg.grid.x_lo +
                     (cfg.grid.x_hi - cfg.grid.x_lo) *
                         (static_cast<double>(i) + 0.5) /
                         static_cast<double>(kCurrentProbes);
    double h = kCurrentFdStep;
    if (std::isfinite(period_y)) {
      const double a = scaling::eval_scaling(sol.envelope, x).a;
      h = std::min(h, period_y * a / 64.0);
    }
    h = std::max(h, 64.0 * std::numeric_limits<double>::epsilon() *
                        (std::fabs(x) + 1.0));
    for (int j = 0; j < 2; ++j) {
      const double delta_j = j == 0 ? cpl.delta1 : cpl.delta2;
      if (delta_j == 0.0) continue;
      const double R = assembly::amplitude_at(sol, j, x).first;
      const double dtheta = (assembly::phase_at(sol, j, x + h) -
                             assembly::phase_at(sol, j, x - h)) /
                            (2.0 * h);
      const double s_j = assembly::phase_strength(sol, j);
      current = std::max(current, std::fabs(R * R * dtheta - s_j));
    }
  }
  report.add_line("current.max_dev", current);
  report.add_line("current.threshold", kCurrentTol);
  const Check cur_check{"phase_current_constancy", current, kCurrentTol};
  report.add_line("current.pass", cur_check.pass() ? "true" : "false");
  report.add_check(cur_check);

  fs::create_directories(outdir);
  return finish_report(report, outdir / cfg.report_name);
}

int cmd_verify_polar(const config::JobConfig& cfg, const fs::path& outdir) {
  const polar::PolarSpec spec = config::build_polar(cfg);
  const polar::PolarReport rec = polar::polar_reconstruct(
      spec, cfg.grid.x_lo, cfg.grid.x_hi, static_cast<int>(cfg.grid.n));

  Report report;
  report.add_line("check", "polar");
  report.add_line("grid.n", std::to_string(rec.grid_size));
  report.add_line("component.max_abs", rec.max_component_residual);
  report.add_line("component.worst_y", rec.worst_y);
  report.add_line("component.threshold", kPolarComponentTol);
  const Check comp{"polar_component_residual", rec.max_component_residual,
                   kPolarComponentTol};
  report.add_line("component.pass", comp.pass() ? "true" : "false");
  report.add_check(comp);
  report.add_line("angular.max_abs", rec.max_angular_residual);
  report.add_line("angular.threshold", kPolarIntegralTol);
  const Check ang{"polar_angular_integral", rec.max_angular_residual,
                  kPolarIntegralTol};
  report.add_line("angular.pass", ang.pass() ? "true" : "false");
  report.add_check(ang);
  report.add_line("radial.max_abs", rec.max_radial_residual);
  report.add_line("radial.threshold", kPolarIntegralTol);
  const Check rad{"polar_radial_integral", rec.max_radial_residual,
                  kPolarIntegralTol};
  report.add_line("radial.pass", rad.pass() ? "true" : "false");
  report.add_check(rad);

  fs::create_directories(outdir);
  return finish_report(report, outdir / cfg.report_name);
}

int cmd_verify(const std::string& cfg_path, const std::string& outdir) {
  const config::JobConfig cfg = config::load_config(cfg_path);
  return cfg.mode == config::Mode::Pair ? cmd_verify_pair(cfg, outdir)
                                        : cmd_verify_polar(cfg, outdir);
}

int plane_wave_selftest() {
  using cplx = std::complex<double>;
  const std::size_t n = 64;
  const double length = 16.0;
  const double dx = length / static_cast<double>(n);
  const double k1 = 2.0 * M_PI * 3.0 / length;
  const double k2 = -2.0 * M_PI * 5.0 / length;
  const cplx A1 = std::polar(0.7, 0.3);
  const cplx A2 = std::polar(0.45, -1.1);

  assembly::FieldGrid grid;
  grid.x_lo = 0.0;
  grid.spacing = dx;
  grid.x.resize(n);
  grid.psi1.resize(n);
  grid.psi2.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid.x[i] = dx * static_cast<double>(i);
    grid.psi1[i] = A1 * std::polar(1.0, k1 * grid.x[i]);
    grid.psi2[i] = A2 * std::polar(1.0, k2 * grid.x[i]);
  }
  verification::PdeCoefficients coef;
  coef.V.assign(n, 0.25);
  coef.g11.assign(n, 1.1);
  coef.g12.assign(n, 0.6);
  coef.g21.assign(n, 0.45);
  coef.g22.assign(n, 0.8);

  // Commensurate plane waves are exact eigenmodes of the split scheme: the
  // kick and kinetic factors commute on them, so any error is a code defect.
  const double G1 = 1.1 * std::norm(A1) + 0.6 * std::norm(A2);
  const double G2 = 0.45 * std::norm(A1) + 0.8 * std::norm(A2);
  const double w1 = k1 * k1 + 0.25 + G1;
  const double w2 = k2 * k2 + 0.25 + G2;

  const double dt = 1e-3;
  const std::size_t steps = 200;
  verification::split_step_propagate(grid, coef, dt, steps);
  const double T = dt * static_cast<double>(steps);
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx e1 = A1 * std::polar(1.0, k1 * grid.x[i] - w1 * T);
    const cplx e2 = A2 * std::polar(1.0, k2 * grid.x[i] - w2 * T);
    err = std::max(
        {err, std::abs(grid.psi1[i] - e1), std::abs(grid.psi2[i] - e2)});
  }
  std::cout << "plane-wave selftest: max field error = " << fmt(err)
            << " after " << steps << " steps (threshold " << fmt(kSelfTestTol)
            << ")\n";
  if (err >= kSelfTestTol) {
    std::cerr << "plane-wave selftest failed\n";
    return 1;
  }
  return 0;
}

std::size_t steps_for(double span, double dt, const std::string& what) {
  const double raw = span / dt;
  const auto steps = static_cast<long long>(std::llround(raw));
  if (steps < 1 || std::fabs(static_cast<double>(steps) * dt - span) >
                       1e-9 * std::max(1.0, std::fabs(span))) {
    throw ConfigError(what + " must be a positive integer multiple of --dt");
  }
  return static_cast<std::size_t>(steps);
}

void write_snapshot_csv(const fs::path& path,
                        const assembly::FieldGrid& grid) {
  std::ostringstream csv;
  csv << "# t = " << fmt(grid.t) << "\n";
  csv << "x,R1,theta1,R2,theta2\n";
  for (std::size_t i = 0; i < grid.x.size(); ++i) {
    csv << fmt(grid.x[i]) << ',' << fmt(std::abs(grid.psi1[i])) << ','
        << fmt(std::arg(grid.psi1[i])) << ',' << fmt(std::abs(grid.psi2[i]))
        << ',' << fmt(std::arg(grid.psi2[i])) << '\n';
  }
  write_file_atomic(path, csv.str());
}

int cmd_propagate(const std::string& cfg_path, const std::string& outdir,
                  double t_final, double dt,
                  const std::string& snapshot_list) {
  if (!(dt > 0.0) || !(t_final > 0.0)) {
    throw ConfigError("--t-final and --dt must be positive");
  }
  const config::JobConfig cfg = config::load_config(cfg_path);
  if (cfg.mode != config::Mode::Pair) {
    throw ConfigError("propagate requires a pair-mode configuration");
  }
  const assembly::StationarySolution sol = config::build_solution(cfg);
  const fs::path out(outdir);
  fs::create_directories(out);

  Report report;
  report.add_line("check", "propagation");
  report.add_line("t_final", t_final);
  report.add_line("dt", dt);

  verification::PropagationReport prop;
  std::vector<std::pair<double, std::string>> written;

  if (snapshot_list.empty()) {
    const std::size_t steps = steps_for(t_final, dt, "--t-final");
    prop = verification::propagate_and_compare(
        sol, cfg.grid.x_lo, cfg.grid.x_hi, cfg.grid.n, dt, steps);
  } else {
    std::vector<double> times = parse_value_list(snapshot_list, "--snapshots");
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (times[i] <= 0.0 || (i > 0 && times[i] <= times[i - 1]) ||
          times[i] > t_final * (1.0 + 1e-12)) {
        throw ConfigError(
            "--snapshots must be strictly increasing times in (0, t-final]");
      }
    }

    assembly::FieldGrid grid = assembly::sample_fields(
        sol, cfg.grid.x_lo, cfg.grid.x_hi, cfg.grid.n, 0.0);
    const std::size_t n = grid.x.size();
    for (const auto& psi : {grid.psi1, grid.psi2}) {
      const double edge = std::max(std::abs(psi.front()), std::abs(psi.back()));
      if (edge >= kEdgeThreshold) {
        throw BoundaryError(
            "boundary amplitude " + fmt(edge) +
            " at the window edge: the field is not localized, the periodic "
            "spectral step would wrap the background; use the stationary "
            "residual check instead");
      }
    }
    const assembly::FieldGrid initial = grid;
    const verification::PdeCoefficients coef =
        verification::pde_coefficients(sol, grid.x);

    double t_prev = 0.0;
    std::size_t total_steps = 0;
    std::size_t snapshot_idx = 0;
    for (double t_snap : times) {
      const std::size_t seg =
          steps_for(t_snap - t_prev, dt, "snapshot spacing");
      verification::split_step_propagate(grid, coef, dt, seg);
      total_steps += seg;
      t_prev = t_snap;
      char name[32];
      std::snprintf(name, sizeof name, "snapshot_%02zu.csv", snapshot_idx++);
      write_snapshot_csv(out / name, grid);
      written.emplace_back(grid.t, name);
    }
    if (t_prev < t_final * (1.0 - 1e-12)) {
      const std::size_t seg = steps_for(t_final - t_prev, dt, "--t-final");
      verification::split_step_propagate(grid, coef, dt, seg);
      total_steps += seg;
    }

    // Same self-consistency metrics the one-shot path reports.
    prop.steps = total_steps;
    prop.dt = dt;
    double peak = 0.0;
    std::size_t peak_node = 0;
    int peak_comp = 0;
    for (int j = 0; j < 2; ++j) {
      const auto& psi0 = j == 0 ? initial.psi1 : initial.psi2;
      const auto& psiT = j == 0 ? grid.psi1 : grid.psi2;
      double drift = 0.0, norm0 = 0.0, normT = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double m0 = std::abs(psi0[i]);
        drift = std::max(drift, std::fabs(std::abs(psiT[i]) - m0));
        norm0 += std::norm(psi0[i]);
        normT += std::norm(psiT[i]);
        if (m0 > peak) {
          peak = m0;
          peak_node = i;
          peak_comp = j;
        }
      }
      prop.modulus_drift[static_cast<std::size_t>(j)] = drift;
      prop.norm_drift[static_cast<std::size_t>(j)] =
          norm0 > 0.0 ? std::fabs(std::sqrt(normT / norm0) - 1.0) : 0.0;
    }
    const auto& psi0 = peak_comp == 0 ? initial.psi1 : initial.psi2;
    const auto& psiT = peak_comp == 0 ? grid.psi1 : grid.psi2;
    const double dtheta = std::arg(psiT[peak_node] *
                                   std::conj(psi0[peak_node]));
    prop.phase_rate_error = std::fabs(dtheta / grid.t - sol.mu);
  }

  report.add_line("steps", std::to_string(prop.steps));
  report.add_line("modulus_drift.1", prop.modulus_drift[0]);
  report.add_line("modulus_drift.2", prop.modulus_drift[1]);
  report.add_line("norm_drift.1", prop.norm_drift[0]);
  report.add_line("norm_drift.2", prop.norm_drift[1]);
  report.add_line("phase_rate_error", prop.phase_rate_error);
  report.add_line("snapshot.count", std::to_string(written.size()));
  for (std::size_t i = 0; i < written.size(); ++i) {
    report.add_line("snapshot." + std::to_string(i) + ".t", written[i].first);
    report.add_line("snapshot." + std::to_string(i) + ".file",
                    written[i].second);
  }
  // Propagation is diagnostic: the report carries the drifts, the exit code
  // only signals precondition/configuration failures.
  report.finish();
  write_file_atomic(out / cfg.report_name, report.text());
  std::cout << report.text();
  std::cout << "wrote " << (out / cfg.report_name).string() << "\n";
  return 0;
}

struct SweepResult {
  double value = 0.0;
  std::string dir;
  std::string status = "ok";
  double k = 0.0;
  double lambda = 0.0;
  int peaks = 0;
};

SweepResult sweep_one(const config::JobConfig& base, const std::string& param,
                      double value, const fs::path& outdir, std::size_t idx) {
  SweepResult r;
  r.value = value;
  char name[32];
  std::snprintf(name, sizeof name, "value_%02zu", idx);
  r.dir = name;
  try {
    const config::JobConfig cfg = config::with_parameter(base, param, value);
    const assembly::SolutionTable table = solve_pair_into(cfg, outdir / name);
    const PairDerived d = pair_derived(cfg);
    r.k = d.branch.k;
    r.lambda = d.branch.lambda;
    r.peaks = count_density_peaks(table);
  } catch (const Error& e) {
    r.status = std::string("error: ") + e.what();
  }
  return r;
}

std::size_t sweep_concurrency() {
  if (const char* env = std::getenv("PHASEWAVE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

int cmd_sweep(const std::string& cfg_path, const std::string& outdir,
              const std::string& param, const std::string& values_text) {
  const config::JobConfig base = config::load_config(cfg_path);
  if (base.mode != config::Mode::Pair) {
    throw ConfigError("parameter sweeps require a pair-mode configuration");
  }
  const std::vector<double> values = parse_value_list(values_text, "--values");
  const fs::path out(outdir);
  fs::create_directories(out);

  std::vector<SweepResult> results(values.size());
  const std::size_t workers = std::min(sweep_concurrency(), values.size());
  std::vector<std::future<void>> batch;
  for (std::size_t i = 0; i < values.size(); i += workers) {
    batch.clear();
    const std::size_t hi = std::min(i + workers, values.size());
    for (std::size_t j = i; j < hi; ++j) {
      batch.push_back(std::async(std::launch::async, [&, j] {
        results[j] = sweep_one(base, param, values[j], out, j);
      }));
    }
    for (auto& f : batch) f.get();
  }

  std::ostringstream summary;
  summary << "sweep.param = " << param << "\n";
  summary << "sweep.count = " << values.size() << "\n";
  bool any_failed = false;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const SweepResult& r = results[i];
    const std::string key = "value." + std::to_string(i);
    summary << key << " = " << fmt(r.value) << "\n";
    summary << key << ".status = " << r.status << "\n";
    if (r.status == "ok") {
      summary << key << ".dir = " << r.dir << "\n";
      summary << key << ".k = " << fmt(r.k) << "\n";
      summary << key << ".lambda = " << fmt(r.lambda) << "\n";
      summary << key << ".peaks = " << r.peaks << "\n";
    } else {
      any_failed = true;
    }
  }
  write_file_atomic(out / "summary.txt", summary.str());
  std::cout << summary.str();
  std::cout << "wrote " << (out / "summary.txt").string() << "\n";
  if (any_failed) {
    std::cerr << "sweep: some parameter values failed (see summary)\n";
    return 2;
  }
  return 0;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{
      "Stationary solutions with non-trivial phase for two coupled cubic "
      "Schrodinger equations with spatially modulated coefficients"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(0, 1);

  std::string cfg_path, outdir = ".";
  double t_final = 1.0, dt = 1e-4;
  std::string snapshots, param, values;
  bool selftest = false;

  CLI::App* solve =
      app.add_subcommand("solve", "Build a solution, write CSV and parameters");
  solve->add_option("--config", cfg_path, "job configuration file")
      ->required();
  solve->add_option("--out", outdir, "output directory (default .)");

  CLI::App* verify = app.add_subcommand(
      "verify", "Check residuals and first integrals, write a report");
  verify->add_option("--config", cfg_path, "job configuration file")
      ->required();
  verify->add_option("--out", outdir, "output directory (default .)");

  CLI::App* propagate = app.add_subcommand(
      "propagate", "Split-step propagation against the stationary prediction");
  propagate->add_option("--config", cfg_path, "job configuration file");
  propagate->add_option("--out", outdir, "output directory (default .)");
  propagate->add_option("--t-final", t_final, "propagation time (default 1)");
  propagate->add_option("--dt", dt, "time step (default 1e-4)");
  propagate->add_option("--snapshots", snapshots,
                        "comma-separated times at which to write field CSVs");
  propagate->add_flag("--plane-wave-selftest", selftest,
                      "run the built-in exact-eigenmode propagation test");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Re-solve across a list of values of one parameter");
  sweep->add_option("--config", cfg_path, "base job configuration file")
      ->required();
  sweep->add_option("--out", outdir, "output directory (default .)");
  sweep->add_option("--param", param, "parameter name: W1, W3, alpha or mu")
      ->required();
  sweep->add_option("--values", values, "comma-separated parameter values")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help / --version
    }
    (void)app.exit(e);
    return 2;  // usage errors share the configuration exit code
  }

  try {
    if (solve->parsed()) return cmd_solve(cfg_path, outdir);
    if (verify->parsed()) return cmd_verify(cfg_path, outdir);
    if (propagate->parsed()) {
      if (selftest) return plane_wave_selftest();
      if (cfg_path.empty()) {
        throw ConfigError(
            "propagate requires --config (or --plane-wave-selftest)");
      }
      return cmd_propagate(cfg_path, outdir, t_final, dt, snapshots);
    }
    if (sweep->parsed()) return cmd_sweep(cfg_path, outdir, param, values);
    std::cerr << "no command given; see --help\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const BoundaryError& e) {
    std::cerr << "propagation precondition failed: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace phasewave::cli
