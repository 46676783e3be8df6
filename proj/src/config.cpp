#include "phasewave/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "phasewave/errors.hpp"

namespace phasewave::config {

namespace {

/// Relative tolerance for cross-validating redundant inputs (an explicit
/// frequency against the roots' first integral, and the like). Wide enough
/// for hand-rounded decimals, far tighter than any physical degeneracy.
constexpr double kEchoTol = 1e-9;
/// A gaussian envelope pins the first integral at exactly zero; the roots
/// may miss by accumulated parsing roundoff only.
constexpr double kGaussianETol = 1e-12;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

/// Parsed key-value lines with use tracking, so leftovers can be reported
/// as unknown keys instead of being silently ignored.
class KeyMap {
 public:
  void insert(const std::string& key, const std::string& value, int line) {
    const auto [it, fresh] = entries_.emplace(key, Entry{value, line});
    if (!fresh) {
      throw ConfigError("duplicate key '" + key + "' (line " +
                        std::to_string(line) + ", first on line " +
                        std::to_string(it->second.line) + ")");
    }
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  /// True if any present key starts with the given dotted prefix.
  bool has_prefix(const std::string& prefix) const {
    const auto it = entries_.lower_bound(prefix);
    return it != entries_.end() && it->first.compare(0, prefix.size(), prefix) == 0;
  }

  const Entry* find(const std::string& key) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  std::string require_string(const std::string& key) {
    const Entry* e = find(key);
    if (e == nullptr) throw ConfigError("missing required key '" + key + "'");
    return e->value;
  }

  double require_double(const std::string& key) {
    const Entry* e = find(key);
    if (e == nullptr) throw ConfigError("missing required key '" + key + "'");
    return to_double(key, e->value, e->line);
  }

  double get_double(const std::string& key, double def) {
    const Entry* e = find(key);
    return e == nullptr ? def : to_double(key, e->value, e->line);
  }

  long require_long(const std::string& key) {
    const Entry* e = find(key);
    if (e == nullptr) throw ConfigError("missing required key '" + key + "'");
    return to_long(key, e->value, e->line);
  }

  long get_long(const std::string& key, long def) {
    const Entry* e = find(key);
    return e == nullptr ? def : to_long(key, e->value, e->line);
  }

  std::string get_string(const std::string& key, const std::string& def) {
    const Entry* e = find(key);
    return e == nullptr ? def : e->value;
  }

  int line_of(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
  }

  /// Reject every key no reader asked for.
  void finish() const {
    for (const auto& [key, entry] : entries_) {
      if (!entry.used) {
        throw ConfigError("unknown key '" + key + "' (line " +
                          std::to_string(entry.line) + ")");
      }
    }
  }

 private:
  static double to_double(const std::string& key, const std::string& text,
                          int line) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || !std::isfinite(v)) {
      throw ConfigError("key '" + key + "' (line " + std::to_string(line) +
                        "): expected a finite number, got '" + text + "'");
    }
    return v;
  }

  static long to_long(const std::string& key, const std::string& text,
                      int line) {
    char* end = nullptr;
    const long v = std::strtol(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0') {
      throw ConfigError("key '" + key + "' (line " + std::to_string(line) +
                        "): expected an integer, got '" + text + "'");
    }
    return v;
  }

  std::map<std::string, Entry> entries_;
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

KeyMap tokenize(const std::string& text) {
  KeyMap map;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string stripped = trim(raw);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line) +
                        ": expected 'key = value', got '" + stripped + "'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line) +
                        ": empty key or value in '" + stripped + "'");
    }
    map.insert(key, value, line);
  }
  return map;
}

scaling::Family family_from_string(const std::string& s, int line) {
  if (s == "trig") return scaling::Family::Trig;
  if (s == "exp") return scaling::Family::Exp;
  if (s == "gaussian") return scaling::Family::Gaussian;
  if (s == "constant") return scaling::Family::Constant;
  throw ConfigError("key 'family.kind' (line " + std::to_string(line) +
                    "): expected trig|exp|gaussian|constant, got '" + s + "'");
}

std::string family_to_string(scaling::Family f) {
  switch (f) {
    case scaling::Family::Trig: return "trig";
    case scaling::Family::Exp: return "exp";
    case scaling::Family::Gaussian: return "gaussian";
    case scaling::Family::Constant: return "constant";
  }
  return "constant";
}

branches::BranchKind branch_from_string(const std::string& s, int line) {
  using branches::BranchKind;
  if (s == "finite-sn") return BranchKind::FiniteSn;
  if (s == "dark-soliton") return BranchKind::DarkSoliton;
  if (s == "singular-sn") return BranchKind::SingularSn;
  if (s == "finite-sn-neg") return BranchKind::FiniteSnNegSigma;
  if (s == "bright-soliton") return BranchKind::BrightSoliton;
  throw ConfigError(
      "key 'branch.kind' (line " + std::to_string(line) +
      "): expected finite-sn|dark-soliton|singular-sn|finite-sn-neg|"
      "bright-soliton, got '" + s + "'");
}

std::string branch_to_string(branches::BranchKind k) {
  using branches::BranchKind;
  switch (k) {
    case BranchKind::FiniteSn: return "finite-sn";
    case BranchKind::DarkSoliton: return "dark-soliton";
    case BranchKind::SingularSn: return "singular-sn";
    case BranchKind::FiniteSnNegSigma: return "finite-sn-neg";
    case BranchKind::BrightSoliton: return "bright-soliton";
  }
  return "finite-sn";
}

int parse_sign(KeyMap& map, const std::string& key, int def) {
  const long v = map.get_long(key, def);
  if (v != 1 && v != -1) {
    throw ConfigError("key '" + key + "': expected 1 or -1, got " +
                      std::to_string(v));
  }
  return static_cast<int>(v);
}

bool nearly(double a, double b, double rel) {
  return std::fabs(a - b) <= rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}

/// First integral the roots demand of the envelope.
double roots_E(const JobConfig& cfg) {
  return static_cast<double>(cfg.sigma) *
         (cfg.roots.W1 + cfg.roots.W2 + cfg.roots.W3);
}

/// Derive (or cross-check) the envelope parameter that encodes the first
/// integral: the frequency for trig/exp, mu for constant; gaussian envelopes
/// admit only E = 0. `given` flags which inputs the user supplied.
void complete_envelope(JobConfig& cfg, bool has_omega, bool has_mu) {
  const double E = roots_E(cfg);
  switch (cfg.family) {
    case scaling::Family::Trig:
    case scaling::Family::Exp: {
      const double denom =
          cfg.family == scaling::Family::Trig
              ? cfg.C3 * cfg.C3 - cfg.C1 * cfg.C1 - cfg.C2 * cfg.C2
              : 4.0 * cfg.C1 * cfg.C2 - cfg.C3 * cfg.C3;
      if (has_omega) {
        const double closed = cfg.omega * cfg.omega * denom / 4.0;
        if (!nearly(closed, E, kEchoTol)) {
          throw ConfigError(
              "key 'family.omega': frequency gives first integral E = " +
              fmt(closed) + " but the roots demand E = " + fmt(E) +
              "; omit family.omega to derive it");
        }
      } else {
        if (!(E * denom > 0.0)) {
          throw ConfigError(
              "cannot derive family.omega: roots demand E = " + fmt(E) +
              " while the envelope coefficients give the sign of " +
              fmt(denom) + "; no positive frequency matches");
        }
        cfg.omega = 2.0 * std::sqrt(E / denom);
      }
      break;
    }
    case scaling::Family::Gaussian:
      if (std::fabs(E) > kGaussianETol) {
        throw ConfigError(
            "gaussian envelopes pin the first integral at E = 0, but the "
            "roots give E = " + fmt(E) +
            "; use roots.W2 = -(W1 + W3) or omit roots.W2");
      }
      if (!has_mu) {
        throw ConfigError("missing required key 'family.mu' (gaussian)");
      }
      break;
    case scaling::Family::Constant:
      if (has_mu) {
        if (!nearly(-cfg.mu, E, kEchoTol)) {
          throw ConfigError("key 'family.mu': constant envelopes have E = "
                            "-mu = " + fmt(-cfg.mu) +
                            " but the roots demand E = " + fmt(E) +
                            "; omit family.mu to derive it");
        }
      } else {
        cfg.mu = -E;
      }
      break;
  }
}

void parse_pair(KeyMap& map, JobConfig& cfg) {
  // --- envelope -----------------------------------------------------------
  cfg.family = family_from_string(map.require_string("family.kind"),
                                  map.line_of("family.kind"));
  const bool is_trig = cfg.family == scaling::Family::Trig;
  const bool is_exp = cfg.family == scaling::Family::Exp;
  const bool has_alpha = map.has("family.alpha");
  if (has_alpha) {
    if (!is_trig) {
      throw ConfigError("key 'family.alpha' is the trig modulation depth; "
                        "this family takes family.C1/C2/C3");
    }
    if (map.has("family.C1") || map.has("family.C2") || map.has("family.C3")) {
      throw ConfigError("key 'family.alpha' replaces family.C1/C2/C3 "
                        "(a = 1 + alpha cos(omega x)); give one or the other");
    }
    cfg.C1 = 0.0;
    cfg.C2 = map.require_double("family.alpha");
    cfg.C3 = 1.0;
  } else if (is_trig || is_exp) {
    cfg.C1 = map.get_double("family.C1", 0.0);
    cfg.C2 = map.get_double("family.C2", 0.0);
    cfg.C3 = map.get_double("family.C3", 1.0);
  }
  const bool has_omega = map.has("family.omega");
  if (has_omega) {
    if (!is_trig && !is_exp) {
      throw ConfigError("key 'family.omega' applies to trig/exp families only");
    }
    cfg.omega = map.require_double("family.omega");
  }
  const bool has_mu = map.has("family.mu");
  if (has_mu) {
    if (is_trig || is_exp) {
      throw ConfigError("key 'family.mu' applies to gaussian/constant "
                        "families only (trig/exp fix mu = -/+ omega^2/4)");
    }
    cfg.mu = map.require_double("family.mu");
  }

  // --- potential kind (derived from the family, optionally echoed) --------
  const std::string default_pot =
      cfg.family == scaling::Family::Gaussian ? "quadratic" : "zero";
  cfg.potential_kind = map.get_string("potential.kind", default_pot);
  if (cfg.potential_kind != default_pot) {
    throw ConfigError("key 'potential.kind': " + family_to_string(cfg.family) +
                      " envelopes carry a " + default_pot +
                      " potential, got '" + cfg.potential_kind + "'");
  }

  // --- interaction matrix and sigma ---------------------------------------
  cfg.h = {map.require_double("h.h11"), map.require_double("h.h12"),
           map.require_double("h.h21"), map.require_double("h.h22")};
  cfg.sigma = parse_sign(map, "sigma", 0);  // 0 forces "expected 1 or -1"

  // --- roots XOR invariants ------------------------------------------------
  const bool any_roots = map.has_prefix("roots.");
  const bool any_inv = map.has_prefix("invariants.");
  if (any_roots == any_inv) {
    throw ConfigError(any_roots
                          ? "give either roots.* or invariants.*, not both"
                          : "missing roots.W1/W3 (or invariants.E/C0/c)");
  }
  if (any_inv) {
    branches::Invariants inv;
    inv.E = map.require_double("invariants.E");
    inv.C0 = map.require_double("invariants.C0");
    inv.c = map.require_double("invariants.c");
    inv.sigma = cfg.sigma;
    try {
      cfg.roots = branches::roots_from_invariants(inv);
    } catch (const Error& e) {
      throw ConfigError(std::string("invariants.* do not describe a real "
                                    "branch: ") + e.what());
    }
  } else {
    cfg.roots.W1 = map.require_double("roots.W1");
    cfg.roots.W3 = map.require_double("roots.W3");
    if (map.has("roots.W2")) {
      cfg.roots.W2 = map.require_double("roots.W2");
    } else {
      // The middle root is pinned by the envelope's first integral.
      double E = 0.0;
      if (cfg.family == scaling::Family::Gaussian) {
        E = 0.0;
      } else if (has_omega) {
        E = cfg.omega * cfg.omega *
            (cfg.family == scaling::Family::Trig
                 ? cfg.C3 * cfg.C3 - cfg.C1 * cfg.C1 - cfg.C2 * cfg.C2
                 : 4.0 * cfg.C1 * cfg.C2 - cfg.C3 * cfg.C3) /
            4.0;
      } else if (cfg.family == scaling::Family::Constant && has_mu) {
        E = -cfg.mu;
      } else {
        throw ConfigError("roots.W2 omitted: supply it, or fix the first "
                          "integral via family.omega / family.mu");
      }
      cfg.roots.W2 = static_cast<double>(cfg.sigma) * E - cfg.roots.W1 -
                     cfg.roots.W3;
    }
  }

  complete_envelope(cfg, has_omega, has_mu);

  // --- branch ---------------------------------------------------------------
  cfg.branch_kind = branch_from_string(map.require_string("branch.kind"),
                                       map.line_of("branch.kind"));
  cfg.y0 = map.get_double("branch.y0", 0.0);

  // --- coupling --------------------------------------------------------------
  cfg.coupling_mode = map.get_string("coupling.mode", "derive");
  if (cfg.coupling_mode != "derive" && cfg.coupling_mode != "degenerate" &&
      cfg.coupling_mode != "zero-component" && cfg.coupling_mode != "manual") {
    throw ConfigError("key 'coupling.mode': expected "
                      "derive|degenerate|zero-component|manual, got '" +
                      cfg.coupling_mode + "'");
  }
  if (cfg.coupling_mode == "degenerate") {
    cfg.coupling_c1 = map.require_double("coupling.c1");
    cfg.coupling_c2 = map.require_double("coupling.c2");
  } else if (map.has("coupling.c1") || map.has("coupling.c2")) {
    throw ConfigError("keys 'coupling.c1/c2' apply to coupling.mode = "
                      "degenerate only (otherwise the split is derived)");
  }
  if (cfg.coupling_mode == "manual") {
    cfg.manual_delta = {map.require_double("coupling.delta1"),
                        map.require_double("coupling.delta2")};
    if (cfg.manual_delta[0] < 0.0 || cfg.manual_delta[1] < 0.0 ||
        (cfg.manual_delta[0] == 0.0 && cfg.manual_delta[1] == 0.0)) {
      throw ConfigError("coupling.delta1/delta2 must be nonnegative and not "
                        "both zero");
    }
  } else if (map.has("coupling.delta1") || map.has("coupling.delta2")) {
    throw ConfigError("keys 'coupling.delta1/delta2' apply to coupling.mode "
                      "= manual only (otherwise the amplitudes are derived)");
  }
  cfg.phase_sign = {parse_sign(map, "phase.sign1", 1),
                    parse_sign(map, "phase.sign2", 1)};
  cfg.perturb = {map.get_double("perturb.delta1_factor", 1.0),
                 map.get_double("perturb.delta2_factor", 1.0)};
  if (!(cfg.perturb[0] > 0.0) || !(cfg.perturb[1] > 0.0)) {
    throw ConfigError("perturb.delta*_factor must be > 0");
  }
}

void parse_polar(KeyMap& map, JobConfig& cfg) {
  cfg.polar.K1 = map.require_double("polar.K1");
  cfg.polar.K2 = map.require_double("polar.K2");
  cfg.polar.E = map.require_double("polar.E");
  cfg.polar.c1 = map.get_double("polar.c1", 0.0);
  cfg.polar.c2 = map.get_double("polar.c2", 0.0);
  cfg.polar.zeta0 = map.get_double("polar.zeta0", 0.0);
}

void parse_grid(KeyMap& map, JobConfig& cfg) {
  cfg.grid.x_lo = map.require_double("grid.x_lo");
  cfg.grid.x_hi = map.require_double("grid.x_hi");
  if (!(cfg.grid.x_lo < cfg.grid.x_hi)) {
    throw ConfigError("grid.x_lo must be strictly below grid.x_hi");
  }
  const long n = map.require_long("grid.n");
  const long min_n = cfg.mode == Mode::Polar ? 5 : 2;
  if (n < min_n) {
    throw ConfigError("grid.n must be at least " + std::to_string(min_n));
  }
  cfg.grid.n = static_cast<std::size_t>(n);
}

}  // namespace

JobConfig parse_config(const std::string& text) {
  KeyMap map = tokenize(text);
  JobConfig cfg;

  const std::string mode = map.get_string("mode", "pair");
  if (mode == "pair") {
    cfg.mode = Mode::Pair;
  } else if (mode == "polar") {
    cfg.mode = Mode::Polar;
  } else {
    throw ConfigError("key 'mode': expected pair or polar, got '" + mode + "'");
  }

  if (cfg.mode == Mode::Pair) {
    parse_pair(map, cfg);
  } else {
    parse_polar(map, cfg);
  }
  parse_grid(map, cfg);
  cfg.csv_name = map.get_string("output.csv", "solution.csv");
  cfg.report_name = map.get_string("output.report", "report.txt");
  if (cfg.csv_name.empty() || cfg.report_name.empty()) {
    throw ConfigError("output.csv / output.report must be non-empty names");
  }
  map.finish();

  // Re-validate every module precondition now, so failures carry config
  // context instead of surfacing later in the middle of a command.
  try {
    if (cfg.mode == Mode::Pair) {
      (void)build_solution(cfg);
    } else {
      (void)build_polar(cfg);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("configuration describes an invalid job: ") +
                      e.what());
  }
  return cfg;
}

JobConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

scaling::ScalingSpec envelope_spec(const JobConfig& cfg) {
  switch (cfg.family) {
    case scaling::Family::Trig:
      return scaling::make_trig(cfg.C1, cfg.C2, cfg.C3, cfg.omega);
    case scaling::Family::Exp:
      return scaling::make_exp(cfg.C1, cfg.C2, cfg.C3, cfg.omega);
    case scaling::Family::Gaussian:
      return scaling::make_gaussian(cfg.mu);
    case scaling::Family::Constant:
      return scaling::make_constant(cfg.mu);
  }
  throw ConfigError("unreachable family");
}

branches::Coupling build_coupling(const JobConfig& cfg) {
  const double c =
      branches::invariants_from_roots(cfg.roots, cfg.sigma).c;
  if (cfg.coupling_mode == "degenerate") {
    return branches::derive_coupling(cfg.h, c, cfg.sigma, cfg.coupling_c1,
                                     cfg.coupling_c2);
  }
  if (cfg.coupling_mode == "zero-component") {
    return branches::derive_coupling_zero_component(cfg.h, c, cfg.sigma);
  }
  if (cfg.coupling_mode == "manual") {
    // Explicit amplitudes. This is the only way to express couplings the
    // solvers refuse, e.g. the zero phase strength of a bright pair (c = 0),
    // so the constraint rows are checked here at the same absolute tolerance
    // the verify command later enforces.
    constexpr double kManualRelationTol = 1e-10;
    if (c < 0.0) {
      throw RealSolutionImpossibleError(
          "manual amplitudes need a nonnegative product invariant for real "
          "phase strengths; roots give c = " + fmt(c));
    }
    branches::Coupling cpl;
    cpl.h = cfg.h;
    cpl.sigma = cfg.sigma;
    cpl.c = c;
    cpl.delta1 = cfg.manual_delta[0];
    cpl.delta2 = cfg.manual_delta[1];
    const double d1sq = cpl.delta1 * cpl.delta1;
    const double d2sq = cpl.delta2 * cpl.delta2;
    for (int j = 0; j < 2; ++j) {
      const double delta_j = j == 0 ? cpl.delta1 : cpl.delta2;
      if (delta_j == 0.0) continue;  // absent component, vacuous row
      const double row = cfg.h[2 * j] * d1sq + cfg.h[2 * j + 1] * d2sq -
                         2.0 * static_cast<double>(cfg.sigma);
      if (std::fabs(row) > kManualRelationTol) {
        throw IncompatibleCouplingError(
            "coupling.delta1/delta2 violate amplitude constraint row " +
            std::to_string(j + 1) + " by " + fmt(row) +
            " (tolerance " + fmt(kManualRelationTol) + ")");
      }
    }
    cpl.mixing_ratio = d2sq > 0.0
                           ? d1sq / d2sq
                           : std::numeric_limits<double>::infinity();
    cpl.c1 = c * d1sq * d1sq;
    cpl.c2 = c * d2sq * d2sq;
    cpl.s1 = std::sqrt(c) * d1sq;
    cpl.s2 = std::sqrt(c) * d2sq;
    return cpl;
  }
  return branches::derive_coupling(cfg.h, c, cfg.sigma);
}

branches::BranchSolution build_branch(const JobConfig& cfg) {
  return branches::make_branch(cfg.branch_kind, cfg.roots, cfg.sigma, cfg.y0);
}

assembly::StationarySolution build_solution(const JobConfig& cfg) {
  if (cfg.mode != Mode::Pair) {
    throw ConfigError("this command requires a pair-mode configuration");
  }
  branches::Coupling cpl = build_coupling(cfg);
  cpl.delta1 *= cfg.perturb[0];
  cpl.delta2 *= cfg.perturb[1];
  return assembly::make_stationary(envelope_spec(cfg), cpl, build_branch(cfg),
                                   cfg.phase_sign);
}

polar::PolarSpec build_polar(const JobConfig& cfg) {
  if (cfg.mode != Mode::Polar) {
    throw ConfigError("this command requires a polar-mode configuration");
  }
  return polar::make_polar(cfg.polar.K1, cfg.polar.K2, cfg.polar.E,
                           cfg.polar.c1, cfg.polar.c2, cfg.polar.zeta0);
}

std::string canonical_text(const JobConfig& cfg) {
  std::ostringstream out;
  out << "# canonical job configuration\n";
  out << "mode = " << (cfg.mode == Mode::Polar ? "polar" : "pair") << "\n";
  if (cfg.mode == Mode::Pair) {
    out << "family.kind = " << family_to_string(cfg.family) << "\n";
    const bool osc = cfg.family == scaling::Family::Trig ||
                     cfg.family == scaling::Family::Exp;
    if (osc) {
      out << "family.C1 = " << fmt(cfg.C1) << "\n";
      out << "family.C2 = " << fmt(cfg.C2) << "\n";
      out << "family.C3 = " << fmt(cfg.C3) << "\n";
      out << "family.omega = " << fmt(cfg.omega) << "\n";
    } else {
      out << "family.mu = " << fmt(cfg.mu) << "\n";
    }
    out << "potential.kind = " << cfg.potential_kind << "\n";
    out << "h.h11 = " << fmt(cfg.h[0]) << "\n";
    out << "h.h12 = " << fmt(cfg.h[1]) << "\n";
    out << "h.h21 = " << fmt(cfg.h[2]) << "\n";
    out << "h.h22 = " << fmt(cfg.h[3]) << "\n";
    out << "sigma = " << cfg.sigma << "\n";
    out << "roots.W1 = " << fmt(cfg.roots.W1) << "\n";
    out << "roots.W2 = " << fmt(cfg.roots.W2) << "\n";
    out << "roots.W3 = " << fmt(cfg.roots.W3) << "\n";
    out << "branch.kind = " << branch_to_string(cfg.branch_kind) << "\n";
    out << "branch.y0 = " << fmt(cfg.y0) << "\n";
    out << "coupling.mode = " << cfg.coupling_mode << "\n";
    if (cfg.coupling_mode == "degenerate") {
      out << "coupling.c1 = " << fmt(cfg.coupling_c1) << "\n";
      out << "coupling.c2 = " << fmt(cfg.coupling_c2) << "\n";
    } else if (cfg.coupling_mode == "manual") {
      out << "coupling.delta1 = " << fmt(cfg.manual_delta[0]) << "\n";
      out << "coupling.delta2 = " << fmt(cfg.manual_delta[1]) << "\n";
    }
    out << "phase.sign1 = " << cfg.phase_sign[0] << "\n";
    out << "phase.sign2 = " << cfg.phase_sign[1] << "\n";
    out << "perturb.delta1_factor = " << fmt(cfg.perturb[0]) << "\n";
    out << "perturb.delta2_factor = " << fmt(cfg.perturb[1]) << "\n";
  } else {
    out << "polar.K1 = " << fmt(cfg.polar.K1) << "\n";
    out << "polar.K2 = " << fmt(cfg.polar.K2) << "\n";
    out << "polar.E = " << fmt(cfg.polar.E) << "\n";
    out << "polar.c1 = " << fmt(cfg.polar.c1) << "\n";
    out << "polar.c2 = " << fmt(cfg.polar.c2) << "\n";
    out << "polar.zeta0 = " << fmt(cfg.polar.zeta0) << "\n";
  }
  out << "grid.x_lo = " << fmt(cfg.grid.x_lo) << "\n";
  out << "grid.x_hi = " << fmt(cfg.grid.x_hi) << "\n";
  out << "grid.n = " << cfg.grid.n << "\n";
  out << "output.csv = " << cfg.csv_name << "\n";
  out << "output.report = " << cfg.report_name << "\n";

  if (cfg.mode == Mode::Pair) {
    const branches::Invariants inv =
        branches::invariants_from_roots(cfg.roots, cfg.sigma);
    const branches::Coupling cpl = build_coupling(cfg);
    const branches::BranchSolution br = build_branch(cfg);
    out << "# derived: E = " << fmt(inv.E) << "\n";
    out << "# derived: C0 = " << fmt(inv.C0) << "\n";
    out << "# derived: c = " << fmt(inv.c) << "\n";
    out << "# derived: mixing_ratio = " << fmt(cpl.mixing_ratio) << "\n";
    out << "# derived: c1 = " << fmt(cpl.c1) << "\n";
    out << "# derived: c2 = " << fmt(cpl.c2) << "\n";
    out << "# derived: delta1 = " << fmt(cpl.delta1) << "\n";
    out << "# derived: delta2 = " << fmt(cpl.delta2) << "\n";
    out << "# derived: s1 = " << fmt(cpl.s1) << "\n";
    out << "# derived: s2 = " << fmt(cpl.s2) << "\n";
    out << "# derived: lambda = " << fmt(br.lambda) << "\n";
    out << "# derived: k = " << fmt(br.k) << "\n";
    out << "# derived: period_y = " << fmt(branches::branch_period(br)) << "\n";
    out << "# derived: mu = "
        << fmt(scaling::chemical_potential(envelope_spec(cfg))) << "\n";
  } else {
    const polar::PolarSpec spec = build_polar(cfg);
    const branches::RootTriple s =
        polar::radial_roots(cfg.polar.E, cfg.polar.K1, cfg.polar.K2);
    out << "# derived: b = " << fmt(spec.b) << "\n";
    out << "# derived: Delta = " << fmt(spec.Delta) << "\n";
    out << "# derived: S1 = " << fmt(s.W1) << "\n";
    out << "# derived: S2 = " << fmt(s.W2) << "\n";
    out << "# derived: S3 = " << fmt(s.W3) << "\n";
  }
  return out.str();
}

JobConfig with_parameter(const JobConfig& cfg, const std::string& name,
                         double value) {
  if (cfg.mode != Mode::Pair) {
    throw ConfigError("parameter sweeps require a pair-mode configuration");
  }
  JobConfig v = cfg;
  if (name == "W1") {
    v.roots.W1 = value;
  } else if (name == "W3") {
    v.roots.W3 = value;
  } else if (name == "alpha") {
    if (v.family != scaling::Family::Trig) {
      throw ConfigError("sweep parameter 'alpha' requires the trig family");
    }
    v.C2 = value;
  } else if (name == "mu") {
    if (v.family != scaling::Family::Gaussian) {
      throw ConfigError("sweep parameter 'mu' requires the gaussian family");
    }
    v.mu = value;
  } else {
    throw ConfigError("unknown sweep parameter '" + name +
                      "' (supported: W1, W3, alpha, mu)");
  }

  // Re-derive the dependent quantity for the new value.
  switch (v.family) {
    case scaling::Family::Gaussian:
      v.roots.W2 = -(v.roots.W1 + v.roots.W3);  // keeps E = 0
      break;
    case scaling::Family::Trig:
    case scaling::Family::Exp: {
      const double E = roots_E(v);
      const double denom =
          v.family == scaling::Family::Trig
              ? v.C3 * v.C3 - v.C1 * v.C1 - v.C2 * v.C2
              : 4.0 * v.C1 * v.C2 - v.C3 * v.C3;
      if (!(E * denom > 0.0)) {
        throw ConfigError("sweep value " + fmt(value) +
                          ": no positive frequency matches E = " + fmt(E));
      }
      v.omega = 2.0 * std::sqrt(E / denom);
      break;
    }
    case scaling::Family::Constant:
      v.mu = -roots_E(v);
      break;
  }

  // Same end-to-end validation a parsed config gets.
  try {
    (void)build_solution(v);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("sweep value " + fmt(value) +
                      " describes an invalid job: " + e.what());
  }
  return v;
}

}  // namespace phasewave::config
