#pragma once
/// Command-line entry point: solve | verify | propagate | sweep.
///
/// Exit codes, shared by every subcommand:
///   0  success (all checks within tolerance where checks apply)
///   1  a verification threshold was exceeded
///   2  configuration or usage error (parse failure, invalid job, bad flags)
///   3  propagation precondition failure (field not localized at the window
///      edges, so the periodic spectral step would wrap the background)

namespace phasewave::cli {

/// Parse argv and dispatch. Never throws; every failure is mapped onto the
/// exit-code contract above with a diagnostic on stderr.
int run(int argc, char** argv);

}  // namespace phasewave::cli
