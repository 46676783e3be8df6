"""Smoke test for the _phasewave extension module."""
import math
import sys

sys.path.insert(0, sys.argv[1])

import _phasewave as pw  # noqa: E402


def check_kernels() -> None:
    assert abs(pw.complete_elliptic_K(0.0) - math.pi / 2) < 1e-15
    sn, cn, dn = pw.jacobi_sn_cn_dn(0.6, 0.7)
    assert abs(sn - 0.5511071021478129) < 1e-13
    assert abs(sn * sn + cn * cn - 1.0) < 1e-14
    assert abs(dn * dn + 0.49 * sn * sn - 1.0) < 1e-14
    assert abs(pw.erf(1.0) - 0.8427007929497149) < 1e-14


def check_pipeline() -> None:
    omega = 2.0 * math.sqrt(1.1 / 0.9975)
    env = pw.make_trig(0.0, 0.05, 1.0, omega)
    cpl = pw.derive_coupling([2.0, 1.0, 0.5, 2.0], 0.025, 1)
    assert abs(cpl.delta1 - math.sqrt(4.0 / 7.0)) < 1e-14
    branch = pw.make_branch(pw.BranchKind.DarkSoliton,
                            pw.RootTriple(0.1, 0.5, 0.5), 1)
    sol = pw.make_stationary(env, cpl, branch)
    assert abs(sol.mu + 1.1 / 0.9975) < 1e-12  # mu = -omega^2 / 4

    xs = [-4.0 + 8.0 * i / 100 for i in range(101)]
    rep = pw.stationary_ode_residual(sol, xs)
    assert rep.max_abs < 1e-7, rep.max_abs

    table = pw.sample_solution(sol, -4.0, 4.0, 64)
    assert len(table.x) == 64 and len(table.R1) == 64

    near = pw.make_branch(pw.BranchKind.FiniteSnNegSigma,
                          pw.RootTriple(-0.1, 0.0499, 0.0501), -1)
    assert abs(near.k - 0.036502671637049233) < 1e-12

    oracle = pw.oracle_compare(branch, -2.0, 2.0, 401)
    assert oracle.max_profile_diff < 1e-6

    try:
        pw.derive_coupling([2.0, 1.0, 0.5, 2.0], 0.0, 1)
    except pw.Error:
        pass
    else:
        raise AssertionError("zero product invariant must be rejected")


def check_polar() -> None:
    spec = pw.make_polar(1.0, 3.0, 2.25, 0.25, 0.25)
    assert abs(spec.b - 1.0) < 1e-14
    assert abs(spec.Delta - 0.75) < 1e-14
    rep = pw.polar_reconstruct(spec, -2.0, 2.0, 1601)
    assert rep.max_component_residual < 1e-6


def check_config() -> None:
    text = "\n".join([
        "family.kind = trig",
        "family.alpha = 0.05",
        "h.h11 = 2", "h.h12 = 1", "h.h21 = 0.5", "h.h22 = 2",
        "sigma = 1",
        "roots.W1 = 0.1", "roots.W2 = 0.5", "roots.W3 = 0.5",
        "branch.kind = dark-soliton",
        "grid.x_lo = -4.5", "grid.x_hi = 4.5", "grid.n = 256",
    ]) + "\n"
    cfg = pw.parse_config(text)
    assert abs(cfg.omega - 2.0 * math.sqrt(1.1 / 0.9975)) < 1e-13
    assert cfg.grid == (-4.5, 4.5, 256)
    sol = pw.build_solution(cfg)
    assert abs(sol.mu + 1.1 / 0.9975) < 1e-12
    canon = pw.canonical_text(cfg)
    assert "family.kind = trig" in canon and "# derived:" in canon
    moved = pw.with_parameter(cfg, "alpha", 0.1)
    assert abs(moved.omega - 2.1081851067789197) < 1e-13
    try:
        pw.parse_config("nonsense = 1\n")
    except pw.Error:
        pass
    else:
        raise AssertionError("bad config must be rejected")


def main() -> int:
    check_kernels()
    check_pipeline()
    check_polar()
    check_config()
    print("python smoke: ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
