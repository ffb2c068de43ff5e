"""Acceptance suite: one PASS/FAIL line per criterion, at the stated tolerances.

Run with ``pytest tests/test_acceptance.py -v`` (lines are printed even when
output is captured) or directly with ``python3 tests/test_acceptance.py``.
"""

import json
import subprocess
import sys

from internodal import checks, reference_values
from internodal.analysis import fit_beta_scenario, moment
from internodal.core import Dimension, Scenario, make_config
from internodal.montecarlo import rwp_density_crosscheck, validate
from internodal.spatial import radial_moment

ALL16 = checks.default_configs()
GENERAL = [c for c in ALL16 if not c.equal_radius]
EQUAL = [c for c in ALL16 if c.equal_radius]

MC_N = 1_000_000
MC_SEED = 1
TV_LIMIT = 0.03


def _emit(capsys, number, title, passed, detail, informational=False):
    status = "PASS" if passed else ("FAIL (informational)" if informational else "FAIL")
    line = f"[acceptance {number}] {status:<20} {title}: {detail}"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)


def criterion_1():
    worst = 0.0
    for (dim, scen), ref in reference_values.BETA_PARAMS.items():
        fit = fit_beta_scenario(make_config(dim, scen, *reference_values.RADII)).params
        worst = max(worst, abs(fit.alpha - ref[0]), abs(fit.beta - ref[1]))
    hand = fit_beta_scenario(make_config(2, "s4", 1, 2)).params.second_moment
    hand_err = abs(hand - 2.5 / 9)
    ok = worst <= 0.01 and hand_err <= 1e-6
    return ok, f"max |fit - published| = {worst:.2e} (tol 1e-2); 2D s4 E[x^2] err = {hand_err:.1e} (tol 1e-6)"


def criterion_2():
    worst = max(checks.normalization_error(c) for c in ALL16)
    return worst <= 1e-9, f"max |integral - 1| = {worst:.2e} over 16 configs (tol 1e-9)"


def criterion_3():
    worst, where = 0.0, None
    beyond_r2 = 0
    for cfg in ALL16:
        grid = checks.oracle_grid(cfg, 1000)
        beyond_r2 += int((grid >= cfg.r2).sum())
        err = checks.oracle_max_error(cfg, 1000)
        if err > worst:
            worst, where = err, cfg.label()
    ok = worst <= 1e-8 and beyond_r2 > 0
    return ok, (f"max |closed - oracle| = {worst:.2e} at {where} (tol 1e-8); "
                f"{beyond_r2} grid points with r >= r2")


def criterion_4():
    cont = max(checks.continuity_error(c) for c in GENERAL)
    edge = max(checks.support_edge_value(c) for c in GENERAL)
    gap = max(checks.equal_limit_gap(c, 1e-6) for c in EQUAL)
    ok = cont < 1e-9 and edge < 1e-9 and gap < 1e-4
    return ok, (f"continuity {cont:.1e} (tol 1e-9), f(R+) {edge:.1e} (tol 1e-9), "
                f"equal-radius limit gap {gap:.1e} (tol 1e-4)")


def criterion_5():
    worst_ratio, worst_cfg, failed, retries = 0.0, None, [], 0
    for cfg in ALL16:
        rep = validate(cfg, MC_N, MC_SEED)
        retries += len(rep["attempts"]) - 1
        ratio = rep["ks_closed_form"] / rep["ks_threshold"]
        if ratio > worst_ratio:
            worst_ratio, worst_cfg = ratio, cfg.label()
        if not rep["passed"]:
            failed.append(cfg.label())
    detail = (f"worst KS/threshold = {worst_ratio:.3f} at {worst_cfg} "
              f"(n = 1e6, threshold {1.63 / MC_N ** 0.5:.5f}); seed retries used: {retries}")
    if failed:
        detail += "; failed: " + ", ".join(failed)
    return not failed, detail


def _second_moment_independent(cfg):
    d = cfg.dim
    if cfg.scenario is Scenario.S4:
        c = 0.5 if d is Dimension.PLANAR_2D else 0.6
        return c * cfg.r1**2 + c * cfg.r2**2
    return (radial_moment(cfg.scenario.inner_node_model(), d, cfg.r1, 2)
            + radial_moment(cfg.scenario.outer_node_model(), d, cfg.r2, 2))


def criterion_6():
    worst = max(abs(moment(c, 2) - _second_moment_independent(c)) for c in ALL16)
    return worst <= 1e-8, f"max |E[r^2] - independent value| = {worst:.2e} (tol 1e-8)"


def criterion_7():
    tv = {dim: rwp_density_crosscheck(dim, 1.0, MC_N, seed=11)["tv_distance"] for dim in (2, 3)}
    tv_small = {dim: rwp_density_crosscheck(dim, 1.0, MC_N // 10, seed=11)["tv_distance"]
                for dim in (2, 3)}
    # TV noise floor for 50 bins at n = 1e5 is about 0.01
    trend_ok = all(tv[d] <= tv_small[d] + 0.01 for d in (2, 3))
    ok = all(v < TV_LIMIT for v in tv.values())
    return ok, trend_ok, tv, (f"TV 2D = {tv[2]:.4f}, 3D = {tv[3]:.4f} at n = 1e6 (limit {TV_LIMIT}); "
                              f"n = 1e5: 2D = {tv_small[2]:.4f}, 3D = {tv_small[3]:.4f}")


def _simulate_cli(workers):
    cmd = [sys.executable, "-m", "internodal", "simulate", "--dim", "2", "--scenario", "s1",
           "--r1", "1", "--r2", "2", "-n", "100000", "--seed", "42", "--bins", "100",
           "--workers", str(workers)]
    return subprocess.run(cmd, capture_output=True, check=True).stdout


def criterion_8():
    a, b, c = _simulate_cli(1), _simulate_cli(1), _simulate_cli(4)
    json.loads(a)
    ok = a == b == c
    return ok, f"two runs identical: {a == b}; 1 vs 4 workers identical: {a == c} ({len(a)} bytes)"


# ---------------------------------------------------------------------------


def test_1_beta_reproduction(capsys):
    ok, detail = criterion_1()
    _emit(capsys, 1, "beta-parameter reproduction", ok, detail)
    assert ok, detail


def test_2_normalization(capsys):
    ok, detail = criterion_2()
    _emit(capsys, 2, "normalization suite", ok, detail)
    assert ok, detail


def test_3_oracle_equivalence(capsys):
    ok, detail = criterion_3()
    _emit(capsys, 3, "oracle equivalence", ok, detail)
    assert ok, detail


def test_4_continuity_and_edges(capsys):
    ok, detail = criterion_4()
    _emit(capsys, 4, "branch continuity and support edges", ok, detail)
    assert ok, detail


def test_5_monte_carlo_ks(capsys):
    ok, detail = criterion_5()
    _emit(capsys, 5, "Monte Carlo KS validation", ok, detail)
    assert ok, detail


def test_6_moment_oracles(capsys):
    ok, detail = criterion_6()
    _emit(capsys, 6, "independent moment oracles", ok, detail)
    assert ok, detail


def test_7_rwp_density_crosscheck(capsys):
    ok, trend_ok, tv, detail = criterion_7()
    _emit(capsys, 7, "RWP density soft cross-check", ok, detail, informational=True)
    # informational by contract: the line above reports the outcome; only
    # gross breakage of the waypoint sampler fails the build
    assert trend_ok, detail
    assert tv[3] < TV_LIMIT, detail
    assert tv[2] < 2 * TV_LIMIT, detail


def test_8_determinism(capsys):
    ok, detail = criterion_8()
    _emit(capsys, 8, "determinism", ok, detail)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for n, fn, title in [(1, criterion_1, "beta-parameter reproduction"),
                         (2, criterion_2, "normalization suite"),
                         (3, criterion_3, "oracle equivalence"),
                         (4, criterion_4, "branch continuity and support edges"),
                         (5, criterion_5, "Monte Carlo KS validation"),
                         (6, criterion_6, "independent moment oracles")]:
        ok, detail = fn()
        _emit(None, n, title, ok, detail)
        results.append(ok)
    ok7, _, _, detail7 = criterion_7()
    _emit(None, 7, "RWP density soft cross-check", ok7, detail7, informational=True)
    ok, detail = criterion_8()
    _emit(None, 8, "determinism", ok, detail)
    results.append(ok)
    sys.exit(0 if all(results) else 1)
