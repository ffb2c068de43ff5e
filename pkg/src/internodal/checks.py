"""The per-configuration check suite behind ``internodal validate``."""

from __future__ import annotations

import numpy as np

from . import closedform, reference_values
from .analysis import fit_beta_scenario, mixture_pdf_oracle, moment
from .core import NetworkConfig, all_configs, validate_config
from .montecarlo import validate as mc_validate
from .quadrature import integrate_pieces
from .spatial import radial_moment

NORMALIZATION_TOL = 1e-9
ORACLE_TOL = 1e-8
CONTINUITY_TOL = 1e-9
EDGE_TOL = 1e-9
EQUAL_LIMIT_TOL = 1e-4
EQUAL_LIMIT_EPS = 1e-6
MOMENT_TOL = 1e-8


def _check(name, value, threshold, passed=None, **extra):
    if passed is None:
        passed = bool(value <= threshold)
    entry = {"name": name, "value": float(value), "threshold": float(threshold),
             "passed": bool(passed)}
    entry.update(extra)
    return entry


def default_configs() -> list[NetworkConfig]:
    return all_configs(*reference_values.RADII) + all_configs(1.0, 1.0)


def normalization_error(cfg: NetworkConfig) -> float:
    points = [0.0, *cfg.breakpoints, cfg.r_plus]
    return abs(integrate_pieces(lambda r: closedform.pdf(cfg, r), points, 1e-13) - 1.0)


def oracle_grid(cfg: NetworkConfig, n_points: int = 1000) -> np.ndarray:
    """Interior points of a uniform grid on the support (covers all three r-ranges)."""
    return np.linspace(0.0, cfg.r_plus, n_points + 2)[1:-1]


def oracle_max_error(cfg: NetworkConfig, n_points: int = 1000) -> float:
    grid = oracle_grid(cfg, n_points)
    closed = closedform.pdf(cfg, grid)
    oracle = np.array([mixture_pdf_oracle(cfg, r) for r in grid])
    return float(np.max(np.abs(closed - oracle)))


def continuity_error(cfg: NetworkConfig) -> float:
    inner, outer = closedform.branch_values(cfg, cfg.r_minus)
    return abs(inner - outer)


def support_edge_value(cfg: NetworkConfig) -> float:
    if cfg.equal_radius:
        r = np.nextafter(cfg.r_plus, 0.0)
        return abs(closedform.pdf(cfg, r))
    return abs(closedform.branch_values(cfg, cfg.r_plus)[1])


def equal_limit_gap(cfg: NetworkConfig, eps: float = EQUAL_LIMIT_EPS, n_points: int = 100) -> float:
    """Largest gap between the equal-radius formula and the general one at ``r1 = r2 (1 - eps)``."""
    radius = cfg.r2
    near = NetworkConfig(cfg.dim, cfg.scenario, radius * (1.0 - eps), radius)
    equal = NetworkConfig(cfg.dim, cfg.scenario, radius, radius)
    grid = np.linspace(0.0, 2.0 * radius, n_points + 2)[1:-1]
    return float(np.max(np.abs(closedform.pdf(near, grid) - closedform.pdf(equal, grid))))


def second_moment_oracle(cfg: NetworkConfig) -> float:
    """``E|X - Y|^2 = E|X|^2 + E|Y|^2`` for independent isotropic positions."""
    return (radial_moment(cfg.scenario.inner_node_model(), cfg.dim, cfg.r1, 2)
            + radial_moment(cfg.scenario.outer_node_model(), cfg.dim, cfg.r2, 2))


def beta_reference(cfg: NetworkConfig):
    if (cfg.r1, cfg.r2) != reference_values.RADII:
        return None
    return reference_values.BETA_PARAMS[(int(cfg.dim), cfg.scenario.value)]


def run_config_checks(cfg: NetworkConfig, n: int, seed: int, grid_points: int = 1000,
                      workers: int | None = None) -> list[dict]:
    cfg = validate_config(cfg)
    out = [
        _check("normalization", normalization_error(cfg), NORMALIZATION_TOL),
        _check("oracle_equivalence", oracle_max_error(cfg, grid_points), ORACLE_TOL,
               grid_points=grid_points),
        _check("support_edge", support_edge_value(cfg), EDGE_TOL),
    ]
    if cfg.equal_radius:
        out.append(_check("equal_radius_limit", equal_limit_gap(cfg), EQUAL_LIMIT_TOL))
    else:
        out.append(_check("branch_continuity", continuity_error(cfg), CONTINUITY_TOL))
    out.append(_check("second_moment_oracle",
                      abs(moment(cfg, 2) - second_moment_oracle(cfg)), MOMENT_TOL))

    mc = mc_validate(cfg, n, seed, workers=workers)
    out.append(_check("monte_carlo_ks", mc["ks_closed_form"], mc["ks_threshold"],
                      passed=mc["passed"], attempts=mc["attempts"]))
    out.append(_check("beta_ks_informational", mc["ks_beta"], 1.0, passed=True))

    ref = beta_reference(cfg)
    if ref is not None:
        fit = fit_beta_scenario(cfg).params
        gap = max(abs(fit.alpha - ref[0]), abs(fit.beta - ref[1]))
        out.append(_check("beta_reference", gap, reference_values.TOLERANCE,
                          fitted=[fit.alpha, fit.beta], reference=list(ref),
                          fixture_version=reference_values.FIXTURE_VERSION))
    return out


def run_suite(configs, n: int, seed: int, grid_points: int = 1000,
              workers: int | None = None) -> dict:
    results = []
    for cfg in configs:
        checks = run_config_checks(cfg, n, seed, grid_points, workers)
        results.append({"config": cfg.as_dict(), "checks": checks,
                        "passed": all(c["passed"] for c in checks)})
    failed = [f"{r['config']['dim']}d/{r['config']['scenario']}"
              f"/{r['config']['r1']:g},{r['config']['r2']:g}:{c['name']}"
              for r in results for c in r["checks"] if not c["passed"]]
    return {"n": int(n), "seed": int(seed), "passed": not failed, "failed": failed,
            "configs": results}

