"""Reproducible Monte Carlo sampling of internodal distances.

Sample ``i`` of a run with seed ``s`` is a pure function of ``(s, i)`` (see
:mod:`internodal.kernels`). Work is cut into fixed-size chunks keyed by their
first index and reassembled in index order, so any number of worker threads
gives bit-identical output.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from ._accel import requested_backend
from .analysis import CdfTable, beta_cdf, fit_beta_scenario, ks_distance, moment
from .core import Dimension, NetworkConfig, PlacementKind, check_radius, validate_config
from .rng import CounterStream, check_seed
from .spatial import _float_coeffs, radial_cdf, sample_point, waypoint_samples

CHUNK = 1 << 16
KS_CRITICAL_1PCT = 1.63


def ks_threshold(n: int) -> float:
    return KS_CRITICAL_1PCT / math.sqrt(n)


def sample_pair_distance(cfg: NetworkConfig, stream: CounterStream) -> float:
    """One distance: node 1 from the inner model, node 2 from the outer model."""
    cfg = validate_config(cfg)
    p1 = sample_point(cfg.scenario.inner_node_model(), cfg.dim, cfg.r1, stream)
    p2 = sample_point(cfg.scenario.outer_node_model(), cfg.dim, cfg.r2, stream)
    return float(np.linalg.norm(p1 - p2))


def _chunks(n):
    return [(start, min(CHUNK, n - start)) for start in range(0, n, CHUNK)]


def _run_chunked(task, n, workers):
    chunks = _chunks(n)
    if workers is None or workers <= 1 or len(chunks) == 1:
        parts = [task(start, count) for start, count in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda c: task(*c), chunks))
    return np.concatenate(parts) if parts else np.empty(0)


def pair_distances(cfg: NetworkConfig, n: int, seed: int, workers: int | None = None,
                   backend: str | None = None) -> np.ndarray:
    """``n`` sampled distances, in sample-index order."""
    cfg = validate_config(cfg)
    seed = check_seed(seed)
    cdf1, dcdf1 = _float_coeffs(cfg.scenario.inner_node_model(), cfg.dim)
    cdf2, dcdf2 = _float_coeffs(cfg.scenario.outer_node_model(), cfg.dim)
    kernel = kernels.KERNELS[backend or requested_backend()]["pair"]
    dim = int(cfg.dim)

    def task(start, count):
        return kernel(start, count, seed, dim, cdf1, dcdf1, cfg.r1, cdf2, dcdf2, cfg.r2)

    return _run_chunked(task, int(n), workers)


@dataclass(frozen=True)
class McSummary:
    config: NetworkConfig
    n: int
    seed: int
    bin_edges: np.ndarray
    counts: np.ndarray
    mean: float
    second_moment: float
    ks_statistic: float
    sorted_samples: np.ndarray

    def ecdf(self, r):
        return np.searchsorted(self.sorted_samples, r, side="right") / self.n

    def as_dict(self) -> dict:
        return {
            "config": self.config.as_dict(),
            "n": self.n,
            "seed": self.seed,
            "bins": int(self.counts.size),
            "ks_statistic": self.ks_statistic,
            "ks_threshold": ks_threshold(self.n),
            "moments": {"1": self.mean, "2": self.second_moment},
            "histogram": {
                "edges": [float(e) for e in self.bin_edges],
                "counts": [int(c) for c in self.counts],
            },
        }


def simulate(cfg: NetworkConfig, n: int, seed: int, bins: int = 100,
             workers: int | None = None, backend: str | None = None,
             cdf_table: CdfTable | None = None) -> McSummary:
    """Draw ``n`` distances and summarize them against the closed-form CDF."""
    cfg = validate_config(cfg)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if bins < 1:
        raise ValueError(f"bins must be >= 1, got {bins}")
    seed = check_seed(seed)
    r = pair_distances(cfg, n, seed, workers=workers, backend=backend)
    r.sort(kind="stable")
    # half-open bins with the last one closed, so mass at r1+r2 is kept
    counts, edges = np.histogram(r, bins=bins, range=(0.0, cfg.r_plus))
    table = cdf_table or CdfTable(cfg)
    return McSummary(
        config=cfg,
        n=int(n),
        seed=seed,
        bin_edges=edges,
        counts=counts,
        mean=float(np.mean(r)),
        second_moment=float(np.mean(r * r)),
        ks_statistic=ks_distance(r, table),
        sorted_samples=r,
    )


def validate(cfg: NetworkConfig, n: int, seed: int, workers: int | None = None,
             retry: bool = True) -> dict:
    """KS of a simulation against the closed-form CDF and, for information only,
    against the moment-matched beta CDF of ``r / (r1 + r2)``.

    A closed-form KS failure is retried once with ``seed + 1``.
    """
    cfg = validate_config(cfg)
    if n < 10_000:
        raise ValueError(f"validation needs n >= 10000, got {n}")
    table = CdfTable(cfg)
    threshold = ks_threshold(n)
    attempts = []
    seeds = [check_seed(seed)] + ([(seed + 1) % 2**64] if retry else [])
    for s in seeds:
        summary = simulate(cfg, n, s, workers=workers, cdf_table=table)
        attempts.append({"seed": s, "ks_statistic": summary.ks_statistic})
        if summary.ks_statistic < threshold:
            break
    fit = fit_beta_scenario(cfg)
    beta_ks = ks_distance(summary.sorted_samples / cfg.r_plus,
                          lambda x: beta_cdf(fit.params, x))
    return {
        "config": cfg.as_dict(),
        "n": int(n),
        "ks_closed_form": summary.ks_statistic,
        "ks_threshold": threshold,
        "passed": summary.ks_statistic < threshold,
        "attempts": attempts,
        "ks_beta": beta_ks,
        "beta": {"alpha": fit.params.alpha, "beta": fit.params.beta},
        "moments": {
            "empirical": [summary.mean, summary.second_moment],
            "analytic": [moment(cfg, 1), moment(cfg, 2)],
        },
    }


def total_variation(counts: np.ndarray, probs: np.ndarray) -> float:
    counts = np.asarray(counts, dtype=float)
    return 0.5 * float(np.sum(np.abs(counts / counts.sum() - probs)))


def rwp_density_crosscheck(dim, radius: float, n: int, seed: int, bins: int = 50,
                           workers: int | None = None) -> dict:
    """Total-variation distance between simulated waypoint positions and the
    polynomial RWP radial density, over equal-width radial bins."""
    radius = check_radius(radius)
    dim = Dimension.parse(dim)
    seed = check_seed(seed)

    def task(start, count):
        pts = waypoint_samples(dim, radius, count, seed, start=start)
        return np.linalg.norm(pts, axis=1)

    rho = _run_chunked(task, int(n), workers)
    edges = np.linspace(0.0, radius, bins + 1)
    counts, _ = np.histogram(rho, bins=edges)
    probs = np.diff(radial_cdf(PlacementKind.RWP, dim, radius, edges))
    return {
        "dim": int(dim),
        "radius": radius,
        "n": int(n),
        "seed": seed,
        "bins": bins,
        "tv_distance": total_variation(counts, probs),
    }

