"""Numerical side of the package: the mixture-integral oracle, CDFs, moments,
beta moment matching and the Kolmogorov-Smirnov statistic."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from . import closedform
from .conditional import GFunctions
from .core import InternodalError, NetworkConfig, validate_config
from .quadrature import NoConvergence, integrate_adaptive, integrate_pieces  # noqa: F401
from .spatial import radial_pdf

ORACLE_TOL = 1e-11
CDF_TOL = 1e-12
MAX_MOMENT_ORDER = 8


class InvalidParams(InternodalError, ValueError):
    pass


class InfeasibleMoments(InternodalError, ValueError):
    pass


@dataclass(frozen=True)
class PdfCurve:
    grid: np.ndarray
    values: np.ndarray
    config: NetworkConfig
    source: str = "closed"


@dataclass(frozen=True)
class CdfCurve:
    grid: np.ndarray
    values: np.ndarray
    config: NetworkConfig


@dataclass(frozen=True)
class BetaParams:
    alpha: float
    beta: float

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0.0):
                raise InvalidParams(f"{name} must be finite and > 0, got {v!r}")

    @property
    def mean(self) -> float:
        return self.alpha / (self.alpha + self.beta)

    @property
    def variance(self) -> float:
        s = self.alpha + self.beta
        return self.alpha * self.beta / (s * s * (s + 1.0))

    @property
    def second_moment(self) -> float:
        return self.mean * (self.alpha + 1.0) / (self.alpha + self.beta + 1.0)


def _pieces(cfg: NetworkConfig) -> list[float]:
    return [0.0, *cfg.breakpoints, cfg.r_plus]


# ---------------------------------------------------------------------------
# mixture-integral oracle


def mixture_pdf_oracle(cfg: NetworkConfig, r: float, abs_tol: float = ORACLE_TOL) -> float:
    """Density at ``r`` by integrating (conditional density) x (radial density) over rho.

    The rho-range splits by the position of ``r`` relative to ``R2 - R1`` and ``R2``:

    ========================  ==========================================
    ``r < R2 - R1``           g1 on ``[0, R1]``
    ``R2 - R1 <= r < R2``     g1 on ``[0, R2 - r]``, g2 on ``[R2 - r, R1]``
    ``R2 <= r <= R1 + R2``    g2 on ``[r - R2, R1]``
    ========================  ==========================================
    """
    cfg = validate_config(cfg)
    r = float(r)
    r1, r2 = cfg.r1, cfg.r2
    if r <= 0.0 or r >= cfg.r_plus:
        return 0.0
    g = GFunctions(cfg.dim, cfg.scenario.outer_node_model(), r2)
    inner = cfg.scenario.inner_node_model()

    def with_g1(rho):
        return g.g1(rho, r) * radial_pdf(inner, cfg.dim, r1, rho)

    def with_g2(rho):
        return g.g2(rho, r) * radial_pdf(inner, cfg.dim, r1, rho)

    if r < cfg.r_minus:
        return integrate_adaptive(with_g1, 0.0, r1, abs_tol)
    if r < r2:
        split = r2 - r
        return (integrate_adaptive(with_g1, 0.0, split, abs_tol / 2)
                + integrate_adaptive(with_g2, split, r1, abs_tol / 2))
    return integrate_adaptive(with_g2, r - r2, r1, abs_tol)


# ---------------------------------------------------------------------------
# CDF and moments


def cdf(cfg: NetworkConfig, r: float, abs_tol: float = CDF_TOL) -> float:
    """``P(distance <= r)`` by adaptive quadrature split at the breakpoints."""
    cfg = validate_config(cfg)
    r = float(r)
    if r <= 0.0:
        return 0.0
    if r >= cfg.r_plus:
        return 1.0
    points = [p for p in _pieces(cfg) if p < r] + [r]
    value = integrate_pieces(lambda x: closedform.pdf(cfg, x), points, abs_tol)
    return min(max(value, 0.0), 1.0)


def moment(cfg: NetworkConfig, order: int, abs_tol: float = 1e-13) -> float:
    """``E[r**order]`` of the closed-form density."""
    cfg = validate_config(cfg)
    order = int(order)
    if not 0 <= order <= MAX_MOMENT_ORDER:
        raise ValueError(f"moment order must be in [0, {MAX_MOMENT_ORDER}], got {order}")
    scale = cfg.r_plus**order
    return integrate_pieces(lambda x: x**order * closedform.pdf(cfg, x), _pieces(cfg),
                            abs_tol * max(scale, 1.0))


class CdfTable:
    """Fast vectorized CDF: cumulative Gauss-Legendre sums on a fixed mesh.

    Each analytic piece is cut into ``cells`` equal cells; a query integrates
    from its cell's left edge with the same ``order``-point rule.
    """

    def __init__(self, cfg: NetworkConfig, cells: int = 2048, order: int = 12):
        self.cfg = validate_config(cfg)
        edges = []
        pieces = _pieces(self.cfg)
        for lo, hi in zip(pieces[:-1], pieces[1:]):
            edges.append(np.linspace(lo, hi, cells + 1)[:-1])
        edges.append(np.array([self.cfg.r_plus]))
        self.edges = np.concatenate(edges)
        self.nodes, self.weights = np.polynomial.legendre.leggauss(order)
        masses = self._integrate(self.edges[:-1], self.edges[1:])
        self.cumulative = np.concatenate([[0.0], np.cumsum(masses)])

    def _integrate(self, a, b):
        half = 0.5 * (b - a)
        mid = 0.5 * (b + a)
        x = mid[:, None] + half[:, None] * self.nodes[None, :]
        y = closedform.pdf(self.cfg, x.ravel()).reshape(x.shape)
        return half * (y @ self.weights)

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        flat = np.clip(r.ravel(), 0.0, self.cfg.r_plus)
        cell = np.clip(np.searchsorted(self.edges, flat, side="right") - 1, 0, self.edges.size - 2)
        out = self.cumulative[cell] + self._integrate(self.edges[cell], flat)
        out = np.clip(out, 0.0, 1.0).reshape(r.shape)
        return out if out.ndim else float(out)


def pdf_curve(cfg: NetworkConfig, n_points: int, source: str = "closed") -> PdfCurve:
    cfg = validate_config(cfg)
    grid = closedform.curve_grid(cfg, n_points)
    if source == "closed":
        values = closedform.pdf(cfg, grid)
    elif source == "oracle":
        values = np.array([mixture_pdf_oracle(cfg, r) for r in grid])
    else:
        raise ValueError(f"source must be 'closed' or 'oracle', got {source!r}")
    return PdfCurve(grid, values, cfg, source)


def cdf_curve(cfg: NetworkConfig, n_points: int) -> CdfCurve:
    cfg = validate_config(cfg)
    grid = closedform.curve_grid(cfg, n_points)
    values = np.array([cdf(cfg, r) for r in grid])
    return CdfCurve(grid, values, cfg)


# ---------------------------------------------------------------------------
# beta approximation


def _check_params(params: BetaParams):
    if not isinstance(params, BetaParams):
        params = BetaParams(*params)
    return params


def log_beta_function(a: float, b: float) -> float:
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def beta_pdf(params: BetaParams, x):
    """Beta density on [0, 1]; endpoint singularities come back as ``inf``."""
    params = _check_params(params)
    a, b = params.alpha, params.beta
    x = np.asarray(x, dtype=float)
    if np.any((x < 0.0) | (x > 1.0)):
        raise InvalidParams("beta_pdf needs 0 <= x <= 1")
    with np.errstate(divide="ignore"):
        logp = special.xlogy(a - 1.0, x) + special.xlog1py(b - 1.0, -x) - log_beta_function(a, b)
    out = np.exp(logp)
    return out if out.ndim else float(out)


def beta_cdf(params: BetaParams, x):
    params = _check_params(params)
    out = special.betainc(params.alpha, params.beta, np.clip(np.asarray(x, dtype=float), 0.0, 1.0))
    return out if np.ndim(out) else float(out)


def fit_beta_moments(mean: float, variance: float) -> BetaParams:
    """Beta parameters whose mean and variance equal the given ones."""
    mean = float(mean)
    variance = float(variance)
    if not 0.0 < mean < 1.0:
        raise InfeasibleMoments(f"mean must lie in (0, 1), got {mean}")
    if not 0.0 < variance < mean * (1.0 - mean):
        raise InfeasibleMoments(
            f"variance must lie in (0, mean(1-mean)) = (0, {mean * (1 - mean)}), got {variance}")
    k = mean * (1.0 - mean) / variance - 1.0
    return BetaParams(mean * k, (1.0 - mean) * k)


@dataclass(frozen=True)
class BetaFit:
    params: BetaParams
    mean: float
    variance: float
    normalization: float
    raw_moments: tuple = field(default=())


def fit_beta_scenario(cfg: NetworkConfig) -> BetaFit:
    """Moment-matched beta for the distance scaled by ``r1 + r2`` onto [0, 1]."""
    cfg = validate_config(cfg)
    norm = cfg.r_plus
    m1 = moment(cfg, 1)
    m2 = moment(cfg, 2)
    mean = m1 / norm
    variance = m2 / norm**2 - mean**2
    return BetaFit(fit_beta_moments(mean, variance), mean, variance, norm, (m1, m2))


# ---------------------------------------------------------------------------


def ks_distance(sorted_samples, analytic_cdf) -> float:
    """Two-sided Kolmogorov-Smirnov statistic of a sorted sample against a CDF."""
    x = np.asarray(sorted_samples, dtype=float)
    n = x.size
    if n < 1:
        raise ValueError("need at least one sample")
    if n > 1 and np.any(np.diff(x) < 0.0):
        raise ValueError("samples must be sorted ascending")
    fx = np.asarray(analytic_cdf(x), dtype=float)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - fx), np.max(fx - (i - 1) / n)))
