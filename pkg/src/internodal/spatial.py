"""Radial placement densities and position samplers inside a disk or ball.

All four radial CDFs are polynomials in ``x = rho / R``:

=========  ====  ==============================================
kind       dim   CDF(x)
=========  ====  ==============================================
uniform    2     x^2
uniform    3     x^3
rwp        2     2x^2 - x^4
rwp        3     (35/72) (7x^3 - 34/5 x^5 + 13/7 x^7)
=========  ====  ==============================================

The RWP entries are the usual polynomial model of the stationary density of a
random-waypoint node. :func:`waypoint_process_sample` simulates the waypoint
process directly so the polynomials can be checked against it.
"""

from __future__ import annotations

import math
from fractions import Fraction as F

import numpy as np

from . import kernels
from ._accel import requested_backend
from .core import Dimension, PlacementKind, check_radius
from .rng import CounterStream, check_seed

TAG_POINTS = 0x706F696E74536D70  # "pointSmp"

# ascending coefficients of CDF(x), exact
_CDF_COEFFS = {
    (PlacementKind.UNIFORM, Dimension.PLANAR_2D): [0, 0, 1],
    (PlacementKind.UNIFORM, Dimension.SPATIAL_3D): [0, 0, 0, 1],
    (PlacementKind.RWP, Dimension.PLANAR_2D): [0, 0, 2, 0, -1],
    (PlacementKind.RWP, Dimension.SPATIAL_3D): [
        0, 0, 0,
        F(35, 72) * 7, 0,
        F(35, 72) * F(-34, 5), 0,
        F(35, 72) * F(13, 7),
    ],
}


def cdf_coefficients(kind: PlacementKind, dim) -> list[F]:
    """Exact ascending coefficients of the radial CDF in ``x = rho/R``."""
    return [F(c) for c in _CDF_COEFFS[(PlacementKind(kind), Dimension.parse(dim))]]


def pdf_coefficients(kind: PlacementKind, dim) -> list[F]:
    """Exact ascending coefficients of ``R * pdf`` in ``x = rho/R``."""
    c = cdf_coefficients(kind, dim)
    return [k * c[k] for k in range(1, len(c))]


def _float_coeffs(kind, dim):
    cdf = np.array([float(c) for c in cdf_coefficients(kind, dim)])
    dcdf = np.array([float(c) for c in pdf_coefficients(kind, dim)])
    return cdf, dcdf


def _polyval(coeffs, x):
    acc = np.zeros_like(x)
    for c in reversed(coeffs):
        acc = acc * x + float(c)
    return acc


def radial_pdf(kind: PlacementKind, dim, radius: float, rho):
    """Density of the node's distance from the center; zero outside ``[0, R]``."""
    radius = check_radius(radius)
    rho = np.asarray(rho, dtype=float)
    x = rho / radius
    val = _polyval(pdf_coefficients(kind, dim), x) / radius
    out = np.where((x >= 0.0) & (x <= 1.0), val, 0.0)
    return out if out.ndim else float(out)


def radial_cdf(kind: PlacementKind, dim, radius: float, rho):
    radius = check_radius(radius)
    x = np.clip(np.asarray(rho, dtype=float) / radius, 0.0, 1.0)
    out = _polyval(cdf_coefficients(kind, dim), x)
    return out if out.ndim else float(out)


def radial_moment(kind: PlacementKind, dim, radius: float, order: int) -> float:
    """Exact ``E[rho**order]`` from the polynomial density."""
    radius = check_radius(radius)
    pdf = pdf_coefficients(kind, dim)
    total = sum(c / (k + order + 1) for k, c in enumerate(pdf))
    return float(total) * radius**order


def inverse_radial_cdf(kind: PlacementKind, dim, u):
    """Normalized radius ``x`` with ``CDF(x) = u`` (safeguarded Newton)."""
    cdf, dcdf = _float_coeffs(kind, dim)
    u = np.asarray(u, dtype=float)
    x = kernels._inverse_cdf_np(cdf, dcdf, int(Dimension.parse(dim)), u.ravel().copy())
    return x.reshape(u.shape) if u.ndim else float(x[0])


def sample_radius(kind: PlacementKind, dim, radius: float, stream: CounterStream) -> float:
    radius = check_radius(radius)
    return radius * inverse_radial_cdf(kind, dim, stream.uniform())


def _direction(dim, stream):
    if Dimension.parse(dim) is Dimension.PLANAR_2D:
        phi = 2.0 * math.pi * stream.uniform()
        return np.array([math.cos(phi), math.sin(phi)])
    z = 2.0 * stream.uniform() - 1.0
    s = math.sqrt(max(0.0, 1.0 - z * z))
    phi = 2.0 * math.pi * stream.uniform()
    return np.array([s * math.cos(phi), s * math.sin(phi), z])


def sample_point(kind: PlacementKind, dim, radius: float, stream: CounterStream) -> np.ndarray:
    """Isotropic position: radius by inverse CDF, then a uniform direction."""
    rho = sample_radius(kind, dim, radius, stream)
    return rho * _direction(dim, stream)


def waypoint_process_sample(dim, radius: float, stream: CounterStream) -> np.ndarray:
    """Position of a zero-pause random-waypoint node observed at a random time.

    Legs are length-biased (time spent on a leg is proportional to its length),
    so a segment between two uniform waypoints is accepted with probability
    ``length / 2R`` and the position is uniform along it.
    """
    radius = check_radius(radius)
    while True:
        a = sample_point(PlacementKind.UNIFORM, dim, radius, stream)
        b = sample_point(PlacementKind.UNIFORM, dim, radius, stream)
        if stream.uniform() * 2.0 * radius < np.linalg.norm(b - a):
            return a + stream.uniform() * (b - a)


# ---------------------------------------------------------------------------
# bulk samplers (accelerated)


def sample_points(kind: PlacementKind, dim, radius: float, n: int, seed: int,
                  start: int = 0, backend: str | None = None) -> np.ndarray:
    """``n`` positions; row ``i`` depends only on ``(seed, start + i)``."""
    radius = check_radius(radius)
    cdf, dcdf = _float_coeffs(kind, dim)
    fn = kernels.KERNELS[backend or requested_backend()]["points"]
    return fn(int(start), int(n), check_seed(seed), TAG_POINTS, int(Dimension.parse(dim)),
              cdf, dcdf, radius)


def sample_radii(kind: PlacementKind, dim, radius: float, n: int, seed: int,
                 backend: str | None = None) -> np.ndarray:
    return np.linalg.norm(sample_points(kind, dim, radius, n, seed, backend=backend), axis=1)


def waypoint_samples(dim, radius: float, n: int, seed: int, start: int = 0,
                     backend: str | None = None) -> np.ndarray:
    radius = check_radius(radius)
    cdf, dcdf = _float_coeffs(PlacementKind.UNIFORM, dim)
    fn = kernels.KERNELS[backend or requested_backend()]["waypoint"]
    return fn(int(start), int(n), check_seed(seed), int(Dimension.parse(dim)), cdf, dcdf, radius)
