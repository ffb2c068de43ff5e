"""Distance density from a node at radius ``rho`` to a node placed in the outer region.

A ring (2D) or shell (3D) of radius ``r`` around the first node is either fully
inside the outer region (``r < R2 - rho``), partially overlapping it
(``R2 - rho <= r <= R2 + rho``), or outside it. ``g1`` is the density on the
first range and ``g2`` on the second.
"""

from __future__ import annotations

import enum

import numpy as np

from .core import Dimension, DomainError, PlacementKind, check_radius
from .quadrature import integrate_adaptive

CLAMP_TOL = 1e-12


class IntervalCase(enum.Enum):
    FULLY_INSIDE = "fully_inside"
    PARTIAL_OVERLAP = "partial_overlap"
    OUTSIDE = "outside"


def interval_case(r2: float, rho: float, r: float) -> IntervalCase:
    if r < r2 - rho:
        return IntervalCase.FULLY_INSIDE
    if r <= r2 + rho:
        return IntervalCase.PARTIAL_OVERLAP
    return IntervalCase.OUTSIDE


def clamp_unit(x):
    """Clip to [-1, 1]; callers only pass values that are within roundoff of it."""
    return np.clip(x, -1.0, 1.0)


def angle_theta(r2: float, rho: float, r: float) -> float:
    """Half-angle of the arc of the ring around ``rho`` that lies inside radius ``r2``."""
    arg = (r * r - r2 * r2 + rho * rho) / (2.0 * r * rho)
    if not -1.0 - CLAMP_TOL <= arg <= 1.0 + CLAMP_TOL:
        raise DomainError(f"ring of radius {r} around rho={rho} does not cross radius {r2}")
    return float(np.arccos(clamp_unit(arg)))


class GFunctions:
    """Branch densities ``g1`` (ring inside) and ``g2`` (ring crossing) and helpers.

    Helper definitions differ by dimension::

        2D: g3 = sqrt((r^2 - (R2-rho)^2) ((R2+rho)^2 - r^2)),  g4 = rho^2 + r^2 - R2^2
        3D: g3 = rho^2 + r^2 - R2^2,  g4 = 13 r^2 - 21 R2^2 + 13 rho^2,
            g5 = (r - rho + R2)^2 (rho - r + R2)^2
    """

    def __init__(self, dim, outer_kind: PlacementKind, r2: float):
        self.dim = Dimension.parse(dim)
        self.outer_kind = PlacementKind(outer_kind)
        self.r2 = check_radius(r2, "r2")

    def g3(self, rho, r):
        R = self.r2
        if self.dim is Dimension.PLANAR_2D:
            # factored differences stay accurate where the ring grazes either edge
            prod = (r - R + rho) * (r + R - rho) * (R + rho - r) * (R + rho + r)
            return np.sqrt(np.maximum(prod, 0.0))
        return rho * rho + r * r - R * R

    def g4(self, rho, r):
        R = self.r2
        if self.dim is Dimension.PLANAR_2D:
            return rho * rho + r * r - R * R
        return 13.0 * r * r - 21.0 * R * R + 13.0 * rho * rho

    def g5(self, rho, r):
        R = self.r2
        return (r - rho + R) ** 2 * (rho - r + R) ** 2

    def half_angle(self, rho, r):
        """``acos(g4 / (2 rho r))`` in 2D, via ``2 asin(sqrt((1 - c) / 2))`` so
        it keeps full relative accuracy as the angle goes to zero."""
        R = self.r2
        s2 = (R + rho - r) * (R - rho + r) / (4.0 * rho * r)
        return 2.0 * np.arcsin(np.sqrt(np.clip(s2, 0.0, 1.0)))

    def g1(self, rho, r):
        R = self.r2
        if self.dim is Dimension.PLANAR_2D:
            if self.outer_kind is PlacementKind.UNIFORM:
                return 2.0 * r / R**2 + 0.0 * rho
            # R2**4 makes this a normalized density; R2**2 would not be
            return -4.0 * r * self.g4(rho, r) / R**4
        if self.outer_kind is PlacementKind.UNIFORM:
            return 3.0 * r * r / R**3 + 0.0 * rho
        g3 = rho * rho + r * r - R * R
        return 35.0 * r * r * (104.0 * rho * rho * r * r + 6.0 * g3 * self.g4(rho, r)) / (432.0 * R**7)

    def g2(self, rho, r):
        R = self.r2
        if self.dim is Dimension.PLANAR_2D:
            g4 = self.g4(rho, r)
            acos = self.half_angle(rho, r)
            if self.outer_kind is PlacementKind.UNIFORM:
                return 2.0 * r * acos / (np.pi * R**2)
            return 4.0 * r * (self.g3(rho, r) - g4 * acos) / (np.pi * R**4)
        if self.outer_kind is PlacementKind.UNIFORM:
            return 1.5 * r * r / R**3 * (1.0 - self.g3(rho, r) / (2.0 * rho * r))
        return (35.0 * r * (25.0 * R * R - 13.0 * (r - rho) ** 2) * self.g5(rho, r)
                / (864.0 * R**7 * rho))


def conditional_pdf(dim, outer_kind: PlacementKind, r2: float, rho, r):
    """Density of the distance ``r`` given the inner node at radius ``rho``.

    Broadcasts over ``rho`` and ``r``. ``rho`` must lie in ``[0, r2]``.
    """
    g = GFunctions(dim, outer_kind, r2)
    rho_a = np.asarray(rho, dtype=float)
    r_a = np.asarray(r, dtype=float)
    if np.any(rho_a < 0.0) or np.any(rho_a > g.r2):
        raise DomainError(f"rho must lie in [0, {g.r2}]")
    rho_b, r_b = np.broadcast_arrays(rho_a, r_a)
    out = np.zeros(rho_b.shape)

    degenerate = rho_b == 0.0
    inside = np.where(degenerate, r_b <= g.r2, r_b < g.r2 - rho_b) & (r_b >= 0.0)
    partial = ~degenerate & ~inside & (r_b <= g.r2 + rho_b) & (r_b > 0.0)
    if inside.any():
        out[inside] = g.g1(rho_b[inside], r_b[inside])
    if partial.any():
        out[partial] = g.g2(rho_b[partial], r_b[partial])
    return out if out.ndim else float(out)


def conditional_cdf_check(dim, outer_kind: PlacementKind, r2: float, rho: float,
                          abs_tol: float = 1e-12) -> float:
    """``|integral of conditional_pdf over r - 1|``; the test helper for normalization."""

    def f(r):
        return conditional_pdf(dim, outer_kind, r2, rho, r)

    points = [0.0, r2 + rho] if rho == 0.0 else [0.0, r2 - rho, r2 + rho]
    total = sum(integrate_adaptive(f, lo, hi, abs_tol) for lo, hi in zip(points[:-1], points[1:]))
    return abs(total - 1.0)
