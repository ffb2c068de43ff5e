"""Exact piecewise densities of the internodal distance.

Coefficient constructors below use only integer literals and ``+ - * /`` on the
radii, so calling them with :class:`fractions.Fraction` radii yields exact
rational coefficients. Floats are used only for the final evaluation.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .core import (
    ConfigError,
    Dimension,
    NetworkConfig,
    Scenario,
    check_radius,
    validate_config,
)

S1, S2, S3, S4 = Scenario.S1, Scenario.S2, Scenario.S3, Scenario.S4


class InvalidConfig(ConfigError):
    pass


def _as_array(r):
    return np.asarray(r, dtype=float)


def _finish(out):
    return out if out.ndim else float(out)


def _half_angle(s2):
    """``acos(c)`` given ``s2 = (1 - c) / 2``."""
    return 2.0 * np.arcsin(np.sqrt(np.clip(s2, 0.0, 1.0)))


def _check_general(r1, r2):
    r1 = check_radius(r1, "r1")
    r2 = check_radius(r2, "r2")
    if not r1 < r2:
        raise InvalidConfig(f"general formulas need r1 < r2, got r1={r1}, r2={r2}")
    return r1, r2


# ---------------------------------------------------------------------------
# 2D, r1 < r2


class Pdf2DGeneralCoeffs:
    """Polynomials ``q1..q4`` and the arccos arguments ``k1, k2`` of the 2D density.

    On ``[R2-R1, R1+R2]``::

        f(r) = r / (2 pi R1^4 R2^2) * (q2 acos(k1/(2 r R1)) + q3 acos(k2/(2 r R2)) + q4)

    and ``f(r) = 2 r q1 / R2^2`` below ``R2 - R1``.
    """

    def __init__(self, scenario: Scenario, r1, r2):
        self.scenario = Scenario.parse(scenario)
        self.r1 = r1
        self.r2 = r2

    def k1(self, r):
        return r * r + self.r1**2 - self.r2**2

    def k2(self, r):
        return r * r - self.r1**2 + self.r2**2

    def root(self, r):
        """``sqrt((r^2 - (R2-R1)^2) ((R2+R1)^2 - r^2))``, from factored differences."""
        R1, R2 = self.r1, self.r2
        prod = (r - R2 + R1) * (r + R2 - R1) * (R2 + R1 - r) * (R2 + R1 + r)
        return np.sqrt(np.maximum(prod, 0.0))

    def angle1(self, r):
        """``acos(k1 / (2 r R1))`` as ``2 asin(sqrt((1 - c) / 2))``, accurate near ``R1 + R2``."""
        R1, R2 = self.r1, self.r2
        return _half_angle((R1 + R2 - r) * (R2 - R1 + r) / (4.0 * r * R1))

    def angle2(self, r):
        """``acos(k2 / (2 r R2))``, same construction."""
        R1, R2 = self.r1, self.r2
        return _half_angle((R1 + R2 - r) * (R1 - R2 + r) / (4.0 * r * R2))

    def q1(self, r):
        R1, R2 = self.r1, self.r2
        s = self.scenario
        if s in (S1, S4):
            return 1 + 0 * r
        if s is S2:
            return -(2 * r * r + R1**2 - 2 * R2**2) / R2**2
        return -2 * (3 * r * r + R1**2 - 3 * R2**2) / (3 * R2**2)

    def q2(self, r):
        R1, R2 = self.r1, self.r2
        s = self.scenario
        if s in (S1, S4):
            return 4 * R1**4 + 0 * r
        if s is S2:
            return -4 * R1**4 * (2 * r * r + R1**2 - 2 * R2**2) / R2**2
        return -24 * R1**4 * (3 * r * r + R1**2 - 3 * R2**2) / (9 * R2**2)

    def q3(self, r):
        R1, R2 = self.r1, self.r2
        s = self.scenario
        if s is S1:
            return 4 * R2**2 * (2 * R1**2 - 2 * r * r - R2**2)
        if s in (S2, S4):
            return 4 * R1**2 * R2**2 + 0 * r
        return -24 * R2**2 * (3 * r * r + R2**2 - 3 * R1**2) / 9

    def q4(self, r):
        R1, R2 = self.r1, self.r2
        s = self.scenario
        if s is S1:
            return (r * r - 3 * R1**2 + 5 * R2**2) * self.root(r)
        if s is S2:
            return R1**2 * (r * r + 5 * R1**2 - 3 * R2**2) * self.root(r) / R2**2
        if s is S3:
            poly = (-r**4 + 8 * r * r * (R1**2 + R2**2) + 17 * (R1**4 + R2**4)
                    - 22 * R1**2 * R2**2)
            return 2 * self.root(r) * poly / (9 * R2**2)
        # sqrt(1 - c_i^2) = root / (2 r R_i) and k1 + k2 = 2 r^2
        return -2 * R1**2 * self.root(r)


def _inner_2d(q: Pdf2DGeneralCoeffs, r):
    return 2.0 * r * q.q1(r) / q.r2**2


def _outer_2d(q: Pdf2DGeneralCoeffs, r):
    r1, r2 = q.r1, q.r2
    a1, a2 = q.angle1(r), q.angle2(r)
    return r / (2.0 * math.pi * r1**4 * r2**2) * (q.q2(r) * a1 + q.q3(r) * a2 + q.q4(r))


def pdf_2d_general(scenario: Scenario, r1: float, r2: float, r):
    r1, r2 = _check_general(r1, r2)
    q = Pdf2DGeneralCoeffs(scenario, r1, r2)
    r = _as_array(r)
    out = np.zeros(r.shape)
    lo, hi = r2 - r1, r1 + r2
    inner = (r >= 0.0) & (r < lo)
    if inner.any():
        out[inner] = _inner_2d(q, r[inner])
    outer = (r >= lo) & (r < hi)
    if outer.any():
        out[outer] = _outer_2d(q, r[outer])
    return _finish(out)


# ---------------------------------------------------------------------------
# 2D, r1 == r2


class Pdf2DEqualCoeffs:
    """``s1, s2`` in ``f(r) = 2r (s1 acos(r/2R) + s2 sqrt(1 - (r/2R)^2)) / R^4``."""

    def __init__(self, scenario: Scenario, radius):
        self.scenario = Scenario.parse(scenario)
        self.radius = radius

    def s1(self, r):
        R = self.radius
        s = self.scenario
        if s in (S1, S2):
            return 2 * (R * R - r * r) / math.pi
        if s is S3:
            return 4 * (2 * R * R - 3 * r * r) / (3 * math.pi)
        return 2 * R * R / math.pi + 0 * r

    def s2(self, r):
        R = self.radius
        s = self.scenario
        if s in (S1, S2):
            return r * (r * r + 2 * R * R) / (2 * math.pi * R)
        if s is S3:
            return (-r**5 + 16 * r**3 * R * R + 12 * r * R**4) / (9 * math.pi * R**3)
        return -r * R / math.pi


def pdf_2d_equal(scenario: Scenario, radius: float, r):
    radius = check_radius(radius)
    s = Pdf2DEqualCoeffs(scenario, radius)
    r = _as_array(r)
    out = np.zeros(r.shape)
    mask = (r >= 0.0) & (r < 2.0 * radius)
    if mask.any():
        rm = r[mask]
        two_r = 2.0 * radius
        # acos(x) and sqrt(1 - x^2) at x = r / 2R, without forming 1 - x
        angle = _half_angle((two_r - rm) / (2.0 * two_r))
        sine = np.sqrt((two_r - rm) * (two_r + rm)) / two_r
        out[mask] = 2.0 * rm * (s.s1(rm) * angle + s.s2(rm) * sine) / radius**4
    return _finish(out)


# ---------------------------------------------------------------------------
# 3D, r1 < r2


class Pdf3DGeneralCoeffs:
    """``a2, a4, a6`` (inner branch) and ``b1..b13`` (outer branch) of the 3D density.

    ``b8 = b10 = b12 = 0`` for every scenario.
    """

    def __init__(self, scenario: Scenario, r1, r2):
        self.scenario = Scenario.parse(scenario)
        self.r1 = r1
        self.r2 = r2

    def a(self) -> list:
        """``[a0, a1, ..., a6]``; odd entries and ``a0`` are zero."""
        R1, R2 = self.r1, self.r2
        s = self.scenario
        zero = 0 * R1
        if s in (S1, S4):
            a2, a4, a6 = 3 / R2**3, zero, zero
        elif s is S2:
            a2 = (65 * R1**4 - 238 * R1**2 * R2**2 + 245 * R2**4) / (24 * R2**7)
            a4 = 35 * (13 * R1**2 - 17 * R2**2) / (36 * R2**7)
            a6 = 455 / (72 * R2**7)
        else:
            a2 = 35 * (2275 * R1**4 - 11594 * R1**2 * R2**2 + 18711 * R2**4) / (64152 * R2**7)
            a4 = 35 * (2015 * R1**2 - 4131 * R2**2) / (8748 * R2**7)
            a6 = 455 / (72 * R2**7)
        return [zero, zero, a2, zero, a4, zero, a6]

    def b(self) -> list:
        """``[b0, b1, ..., b13]`` with ``b0 = 0``."""
        s = self.scenario
        if s is S1:
            b = _b_rwp_uniform(self.r1, self.r2)
        elif s is S2:
            b = _b_uniform_rwp(self.r1, self.r2)
        elif s is S3:
            b = _b_rwp_rwp(self.r1, self.r2)
        else:
            b = _b_uniform_uniform(self.r1, self.r2)
        zero = 0 * self.r1
        coeffs = [zero] * 14
        for n, value in b.items():
            coeffs[n] = value
        return coeffs


def _b_rwp_uniform(R1, R2):
    d = R1**7 * R2**3
    return {
        1: 35 * (29 * R1**2 - 13 * R2**2) * (R2**2 - R1**2) ** 3 / (2304 * d),
        2: (72 * R1**7 + 245 * R1**4 * R2**3 - 238 * R1**2 * R2**5 + 65 * R2**7) / (48 * d),
        3: 35 * (R2**2 - R1**2) * (25 * R1**4 + 88 * R1**2 * R2**2 - 65 * R2**4) / (576 * d),
        4: 35 * (13 * R2**2 - 17 * R1**2) / (72 * R1**7),
        5: 35 * (7 * R1**4 + 34 * R1**2 * R2**2 - 65 * R2**4) / (384 * d),
        6: 455 / (144 * R1**7),
        7: -7 * (17 * R1**2 + 65 * R2**2) / (576 * d),
        9: 65 / (2304 * d),
    }


def _b_uniform_rwp(R1, R2):
    d = R2**7 * R1**3
    return {
        1: 35 * (13 * R1**2 - 29 * R2**2) * (R2**2 - R1**2) ** 3 / (2304 * d),
        2: (72 * R2**7 + 245 * R2**4 * R1**3 - 238 * R2**2 * R1**5 + 65 * R1**7) / (48 * d),
        3: 35 * (R2**2 - R1**2) * (65 * R1**4 - 25 * R2**4 - 88 * R2**2 * R1**2) / (576 * d),
        4: 35 * (13 * R1**2 - 17 * R2**2) / (72 * R2**7),
        5: 35 * (7 * R2**4 + 34 * R2**2 * R1**2 - 65 * R1**4) / (384 * d),
        6: 455 / (144 * R2**7),
        7: -7 * (17 * R2**2 + 65 * R1**2) / (576 * d),
        9: 65 / (2304 * d),
    }


def _b_uniform_uniform(R1, R2):
    d = R1**3 * R2**3
    return {
        1: -9 * (R2**2 - R1**2) ** 2 / (16 * d),
        2: 3 * (R1**3 + R2**3) / (2 * d),
        3: -9 * (R1**2 + R2**2) / (8 * d),
        5: 3 / (16 * d),
    }


def _b_rwp_rwp(R1, R2):
    d = R1**7 * R2**7
    p2, p4 = R1**2 + R2**2, R1**4 + R2**4
    return {
        1: 245 * (R2**2 - R1**2) ** 4 * (1442 * R1**2 * R2**2 - 481 * p4) / (1492992 * d),
        2: 35 * (2275 * (R1**11 + R2**11) - 11594 * (R1**9 * R2**2 + R1**2 * R2**9)
                 + 18711 * (R1**7 * R2**4 + R1**4 * R2**7)) / (128304 * d),
        3: 1225 * (R2**2 - R1**2) ** 2 * p2 * (350 * R1**2 * R2**2 - 143 * p4) / (82944 * d),
        4: 35 * (2015 * (R1**9 + R2**9) - 4131 * (R1**7 * R2**2 + R1**2 * R2**7)) / (17496 * d),
        5: 1225 * (1700 * (R1**6 * R2**2 + R1**2 * R2**6) + 882 * R1**4 * R2**4
                   - 1885 * (R1**8 + R2**8)) / (497664 * d),
        6: 455 * (R1**7 + R2**7) / (144 * d),
        7: 245 * p2 * (554 * R1**2 * R2**2 - 1625 * p4) / (373248 * d),
        9: 35 * (455 * p4 + 578 * R1**2 * R2**2) / (165888 * d),
        11: -7735 * p2 / (746496 * d),
        13: 29575 / (49268736 * d),
    }


def _horner(coeffs, x):
    acc = np.zeros_like(x)
    for c in reversed(coeffs):
        acc = acc * x + float(c)
    return acc


def taylor_shift(coeffs, c) -> list:
    """Ascending coefficients of ``p(t + c)`` given those of ``p``; exact for Fractions."""
    out = list(coeffs)
    n = len(out)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] = out[j] + c * out[j + 1]
    return out


@lru_cache(maxsize=512)
def _outer_3d_centered(scenario: Scenario, r1: float, r2: float) -> tuple:
    """Outer-branch coefficients in ``t = r - r2``, rounded once from exact values.

    In powers of ``r`` the outer branch cancels badly on its narrow window
    ``[r2 - r1, r2 + r1]`` when ``r1 << r2``; centered, it does not.
    """
    exact = Pdf3DGeneralCoeffs(scenario, Fraction(r1), Fraction(r2)).b()
    return tuple(float(c) for c in taylor_shift(exact, Fraction(r2)))


def _outer_3d(scenario, r1, r2, r):
    return _horner(_outer_3d_centered(Scenario.parse(scenario), r1, r2), r - r2)


def pdf_3d_general(scenario: Scenario, r1: float, r2: float, r):
    r1, r2 = _check_general(r1, r2)
    co = Pdf3DGeneralCoeffs(scenario, r1, r2)
    r = _as_array(r)
    out = np.zeros(r.shape)
    lo, hi = r2 - r1, r1 + r2
    inner = (r >= 0.0) & (r < lo)
    if inner.any():
        out[inner] = _horner(co.a(), r[inner])
    outer = (r >= lo) & (r < hi)
    if outer.any():
        out[outer] = _outer_3d(scenario, r1, r2, r[outer])
    return _finish(out)


# ---------------------------------------------------------------------------
# 3D, r1 == r2


class Pdf3DEqualCoeffs:
    """``c0..c13`` of ``f(r) = sum c_n r^n`` on ``[0, 2R)``."""

    def __init__(self, scenario: Scenario, radius):
        self.scenario = Scenario.parse(scenario)
        self.radius = radius

    def c(self) -> list:
        R = self.radius
        s = self.scenario
        zero = 0 * R
        coeffs = [zero] * 14
        if s in (S1, S2):
            table = {2: 3 / R**3, 4: -35 / (18 * R**5), 5: -35 / (16 * R**6),
                     6: 455 / (144 * R**7), 7: -287 / (288 * R**8), 9: 65 / (2304 * R**10)}
        elif s is S3:
            table = {2: 41090 / (8019 * R**3), 4: -18515 / (2187 * R**5),
                     5: 1225 / (972 * R**6), 6: 455 / (72 * R**7),
                     7: -82565 / (23328 * R**8), 9: 1085 / (3456 * R**10),
                     11: -7735 / (373248 * R**12), 13: 29575 / (49268736 * R**14)}
        else:
            table = {2: 3 / R**3, 3: -9 / (4 * R**4), 5: 3 / (16 * R**6)}
        for n, value in table.items():
            coeffs[n] = value
        return coeffs


def pdf_3d_equal(scenario: Scenario, radius: float, r):
    radius = check_radius(radius)
    co = Pdf3DEqualCoeffs(scenario, radius)
    r = _as_array(r)
    out = np.zeros(r.shape)
    mask = (r >= 0.0) & (r < 2.0 * radius)
    if mask.any():
        out[mask] = _horner(co.c(), r[mask])
    return _finish(out)


# ---------------------------------------------------------------------------


def pdf(cfg: NetworkConfig, r):
    """Density of the internodal distance; zero outside ``[0, r1 + r2)``."""
    cfg = validate_config(cfg)
    if cfg.dim is Dimension.PLANAR_2D:
        if cfg.equal_radius:
            return pdf_2d_equal(cfg.scenario, cfg.r1, r)
        return pdf_2d_general(cfg.scenario, cfg.r1, cfg.r2, r)
    if cfg.equal_radius:
        return pdf_3d_equal(cfg.scenario, cfg.r1, r)
    return pdf_3d_general(cfg.scenario, cfg.r1, cfg.r2, r)


def curve_grid(cfg: NetworkConfig, n_points: int) -> np.ndarray:
    """Uniform grid on ``[0, r1 + r2]`` with the breakpoints merged in."""
    if n_points < 2:
        raise ValueError(f"n_points must be >= 2, got {n_points}")
    grid = np.linspace(0.0, cfg.r_plus, int(n_points))
    return np.union1d(grid, np.array(cfg.breakpoints, dtype=float))


def branch_values(cfg: NetworkConfig, r) -> tuple:
    """Inner- and outer-branch formulas at ``r`` with no support masking.

    For ``r1 < r2`` only. Used to check continuity at ``r2 - r1`` and the
    vanishing of the outer formula at ``r1 + r2``.
    """
    cfg = validate_config(cfg)
    if cfg.equal_radius:
        raise InvalidConfig("branch_values needs r1 < r2")
    r = _as_array(r)
    if cfg.dim is Dimension.PLANAR_2D:
        q = Pdf2DGeneralCoeffs(cfg.scenario, cfg.r1, cfg.r2)
        inner, outer = _inner_2d(q, r), _outer_2d(q, r)
    else:
        co = Pdf3DGeneralCoeffs(cfg.scenario, cfg.r1, cfg.r2)
        inner, outer = _horner(co.a(), r), _outer_3d(cfg.scenario, cfg.r1, cfg.r2, r)
    return _finish(np.asarray(inner, dtype=float)), _finish(np.asarray(outer, dtype=float))
