"""Hot loops of the Monte Carlo engine.

Every sample ``i`` owns the Philox4x64-10 stream with key ``(seed, tag)`` and
counter ``(i, block, 0, 0)``, so the value of sample ``i`` never depends on
which other samples were drawn, in what order, or on how many threads.

Each public kernel exists twice: ``*_nb`` (numba, scalar loop) and ``*_np``
(vectorized numpy). They perform the same floating-point operations per
element; results differ at most by libm ulps in ``sin``/``cos``/``cbrt``.
"""

import numpy as np

from ._accel import jitable, njit

U64 = np.uint64
MASK32 = U64(0xFFFFFFFF)
SH32 = U64(32)
SH11 = U64(11)
PHILOX_M0 = U64(0xD2E7470EE14C6C93)
PHILOX_M1 = U64(0xCA5A826395121157)
PHILOX_W0 = U64(0x9E3779B97F4A7C15)
PHILOX_W1 = U64(0xBB67AE8584CAA73B)
TWO_M53 = 2.0 ** -53
TWO_PI = 2.0 * np.pi

NEWTON_TOL = 1e-12
NEWTON_MAXIT = 200

# stream tags keep the two samplers' random numbers disjoint
TAG_PAIR = 0x7061697244697374  # "pairDist"
TAG_WAYPOINT = 0x77617970744D6F62  # "waypMob"


@jitable
def _mulhilo(a, b):
    alo = a & MASK32
    ahi = a >> SH32
    blo = b & MASK32
    bhi = b >> SH32
    ll = alo * blo
    hl = ahi * blo
    lh = alo * bhi
    hh = ahi * bhi
    cross = (ll >> SH32) + (hl & MASK32) + lh
    hi = hh + (hl >> SH32) + (cross >> SH32)
    return hi, a * b


@jitable
def _philox(c0, c1, c2, c3, k0, k1):
    for rnd in range(10):
        if rnd > 0:
            k0 = k0 + PHILOX_W0
            k1 = k1 + PHILOX_W1
        hi0, lo0 = _mulhilo(PHILOX_M0, c0)
        hi1, lo1 = _mulhilo(PHILOX_M1, c2)
        c0, c1, c2, c3 = hi1 ^ c1 ^ k0, lo1, hi0 ^ c3 ^ k1, lo0
    return c0, c1, c2, c3


@jitable
def _to_unit(x):
    return (x >> SH11) * TWO_M53


@jitable
def _horner(coefs, x):
    acc = coefs[coefs.shape[0] - 1] * (x * 0.0 + 1.0)
    for k in range(coefs.shape[0] - 2, -1, -1):
        acc = acc * x + coefs[k]
    return acc


def philox_block(counter, key):
    """One Philox4x64-10 block for a 4-word counter and 2-word key (numpy)."""
    c = [np.atleast_1d(np.asarray(w, dtype=U64)) for w in counter]
    k = [np.atleast_1d(np.asarray(w, dtype=U64)) for w in key]
    with np.errstate(over="ignore"):
        out = _philox(c[0], c[1], c[2], c[3], k[0], k[1])
    return np.stack(np.broadcast_arrays(*out), axis=-1)


# ---------------------------------------------------------------------------
# inverse CDF of a polynomial CDF on [0, 1]


@njit
def _inverse_cdf_nb(cdf, dcdf, dim, u):
    x = np.sqrt(u) if dim == 2 else np.cbrt(u)
    lo = 0.0
    hi = 1.0
    for _ in range(NEWTON_MAXIT):
        f = _horner(cdf, x) - u
        if f == 0.0:
            break
        if f < 0.0:
            lo = x
        else:
            hi = x
        d = _horner(dcdf, x)
        xn = 0.5 * (lo + hi)
        if d > 0.0:
            xt = x - f / d
            # closed bracket: a step that rounds back onto x means convergence
            if lo <= xt <= hi:
                xn = xt
        done = abs(xn - x) < NEWTON_TOL
        x = xn
        if done:
            break
    return x


def _inverse_cdf_np(cdf, dcdf, dim, u):
    u = np.asarray(u, dtype=np.float64)
    x = np.sqrt(u) if dim == 2 else np.cbrt(u)
    lo = np.zeros_like(x)
    hi = np.ones_like(x)
    active = np.arange(x.size)
    for _ in range(NEWTON_MAXIT):
        if active.size == 0:
            break
        xa = x[active]
        f = _horner(cdf, xa) - u[active]
        live = f != 0.0
        active, xa, f = active[live], xa[live], f[live]
        neg = f < 0.0
        lo_a = np.where(neg, xa, lo[active])
        hi_a = np.where(neg, hi[active], xa)
        d = _horner(dcdf, xa)
        with np.errstate(divide="ignore", invalid="ignore"):
            xt = xa - f / d
        xn = 0.5 * (lo_a + hi_a)
        take = (d > 0.0) & (lo_a <= xt) & (xt <= hi_a)
        xn = np.where(take, xt, xn)
        lo[active] = lo_a
        hi[active] = hi_a
        x[active] = xn
        active = active[~(np.abs(xn - xa) < NEWTON_TOL)]
    return x


# ---------------------------------------------------------------------------
# pair distances


@njit
def _direction_nb(dim, ua, ub):
    if dim == 2:
        phi = TWO_PI * ua
        return np.cos(phi), np.sin(phi), 0.0
    z = 2.0 * ua - 1.0
    s = np.sqrt(max(0.0, 1.0 - z * z))
    phi = TWO_PI * ub
    return s * np.cos(phi), s * np.sin(phi), z


def _direction_np(dim, ua, ub):
    if dim == 2:
        phi = TWO_PI * ua
        return np.cos(phi), np.sin(phi), np.zeros_like(ua)
    z = 2.0 * ua - 1.0
    s = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    phi = TWO_PI * ub
    return s * np.cos(phi), s * np.sin(phi), z


@njit
def pair_distances_nb(start, count, seed, dim, cdf1, dcdf1, r1, cdf2, dcdf2, r2):
    out = np.empty(count, dtype=np.float64)
    k0 = U64(seed)
    k1 = U64(TAG_PAIR)
    zero = U64(0)
    for j in range(count):
        idx = U64(start + j)
        a0, a1, a2, a3 = _philox(idx, zero, zero, zero, k0, k1)
        b0, b1, b2, b3 = _philox(idx, U64(1), zero, zero, k0, k1)
        rho1 = r1 * _inverse_cdf_nb(cdf1, dcdf1, dim, _to_unit(a0))
        x1, y1, z1 = _direction_nb(dim, _to_unit(a1), _to_unit(a2))
        rho2 = r2 * _inverse_cdf_nb(cdf2, dcdf2, dim, _to_unit(a3))
        x2, y2, z2 = _direction_nb(dim, _to_unit(b0), _to_unit(b1))
        dx = rho1 * x1 - rho2 * x2
        dy = rho1 * y1 - rho2 * y2
        dz = rho1 * z1 - rho2 * z2
        out[j] = np.sqrt(dx * dx + dy * dy + dz * dz)
    return out


def pair_distances_np(start, count, seed, dim, cdf1, dcdf1, r1, cdf2, dcdf2, r2):
    idx = np.arange(start, start + count, dtype=U64)
    zero = np.zeros_like(idx)
    k0 = np.full_like(idx, U64(seed))
    k1 = np.full_like(idx, U64(TAG_PAIR))
    with np.errstate(over="ignore"):
        a0, a1, a2, a3 = _philox(idx, zero, zero, zero, k0, k1)
        b0, b1, b2, b3 = _philox(idx, zero + U64(1), zero, zero, k0, k1)
    rho1 = r1 * _inverse_cdf_np(cdf1, dcdf1, dim, _to_unit(a0))
    x1, y1, z1 = _direction_np(dim, _to_unit(a1), _to_unit(a2))
    rho2 = r2 * _inverse_cdf_np(cdf2, dcdf2, dim, _to_unit(a3))
    x2, y2, z2 = _direction_np(dim, _to_unit(b0), _to_unit(b1))
    dx = rho1 * x1 - rho2 * x2
    dy = rho1 * y1 - rho2 * y2
    dz = rho1 * z1 - rho2 * z2
    return np.sqrt(dx * dx + dy * dy + dz * dz)


# ---------------------------------------------------------------------------
# stationary position of the zero-pause waypoint process
#
# attempt k of sample i uses blocks (2k, 2k+1): two uniform points in the
# ball, an acceptance draw against 2R, and the position along the segment.


@njit
def waypoint_points_nb(start, count, seed, dim, ucdf, udcdf, radius):
    out = np.zeros((count, 3), dtype=np.float64)
    k0 = U64(seed)
    k1 = U64(TAG_WAYPOINT)
    zero = U64(0)
    for j in range(count):
        idx = U64(start + j)
        attempt = 0
        while True:
            a0, a1, a2, a3 = _philox(idx, U64(2 * attempt), zero, zero, k0, k1)
            b0, b1, b2, b3 = _philox(idx, U64(2 * attempt + 1), zero, zero, k0, k1)
            attempt += 1
            ra = radius * _inverse_cdf_nb(ucdf, udcdf, dim, _to_unit(a0))
            xa, ya, za = _direction_nb(dim, _to_unit(a1), _to_unit(a2))
            rb = radius * _inverse_cdf_nb(ucdf, udcdf, dim, _to_unit(a3))
            xb, yb, zb = _direction_nb(dim, _to_unit(b0), _to_unit(b1))
            px, py, pz = ra * xa, ra * ya, ra * za
            dx, dy, dz = rb * xb - px, rb * yb - py, rb * zb - pz
            length = np.sqrt(dx * dx + dy * dy + dz * dz)
            if _to_unit(b2) * (2.0 * radius) < length:
                t = _to_unit(b3)
                out[j, 0] = px + t * dx
                out[j, 1] = py + t * dy
                out[j, 2] = pz + t * dz
                break
    return out[:, :dim]


def waypoint_points_np(start, count, seed, dim, ucdf, udcdf, radius):
    out = np.zeros((count, 3), dtype=np.float64)
    pending = np.arange(count)
    attempt = 0
    while pending.size:
        idx = (pending + start).astype(U64)
        zero = np.zeros_like(idx)
        k0 = np.full_like(idx, U64(seed))
        k1 = np.full_like(idx, U64(TAG_WAYPOINT))
        with np.errstate(over="ignore"):
            a0, a1, a2, a3 = _philox(idx, zero + U64(2 * attempt), zero, zero, k0, k1)
            b0, b1, b2, b3 = _philox(idx, zero + U64(2 * attempt + 1), zero, zero, k0, k1)
        attempt += 1
        ra = radius * _inverse_cdf_np(ucdf, udcdf, dim, _to_unit(a0))
        xa, ya, za = _direction_np(dim, _to_unit(a1), _to_unit(a2))
        rb = radius * _inverse_cdf_np(ucdf, udcdf, dim, _to_unit(a3))
        xb, yb, zb = _direction_np(dim, _to_unit(b0), _to_unit(b1))
        px, py, pz = ra * xa, ra * ya, ra * za
        dx, dy, dz = rb * xb - px, rb * yb - py, rb * zb - pz
        length = np.sqrt(dx * dx + dy * dy + dz * dz)
        acc = _to_unit(b2) * (2.0 * radius) < length
        t = _to_unit(b3)[acc]
        rows = pending[acc]
        out[rows, 0] = px[acc] + t * dx[acc]
        out[rows, 1] = py[acc] + t * dy[acc]
        out[rows, 2] = pz[acc] + t * dz[acc]
        pending = pending[~acc]
    return out[:, :dim]


@njit
def point_samples_nb(start, count, seed, tag, dim, cdf, dcdf, radius):
    out = np.zeros((count, 3), dtype=np.float64)
    k0 = U64(seed)
    k1 = U64(tag)
    zero = U64(0)
    for j in range(count):
        a0, a1, a2, a3 = _philox(U64(start + j), zero, zero, zero, k0, k1)
        rho = radius * _inverse_cdf_nb(cdf, dcdf, dim, _to_unit(a0))
        x, y, z = _direction_nb(dim, _to_unit(a1), _to_unit(a2))
        out[j, 0] = rho * x
        out[j, 1] = rho * y
        out[j, 2] = rho * z
    return out[:, :dim]


def point_samples_np(start, count, seed, tag, dim, cdf, dcdf, radius):
    idx = np.arange(start, start + count, dtype=U64)
    zero = np.zeros_like(idx)
    with np.errstate(over="ignore"):
        a0, a1, a2, a3 = _philox(
            idx, zero, zero, zero, np.full_like(idx, U64(seed)), np.full_like(idx, U64(tag))
        )
    rho = radius * _inverse_cdf_np(cdf, dcdf, dim, _to_unit(a0))
    x, y, z = _direction_np(dim, _to_unit(a1), _to_unit(a2))
    return np.stack([rho * x, rho * y, rho * z], axis=1)[:, :dim]


KERNELS = {
    "numba": {
        "pair": pair_distances_nb,
        "waypoint": waypoint_points_nb,
        "points": point_samples_nb,
        "inverse_cdf": _inverse_cdf_nb,
    },
    "numpy": {
        "pair": pair_distances_np,
        "waypoint": waypoint_points_np,
        "points": point_samples_np,
        "inverse_cdf": _inverse_cdf_np,
    },
}
