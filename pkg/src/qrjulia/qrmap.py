"""The explicit degree-2 quasiregular map whose bounded orbits form a Cantor set.

Outside D(1, 2delta) and D(-1, 2delta) the map is lambda (z^2 - 1); on the two
closed annuli delta <= |z -+ 1| <= 2delta it interpolates radially to
+-2 lambda (z -+ 1).  Inside D(+-1, delta) the plane is cut into the regions
X(u) (affine pieces) and Y(u) (radial stretches w -> w |w|^(1/K - 1)), and
f maps X(u) onto X(tau(u)) and Y(u) onto Y(tau(u)).

Every point inside D(+-1, delta) is handled as a ``LocalPoint``; in those
coordinates both pieces are exact:  X sends the offset w to u1 w and Y sends it
to u1 |w|^(1/K - 1) w, one level up.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .coding import (
    LocalPoint,
    ScaleTable,
    difference,
    shift_tau,
    tau_preimages,
    to_complex,
    DEFAULT_MAX_DEPTH,
)

log = logging.getLogger(__name__)

ZQUAD = "ZQuad"
ZANN_PLUS = "ZAnnulusPlus"
ZANN_MINUS = "ZAnnulusMinus"
XREG = "X"
YREG = "Y"
CANTOR = "CantorApprox"
Z_TAGS = (ZQUAD, ZANN_PLUS, ZANN_MINUS)

BOUNDARY_TOL = 1e-12
NEWTON_MAX_ITER = 50
NEWTON_TOL = 1e-12
VERIFY_TOL = 1e-9


class ParameterError(ValueError):
    pass


class BoundaryPointError(ValueError):
    """The point sits on a seam, where one-sided derivatives differ."""


class PreimageError(RuntimeError):
    pass


@dataclass(frozen=True)
class MapParams:
    K: float
    delta: float
    depth_cutoff: int
    scales: ScaleTable = field(repr=False, compare=False)

    @property
    def lam(self) -> float:
        return 2.0 * math.e / self.delta

    @property
    def alpha(self) -> float:
        return self.delta / 4.0

    @property
    def t0(self) -> float:
        return 4.0 * math.e

    @property
    def s0(self) -> float:
        return 4.0

    @property
    def holder_exponent(self) -> float:
        return 1.0 / self.K


def max_delta(K: float) -> float:
    """Largest delta for which the annulus dilatation stays within K."""
    return min(1.0 / 14.0, (K - 1.0) / (8.0 * K - 6.0))


def params_new(K: float, delta: float | None = None, depth_cutoff: int = 24,
               max_depth: int = DEFAULT_MAX_DEPTH) -> MapParams:
    K = float(K)
    if not 1.0 < K < 2.0:
        raise ParameterError(f"K must lie in (1, 2), got {K}")
    if delta is None:
        delta = 0.9 * max_delta(K)
    delta = float(delta)
    if not 0.0 < delta < 1.0 / 14.0:
        raise ParameterError(f"delta must lie in (0, 1/14), got {delta}")
    ceiling = (1.0 - 6.0 * delta) / (1.0 - 8.0 * delta)
    if ceiling > K:
        raise ParameterError(
            f"annulus dilatation (1-6delta)/(1-8delta) = {ceiling:.6g} exceeds K = {K}; "
            f"need delta <= (K-1)/(8K-6) = {(K - 1.0) / (8.0 * K - 6.0):.6g}")
    if depth_cutoff < 1:
        raise ParameterError(f"depth_cutoff must be >= 1, got {depth_cutoff}")
    if max_depth < depth_cutoff + 2:
        raise ParameterError("scale table must extend at least two levels past depth_cutoff")
    return MapParams(K, delta, int(depth_cutoff), ScaleTable(K, delta, max_depth))


@dataclass(frozen=True)
class Region:
    tag: str
    word: tuple = ()

    @property
    def level(self) -> int:
        return len(self.word)

    @property
    def in_z(self) -> bool:
        return self.tag in Z_TAGS


def _exp(x: float) -> float:
    return math.exp(x) if x < 709.0 else math.inf


# -- location --------------------------------------------------------------

def _ascend(q: LocalPoint, p: MapParams):
    """Move q up until it lies inside D(a_u, t_n); may return an absolute point."""
    sc = p.scales
    while q.log_rho >= sc.log_y_outer[q.level]:
        n = q.level
        W = q.word[-1] * 0.25 + _exp(q.log_rho - sc.step_s[n]) * q.direction
        if n == 1:
            return p.s0 * W
        q = LocalPoint.from_offset(q.word[:-1], W)
    return q


def _descend(q: LocalPoint, p: MapParams):
    sc = p.scales
    u, log_rho, d = q.word, q.log_rho, q.direction
    alpha = p.alpha
    while True:
        if log_rho >= 0.0:
            return Region(YREG, u), LocalPoint(u, log_rho, d)
        w = math.exp(log_rho) * d
        child, diff = 0, 0j
        for eps in (1, -1):
            diff = w - 0.25 * eps
            if abs(diff) < alpha:
                child = eps
                break
        if not child:
            return Region(XREG, u), LocalPoint(u, log_rho, d)
        if len(u) >= p.depth_cutoff:
            return Region(CANTOR, u), LocalPoint(u, log_rho, d)
        u = u + (child,)
        if diff == 0:
            log_rho, d = -math.inf, 1 + 0j
        else:
            log_rho, d = math.log(abs(diff)) + sc.step_s[len(u)], diff / abs(diff)


def locate(z, p: MapParams):
    """Region of z together with z in that region's coordinates.

    Z regions come back with an absolute complex coordinate; X, Y and
    CantorApprox with a ``LocalPoint`` on the region's word.
    """
    if isinstance(z, LocalPoint):
        if z.level == 0:
            raise ValueError("LocalPoint needs a non-empty word")
        q = _ascend(z, p)
        if isinstance(q, LocalPoint):
            return _descend(q, p)
        z = q
    z = complex(z)
    if cmath.isnan(z):
        raise ValueError("cannot classify NaN")
    delta = p.delta
    dp, dm = abs(z - 1.0), abs(z + 1.0)
    if dp >= 2 * delta and dm >= 2 * delta:
        return Region(ZQUAD), z
    if delta <= dp <= 2 * delta:
        return Region(ZANN_PLUS), z
    if delta <= dm <= 2 * delta:
        return Region(ZANN_MINUS), z
    eps = 1 if dp < delta else -1
    q = LocalPoint.from_offset((eps,), 0j)
    diff = z - eps
    if diff != 0:
        q = LocalPoint((eps,), math.log(abs(diff)) - p.scales.log_s[1], diff / abs(diff))
    return _descend(q, p)


def classify(z, p: MapParams) -> Region:
    return locate(z, p)[0]


# -- the pieces --------------------------------------------------------------

def _quad_value(z: complex, p: MapParams) -> complex:
    return p.lam * (z * z - 1.0)


def _annulus_value(z: complex, sign: int, p: MapParams) -> complex:
    zeta = z - sign
    rho = abs(zeta)
    return p.lam * (zeta * zeta * rho / p.delta + sign * 2.0 * zeta - zeta * zeta)


def _apply_piece(tag: str, q: LocalPoint, p: MapParams):
    """The affine X piece (also used on CantorApprox) or the radial Y piece, in local coordinates."""
    u = q.word
    u1 = u[0]
    log_rho = q.log_rho / p.K if tag == YREG else q.log_rho
    d = u1 * q.direction
    if len(u) == 1:
        return p.s0 * (0j if log_rho == -math.inf else _exp(log_rho) * d)
    return LocalPoint(shift_tau(u), log_rho, d)


def _value_in(region: Region, loc, p: MapParams):
    if region.tag == ZQUAD:
        return _quad_value(loc, p)
    if region.tag == ZANN_PLUS:
        return _annulus_value(loc, 1, p)
    if region.tag == ZANN_MINUS:
        return _annulus_value(loc, -1, p)
    return _apply_piece(region.tag, loc, p)


def evaluate_local(z, p: MapParams):
    """f(z), returned as an absolute complex for images at level 0 or in Z and
    as a ``LocalPoint`` otherwise."""
    region, loc = locate(z, p)
    return _value_in(region, loc, p)


def evaluate(z, p: MapParams):
    """f(z).  Absolute in, absolute out; local points stay local."""
    out = evaluate_local(z, p)
    if isinstance(z, LocalPoint):
        return out
    return to_complex(out, p.scales)


def evaluate_z_array(z: np.ndarray, p: MapParams) -> np.ndarray:
    """Vectorized f on Z; entries inside D(+-1, delta) come back as NaN."""
    z = np.asarray(z, dtype=complex)
    lam, delta = p.lam, p.delta
    out = np.full(z.shape, np.nan + 0j)
    dp, dm = np.abs(z - 1.0), np.abs(z + 1.0)
    quad = (dp >= 2 * delta) & (dm >= 2 * delta)
    out[quad] = lam * (z[quad] ** 2 - 1.0)
    for sign, dist in ((1, dp), (-1, dm)):
        m = ~quad & (dist >= delta) & (dist <= 2 * delta)
        zeta = z[m] - sign
        out[m] = lam * (zeta ** 2 * dist[m] / delta + sign * 2.0 * zeta - zeta ** 2)
    return out


# -- Beltrami coefficient ----------------------------------------------------

def _near(a: float, b: float, scale: float) -> bool:
    return abs(a - b) <= BOUNDARY_TOL * scale


def _check_boundary(region: Region, loc, p: MapParams):
    delta = p.delta
    if region.in_z:
        for sign in (1, -1):
            rho = abs(loc - sign)
            if _near(rho, delta, delta) or _near(rho, 2 * delta, delta):
                raise BoundaryPointError(f"{loc} lies on the circle |z - {sign}| = {rho:.6g}")
        return
    if region.tag == CANTOR:
        raise BoundaryPointError("point is unresolved below the depth cutoff")
    n = region.level
    if _near(loc.log_rho, 0.0, 1.0):
        raise BoundaryPointError(f"point lies on |z - a_u| = s_{n}")
    outer = p.scales.log_y_outer[n]
    if _near(loc.log_rho, outer, max(1.0, outer)):
        raise BoundaryPointError(f"point lies on |z - a_u| = t_{n}")
    if region.tag == XREG:
        w = loc.offset
        for eps in (1, -1):
            if _near(abs(w - 0.25 * eps), p.alpha, p.alpha):
                raise BoundaryPointError(f"point lies on a child circle of level {n + 1}")


def _annulus_derivatives(z: complex, sign: int, p: MapParams):
    zeta = z - sign
    rho = abs(zeta)
    lam, delta = p.lam, p.delta
    fz = lam * (2.5 * zeta * rho / delta + 2.0 * sign - 2.0 * zeta)
    fzbar = lam * zeta ** 3 / (2.0 * delta * rho)
    return fz, fzbar


def beltrami(z, p: MapParams) -> complex:
    """mu = f_zbar / f_z from closed-form Wirtinger derivatives."""
    region, loc = locate(z, p)
    _check_boundary(region, loc, p)
    if region.tag == ZQUAD or region.tag == XREG:
        return 0j
    if region.tag in (ZANN_PLUS, ZANN_MINUS):
        fz, fzbar = _annulus_derivatives(loc, 1 if region.tag == ZANN_PLUS else -1, p)
        return fzbar / fz
    # w -> w |w|^(1/K - 1): mu = (1 - K)/(1 + K) * w / conj(w)
    K = p.K
    return (1.0 - K) / (1.0 + K) * loc.direction ** 2


def beltrami_z_array(z: np.ndarray, p: MapParams) -> np.ndarray:
    """Vectorized closed-form mu on Z (NaN inside D(+-1, delta))."""
    z = np.asarray(z, dtype=complex)
    lam, delta = p.lam, p.delta
    out = np.full(z.shape, np.nan + 0j)
    dp, dm = np.abs(z - 1.0), np.abs(z + 1.0)
    quad = (dp >= 2 * delta) & (dm >= 2 * delta)
    out[quad] = 0
    for sign, dist in ((1, dp), (-1, dm)):
        m = ~quad & (dist >= delta) & (dist <= 2 * delta)
        zeta, rho = z[m] - sign, dist[m]
        fz = lam * (2.5 * zeta * rho / delta + 2.0 * sign - 2.0 * zeta)
        fzbar = lam * zeta ** 3 / (2.0 * delta * rho)
        out[m] = fzbar / fz
    return out


def beltrami_fd(z, p: MapParams, rel_step: float = 1e-6) -> complex:
    """mu from central finite differences of ``evaluate``.

    Absolute points are differenced directly; local points are differenced
    in their offset coordinate, which leaves mu unchanged because the
    coordinate change is a real dilation plus translation.
    """
    region, loc = locate(z, p)
    if region.in_z:
        h = rel_step * p.delta

        def F(x):
            return complex(evaluate(x, p))
        base = loc
    else:
        u = region.word
        base = loc.offset
        h = rel_step * max(1.0, abs(base))

        def F(x):
            out = evaluate_local(LocalPoint.from_offset(u, x), p)
            return out.offset if isinstance(out, LocalPoint) else complex(out)
    fx = (F(base + h) - F(base - h)) / (2 * h)
    fy = (F(base + 1j * h) - F(base - 1j * h)) / (2 * h)
    fz = 0.5 * (fx - 1j * fy)
    fzbar = 0.5 * (fx + 1j * fy)
    return fzbar / fz


# -- preimages ---------------------------------------------------------------

def _newton_annulus(w: complex, sign: int, seeds, p: MapParams):
    """Solve the annulus formula = w; returns (roots, any_converged)."""
    lam, delta = p.lam, p.delta
    tol = NEWTON_TOL * max(1.0, abs(w))
    roots, converged = [], False
    for zeta in seeds:
        for _ in range(NEWTON_MAX_ITER):
            rho = abs(zeta) or 1e-300
            r = lam * (zeta * zeta * rho / delta + sign * 2.0 * zeta - zeta * zeta) - w
            if abs(r) <= tol:
                converged = True
                if delta * (1 - 1e-9) <= rho <= 2 * delta * (1 + 1e-9):
                    roots.append(sign + zeta)
                break
            A = lam * (2.5 * zeta * rho / delta + 2.0 * sign - 2.0 * zeta)
            B = lam * zeta ** 3 / (2.0 * delta * rho)
            det = abs(A) ** 2 - abs(B) ** 2
            if det == 0:
                break
            zeta = zeta + (-r * A.conjugate() + B * r.conjugate()) / det
    return roots, converged


def _address_preimages(tag: str, q_log_rho: float, q_dir: complex, v, p: MapParams):
    """Invert the X or Y piece over the two words u with tau(u) = v."""
    out = []
    for u in tau_preimages(v):
        u1 = u[0]
        log_rho = p.K * q_log_rho if tag == YREG else q_log_rho
        out.append(LocalPoint(u, log_rho, u1 * q_dir))
    return out


def _same_point(a, b, p: MapParams) -> bool:
    if isinstance(a, LocalPoint) or isinstance(b, LocalPoint):
        lsep = difference(a, b, p.scales)[0]
        if lsep == -math.inf:
            return True
        scale = _local_log_scale(a if isinstance(a, LocalPoint) else b, p)
        return lsep <= math.log(VERIFY_TOL) + scale
    return abs(complex(a) - complex(b)) <= VERIFY_TOL * max(1.0, abs(complex(b)))


def _local_log_scale(q, p: MapParams) -> float:
    if not isinstance(q, LocalPoint):
        return math.log(max(1.0, abs(complex(q))))
    return p.scales.log_s[q.level] + max(0.0, q.log_rho)


def preimages(w, p: MapParams):
    """All z with f(z) = w as (point, local index) pairs; indices sum to 2.

    Preimages inside D(+-1, delta) are returned as ``LocalPoint``.
    """
    region, target = locate(w, p)
    cands = []
    failed = []
    if region.in_z:
        w = complex(target)
        lam = p.lam
        root = cmath.sqrt(1.0 + w / lam)
        if root == 0:
            cands.append((0j, 2))
        else:
            for z in (root, -root):
                if classify(z, p).tag == ZQUAD:
                    cands.append((z, 1))
        hi = lam * (4.0 * p.delta + 12.0 * p.delta ** 2)
        if 4.0 * (1 - 1e-9) <= abs(w) <= hi * (1 + 1e-9):
            for sign in (1, -1):
                seeds = [z - sign for z in (root, -root)]
                seeds += [1.5 * p.delta * cmath.exp(2j * math.pi * k / 8) for k in range(8)]
                roots, ok = _newton_annulus(w, sign, seeds, p)
                if not ok:
                    failed.append(sign)
                cands.extend((z, 1) for z in roots)
        aw = abs(w)
        if aw < p.t0 and (aw >= p.s0 or (abs(w - 1) >= p.delta and abs(w + 1) >= p.delta)):
            tag = YREG if aw >= p.s0 else XREG
            omega = w / p.s0
            lr = math.log(abs(omega)) if omega != 0 else -math.inf
            d = omega / abs(omega) if omega != 0 else 1 + 0j
            cands.extend((q, 1) for q in _address_preimages(tag, lr, d, (), p))
    else:
        cands.extend((q, 1) for q in _address_preimages(
            region.tag, target.log_rho, target.direction, region.word, p))

    verified = []
    for z, idx in cands:
        image = evaluate_local(z, p)
        if not _same_point(image, target, p):
            log.debug("discarding preimage candidate %r of %r: forward check failed", z, w)
            continue
        for i, (y, j) in enumerate(verified):
            if _same_point(z, y, p):
                verified[i] = (y, max(j, idx))
                break
        else:
            verified.append((z, idx))
    total = sum(idx for _, idx in verified)
    if total != 2:
        hint = f"; Newton failed on annuli {failed}" if failed else ""
        raise PreimageError(f"preimages of {w!r} carry total index {total}, expected 2{hint}")
    return verified


# -- seams -------------------------------------------------------------------

def _seam_z(p: MapParams, rng, samples: int):
    """Max relative mismatch on |z -+ 1| = delta and = 2 delta."""
    delta, sc = p.delta, p.scales
    worst_inner = worst_outer = 0.0
    for sign in (1, -1):
        phis = rng.uniform(0, 2 * math.pi, samples)
        for phi in phis:
            e = cmath.exp(1j * phi)
            z = sign + delta * e
            zside = _annulus_value(z, sign, p)
            q = LocalPoint((sign,), math.log(delta) - sc.log_s[1], e)
            yside = _apply_piece(YREG, q, p)
            worst_inner = max(worst_inner, abs(zside - yside) / abs(zside))
            z = sign + 2 * delta * e
            a, b = _quad_value(z, p), _annulus_value(z, sign, p)
            worst_outer = max(worst_outer, abs(a - b) / abs(a))
    return worst_inner, worst_outer


def _local_mismatch(a, b, p: MapParams) -> float:
    lsep = difference(a, b, p.scales)[0]
    if lsep == -math.inf:
        return 0.0
    return math.exp(lsep - _local_log_scale(a, p))


def _seam_xy(p: MapParams, rng, samples: int, max_depth: int):
    """Max mismatch on |z - a_u| = s_n and on |z - a_(u,eps)| = t_{n+1}."""
    sc = p.scales
    worst_s = worst_t = 0.0
    for _ in range(samples):
        n = int(rng.integers(1, max_depth + 1))
        u = tuple(int(x) for x in rng.choice((-1, 1), n))
        e = cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        q = LocalPoint(u, 0.0, e)
        worst_s = max(worst_s, _local_mismatch(
            _apply_piece(XREG, q, p), _apply_piece(YREG, q, p), p))
        eps = int(rng.choice((-1, 1)))
        w = 0.25 * eps + p.alpha * e
        xside = _apply_piece(XREG, LocalPoint.from_offset(u, w), p)
        child = LocalPoint(u + (eps,), sc.log_alpha + sc.step_s[n + 1], e)
        yside = _apply_piece(YREG, child, p)
        worst_t = max(worst_t, _local_mismatch(xside, yside, p))
    return worst_s, worst_t


def gluing_check(p: MapParams, samples: int = 10_000, max_depth: int = 8, seed: int = 42,
                 per_seam: bool = False):
    """Largest scale-normalized disagreement of adjacent formulas on every seam.

    Z seams are normalized by |f(z)|; X/Y seams are measured in the output's
    local scale s_{n-1} max(1, |offset|), i.e. relative to the image's size
    in its own address coordinates.
    """
    rng = np.random.default_rng(seed)
    inner, outer = _seam_z(p, rng, samples)
    s_seam, t_seam = _seam_xy(p, rng, samples, max_depth)
    seams = {"z_delta": inner, "z_2delta": outer, "xy_s": s_seam, "xy_t": t_seam}
    worst = max(seams.values())
    return (worst, seams) if per_seam else worst


# -- sampled verification ------------------------------------------------------

def _random_word(rng, lo: int, hi: int):
    n = int(rng.integers(lo, hi + 1))
    return tuple(int(x) for x in rng.choice((-1, 1), n))


def _sample_x_offset(rng, alpha: float) -> complex:
    while True:
        w = math.sqrt(rng.uniform(0, 1)) * cmath.exp(2j * math.pi * rng.uniform(0, 1))
        if abs(w) < 1 - 1e-9 and abs(w - 0.25) > alpha * (1 + 1e-9) \
                and abs(w + 0.25) > alpha * (1 + 1e-9):
            return w


def beltrami_sweep(p: MapParams, samples: int = 10_000, seed: int = 42,
                   max_depth: int = 8) -> dict:
    """|mu| statistics per region plus closed form vs finite differences.

    Returns max |mu| on the annuli, on ZQuad and on X(u), min and max |mu| on
    Y(u) interiors, and the largest |mu - mu_fd| over ``samples`` mixed points
    (absolute, and relative to |mu| where mu is not zero).
    """
    rng = np.random.default_rng(seed)
    out = {}
    ann = []
    for sign in (1, -1):
        rho = rng.uniform(p.delta, 2 * p.delta, samples)
        z = sign + rho * np.exp(2j * np.pi * rng.uniform(0, 1, samples))
        keep = (rho > p.delta * (1 + 1e-9)) & (rho < 2 * p.delta * (1 - 1e-9))
        ann.append(np.abs(beltrami_z_array(z[keep], p)).max())
    out["annulus_max"] = float(max(ann))
    z = 10 * np.sqrt(rng.uniform(0, 1, samples)) * np.exp(2j * np.pi * rng.uniform(0, 1, samples))
    quad = (np.abs(z - 1) > 2 * p.delta) & (np.abs(z + 1) > 2 * p.delta)
    out["zquad_max"] = float(np.abs(beltrami_z_array(z[quad], p)).max())
    ymin, ymax, xmax = math.inf, 0.0, 0.0
    for _ in range(samples):
        u = _random_word(rng, 1, max_depth)
        top = p.scales.log_y_outer[len(u)]
        e = cmath.exp(2j * math.pi * rng.uniform(0, 1))
        a = abs(beltrami(LocalPoint(u, rng.uniform(1e-6, 1 - 1e-6) * top, e), p))
        ymin, ymax = min(ymin, a), max(ymax, a)
        xmax = max(xmax, abs(beltrami(LocalPoint.from_offset(u, _sample_x_offset(rng, p.alpha)), p)))
    out["y_min"], out["y_max"], out["x_max"] = ymin, ymax, xmax
    worst = worst_rel = 0.0
    kinds = ("annulus", "y", "x", "quad")
    for i in range(samples):
        kind = kinds[i % 4]
        if kind == "annulus":
            sign = 1 if rng.uniform() < 0.5 else -1
            z = sign + rng.uniform(1.02, 1.98) * p.delta * cmath.exp(2j * math.pi * rng.uniform())
        elif kind == "y":
            u = _random_word(rng, 1, max_depth)
            z = LocalPoint(u, rng.uniform(0.02, 0.98) * min(p.scales.log_y_outer[len(u)], 30.0),
                           cmath.exp(2j * math.pi * rng.uniform()))
        elif kind == "x":
            w = _sample_x_offset(rng, p.alpha * 1.01)
            z = LocalPoint.from_offset(_random_word(rng, 1, max_depth), 0.98 * w)
        else:
            z = complex(rng.uniform(-9, 9), rng.uniform(-9, 9))
            if abs(z - 1) < 2.1 * p.delta or abs(z + 1) < 2.1 * p.delta:
                z = z + 3
        mu = beltrami(z, p)
        err = abs(mu - beltrami_fd(z, p))
        worst = max(worst, err)
        if abs(mu) > 1e-6:
            worst_rel = max(worst_rel, err / abs(mu))
    out["fd_max_error"] = worst
    out["fd_max_rel_error"] = worst_rel
    out["samples"] = samples
    return out


def inequality_sweep(p: MapParams, samples: int = 100_000, seed: int = 42) -> dict:
    """min |f(z)| over Z within D(0, 10) and min |f(z)|/|z| over 4 <= |z| <= 100."""
    rng = np.random.default_rng(seed)
    z = np.empty(0, dtype=complex)
    while z.size < samples:
        c = 10 * np.sqrt(rng.uniform(0, 1, samples)) * np.exp(2j * np.pi * rng.uniform(0, 1, samples))
        inz = (np.abs(c - 1) >= p.delta) & (np.abs(c + 1) >= p.delta)
        z = np.concatenate([z, c[inz]])
    z = z[:samples]
    min_abs = float(np.abs(evaluate_z_array(z, p)).min())
    r = np.sqrt(rng.uniform(16, 10_000, samples))
    z = r * np.exp(2j * np.pi * rng.uniform(0, 1, samples))
    min_ratio = float((np.abs(evaluate_z_array(z, p)) / r).min())
    return {"min_abs_f_on_Z": min_abs, "min_growth_ratio": min_ratio, "samples": samples}


def seam_anchor(p: MapParams, samples: int = 1000, seed: int = 42) -> float:
    """Largest | |f| / t0 - 1 | just inside and just outside |z -+ 1| = delta."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        e = cmath.exp(2j * math.pi * rng.uniform())
        for sign in (1, -1):
            for side in (1 - 1e-12, 1 + 1e-12):
                v = evaluate(sign + side * p.delta * e, p)
                worst = max(worst, abs(abs(v) / p.t0 - 1.0))
    return worst
