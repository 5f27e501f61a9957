"""Backward-orbit trees, level counts and the mass-distribution check.

A tree holds the levels A_0 = {xi}, A_1 = f^-1(xi), ... as distinct points.
Each node also carries the number of preimage chains ending at it, counted
with local index, so every level sums to d^m exactly.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .coding import LocalPoint, difference, to_complex
from .qrmap import MapParams, PreimageError, evaluate_local, preimages

DEDUP_TOL = 1e-9
VERIFY_REL_TOL = 1e-8
LN10 = math.log(10.0)


@dataclass(frozen=True)
class MapInstance:
    """What the tree code needs from a map: f, its full fibers, its critical points.

    ``preimages(w)`` returns (point, local index) pairs whose indices sum to
    ``degree``.  ``critical`` lists (point, value, multiplicity) with
    multiplicity = local index - 1.  ``log_dist`` and ``log_scale`` give
    log|a - b| and the log of the natural length scale around a point.
    """

    name: str
    degree: int
    dilatation: float
    evaluate: Callable
    preimages: Callable
    critical: tuple
    log_dist: Callable
    log_scale: Callable
    absolute: Callable = complex


def _plain_log_dist(a, b) -> float:
    d = abs(complex(a) - complex(b))
    return math.log(d) if d > 0 else -math.inf


def _plain_log_scale(a) -> float:
    return math.log(max(abs(complex(a)), 1e-300))


def quadratic_instance(c: complex = 0j) -> MapInstance:
    """z^2 + c, with fibers +-sqrt(w - c)."""
    c = complex(c)

    def pre(w):
        r = cmath.sqrt(complex(w) - c)
        if r == 0:
            return [(0j, 2)]
        return [(r, 1), (-r, 1)]

    return MapInstance(
        name=f"quad:c={c.real:g}{c.imag:+g}i",
        degree=2,
        dilatation=1.0,
        evaluate=lambda z: complex(z) * complex(z) + c,
        preimages=pre,
        critical=((0j, c, 1),),
        log_dist=_plain_log_dist,
        log_scale=_plain_log_scale,
    )


def explicit_instance(p: MapParams) -> MapInstance:
    """The degree-2 quasiregular map of ``qrmap`` (points may be LocalPoint)."""
    sc = p.scales

    def log_scale(a):
        if isinstance(a, LocalPoint):
            return sc.log_s[a.level] + max(0.0, a.log_rho)
        return _plain_log_scale(a)

    return MapInstance(
        name="explicit",
        degree=2,
        dilatation=p.K,
        evaluate=lambda z: evaluate_local(z, p),
        preimages=lambda w: preimages(w, p),
        critical=((0j, complex(-p.lam), 1),),
        log_dist=lambda a, b: difference(a, b, sc)[0],
        log_scale=log_scale,
        absolute=lambda a: to_complex(a, sc),
    )


# -- dedup ---------------------------------------------------------------------

def _same(inst: MapInstance, a, b, tol: float) -> bool:
    ld = inst.log_dist(a, b)
    if ld == -math.inf:
        return True
    scale = max(inst.log_scale(a), inst.log_scale(b))
    return ld <= math.log(tol) + scale


def _buckets(z, tol: float, width: float):
    """Hash keys of the cell holding z and of its neighbours."""
    if isinstance(z, LocalPoint):
        if z.log_rho < 0:
            w = z.offset
            i, j = math.floor(w.real / tol), math.floor(w.imag / tol)
            return [(z.word, "c", i + di, j + dj) for di in (-1, 0, 1) for dj in (-1, 0, 1)]
        # log-polar cells: relative to |offset|, the natural scale there
        i = math.floor(z.log_rho / tol)
        j = math.floor(cmath.phase(z.direction) / tol)
        return [(z.word, "p", i + di, j + dj) for di in (-1, 0, 1) for dj in (-1, 0, 1)]
    z = complex(z)
    i, j = math.floor(z.real / width), math.floor(z.imag / width)
    return [((), "c", i + di, j + dj) for di in (-1, 0, 1) for dj in (-1, 0, 1)]


def dedup(inst: MapInstance, items, tol: float = DEDUP_TOL):
    """Merge (point, weight, parent) triples that agree to relative tol.

    Weights of merged points add; the first parent is kept.  Output is sorted.
    """
    items = list(items)
    plain = [abs(complex(z)) for z, _, _ in items if not isinstance(z, LocalPoint)]
    width = tol * max(plain + [1e-300])
    table: dict = {}
    out = []
    for z, wgt, parent in items:
        keys = _buckets(z, tol, width)
        hit = None
        for k in keys:
            for idx in table.get(k, ()):
                if _same(inst, z, out[idx][0], tol):
                    hit = idx
                    break
            if hit is not None:
                break
        if hit is None:
            out.append([z, wgt, parent])
            table.setdefault(keys[4], []).append(len(out) - 1)
        else:
            out[hit][1] += wgt
    out.sort(key=lambda t: sort_key(inst, t[0]))
    return [tuple(t) for t in out]


def sort_key(inst: MapInstance, z):
    a = inst.absolute(z)
    if isinstance(z, LocalPoint):
        return (a.real, a.imag, z.word, z.log_rho, z.direction.real, z.direction.imag)
    return (a.real, a.imag, (), -math.inf, 0.0, 0.0)


# -- trees -----------------------------------------------------------------------

@dataclass
class PullbackTree:
    """levels[k] is a sorted list of (point, chain count, parent index)."""

    instance: MapInstance
    xi: object
    levels: list = field(default_factory=list)
    tol: float = DEDUP_TOL

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    @property
    def counts(self) -> list:
        return [len(lv) for lv in self.levels]

    @property
    def chain_totals(self) -> list:
        return [sum(n for _, n, _ in lv) for lv in self.levels]

    def points(self, m: int | None = None) -> list:
        m = self.depth if m is None else m
        return [z for z, _, _ in self.levels[m]]

    def residuals(self, m: int) -> list:
        """|f(node) - parent| over the parent's length scale, for level m >= 1.

        The scale is max(1, |parent|) for plane points and the address scale
        for local points.
        """
        inst, prev = self.instance, self.levels[m - 1]
        out = []
        for z, _, parent in self.levels[m]:
            target = prev[parent][0]
            ld = inst.log_dist(inst.evaluate(z), target)
            scale = inst.log_scale(target)
            if not isinstance(target, LocalPoint):
                scale = max(0.0, scale)
            out.append(0.0 if ld == -math.inf else math.exp(ld - scale))
        return out

    def max_residual(self) -> float:
        return max((max(self.residuals(m), default=0.0) for m in range(1, self.depth + 1)),
                   default=0.0)


def _fiber(inst: MapInstance, node):
    z, _, _ = node
    try:
        return inst.preimages(z)
    except PreimageError as exc:
        raise PreimageError(f"{exc} (while pulling back node {z!r})") from exc


def build_tree(inst: MapInstance, xi, depth: int, tol: float = DEDUP_TOL,
               threads: int = 1) -> PullbackTree:
    """Levels 0 .. depth of the backward orbit of xi.

    Fibers of one level are computed in parallel; the merge is serial and
    sorted, so the result does not depend on ``threads``.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    tree = PullbackTree(inst, xi, [[(xi, 1, -1)]], tol)
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for _ in range(depth):
            prev = tree.levels[-1]
            fibers = list(pool.map(lambda nd: _fiber(inst, nd), prev)) if pool else \
                [_fiber(inst, nd) for nd in prev]
            items = [(y, node[1] * idx, i)
                     for i, (node, fib) in enumerate(zip(prev, fibers)) for y, idx in fib]
            tree.levels.append(dedup(inst, items, tol))
    finally:
        if pool:
            pool.shutdown()
    return tree


# -- counting checks ---------------------------------------------------------------

@dataclass
class LevelCountReport:
    growth: list   # (m, N_{m+1} - 2 - d (N_m - 2))
    floor: list    # (m, N_m - d^(m-6)) for m >= 6
    passed: bool


def level_count_check(tree: PullbackTree, d: int) -> LevelCountReport:
    if tree.depth < 1:
        raise ValueError("tree depth must be >= 1")
    N = tree.counts
    growth = [(m, (N[m + 1] - 2) - d * (N[m] - 2)) for m in range(len(N) - 1)]
    floor = [(m, N[m] - d ** (m - 6)) for m in range(6, len(N))]
    ok = all(g >= 0 for _, g in growth) and all(f >= 0 for _, f in floor)
    return LevelCountReport(growth, floor, ok)


def lemma4_check(inst: MapInstance, xi) -> int:
    """Number of distinct points in f^-6(xi); 3 or more certifies xi is not exceptional."""
    return build_tree(inst, xi, 6).counts[6]


def expected_components(inst: MapInstance, center, radius: float) -> int:
    """d - s, s the multiplicity of critical points over the disk D(center, radius)."""
    center = complex(center)
    s = sum(mult for _, value, mult in inst.critical if abs(complex(value) - center) < radius)
    return inst.degree - s


# -- mass distribution ---------------------------------------------------------------

def default_neg_log_radii():
    """-log r for r = 10^-1 .. 10^-30."""
    return [k * LN10 for k in range(1, 31)]


def _log_distances(inst: MapInstance, x, pts, metric: str) -> np.ndarray:
    if all(not isinstance(z, LocalPoint) for z in pts) and not isinstance(x, LocalPoint):
        arr = np.asarray([complex(z) for z in pts])
        x = complex(x)
        d = np.abs(arr - x)
        if metric == "chordal":
            d = 2.0 * d / (np.hypot(1.0, np.abs(arr)) * math.hypot(1.0, abs(x)))
        with np.errstate(divide="ignore"):
            return np.log(d)
    out = np.empty(len(pts))
    for i, z in enumerate(pts):
        ld = inst.log_dist(x, z)
        if metric == "chordal" and ld != -math.inf:
            ax, az = abs(inst.absolute(x)), abs(inst.absolute(z))
            ld += math.log(2.0) - math.log(math.hypot(1.0, ax) * math.hypot(1.0, az))
        out[i] = ld
    return out


@dataclass
class MeasureReport:
    C_est: float
    level: int
    support: int
    table: list  # (center index, -log r, mu, mu / h(r))

    def by_center(self):
        rows: dict = {}
        for c, x, mu, _ in self.table:
            rows.setdefault(c, []).append((x, mu))
        return rows


def mass_distribution(tree: PullbackTree, gauge, radii=None, neg_log_radii=None,
                      centers: int = 100, metric: str = "euclidean", seed: int = 42,
                      level: int | None = None) -> MeasureReport:
    """Largest mu_m(D(x, r)) / h(r) over sampled support points x and radii r.

    mu_m is uniform on the distinct points of level m (the deepest by default).
    Radii are given directly or as -log r; the default is 10^-1 .. 10^-30.
    """
    if metric not in ("euclidean", "chordal"):
        raise ValueError(f"unknown metric {metric!r}")
    if radii is not None and neg_log_radii is not None:
        raise ValueError("give radii or neg_log_radii, not both")
    if radii is not None:
        radii = [float(r) for r in radii]
        if any(not 0.0 < r < 1.0 for r in radii):
            raise ValueError("every radius must lie in (0, 1)")
        neg_log_radii = [-math.log(r) for r in radii]
    elif neg_log_radii is None:
        neg_log_radii = default_neg_log_radii()
    neg_log_radii = [float(x) for x in neg_log_radii]
    if any(not x > 0 for x in neg_log_radii):
        raise ValueError("every radius must lie in (0, 1)")
    m = tree.depth if level is None else level
    pts = tree.points(m)
    N = len(pts)
    if N < 2:
        raise ValueError("the empirical measure needs at least two support points")
    rng = np.random.default_rng(seed)
    picks = np.sort(rng.choice(N, size=min(centers, N), replace=False))
    cuts = -np.asarray(neg_log_radii)
    h = np.asarray([gauge.from_log(x) for x in neg_log_radii])
    table = []
    best = 0.0
    for ci in picks:
        ld = np.sort(_log_distances(tree.instance, pts[ci], pts, metric))
        mu = np.searchsorted(ld, cuts, side="left") / N
        ratio = mu / h
        best = max(best, float(ratio.max()))
        table.extend((int(ci), x, float(a), float(b))
                     for x, a, b in zip(neg_log_radii, mu, ratio))
    return MeasureReport(best, m, N, table)


def arc_fraction(r: float) -> float:
    """Share of the unit circle inside a disk of radius r centred on the circle."""
    if r >= 2.0:
        return 1.0
    return 2.0 * math.asin(r / 2.0) / math.pi

