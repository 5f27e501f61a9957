"""Orbits, escape-time classification and grayscale rendering of BO(f)."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .coding import LocalPoint, to_complex
from .geometry import INFINITY, chordal_distance
from .qrmap import CANTOR, MapParams, Region, classify, evaluate_local, evaluate_z_array

# |f(z)| >= 4 on Z and |f(z)| >= 3|z| once |z| >= 4, so 4 is a certified bailout
ESCAPE_RADIUS = 4.0
ESCAPED = "escaped"
BOUNDED = "bounded"


@dataclass
class OrbitRecord:
    initial: object
    values: list = field(default_factory=list)
    trace: list = field(default_factory=list)
    outcome: str = BOUNDED
    step: int = 0
    z_entry: int | None = None

    @property
    def escaped(self) -> bool:
        return self.outcome == ESCAPED

    @property
    def bounded_steps(self) -> int:
        """Steps for which the orbit is certified to stay inside D(0, 4).

        For an orbit stopped at CantorApprox(u) this includes the len(u)
        further steps the point needs to climb out of the address tree.
        """
        if self.escaped:
            return self.step - 1
        last = self.trace[-1]
        return self.step + (last.level if last.tag == CANTOR else 0)


def _modulus(z, p: MapParams) -> float:
    if isinstance(z, LocalPoint):
        return abs(to_complex(z, p.scales))
    return abs(z)


def escape_time(z, p: MapParams, max_steps: int, keep_values: bool = True) -> OrbitRecord:
    """Iterate f until |z_k| >= 4 (k >= 1), CantorApprox, or max_steps."""
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    rec = OrbitRecord(initial=z)
    region = classify(z, p)
    rec.trace.append(region)
    if keep_values:
        rec.values.append(z)
    if region.in_z:
        rec.z_entry = 0
    if region.tag == CANTOR:
        return rec
    for k in range(1, max_steps + 1):
        z = evaluate_local(z, p)
        if keep_values:
            rec.values.append(z)
        if not isinstance(z, LocalPoint) and abs(z) >= ESCAPE_RADIUS:
            if rec.z_entry is None:
                rec.z_entry = k
            rec.trace.append(Region("ZQuad"))
            rec.outcome, rec.step = ESCAPED, k
            return rec
        region = classify(z, p)
        rec.trace.append(region)
        if region.in_z and rec.z_entry is None:
            rec.z_entry = k
        rec.step = k
        if region.tag == CANTOR:
            return rec
    return rec


def pixel_value(rec: OrbitRecord) -> int:
    return min(rec.step, 255) if rec.escaped else 0


def grid_points(center: complex, width: float, px: int) -> np.ndarray:
    """Pixel centers, row-major, row 0 at the top."""
    h = width / px
    offs = (np.arange(px) + 0.5) * h - width / 2
    x = center.real + offs
    y = center.imag - offs
    return x[None, :] + 1j * y[:, None]


def render_grid(p: MapParams, center: complex = 0j, width: float = 8.0, px: int = 512,
                max_steps: int = 64, workers: int = 1) -> np.ndarray:
    """px x px uint8 escape times; 0 marks the bounded class.

    Points of Z escape on the first step and are handled in bulk; the rest
    go through escape_time, chunked over ``workers`` threads and written
    back by pixel index, so the buffer does not depend on ``workers``.
    """
    if px < 1 or not width > 0:
        raise ValueError("need px >= 1 and width > 0")
    z = grid_points(complex(center), float(width), int(px)).ravel()
    out = np.zeros(z.size, dtype=np.uint8)
    fz = evaluate_z_array(z, p)
    bulk = np.abs(fz) >= ESCAPE_RADIUS
    out[bulk] = 1
    rest = np.flatnonzero(~bulk)

    def run(idx):
        return [pixel_value(escape_time(complex(z[i]), p, max_steps, keep_values=False))
                for i in idx]

    chunks = np.array_split(rest, max(1, workers) * 4) if rest.size else []
    if workers <= 1 or rest.size == 0:
        results = [run(c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, chunks))
    for idx, vals in zip(chunks, results):
        out[idx] = vals
    return out.reshape(px, px)


def pgm_bytes(img: np.ndarray) -> bytes:
    h, w = img.shape
    return f"P5\n{w} {h}\n255\n".encode("ascii") + np.ascontiguousarray(img, dtype=np.uint8).tobytes()


@dataclass(frozen=True)
class HolderReport:
    M_est: float
    L_est: float
    worst_ratio: float
    worst_k: int


def _iterate_abs(z: complex, p: MapParams, k: int) -> complex:
    for _ in range(k):
        if abs(z) > 1e100:
            return INFINITY
        z = to_complex(evaluate_local(z, p), p.scales)
    return z


def _sample_pairs(rng, n: int, radius: float):
    r = radius * np.sqrt(rng.uniform(0, 1, n))
    z = r * np.exp(2j * np.pi * rng.uniform(0, 1, n))
    sep = np.exp(rng.uniform(math.log(1e-8), 0.0, n))
    w = z + sep * np.exp(2j * np.pi * rng.uniform(0, 1, n))
    return z, w


def holder_diagnostic(p: MapParams, pairs: int = 10_000, k_max: int = 5,
                      seed: int = 42) -> HolderReport:
    """Empirical Hoelder constant of f in the chordal metric and its iterates.

    M_est is the smallest M with chi(f z, f w) <= M chi(z, w)^(1/K) on one
    sample of pairs in D(0, t0); L_est = M_est^(1/(1 - 1/K)).  A fresh sample
    then checks chi(f^k z, f^k w) <= L_est chi(z, w)^((1/K)^k) for k <= k_max.
    A worst ratio <= 1 means the iterate bound held on the sample.
    """
    if pairs < 1 or k_max < 1:
        raise ValueError("need pairs >= 1 and k_max >= 1")
    a = 1.0 / p.K
    rng = np.random.default_rng(seed)
    z, w = _sample_pairs(rng, pairs, p.t0)
    M = 1.0
    for zi, wi in zip(z, w):
        d = chordal_distance(zi, wi)
        if d == 0:
            continue
        fd = chordal_distance(_iterate_abs(complex(zi), p, 1), _iterate_abs(complex(wi), p, 1))
        M = max(M, fd / d ** a)
    L = M ** (1.0 / (1.0 - a))
    z, w = _sample_pairs(rng, pairs, p.t0)
    worst, worst_k = 0.0, 0
    for zi, wi in zip(z, w):
        d = chordal_distance(zi, wi)
        if d == 0:
            continue
        zk, wk = complex(zi), complex(wi)
        for k in range(1, k_max + 1):
            zk, wk = _iterate_abs(zk, p, 1), _iterate_abs(wk, p, 1)
            ratio = chordal_distance(zk, wk) / (L * d ** (a ** k))
            if ratio > worst:
                worst, worst_k = ratio, k
    return HolderReport(M, L, worst, worst_k)
