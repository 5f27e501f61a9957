"""Gauge sums over the canonical covers of the Cantor set and dimension evidence.

At generation n the set is covered by the 2^n disks D(a_u, s_n), each of
diameter 2 s_n.  Everything is done with -log(2 s_n), which is finite even
where s_n itself underflows.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

from .geometry import Gauge
from .qrmap import MapParams

CSV_HEADER = ("n", "neg_log_2sn", "S_direct", "S_closed", "dim_est")


def _gauge(p: MapParams) -> Gauge:
    return Gauge(2, p.K)


def neg_log_2s(p: MapParams, n: int) -> float:
    return -math.log(2.0) - float(p.scales.log_s[n])


def cover_sum(p: MapParams, n: int) -> tuple[float, float]:
    """(S_direct, S_closed) for the generation-n cover.

    S_direct = 2^n h(2 s_n) from the scale table; S_closed rewrites it as
    (K^-n (-log 2t0 - n log alpha) + (K - K^-n)/(K - 1)) ** (-log 2/log K).
    """
    if n < 1:
        raise ValueError("cover_sum needs n >= 1")
    if n > p.scales.max_depth:
        raise ValueError(f"n = {n} exceeds the scale table depth {p.scales.max_depth}")
    x = neg_log_2s(p, n)
    if not x > 0:
        raise ValueError(f"2 s_{n} >= 1: the gauge is undefined there")
    g = _gauge(p)
    direct = math.exp(n * math.log(2.0) + g.exponent * math.log(x))
    K = p.K
    Kn = K ** -n
    inner = Kn * (-math.log(2.0 * p.t0) - n * math.log(p.alpha)) + (K - Kn) / (K - 1.0)
    closed = inner ** g.exponent
    return direct, closed


def limit_value(p: MapParams) -> float:
    """(K/(K-1)) ** (-log 2/log K), the limit of the cover sums."""
    K = p.K
    return (K / (K - 1.0)) ** (-math.log(2.0) / math.log(K))


def dim_estimate(p: MapParams, n: int) -> float:
    return n * math.log(2.0) / neg_log_2s(p, n)


def boxdim_sequence(p: MapParams, n_max: int):
    """Rows (n, n log 2 / -log(2 s_n)) for n = 1 .. n_max."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    if n_max > p.scales.max_depth:
        raise ValueError(f"n_max = {n_max} exceeds the scale table depth {p.scales.max_depth}")
    return [(n, dim_estimate(p, n)) for n in range(1, n_max + 1)]


@dataclass
class CoverReport:
    K: float
    delta: float
    rows: list = field(default_factory=list)
    limit: float = math.nan

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for n, x, sd, sc, de in self.rows:
            w.writerow([n] + [format(v, ".17g") for v in (x, sd, sc, de)])
        return buf.getvalue()

    def max_rel_gap(self) -> float:
        return max(abs(sd - sc) / abs(sc) for _, _, sd, sc, _ in self.rows)

    def is_monotone(self) -> bool:
        s = [sc for _, _, _, sc, _ in self.rows]
        return all(a <= b for a, b in zip(s, s[1:]))


def cover_report(p: MapParams, n_max: int) -> CoverReport:
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    rep = CoverReport(p.K, p.delta, limit=limit_value(p))
    for n in range(1, n_max + 1):
        sd, sc = cover_sum(p, n)
        rep.rows.append((n, neg_log_2s(p, n), sd, sc, dim_estimate(p, n)))
    return rep
