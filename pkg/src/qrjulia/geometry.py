"""Plane primitives: the chordal metric and logarithmic gauge functions."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

INFINITY = complex(math.inf, 0.0)


def is_infinite(z) -> bool:
    return cmath.isinf(complex(z))


def chordal_distance(z, w) -> float:
    """Chordal distance on the Riemann sphere, with diameter 2.

    Either argument may be ``INFINITY`` (any complex value with an infinite
    component is read as the point at infinity).
    """
    z_inf, w_inf = is_infinite(z), is_infinite(w)
    if z_inf and w_inf:
        return 0.0
    if z_inf or w_inf:
        finite = w if z_inf else z
        return 2.0 / math.hypot(1.0, abs(finite))
    z, w = complex(z), complex(w)
    if max(abs(z), abs(w)) > 1e100:
        # chi is invariant under z -> 1/z; this keeps |z|^2 finite
        return chordal_distance(_invert(z), _invert(w))
    return 2.0 * abs(z - w) / (math.hypot(1.0, abs(z)) * math.hypot(1.0, abs(w)))


def _invert(z: complex) -> complex:
    return INFINITY if z == 0 else 1.0 / z


@dataclass(frozen=True)
class Gauge:
    """h(t) = (log 1/t) ** (-log d / log K), defined for 0 < t < 1."""

    degree: int
    dilatation: float
    exponent: float = field(init=False)

    def __post_init__(self):
        if self.degree < 2:
            raise ValueError(f"degree must be >= 2, got {self.degree}")
        if not self.dilatation > 1.0:
            raise ValueError(f"dilatation must exceed 1, got {self.dilatation}")
        object.__setattr__(
            self, "exponent", -math.log(self.degree) / math.log(self.dilatation))

    def __call__(self, t: float) -> float:
        return gauge_eval(self, t)

    def from_log(self, neg_log_t: float) -> float:
        return gauge_eval_from_log(self, neg_log_t)


@dataclass(frozen=True)
class PowerGauge:
    """h(t) = t ** power.  Stand-in for analytic maps, where K = 1."""

    power: float = 1.0

    def __call__(self, t: float) -> float:
        if not 0.0 < t < 1.0:
            raise ValueError(f"gauge argument must lie in (0, 1), got {t}")
        return t ** self.power

    def from_log(self, neg_log_t: float) -> float:
        if not neg_log_t > 0.0:
            raise ValueError(f"-log t must be positive, got {neg_log_t}")
        return math.exp(-self.power * neg_log_t)


def gauge_eval(g: Gauge, t: float) -> float:
    if not 0.0 < t < 1.0:
        raise ValueError(f"gauge argument must lie in (0, 1), got {t}")
    return math.log(1.0 / t) ** g.exponent


def gauge_eval_from_log(g: Gauge, neg_log_t: float) -> float:
    """Evaluate the gauge at t = exp(-neg_log_t) without forming t."""
    if not neg_log_t > 0.0:
        raise ValueError(f"-log t must be positive, got {neg_log_t}")
    return neg_log_t ** g.exponent
