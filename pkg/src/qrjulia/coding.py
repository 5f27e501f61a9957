"""Symbolic addresses over {-1, +1} and the nested-disk scales of the Cantor set.

Words are tuples of +1/-1, most significant letter first; the empty tuple is
the empty word.  Scales decay like exp(-K**n) and leave floating-point range
within a few dozen levels, so every scale is stored as a natural logarithm.
The table is built once in extended precision (mpmath) and exported as float
arrays, which keeps the algebraic identities between the sequences exact to
double precision even where the logarithms reach 1e7 in magnitude.

Points too deep to resolve in absolute coordinates are carried as
``LocalPoint``: an address word u of length n plus the offset (z - a_u) / s_n
in log-polar form.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass

import mpmath
import numpy as np

Word = tuple

DEFAULT_MAX_DEPTH = 64


def check_word(u) -> Word:
    u = tuple(int(x) for x in u)
    for x in u:
        if x not in (1, -1):
            raise ValueError(f"word letters must be +1 or -1, got {x}")
    return u


def word_str(u: Word) -> str:
    return "".join("+" if x > 0 else "-" for x in u)


def word_from_str(s: str) -> Word:
    table = {"+": 1, "-": -1}
    try:
        return tuple(table[c] for c in s.strip())
    except KeyError as exc:
        raise ValueError(f"word strings use '+' and '-' only, got {s!r}") from exc


def all_words(n: int):
    """All words of length n in lexicographic order with -1 < +1."""
    return itertools.product((-1, 1), repeat=n)


def shift_sigma(u: Word) -> Word:
    u = check_word(u)
    if not u:
        raise ValueError("sigma is undefined on the empty word")
    return u[1:]


def shift_tau(u: Word) -> Word:
    u = check_word(u)
    if not u:
        raise ValueError("tau is undefined on the empty word")
    head = u[0]
    return tuple(head * x for x in u[1:])


def tau_preimages(v: Word) -> tuple[Word, Word]:
    """The two words u with tau(u) = v: (1, v) and (-1, -v)."""
    v = check_word(v)
    return (1,) + v, (-1,) + tuple(-x for x in v)


class ScaleTable:
    """log t_n, log s_n, log r_n for n = 0 .. max_depth.

    t_n = t0 alpha^n exp(-(K^n - 1)/(K - 1)),  s_n = t_n exp(-K^n),
    r_n = s_{n-1} / s_0  (r_0 is undefined and stored as nan).
    """

    def __init__(self, K: float, delta: float, max_depth: int = DEFAULT_MAX_DEPTH):
        if max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        self.K = float(K)
        self.delta = float(delta)
        self.max_depth = int(max_depth)
        with mpmath.workdps(60):
            Km = mpmath.mpf(self.K)
            alpha = mpmath.mpf(self.delta) / 4
            log_t0 = mpmath.log(4 * mpmath.e)
            log_alpha = mpmath.log(alpha)
            lt, ls = [], []
            for n in range(self.max_depth + 1):
                Kn = Km ** n
                t = log_t0 + n * log_alpha - (Kn - 1) / (Km - 1)
                lt.append(t)
                ls.append(t - Kn)
            lr = [mpmath.mpf("nan")] + [ls[n - 1] - ls[0] for n in range(1, self.max_depth + 1)]
            self.mp_log_t, self.mp_log_s, self.mp_log_r = lt, ls, lr
            self.mp_log_alpha = log_alpha
            # log(s_{n-1} / s_n), formed before rounding to float
            step = [mpmath.mpf("nan")] + [ls[n - 1] - ls[n] for n in range(1, self.max_depth + 1)]
            # log(t_n / s_n) = K^n, the log-radius of the outer edge of Y(u)
            ymax = [lt[n] - ls[n] for n in range(self.max_depth + 1)]
        self.log_t = np.array([float(x) for x in lt])
        self.log_s = np.array([float(x) for x in ls])
        self.log_r = np.array([float(x) for x in lr])
        self.step_s = np.array([float(x) for x in step])
        self.log_y_outer = np.array([float(x) for x in ymax])
        self.alpha = self.delta / 4.0
        self.log_alpha = float(log_alpha)

    def r(self, n: int) -> float:
        return math.exp(self.log_r[n])

    def s(self, n: int) -> float:
        return math.exp(self.log_s[n])

    def t(self, n: int) -> float:
        return math.exp(self.log_t[n])

    def log_s_ratio(self, n: int, k: int) -> float:
        """log(s_n / s_k) for n >= k, exact to rounding when n = k + 1."""
        if n == k:
            return 0.0
        if n == k + 1:
            return -self.step_s[n]
        return self.log_s[n] - self.log_s[k]

    def log_identity_gap(self, n: int) -> float:
        """log(t_{n+1} / (alpha s_n)), evaluated before rounding; zero in exact arithmetic.

        The float logs themselves carry absolute error ~1e-16 |log s_n|, so the
        gap has to be read off the extended-precision values.
        """
        with mpmath.workdps(60):
            return float(self.mp_log_t[n + 1] - self.mp_log_alpha - self.mp_log_s[n])

    def rows(self):
        for n in range(self.max_depth + 1):
            yield n, self.log_t[n], self.log_s[n], self.log_r[n]


def _check_depth(u: Word, scales: ScaleTable):
    if len(u) > scales.max_depth:
        raise ValueError(f"word length {len(u)} exceeds scale table depth {scales.max_depth}")


def center_of(u: Word, scales: ScaleTable) -> complex:
    """a_u = sum_j u_j r_j, as an absolute (real) coordinate."""
    u = check_word(u)
    _check_depth(u, scales)
    return complex(math.fsum(x * math.exp(scales.log_r[j]) for j, x in enumerate(u, 1)), 0.0)


def log_tail_bound(n: int, scales: ScaleTable) -> float:
    """log of sum_{j > n} r_j, summed to the table depth (later terms vanish)."""
    logs = scales.log_r[n + 1:]
    if logs.size == 0:
        return -math.inf
    top = logs.max()
    return float(top + math.log(np.exp(logs - top).sum()))


def cantor_point(prefix: Word, scales: ScaleTable, local: bool = False):
    """a_prefix: approximates a_v for every infinite v extending prefix.

    The error is at most exp(log_tail_bound(len(prefix))).  The absolute
    coordinate cannot resolve prefixes past a handful of letters; pass
    ``local=True`` to get the center as a ``LocalPoint`` that keeps the address.
    """
    prefix = check_word(prefix)
    if not prefix:
        raise ValueError("cantor_point needs a non-empty prefix")
    if local:
        if len(prefix) > scales.max_depth:
            raise ValueError(f"word length {len(prefix)} exceeds scale table depth")
        return LocalPoint.center(prefix)
    return center_of(prefix, scales)


@dataclass(frozen=True)
class LocalPoint:
    """z = a_u + s_n * exp(log_rho) * direction, with n = len(word) >= 1.

    ``log_rho = -inf`` marks the center a_u itself.
    """

    word: Word
    log_rho: float
    direction: complex = 1 + 0j

    def __post_init__(self):
        if self.log_rho == -math.inf and self.direction != 1:
            object.__setattr__(self, "direction", 1 + 0j)

    @classmethod
    def center(cls, word) -> "LocalPoint":
        return cls(check_word(word), -math.inf, 1 + 0j)

    @classmethod
    def from_offset(cls, word, w: complex) -> "LocalPoint":
        w = complex(w)
        if w == 0:
            return cls.center(word)
        return cls(check_word(word), math.log(abs(w)), w / abs(w))

    @property
    def level(self) -> int:
        return len(self.word)

    @property
    def offset(self) -> complex:
        if self.log_rho == -math.inf:
            return 0j
        if self.log_rho > 700:
            return complex(math.inf, 0)
        return math.exp(self.log_rho) * self.direction


Point = "complex | LocalPoint"


def to_complex(p, scales: ScaleTable) -> complex:
    """Absolute coordinate of a point (lossy for deep local points)."""
    if not isinstance(p, LocalPoint):
        return complex(p)
    n = p.level
    a = center_of(p.word, scales)
    if p.log_rho == -math.inf:
        return a
    return a + math.exp(scales.log_s[n] + p.log_rho) * p.direction


def _word_of(p) -> Word:
    return p.word if isinstance(p, LocalPoint) else ()


def _relative_offset(p, k: int, scales: ScaleTable) -> complex:
    """(p - a_c) / s_k where c is the length-k prefix of p's word."""
    if not isinstance(p, LocalPoint):
        return complex(p) / math.exp(scales.log_s[0])
    u, n = p.word, p.level
    # r_j / s_k = (s_{j-1} / s_k) / s_0
    terms = [u[j - 1] * math.exp(scales.log_s_ratio(j - 1, k) - scales.log_s[0])
             for j in range(k + 1, n + 1)]
    if p.log_rho != -math.inf:
        e = p.log_rho + scales.log_s_ratio(n, k)
        terms.append(math.exp(e) * p.direction if e < 700 else complex(math.inf, 0))
    return complex(sum(terms))


def common_prefix_length(u: Word, v: Word) -> int:
    k = 0
    for x, y in zip(u, v):
        if x != y:
            break
        k += 1
    return k


def difference(p, q, scales: ScaleTable) -> tuple[float, complex]:
    """p - q as (log modulus, unit direction); (-inf, 1) when equal.

    Works relative to the deepest common address so separations far below
    floating-point resolution of the absolute coordinates stay exact.
    """
    if not isinstance(p, LocalPoint) and not isinstance(q, LocalPoint):
        d = complex(p) - complex(q)
        return (math.log(abs(d)), d / abs(d)) if d != 0 else (-math.inf, 1 + 0j)
    k = common_prefix_length(_word_of(p), _word_of(q))
    d = _relative_offset(p, k, scales) - _relative_offset(q, k, scales)
    if d == 0:
        return -math.inf, 1 + 0j
    if cmath.isinf(d):
        return math.inf, 1 + 0j
    return math.log(abs(d)) + scales.log_s[k], d / abs(d)


def log_separation(p, q, scales: ScaleTable) -> float:
    return difference(p, q, scales)[0]
