"""Rational generating functions with denominators of the form prod (1 - d t).

Everything here is over the integers regardless of the working field, and
every expansion is truncated explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, prod
from typing import List, Sequence, Tuple


def _trim(coeffs: Sequence[int]) -> Tuple[int, ...]:
    out = list(coeffs)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out) if out else (0,)


def poly_mul(a: Sequence[int], b: Sequence[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def one_minus_t_power(k: int) -> List[int]:
    """Coefficients of (1 - t)^k."""
    return [(-1) ** i * comb(k, i) for i in range(k + 1)]


@dataclass(frozen=True)
class RationalGF:
    """``numerator / ((1 - t)^one_minus_t * prod_d (1 - d t))``.

    ``factors`` holds the ``d >= 2``; factors with ``d == 1`` are folded into
    ``one_minus_t`` on construction.
    """

    numerator: Tuple[int, ...]
    factors: Tuple[int, ...] = ()
    one_minus_t: int = 0

    def __post_init__(self):
        if any(d < 1 for d in self.factors):
            raise ValueError("denominator factors must be (1 - d t) with d >= 1")
        if self.one_minus_t < 0:
            raise ValueError("negative (1 - t) exponent")
        ones = sum(1 for d in self.factors if d == 1)
        object.__setattr__(self, "numerator", _trim(self.numerator))
        object.__setattr__(self, "factors", tuple(sorted(d for d in self.factors if d != 1)))
        object.__setattr__(self, "one_minus_t", self.one_minus_t + ones)

    def expand(self, upto: int) -> List[int]:
        """Power-series coefficients of t^0 .. t^upto."""
        out = [0] * (upto + 1)
        for i, c in enumerate(self.numerator[: upto + 1]):
            out[i] = c
        for d in self.factors:
            # multiply by 1/(1 - d t): running sum with ratio d
            for i in range(1, upto + 1):
                out[i] += d * out[i - 1]
        for _ in range(self.one_minus_t):
            for i in range(1, upto + 1):
                out[i] += out[i - 1]
        return out

    def denominator(self) -> List[int]:
        den = one_minus_t_power(self.one_minus_t)
        for d in self.factors:
            den = poly_mul(den, [1, -d])
        return den


def series_coefficient(g: RationalGF, k: int) -> int:
    """Coefficient of t^k in the expansion of ``g`` at t = 0."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return g.expand(k)[k]


def series_by_long_division(g: RationalGF, upto: int) -> List[int]:
    """Same expansion via dense division by the expanded denominator."""
    num = list(g.numerator) + [0] * (upto + 1)
    den = g.denominator()
    # den[0] == 1, so each quotient coefficient is exact
    out = []
    rem = num[: upto + 1]
    for i in range(upto + 1):
        q = rem[i]
        out.append(q)
        if q:
            for j in range(1, len(den)):
                if i + j <= upto:
                    rem[i + j] -= q * den[j]
    return out


def gf_multiply(g: RationalGF, p: Sequence[int]) -> RationalGF:
    return RationalGF(tuple(poly_mul(g.numerator, list(p))), g.factors, g.one_minus_t)


def milnor_gf(n: int, degrees: Sequence[int]) -> RationalGF:
    """``d_1...d_r (1-t)^n / prod_{i<=r+1} (1 - d_i t)`` with (1-t) factors cancelled."""
    degrees = list(degrees)
    r = len(degrees) - 1
    if not 1 <= r < n:
        raise ValueError(f"need 1 <= r < n, got r={r}, n={n}")
    if any(d < 1 for d in degrees):
        raise ValueError("degrees must be positive")
    ones = sum(1 for d in degrees if d == 1)
    scale = prod(degrees[:r])
    numerator = [scale * c for c in one_minus_t_power(n - ones)]
    return RationalGF(tuple(numerator), tuple(d for d in degrees if d != 1), 0)


def predicted_milnor_sum(n: int, degrees: Sequence[int]) -> int:
    """Coefficient of t^(n-r) in :func:`milnor_gf`."""
    r = len(degrees) - 1
    return series_coefficient(milnor_gf(n, degrees), n - r)


def hilbert_function(numerator: Sequence[int], nvars: int, upto: int) -> List[int]:
    """Per-degree dimensions from ``N(t) / (1-t)^nvars`` up to degree ``upto``."""
    return RationalGF(tuple(numerator), (), nvars).expand(upto)


def complete_intersection_numerator(degrees: Sequence[int]) -> List[int]:
    """``prod (1 - t^d)``: the Hilbert numerator of a complete intersection."""
    out = [1]
    for d in degrees:
        out = poly_mul(out, [1] + [0] * (d - 1) + [-1])
    return list(_trim(out))


def divide_by_one_minus_t(num: Sequence[int], times: int) -> Tuple[List[int], bool]:
    """Divide by (1 - t) ``times`` times; report whether each division was exact."""
    cur = list(num)
    for _ in range(times):
        if sum(cur) != 0:
            return cur, False
        # synthetic division by (1 - t): q_i = sum_{j<=i} a_j
        q = []
        acc = 0
        for a in cur[:-1]:
            acc += a
            q.append(acc)
        cur = q or [0]
    return cur, True
