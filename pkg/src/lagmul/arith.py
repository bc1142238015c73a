"""Exact coefficient arithmetic over F_p and Q.

Polynomials store raw coefficient values for speed: ``int`` residues in
``[0, p)`` for prime fields and :class:`fractions.Fraction` for the
rationals.  :class:`FieldSpec` knows how to combine raw values;
:class:`FieldElement` wraps a value together with its field for callers that
want operator syntax and field checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DivisionByZero, MixedFields

Raw = Union[int, Fraction]

MAX_PRIME = 1 << 61


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def inverse_mod(a: int, p: int) -> int:
    """Inverse of ``a`` modulo ``p`` by the extended Euclidean algorithm."""
    a %= p
    if a == 0:
        raise DivisionByZero(f"0 has no inverse modulo {p}")
    r0, r1 = p, a
    s0, s1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    # r0 == gcd(a, p) == 1 for prime p
    return s0 % p


@dataclass(frozen=True)
class FieldSpec:
    """The base field: ``characteristic == 0`` is Q, otherwise F_p."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if c < 0:
            raise ValueError("characteristic must be nonnegative")
        if c and not is_prime(c):
            raise ValueError(f"characteristic {c} is not prime")
        if c >= MAX_PRIME:
            raise ValueError(f"prime {c} does not fit in a machine word")

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def __str__(self):
        return "QQ" if self.is_rational else f"GF({self.characteristic})"

    # raw-value arithmetic; inputs are assumed canonical

    def convert(self, value) -> Raw:
        p = self.characteristic
        if p:
            if isinstance(value, Fraction):
                return value.numerator * inverse_mod(value.denominator, p) % p
            return int(value) % p
        return Fraction(value)

    def add(self, a: Raw, b: Raw) -> Raw:
        p = self.characteristic
        return (a + b) % p if p else a + b

    def sub(self, a: Raw, b: Raw) -> Raw:
        p = self.characteristic
        return (a - b) % p if p else a - b

    def mul(self, a: Raw, b: Raw) -> Raw:
        p = self.characteristic
        return a * b % p if p else a * b

    def neg(self, a: Raw) -> Raw:
        p = self.characteristic
        return -a % p if p else -a

    def inv(self, a: Raw) -> Raw:
        p = self.characteristic
        if p:
            return inverse_mod(a, p)
        if a == 0:
            raise DivisionByZero("division by zero in QQ")
        return 1 / a

    def div(self, a: Raw, b: Raw) -> Raw:
        return self.mul(a, self.inv(b))

    def __call__(self, value) -> "FieldElement":
        return FieldElement(self, self.convert(value))

    def zero(self) -> Raw:
        return 0 if self.characteristic else Fraction(0)

    def one(self) -> Raw:
        return 1 if self.characteristic else Fraction(1)


QQ = FieldSpec(0)


class FieldElement:
    """An immutable element of a :class:`FieldSpec`."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value: Raw):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other) -> Raw:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise MixedFields(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.convert(other)
        return NotImplemented

    def _wrap(self, value: Raw) -> "FieldElement":
        return FieldElement(self.field, value)

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.div(b, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def inv(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.value))

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        p = self.field.characteristic
        if p:
            return self._wrap(pow(self.value, k, p))
        return self._wrap(self.value**k)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field.convert(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.characteristic, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.field}({self.value})"
