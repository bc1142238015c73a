"""Sparse multivariate polynomials with exact coefficients.

A :class:`Ring` fixes the coefficient field, the variable names and a
monomial order.  Monomials are exponent tuples.  Every order is realised as
a linear integer weight on exponents, so ``ring.key(a) + ring.key(b) ==
ring.key(a*b)`` and comparing keys compares monomials; the Groebner engine
relies on this.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from operator import add
from typing import Dict, Iterable, List, Sequence, Tuple

from .arith import FieldSpec, Raw
from .errors import MixedRings, NotHomogeneous, ParseError, ZeroPolynomial

Monomial = Tuple[int, ...]

ORDERS = ("degrevlex", "grlex", "lex")
HOMOGENIZING_VARIABLE = "x0"

# exponents must stay below half the digit base for keys to compare correctly
_DIGIT_BITS = 24
MAX_EXPONENT = (1 << (_DIGIT_BITS - 1)) - 1


def _order_weights(order: str, n: int) -> Tuple[int, ...]:
    B = 1 << _DIGIT_BITS
    if order == "lex":
        return tuple(B ** (n - 1 - i) for i in range(n))
    if order == "grlex":
        return tuple(B**n + B ** (n - 1 - i) for i in range(n))
    if order == "degrevlex":
        # (deg, -e_n, ..., -e_1) read as base-B digits
        return tuple(B**n - B**i for i in range(n))
    raise ValueError(f"unknown monomial order {order!r}; expected one of {ORDERS}")


@dataclass(frozen=True)
class Ring:
    """Polynomial ring ``field[names]`` with a monomial order."""

    field: FieldSpec
    names: Tuple[str, ...]
    order: str = "degrevlex"
    weights: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not _IDENT.fullmatch(name):
                raise ValueError(f"invalid variable name {name!r}")
        object.__setattr__(self, "weights", _order_weights(self.order, len(names)))

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def is_graded_order(self) -> bool:
        return self.order in ("degrevlex", "grlex")

    def key(self, exps: Monomial) -> int:
        return sum(map(int.__mul__, self.weights, exps))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"{name!r} is not a variable of {self}") from None

    # constructors

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        return self.monomial((0,) * self.nvars, c)

    def monomial(self, exps: Sequence[int], c=1) -> "Polynomial":
        c = self.field.convert(c)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def gen(self, i: int) -> "Polynomial":
        exps = [0] * self.nvars
        exps[i] = 1
        return self.monomial(exps)

    def gens(self) -> List["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def var(self, name: str) -> "Polynomial":
        return self.gen(self.index(name))

    def from_dict(self, terms: Dict[Monomial, object]) -> "Polynomial":
        out = {}
        for e, c in terms.items():
            c = self.field.convert(c)
            if c:
                out[tuple(e)] = c
        return Polynomial(self, out)

    def parse(self, text: str, line: int = 1) -> "Polynomial":
        return _Parser(self, text, line).parse()

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value.change_ring(self)
        if isinstance(value, str):
            return self.parse(value)
        return self.constant(value)

    # derived rings

    def with_order(self, order: str) -> "Ring":
        return Ring(self.field, self.names, order)

    def prepend(self, name: str = HOMOGENIZING_VARIABLE) -> "Ring":
        return Ring(self.field, (name,) + self.names, self.order)

    def extend(self, names: Iterable[str]) -> "Ring":
        return Ring(self.field, self.names + tuple(names), self.order)

    def __str__(self):
        return f"{self.field}[{', '.join(self.names)}] ({self.order})"


class Polynomial:
    """Immutable sparse polynomial: a dict ``{exponent tuple: raw coefficient}``.

    The dict never holds zero coefficients; the zero polynomial is ``{}``.
    """

    __slots__ = ("ring", "_terms", "_sorted")

    def __init__(self, ring: Ring, terms: Dict[Monomial, Raw]):
        self.ring = ring
        self._terms = terms
        self._sorted = None

    # term access

    @property
    def coeffs(self) -> Dict[Monomial, Raw]:
        return dict(self._terms)

    def terms(self) -> List[Tuple[Monomial, Raw]]:
        """Terms sorted strictly descending in the ring's monomial order."""
        if self._sorted is None:
            key = self.ring.key
            self._sorted = sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)
        return list(self._sorted)

    def monomials(self) -> List[Monomial]:
        return [e for e, _ in self.terms()]

    def coefficient(self, exps: Sequence[int]) -> Raw:
        return self._terms.get(tuple(exps), self.ring.field.zero())

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def _require_nonzero(self):
        if not self._terms:
            raise ZeroPolynomial("the zero polynomial has no degree or leading term")

    def leading_term(self) -> Tuple[Monomial, Raw]:
        self._require_nonzero()
        return self.terms()[0]

    def leading_monomial(self) -> Monomial:
        return self.leading_term()[0]

    def leading_coefficient(self) -> Raw:
        return self.leading_term()[1]

    def total_degree(self) -> int:
        self._require_nonzero()
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def homogeneous_component(self, d: int) -> "Polynomial":
        return Polynomial(self.ring, {e: c for e, c in self._terms.items() if sum(e) == d})

    def variables_used(self) -> List[int]:
        used = set()
        for e in self._terms:
            used.update(i for i, a in enumerate(e) if a)
        return sorted(used)

    # arithmetic

    def _check(self, other: "Polynomial"):
        if self.ring.field != other.ring.field or self.ring.names != other.ring.names:
            raise MixedRings(f"{self.ring} vs {other.ring}")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        F = self.ring.field
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = F.add(out.get(e, 0), c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {e: F.neg(c) for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "Polynomial":
        F = self.ring.field
        c = F.convert(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: F.mul(a, c) for e, a in self._terms.items()})

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        F = self.ring.field
        p = F.characteristic
        out: Dict[Monomial, Raw] = {}
        get = out.get
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                e = tuple(map(add, ea, eb))
                out[e] = get(e, 0) + ca * cb
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (
                self.ring.field == other.ring.field
                and self.ring.names == other.ring.names
                and self._terms == other._terms
            )
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.names, frozenset(self._terms.items())))

    def monic(self) -> "Polynomial":
        return self.scale(self.ring.field.inv(self.leading_coefficient()))

    def mul_term(self, exps: Monomial, c) -> "Polynomial":
        F = self.ring.field
        c = F.convert(c)
        if not c:
            return self.ring.zero()
        return Polynomial(
            self.ring, {tuple(map(add, e, exps)): F.mul(a, c) for e, a in self._terms.items()}
        )

    # calculus and projective operations

    def derivative(self, i: int) -> "Polynomial":
        """Formal partial derivative with respect to the ``i``-th variable."""
        if not 0 <= i < self.ring.nvars:
            raise IndexError(f"variable index {i} out of range")
        F = self.ring.field
        out = {}
        for e, c in self._terms.items():
            a = e[i]
            if a:
                v = F.mul(c, F.convert(a))
                if v:
                    out[e[:i] + (a - 1,) + e[i + 1 :]] = v
        return Polynomial(self.ring, out)

    def leading_form(self) -> "Polynomial":
        """Homogeneous component of top total degree."""
        return self.homogeneous_component(self.total_degree())

    def homogenize(self, ring: Ring = None) -> "Polynomial":
        """``x0^d * self(x1/x0, ..., xn/x0)`` in ``ring`` (x0 prepended by default)."""
        d = self.total_degree()
        ring = ring or self.ring.prepend()
        if ring.nvars != self.ring.nvars + 1:
            raise MixedRings("homogenizing ring must have exactly one extra leading variable")
        return Polynomial(ring, {(d - sum(e),) + e: c for e, c in self._terms.items()})

    def substitute(self, i: int, value) -> "Polynomial":
        """Set variable ``i`` to a constant; the ring keeps that variable."""
        F = self.ring.field
        v = F.convert(value)
        out: Dict[Monomial, Raw] = {}
        for e, c in self._terms.items():
            a = e[i]
            if a:
                c = F.mul(c, v**a % F.characteristic if F.characteristic else v**a)
            e2 = e[:i] + (0,) + e[i + 1 :]
            s = F.add(out.get(e2, 0), c)
            if s:
                out[e2] = s
            else:
                out.pop(e2, None)
        return Polynomial(self.ring, out)

    def drop_variable(self, i: int, ring: Ring) -> "Polynomial":
        """Reinterpret in ``ring`` with variable ``i`` removed (must not occur)."""
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                raise ValueError(f"variable {self.ring.names[i]} still occurs")
            out[e[:i] + e[i + 1 :]] = c
        return Polynomial(ring, out)

    def evaluate(self, point: Sequence) -> Raw:
        F = self.ring.field
        p = F.characteristic
        vals = [F.convert(v) for v in point]
        total = F.zero()
        for e, c in self._terms.items():
            t = c
            for v, a in zip(vals, e):
                if a:
                    t = t * (pow(v, a, p) if p else v**a)
            total = total + t
        return total % p if p else total

    def change_ring(self, ring: Ring) -> "Polynomial":
        """Same polynomial in a ring that differs only in its monomial order."""
        if ring.field != self.ring.field or ring.names != self.ring.names:
            raise MixedRings(f"cannot move {self.ring} to {ring}")
        return Polynomial(ring, self._terms)

    def embed(self, ring: Ring, positions: Sequence[int]) -> "Polynomial":
        """Map variable ``i`` of this ring to variable ``positions[i]`` of ``ring``."""
        if ring.field != self.ring.field:
            raise MixedRings(f"cannot move {self.ring} to {ring}")
        n = ring.nvars
        out = {}
        for e, c in self._terms.items():
            new = [0] * n
            for i, a in enumerate(e):
                new[positions[i]] += a
            out[tuple(new)] = c
        return Polynomial(ring, out)

    def __str__(self):
        if not self._terms:
            return "0"
        p = self.ring.field.characteristic
        parts = []
        for e, c in self.terms():
            if p and c > p // 2:
                c = c - p
            factors = []
            for name, a in zip(self.ring.names, e):
                if a == 1:
                    factors.append(name)
                elif a:
                    factors.append(f"{name}^{a}")
            neg = c < 0
            mag = -c if neg else c
            if isinstance(mag, Fraction) and mag.denominator == 1:
                mag = mag.numerator
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([f"({mag})" if isinstance(mag, Fraction) else str(mag)] + factors)
            parts.append(("- " if neg else "+ ") + body)
        s = " ".join(parts)
        if s.startswith("+ "):
            s = s[2:]
        elif s.startswith("- "):
            s = "-" + s[2:]
        return s

    def __repr__(self):
        return f"Polynomial({self})"


def euler_check(g: Polynomial) -> bool:
    """Check ``sum_j x_j * dg/dx_j == deg(g) * g`` for homogeneous ``g``."""
    if not g.is_homogeneous():
        raise NotHomogeneous(f"{g} is not homogeneous")
    if g.is_zero():
        return True
    ring = g.ring
    lhs = ring.zero()
    for j in range(ring.nvars):
        lhs = lhs + ring.gen(j) * g.derivative(j)
    return lhs == g.scale(g.total_degree())


# -- text syntax -------------------------------------------------------------

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))")


class _Parser:
    """Recursive descent over ``+ - * ^ ( )``, integers and identifiers."""

    def __init__(self, ring: Ring, text: str, line: int = 1):
        self.ring = ring
        self.text = text
        self.line = line
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _error(self, msg: str, col: int):
        raise ParseError(msg, self.line, col + 1)

    def _tokenize(self, text: str):
        tokens = []
        i = 0
        while i < len(text):
            if text[i].isspace():
                i += 1
                continue
            m = _TOKEN.match(text, i)
            if not m:
                self._error(f"unexpected character {text[i]!r}", i)
            start = m.start(m.lastgroup)
            kind = m.lastgroup
            value = m.group(kind)
            if tokens and tokens[-1][0] in ("int", "ident") and kind in ("int", "ident"):
                prev_end = tokens[-1][3]
                if prev_end == start:
                    self._error("implicit multiplication is not allowed; use '*'", start)
            tokens.append((kind, value, start, m.end()))
            i = m.end()
        tokens.append(("end", "", len(text), len(text)))
        return tokens

    def _peek(self):
        return self.tokens[self.pos]

    def _take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        if self._peek()[0] == "end":
            self._error("empty polynomial", 0)
        value = self._expr()
        tok = self._peek()
        if tok[0] != "end":
            self._error(f"unexpected token {tok[1]!r}", tok[2])
        return value

    def _expr(self) -> Polynomial:
        value = self._term()
        while self._peek()[1] in ("+", "-") and self._peek()[0] == "op":
            op = self._take()[1]
            rhs = self._term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _term(self) -> Polynomial:
        value = self._unary()
        while self._peek()[0] == "op" and self._peek()[1] == "*":
            self._take()
            value = value * self._unary()
        return value

    def _unary(self) -> Polynomial:
        tok = self._peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self._take()
            inner = self._unary()
            return -inner if tok[1] == "-" else inner
        return self._power()

    def _power(self) -> Polynomial:
        base = self._atom()
        if self._peek()[0] == "op" and self._peek()[1] == "^":
            self._take()
            tok = self._take()
            if tok[0] != "int":
                self._error("exponent must be a nonnegative integer literal", tok[2])
            k = int(tok[1])
            if k > MAX_EXPONENT:
                self._error("exponent too large", tok[2])
            return base**k
        return base

    def _atom(self) -> Polynomial:
        tok = self._take()
        kind, value, start, _ = tok
        if kind == "int":
            return self.ring.constant(int(value))
        if kind == "ident":
            if value not in self.ring.names:
                self._error(f"unknown variable {value!r}", start)
            return self.ring.var(value)
        if kind == "op" and value == "(":
            inner = self._expr()
            close = self._take()
            if close[0] != "op" or close[1] != ")":
                self._error("expected ')'", close[2])
            return inner
        if kind == "end":
            self._error("unexpected end of input", start)
        self._error(f"unexpected token {value!r}", start)
