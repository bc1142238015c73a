"""Buchberger's algorithm and the quotient-ring invariants built on it.

The engine works on an internal term-list form ``[(key, exps, coeff), ...]``
sorted by descending ``key`` (the ring's linear order weight).  Multiplying a
term list by a monomial just adds ``key`` and exponents, and normal forms use
a max-heap of keys, so the hot loops never call back into the ring.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass
from itertools import combinations
from operator import add, sub
from typing import Dict, List, Optional, Sequence

from .arith import FieldSpec
from .errors import InfiniteDimensional, MixedRings, NotHomogeneous, ResourceLimit
from .poly import Monomial, Polynomial, Ring

DEFAULT_MAX_TERMS = 50_000
DEFAULT_MAX_BASIS = 5_000


def max_terms_from_env() -> int:
    value = os.environ.get("LAGMUL_MAX_TERMS")
    return int(value) if value else DEFAULT_MAX_TERMS


@dataclass
class Limits:
    """Resource guard for one Groebner computation."""

    max_terms: int = 0
    max_basis: int = DEFAULT_MAX_BASIS

    def __post_init__(self):
        if not self.max_terms:
            self.max_terms = max_terms_from_env()


# -- term-list primitives -----------------------------------------------------


def _divides(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(max, a, b))


def _coprime(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _mask(e: Monomial) -> int:
    m = 0
    for i, a in enumerate(e):
        if a:
            m |= 1 << i
    return m


class _GBElement:
    """A monic basis element in term-list form."""

    __slots__ = ("terms", "tail", "lexps", "lkey", "mask", "deg")

    def __init__(self, terms):
        self.terms = terms
        self.tail = terms[1:]
        k, e, _ = terms[0]
        self.lkey = k
        self.lexps = e
        self.mask = _mask(e)
        self.deg = sum(e)


def _internal(poly: Polynomial) -> list:
    key = poly.ring.key
    return [(key(e), e, c) for e, c in poly.terms()]


def _external(ring: Ring, terms) -> Polynomial:
    return Polynomial(ring, {e: c for _, e, c in terms})


def _make_monic(terms, F: FieldSpec):
    c0 = terms[0][2]
    if c0 == 1:
        return terms
    inv = F.inv(c0)
    p = F.characteristic
    if p:
        return [(k, e, c * inv % p) for k, e, c in terms]
    return [(k, e, c * inv) for k, e, c in terms]


def _find_reducer(e, emask, reducers):
    for g in reducers:
        if g.mask & ~emask:
            continue
        if _divides(g.lexps, e):
            return g
    return None


def _reduce(initial, reducers: Sequence[_GBElement], F: FieldSpec, limits: Limits, full=True):
    """Normal form of the term multiset ``initial`` modulo monic ``reducers``.

    ``initial`` may contain repeated monomials; they are merged.  With
    ``full=False`` reduction stops at the first irreducible leading term and
    the remaining terms are returned unreduced.
    """
    p = F.characteristic
    coef: Dict[int, object] = {}
    # exponent tuples are built lazily from (reducer exps, multiplier exps)
    src: Dict[int, tuple] = {}
    for k, e, c in initial:
        if k in coef:
            coef[k] = coef[k] + c
        else:
            coef[k] = c
            src[k] = (e, None)
    heap = [-k for k in coef]
    heapq.heapify(heap)
    rem = []
    max_terms = limits.max_terms
    cget = coef.get
    pop = heapq.heappop
    push = heapq.heappush
    while heap:
        k = -pop(heap)
        c = coef.pop(k)
        ge, qe = src.pop(k)
        if p:
            c %= p
        if not c:
            continue
        e = ge if qe is None else tuple(map(add, ge, qe))
        g = _find_reducer(e, _mask(e), reducers) if (full or not rem) else None
        if g is None:
            rem.append((k, e, c))
            continue
        qk = k - g.lkey
        qe = tuple(map(sub, e, g.lexps))
        mc = p - c if p else -c
        for gk, ge, gc in g.tail:
            nk = gk + qk
            v = cget(nk)
            if v is None:
                coef[nk] = mc * gc
                src[nk] = (ge, qe)
                push(heap, -nk)
            else:
                coef[nk] = v + mc * gc
        if len(coef) > max_terms:
            raise ResourceLimit(f"intermediate polynomial exceeded {max_terms} terms")
    return rem


def _spoly_terms(f: _GBElement, g: _GBElement, lcm_e: Monomial, lcm_k: int):
    """Terms of ``(L/lt f) f - (L/lt g) g`` without the cancelling leading terms."""
    fk, gk = lcm_k - f.lkey, lcm_k - g.lkey
    fe = tuple(map(sub, lcm_e, f.lexps))
    ge = tuple(map(sub, lcm_e, g.lexps))
    out = [(k + fk, tuple(map(add, e, fe)), c) for k, e, c in f.terms[1:]]
    out.extend((k + gk, tuple(map(add, e, ge)), -c) for k, e, c in g.terms[1:])
    return out


def _buchberger(gens: List[list], ring: Ring, limits: Limits) -> List[list]:
    """Reduced Groebner basis (term lists) of the ideal generated by ``gens``."""
    F = ring.field
    key = ring.key
    basis: List[_GBElement] = []
    active: List[int] = []
    pairs: list = []  # heap of (deg lcm, key lcm, i, j, lcm exps)

    def update(t: int):
        nonlocal active, pairs
        h = basis[t]
        lh = h.lexps
        cand = []
        for g in active:
            L = _lcm(basis[g].lexps, lh)
            cand.append((g, L, _coprime(basis[g].lexps, lh)))
        kept = []
        for idx, (g, L, disjoint) in enumerate(cand):
            if disjoint:
                kept.append((g, L, disjoint))
                continue
            redundant = any(_divides(L2, L) for _, L2, _ in cand[idx + 1 :]) or any(
                _divides(L2, L) for _, L2, _ in kept
            )
            if not redundant:
                kept.append((g, L, disjoint))
        new_pairs = []
        for g, L, disjoint in kept:
            if not disjoint:
                new_pairs.append((sum(L), key(L), g, t, L))
        old = []
        for item in pairs:
            _, _, i, j, L = item
            if (
                _divides(lh, L)
                and _lcm(basis[i].lexps, lh) != L
                and _lcm(basis[j].lexps, lh) != L
            ):
                continue
            old.append(item)
        pairs = old + new_pairs
        heapq.heapify(pairs)
        active = [g for g in active if not _divides(lh, basis[g].lexps)] + [t]

    def add_element(terms):
        terms = _make_monic(terms, F)
        basis.append(_GBElement(terms))
        if len(basis) > limits.max_basis:
            raise ResourceLimit(f"Groebner basis exceeded {limits.max_basis} elements")
        if not any(terms[0][1]):
            return True  # unit ideal
        update(len(basis) - 1)
        return False

    for terms in sorted(gens, key=lambda ts: ts[0][0]):
        h = _reduce(terms, [basis[i] for i in active], F, limits)
        if h and add_element(h):
            return [[(0, (0,) * ring.nvars, F.one())]]

    while pairs:
        _, lk, i, j, L = heapq.heappop(pairs)
        s = _spoly_terms(basis[i], basis[j], L, lk)
        h = _reduce(s, [basis[a] for a in active], F, limits, )
        if h and add_element(h):
            return [[(0, (0,) * ring.nvars, F.one())]]

    # minimal basis: active elements already have pairwise non-dividing leads
    minimal = sorted((basis[a] for a in active), key=lambda g: g.lkey)
    reduced = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        tail = _reduce(g.terms[1:], others, F, limits)
        reduced.append([g.terms[0]] + tail)
    return reduced


def groebner_basis(gens: Sequence[Polynomial], ring: Ring = None, limits: Limits = None) -> List[Polynomial]:
    """Reduced Groebner basis, sorted ascending by leading monomial."""
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("ring required for an empty generator list")
        ring = gens[0].ring
    limits = limits or Limits()
    internal = []
    for g in gens:
        if g.ring.field != ring.field or g.ring.names != ring.names:
            raise MixedRings(f"{g.ring} vs {ring}")
        if g:
            internal.append(_internal(g.change_ring(ring)))
    if not internal:
        return []
    return [_external(ring, t) for t in _buchberger(internal, ring, limits)]


# -- ideals -------------------------------------------------------------------


class Ideal:
    """An ideal given by generators, with a lazily computed reduced Groebner basis."""

    def __init__(self, gens: Sequence[Polynomial], ring: Ring = None, limits: Limits = None):
        gens = list(gens)
        if ring is None:
            if not gens:
                raise ValueError("ring required for an empty generator list")
            ring = gens[0].ring
        for g in gens:
            if g.ring.field != ring.field or g.ring.names != ring.names:
                raise MixedRings(f"{g.ring} vs {ring}")
        self.ring = ring
        self.generators = [g.change_ring(ring) for g in gens]
        self.limits = limits or Limits()
        self._gb: Optional[List[Polynomial]] = None
        self._gb_internal: Optional[List[_GBElement]] = None

    @property
    def order(self) -> str:
        return self.ring.order

    @property
    def gb(self) -> List[Polynomial]:
        if self._gb is None:
            self._gb = groebner_basis(self.generators, self.ring, self.limits)
        return list(self._gb)

    def _reducers(self) -> List[_GBElement]:
        if self._gb_internal is None:
            self._gb_internal = [_GBElement(_internal(g)) for g in self.gb]
        return self._gb_internal

    def leading_monomials(self) -> List[Monomial]:
        return [g.leading_monomial() for g in self.gb]

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring.field != self.ring.field or f.ring.names != self.ring.names:
            raise MixedRings(f"{f.ring} vs {self.ring}")
        f = f.change_ring(self.ring)
        if not f:
            return f
        rem = _reduce(_internal(f), self._reducers(), self.ring.field, self.limits)
        return _external(self.ring, rem)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def __contains__(self, f: Polynomial) -> bool:
        return self.contains(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def same_ideal(self, other: "Ideal") -> bool:
        """Equality certified by mutual Groebner membership."""
        return self.contains_ideal(other) and other.contains_ideal(self)

    def is_unit(self) -> bool:
        gb = self.gb
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero_dimensional(self) -> bool:
        lms = self.leading_monomials()
        n = self.ring.nvars
        pure = set()
        for e in lms:
            support = [i for i, a in enumerate(e) if a]
            if len(support) == 1:
                pure.add(support[0])
            elif not support:
                return True
        return len(pure) == n

    def standard_monomials(self) -> List[Monomial]:
        """Monomials outside the leading ideal; raises when infinitely many."""
        if not self.is_zero_dimensional():
            raise InfiniteDimensional(f"quotient by {self.gb} is infinite dimensional")
        lms = self.leading_monomials()
        n = self.ring.nvars
        start = (0,) * n
        if any(_divides(m, start) for m in lms):
            return []
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for e in frontier:
                for i in range(n):
                    e2 = e[:i] + (e[i] + 1,) + e[i + 1 :]
                    if e2 in seen or any(_divides(m, e2) for m in lms):
                        continue
                    seen.add(e2)
                    nxt.append(e2)
            frontier = nxt
        key = self.ring.key
        return sorted(seen, key=key)

    def quotient_dimension(self) -> int:
        return len(self.standard_monomials())

    def krull_dimension(self) -> int:
        """Krull dimension of the quotient; ``-1`` for the unit ideal."""
        lms = self.leading_monomials()
        n = self.ring.nvars
        if any(not any(e) for e in lms):
            return -1
        supports = [frozenset(i for i, a in enumerate(e) if a) for e in lms]
        for size in range(n, -1, -1):
            for subset in combinations(range(n), size):
                s = frozenset(subset)
                if not any(sup <= s for sup in supports):
                    return size
        return -1

    def hilbert_numerator(self) -> List[int]:
        """Integer coefficients of N(t) with HS(R/I) = N(t) / (1-t)^n."""
        if not all(g.is_homogeneous() for g in self.generators):
            raise NotHomogeneous("Hilbert series needs homogeneous generators")
        return monomial_hilbert_numerator(self.leading_monomials(), self.ring.nvars)

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]})"


IdealWithBasis = Ideal


def buchberger(gens: Sequence[Polynomial], ring: Ring = None, limits: Limits = None) -> Ideal:
    """Build an :class:`Ideal` and compute its reduced basis eagerly."""
    ideal = Ideal(gens, ring, limits)
    ideal.gb
    return ideal


def normal_form(f: Polynomial, ideal: Ideal) -> Polynomial:
    return ideal.normal_form(f)


def quotient_dimension(ideal: Ideal) -> int:
    return ideal.quotient_dimension()


def krull_dimension(ideal: Ideal) -> int:
    return ideal.krull_dimension()


def hilbert_numerator(ideal: Ideal) -> List[int]:
    return ideal.hilbert_numerator()


# -- Hilbert numerators of monomial ideals -------------------------------------


def _minimalize(mons: Sequence[Monomial]) -> List[Monomial]:
    out: List[Monomial] = []
    for m in sorted(set(mons), key=sum):
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return out


def _poly_mul(a: List[int], b: List[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a: List[int], b: List[int], shift: int = 0, sign: int = 1) -> List[int]:
    out = list(a) + [0] * max(0, len(b) + shift - len(a))
    for j, y in enumerate(b):
        out[j + shift] += sign * y
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def monomial_hilbert_numerator(mons: Sequence[Monomial], nvars: int) -> List[int]:
    """Numerator of the Hilbert series of ``K[x]/(mons)`` over ``(1-t)^nvars``.

    Pivots on a single variable: ``N(I) = N(I + (x)) + t * N(I : x)``.
    """
    mons = _minimalize(mons)
    if not mons:
        return [1]
    if any(not any(m) for m in mons):
        return [0]
    # base case: pairwise coprime generators
    used = 0
    coprime = True
    for m in mons:
        mask = _mask(m)
        if used & mask:
            coprime = False
            break
        used |= mask
    if coprime:
        out = [1]
        for m in mons:
            d = sum(m)
            out = _poly_mul(out, [1] + [0] * (d - 1) + [-1])
        return out
    counts = [0] * nvars
    for m in mons:
        if sum(1 for a in m if a) > 1:
            for i, a in enumerate(m):
                if a:
                    counts[i] += 1
    i = max(range(nvars), key=lambda v: counts[v])
    x = tuple(1 if v == i else 0 for v in range(nvars))
    plus = [m for m in mons if not m[i]] + [x]
    colon = [m[:i] + (max(m[i] - 1, 0),) + m[i + 1 :] for m in mons]
    return _poly_add(
        monomial_hilbert_numerator(plus, nvars),
        monomial_hilbert_numerator(colon, nvars),
        shift=1,
    )
