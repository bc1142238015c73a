"""Koszul and Eagon-Northcott complexes, their tensor total complex, and
degreewise homology over the base field.

Complexes are indexed homologically: ``d(p)`` maps ``C_p -> C_{p-1}`` and is
stored as a :class:`PolyMatrix` whose rows index the target basis and whose
columns index the source basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb
from operator import add
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import HypothesesFail, MixedRings, NotGraded, ShapeMismatch, TruncationTooSmall
from .groebner import Ideal, Limits
from .matrix import PolyMatrix, field_rank
from .poly import Monomial, Polynomial, Ring
from . import critical, series


@dataclass(frozen=True)
class BasisElement:
    label: tuple
    degree: int

    def describe(self) -> str:
        return _describe_label(self.label)


def _describe_label(label) -> str:
    if label[:1] == ("xi",):
        _, idx, js = label
        s = "".join(f"xi{i + 1}" for i in idx)
        s += "".join(f"*eta{l + 1}^{j}" for l, j in enumerate(js) if j)
        return s or "1"
    if label[:1] == ("zeta",):
        return "".join(f"zeta{k + 1}" for k in label[1]) or "1"
    if label[:1] == ("tensor",):
        return f"{_describe_label(label[1])} (x) {_describe_label(label[2])}"
    return "1"


class GradedFreeComplex:
    """A finite complex of free modules over ``ring`` with degree-carrying bases."""

    def __init__(self, ring: Ring, modules: Sequence[Sequence[BasisElement]],
                 differentials: Sequence[PolyMatrix], name: str = ""):
        modules = [list(m) for m in modules]
        differentials = list(differentials)
        if len(differentials) != max(len(modules) - 1, 0):
            raise ShapeMismatch("need one differential per positive homological index")
        for p, d in enumerate(differentials, start=1):
            if d.shape != (len(modules[p - 1]), len(modules[p])):
                raise ShapeMismatch(f"d_{p} has shape {d.shape}")
        self.ring = ring
        self.modules = modules
        self._d = differentials
        self.name = name

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def ranks(self) -> List[int]:
        return [len(m) for m in self.modules]

    def module(self, p: int) -> List[BasisElement]:
        return self.modules[p] if 0 <= p < len(self.modules) else []

    def d(self, p: int) -> PolyMatrix:
        """Differential ``C_p -> C_{p-1}`` (zero matrix outside the stored range)."""
        if 1 <= p <= self.length:
            return self._d[p - 1]
        return PolyMatrix.zeros(self.ring, len(self.module(p - 1)), len(self.module(p)))

    def d_squared_zero(self) -> bool:
        return all((self.d(p - 1) @ self.d(p)).is_zero() for p in range(2, self.length + 1))

    def is_graded(self) -> bool:
        """Every nonzero entry is homogeneous of degree source minus target."""
        for p in range(1, self.length + 1):
            d = self.d(p)
            for t, target in enumerate(self.modules[p - 1]):
                for s, source in enumerate(self.modules[p]):
                    entry = d[t, s]
                    if not entry:
                        continue
                    want = source.degree - target.degree
                    if want < 0 or not entry.is_homogeneous() or entry.total_degree() != want:
                        return False
        return True

    def h0_presentation(self) -> List[Polynomial]:
        """Generators of the image of ``d_1`` when ``C_0`` is the ring itself."""
        if len(self.module(0)) != 1:
            raise ShapeMismatch("H_0 is a cyclic quotient only when C_0 has rank one")
        d1 = self.d(1)
        return [e for e in d1.rows[0] if e] if d1.nrows else []

    def dump(self) -> str:
        lines = [f"complex {self.name or 'C'} over {self.ring}"]
        for p, basis in enumerate(self.modules):
            lines.append(f"C_{p} rank {len(basis)}")
            for b in basis:
                lines.append(f"  {b.describe()} degree {b.degree}")
        for p in range(1, self.length + 1):
            lines.append(f"d_{p}: C_{p} -> C_{p - 1}")
            for row in self.d(p).rows:
                lines.append("  [" + ", ".join(str(e) for e in row) + "]")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"GradedFreeComplex({self.name!r}, ranks={self.ranks()})"


# -- constructions ------------------------------------------------------------


def koszul_complex(gens: Sequence[Polynomial], degrees: Sequence[int] = None,
                   ring: Ring = None) -> GradedFreeComplex:
    """``d(zeta_K) = sum_l (-1)^(l-1) g_{k_l} zeta_{K - k_l}`` with ``deg zeta_K = sum d_k``."""
    gens = list(gens)
    if not gens:
        raise ValueError("Koszul complex needs at least one generator")
    ring = ring or gens[0].ring
    r = len(gens)
    if degrees is None:
        degrees = [g.total_degree() if g else 0 for g in gens]
    modules = [
        [BasisElement(("zeta", K), sum(degrees[k] for k in K)) for K in combinations(range(r), q)]
        for q in range(r + 1)
    ]
    diffs = []
    zero = ring.zero()
    for q in range(1, r + 1):
        index = {b.label[1]: i for i, b in enumerate(modules[q - 1])}
        rows = [[zero] * len(modules[q]) for _ in modules[q - 1]]
        for s, b in enumerate(modules[q]):
            K = b.label[1]
            for l, k in enumerate(K):
                t = index[K[:l] + K[l + 1 :]]
                rows[t][s] = gens[k] if l % 2 == 0 else -gens[k]
        diffs.append(PolyMatrix(ring, rows, len(modules[q])))
    return GradedFreeComplex(ring, modules, diffs, "koszul")


@lru_cache(maxsize=None)
def _exponent_vectors(total: int, parts: int) -> Tuple[Tuple[int, ...], ...]:
    """Nonnegative vectors of length ``parts`` summing to ``total``, lexicographic."""
    if parts == 1:
        return ((total,),)
    out = []
    for first in range(total + 1):
        for rest in _exponent_vectors(total - first, parts - 1):
            out.append((first,) + rest)
    return tuple(out)


def eagon_northcott_rank(n: int, r: int, p: int) -> int:
    if p == 0:
        return 1
    return comb(n, p + r) * comb(p + r - 1, r)


def eagon_northcott(m: PolyMatrix, degrees: Sequence[int]) -> GradedFreeComplex:
    """Eagon-Northcott complex of an ``(r+1) x n`` matrix whose rows have degrees ``d_l``.

    Basis of ``C_p`` (p >= 1): ``xi_I eta^j`` with ``|I| = p + r`` and
    ``|j| = p - 1``, of degree ``sum (j_l + 1) d_l - (p + r)``.
    """
    rows1, n = m.shape
    r = rows1 - 1
    degrees = list(degrees)
    if r < 1 or r >= n or len(degrees) != r + 1:
        raise ShapeMismatch(f"need an (r+1) x n matrix with 1 <= r < n and r+1 degrees, got {m.shape}")
    ring = m.ring
    modules = [[BasisElement(("xi", (), ()), 0)]]
    for p in range(1, n - r + 1):
        basis = []
        for I in combinations(range(n), p + r):
            for js in _exponent_vectors(p - 1, r + 1):
                deg = sum((j + 1) * d for j, d in zip(js, degrees)) - (p + r)
                basis.append(BasisElement(("xi", I, js), deg))
        modules.append(basis)
    zero = ring.zero()
    diffs = []
    # p = 1: full (r+1)-minors on the chosen columns
    row = [m.submatrix(range(r + 1), b.label[1]).determinant() for b in modules[1]]
    diffs.append(PolyMatrix(ring, [row], len(modules[1])))
    for p in range(2, n - r + 1):
        index = {b.label[1:]: i for i, b in enumerate(modules[p - 1])}
        rows = [[zero] * len(modules[p]) for _ in modules[p - 1]]
        for s, b in enumerate(modules[p]):
            _, I, js = b.label
            for l in range(r + 1):
                if not js[l]:
                    continue
                js2 = js[:l] + (js[l] - 1,) + js[l + 1 :]
                for mi, i in enumerate(I):
                    entry = m[l, i]
                    if not entry:
                        continue
                    t = index[(I[:mi] + I[mi + 1 :], js2)]
                    rows[t][s] = rows[t][s] + (entry if mi % 2 == 0 else -entry)
        diffs.append(PolyMatrix(ring, rows, len(modules[p])))
    return GradedFreeComplex(ring, modules, diffs, "eagon-northcott")


def tensor_total(c1: GradedFreeComplex, c2: GradedFreeComplex) -> GradedFreeComplex:
    """Total complex of ``c1 (x) c2`` with ``d(a b) = d1(a) b + (-1)^p a d2(b)``."""
    if c1.ring.field != c2.ring.field or c1.ring.names != c2.ring.names:
        raise MixedRings(f"{c1.ring} vs {c2.ring}")
    ring = c1.ring
    top = c1.length + c2.length
    # basis of T_k: blocks p = 0..k, each C1_p x C2_(k-p) in (a, b) order
    modules: List[List[BasisElement]] = []
    where: List[Dict[Tuple[int, int, int], int]] = []
    for k in range(top + 1):
        basis, pos = [], {}
        for p in range(k + 1):
            q = k - p
            for a, ea in enumerate(c1.module(p)):
                for b, eb in enumerate(c2.module(q)):
                    pos[(p, a, b)] = len(basis)
                    basis.append(BasisElement(("tensor", ea.label, eb.label), ea.degree + eb.degree))
        modules.append(basis)
        where.append(pos)
    zero = ring.zero()
    diffs = []
    for k in range(1, top + 1):
        rows = [[zero] * len(modules[k]) for _ in modules[k - 1]]
        for (p, a, b), s in where[k].items():
            q = k - p
            if p >= 1:
                d1 = c1.d(p)
                for ta in range(d1.nrows):
                    e = d1[ta, a]
                    if e:
                        t = where[k - 1][(p - 1, ta, b)]
                        rows[t][s] = rows[t][s] + e
            if q >= 1:
                d2 = c2.d(q)
                for tb in range(d2.nrows):
                    e = d2[tb, b]
                    if e:
                        t = where[k - 1][(p, a, tb)]
                        rows[t][s] = rows[t][s] + (e if p % 2 == 0 else -e)
        diffs.append(PolyMatrix(ring, rows, len(modules[k])))
    return GradedFreeComplex(ring, modules, diffs, f"{c1.name} (x) {c2.name}")


# -- graded strands -----------------------------------------------------------


@lru_cache(maxsize=None)
def monomials_of_degree(nvars: int, degree: int) -> Tuple[Monomial, ...]:
    if degree < 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return tuple(sorted(out, reverse=True))


@dataclass
class Strand:
    """Degree-``degree`` piece of a graded complex as field matrices.

    ``bases[p]`` lists ``(basis index, monomial)`` pairs; ``maps[p]`` holds
    for each source vector of ``C_p`` its image in ``C_{p-1}`` as a sparse
    ``{target position: raw value}`` dict.
    """

    degree: int
    bases: List[List[Tuple[int, Monomial]]]
    maps: List[List[Dict[int, object]]]

    def dims(self) -> List[int]:
        return [len(b) for b in self.bases]

    def dense(self, p: int) -> List[List]:
        """Matrix of ``d_p`` on the strand: rows = targets, columns = sources."""
        nt = len(self.bases[p - 1]) if p >= 1 else 0
        out = [[0] * len(self.bases[p]) for _ in range(nt)]
        for s, img in enumerate(self.maps[p]):
            for t, v in img.items():
                out[t][s] = v
        return out


def graded_strand(c: GradedFreeComplex, deg: int, check: bool = True) -> Strand:
    if check and not c.is_graded():
        raise NotGraded(f"{c!r} is not graded")
    n = c.ring.nvars
    bases = []
    positions = []
    for basis in c.modules:
        items = []
        for idx, b in enumerate(basis):
            for mono in monomials_of_degree(n, deg - b.degree):
                items.append((idx, mono))
        bases.append(items)
        positions.append({item: i for i, item in enumerate(items)})
    maps: List[List[Dict[int, object]]] = [[{} for _ in bases[0]]]
    F = c.ring.field
    for p in range(1, len(c.modules)):
        d = c.d(p)
        column_entries = [[(t, d[t, s]) for t in range(d.nrows) if d[t, s]] for s in range(d.ncols)]
        target_pos = positions[p - 1]
        images = []
        for s, mono in bases[p]:
            img: Dict[int, object] = {}
            for t, entry in column_entries[s]:
                for e, coef in entry.coeffs.items():
                    key = target_pos[(t, tuple(map(add, e, mono)))]
                    v = F.add(img.get(key, 0), coef)
                    if v:
                        img[key] = v
                    else:
                        img.pop(key, None)
            images.append(img)
        maps.append(images)
    return Strand(deg, bases, maps)


def strand_ranks(strand: Strand, field) -> List[int]:
    """``rank d_p`` on the strand for every p (``rank d_0 = 0``)."""
    return [0] + [field_rank([dict(v) for v in strand.maps[p]], field) for p in range(1, len(strand.bases))]


def strand_homology(c: GradedFreeComplex, deg: int, check: bool = True) -> List[int]:
    """``dim ker d_p - rank d_(p+1)`` on the degree-``deg`` strand."""
    strand = graded_strand(c, deg, check)
    ranks = strand_ranks(strand, c.ring.field) + [0]
    dims = strand.dims()
    return [dims[p] - ranks[p] - ranks[p + 1] for p in range(len(dims))]


def homology_vanishes(c: GradedFreeComplex, max_degree: int) -> Tuple[bool, Optional[Tuple[int, List[int]]]]:
    """True when ``H_p = 0`` for all ``p > 0`` in strands ``0..max_degree``.

    Returns the first offending ``(degree, homology)`` otherwise.
    """
    if not c.is_graded():
        raise NotGraded(f"{c!r} is not graded")
    for deg in range(max_degree + 1):
        h = strand_homology(c, deg, check=False)
        if any(h[1:]):
            return False, (deg, h)
    return True, None


def koszul_regularity_check(gens: Sequence[Polynomial], max_degree: int = 8) -> Dict:
    """Koszul exactness in positive homological degree, strand by strand."""
    c = koszul_complex(gens)
    ok, witness = homology_vanishes(c, max_degree)
    return {
        "regular": ok,
        "max_degree": max_degree,
        "witness": None if ok else {"degree": witness[0], "homology": witness[1]},
    }


# -- dimension identities ------------------------------------------------------


def default_truncation(degrees: Sequence[int]) -> int:
    return max(10, sum(d - 1 for d in degrees) + 1)


@dataclass
class HilbertCheck:
    passed: bool
    truncation: int
    hilbert_function: List[int]
    strand_h0: List[int]
    en_identity: bool
    total_dimension: int
    milnor_sum: int
    g_at_one: Optional[int]
    g_at_one_expected: int
    notes: List[str] = field(default_factory=list)

    def as_dict(self) -> Dict:
        return {
            "passed": self.passed,
            "truncation": self.truncation,
            "hilbert_function": self.hilbert_function,
            "strand_h0": self.strand_h0,
            "hilbert_identity_holds": self.en_identity,
            "total_dimension": self.total_dimension,
            "milnor_sum": self.milnor_sum,
            "G_at_1": self.g_at_one,
            "G_at_1_expected": self.g_at_one_expected,
            "notes": self.notes,
        }


def leading_complexes(sys: "critical.ConstrainedSystem"):
    """``(EN of the leading-form matrix, Koszul on leading forms, their total complex)``."""
    degrees = sys.degrees
    en = eagon_northcott(critical.leading_form_jacobian(sys), degrees)
    kz = koszul_complex([g.leading_form() for g in sys.constraints], degrees[:-1])
    return en, kz, tensor_total(en, kz)


def affine_complexes(sys: "critical.ConstrainedSystem"):
    degrees = sys.degrees
    en = eagon_northcott(critical.augmented_jacobian(sys), degrees)
    kz = koszul_complex(list(sys.constraints), degrees[:-1])
    return en, kz, tensor_total(en, kz)


def h0_hilbert_report(sys: "critical.ConstrainedSystem", truncation: int = None,
                      limits: Limits = None, milnor: int = None) -> HilbertCheck:
    """Compare ``K[x]/(I'+J')`` with the H_0 strands of the leading total complex."""
    hyp = critical.check_hypotheses(sys, limits)
    if not hyp.all_pass:
        raise HypothesesFail(f"hypotheses {hyp.failed()} fail")
    n, r, degrees = sys.n, sys.r, sys.degrees
    truncation = truncation if truncation is not None else default_truncation(degrees)
    ideal = critical.leading_critical_ideal(sys, limits)
    hf = series.hilbert_function(ideal.hilbert_numerator(), n, truncation)
    if hf[truncation]:
        raise TruncationTooSmall(
            f"K[x]/(I'+J') is nonzero in degree {truncation}; raise the truncation", truncation
        )
    _, _, total = leading_complexes(sys)
    strand_h0 = []
    for deg in range(truncation + 1):
        strand_h0.append(strand_homology(total, deg, check=False)[0])
    notes = []
    # Hilbert series of K[x]/J' times prod(1 - t^d_i) must match K[x]/(I'+J')
    j_ideal = Ideal(critical.leading_form_jacobian(sys).minors(r + 1), sys.ring, limits)
    nj = j_ideal.hilbert_numerator()
    lhs = series.hilbert_function(
        series.poly_mul(nj, series.complete_intersection_numerator(degrees[:r])), n, truncation
    )
    en_identity = lhs == hf
    quotient, exact = series.divide_by_one_minus_t(nj, n - r)
    g_at_one = sum(quotient) if exact else None
    if not exact:
        notes.append("numerator of K[x]/J' is not divisible by (1-t)^(n-r)")
    g_expected = series.series_coefficient(
        series.RationalGF(tuple(series.one_minus_t_power(n)), tuple(degrees)), n - r
    )
    total_dim = sum(hf)
    if milnor is None:
        milnor = critical.milnor_sum(sys, limits)
    prod_d = 1
    for d in degrees[:r]:
        prod_d *= d
    passed = (
        strand_h0 == hf
        and total_dim == milnor
        and en_identity
        and g_at_one == g_expected
        and prod_d * g_at_one == total_dim
    )
    return HilbertCheck(passed, truncation, hf, strand_h0, en_identity, total_dim, milnor,
                        g_at_one, g_expected, notes)


def h0_hilbert_check(sys: "critical.ConstrainedSystem", truncation: int = None,
                     limits: Limits = None) -> bool:
    return h0_hilbert_report(sys, truncation, limits).passed
