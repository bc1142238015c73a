"""Critical points of a polynomial restricted to a complete intersection.

The Milnor-number sum is computed three independent ways:

* :func:`milnor_sum` -- dimension of ``K[x]/(I + J)`` where ``I`` is the
  constraint ideal and ``J`` the maximal minors of the augmented Jacobian;
* :func:`lagrange_jacobian_dimension` -- dimension of the Jacobian ring of the
  Lagrange function ``F = f + sum y_i f_i`` in ``K[x, y]``;
* :func:`predicted_milnor_sum` -- a coefficient of a rational generating
  function in the degrees alone (valid under :func:`check_hypotheses`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Set, Tuple

import numpy as np

from .arith import FieldSpec
from .errors import (
    FieldTooLarge,
    InfiniteDimensional,
    NonIsolatedCritical,
    NotHomogeneous,
    RationalFieldUnsupported,
    ReservedVariable,
    TooManyConstraints,
    ZeroPolynomial,
)
from .groebner import Ideal, Limits
from .matrix import PolyMatrix, dense_rank
from .poly import HOMOGENIZING_VARIABLE, Polynomial, Ring
from . import series

BRUTE_FORCE_LIMIT = 10**7

LAGRANGE_PREFIX = "y"


def is_reserved_name(name: str) -> bool:
    if name == HOMOGENIZING_VARIABLE:
        return True
    return len(name) == 2 and name[0] == LAGRANGE_PREFIX and name[1] in "123456789"


@dataclass(frozen=True)
class ConstrainedSystem:
    """Objective ``f`` on the variety ``f_1 = ... = f_r = 0`` in affine n-space."""

    f: Polynomial
    constraints: Tuple[Polynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        ring = self.f.ring
        r, n = len(self.constraints), ring.nvars
        if r < 1:
            raise TooManyConstraints("at least one constraint is required")
        if r >= n:
            raise TooManyConstraints(f"need fewer constraints than variables (r={r}, n={n})")
        for name in ring.names:
            if is_reserved_name(name):
                raise ReservedVariable(f"variable name {name!r} is reserved")
        if self.f.is_zero() or any(g.is_zero() for g in self.constraints):
            raise ZeroPolynomial("objective and constraints must be nonzero")
        for g in self.constraints:
            if g.ring.field != ring.field or g.ring.names != ring.names:
                raise ValueError("objective and constraints must share a ring")

    @classmethod
    def from_text(cls, characteristic: int, names: Sequence[str], f: str,
                  constraints: Sequence[str], order: str = "degrevlex") -> "ConstrainedSystem":
        ring = Ring(FieldSpec(characteristic), tuple(names), order)
        return cls(ring.parse(f), tuple(ring.parse(c) for c in constraints))

    @property
    def ring(self) -> Ring:
        return self.f.ring

    @property
    def field(self) -> FieldSpec:
        return self.ring.field

    @property
    def n(self) -> int:
        return self.ring.nvars

    @property
    def r(self) -> int:
        return len(self.constraints)

    @property
    def degrees(self) -> Tuple[int, ...]:
        """``(d_1, ..., d_r, d_{r+1})`` with ``d_{r+1} = deg f``."""
        return tuple(g.total_degree() for g in self.constraints) + (self.f.total_degree(),)

    def with_ring(self, ring: Ring) -> "ConstrainedSystem":
        return ConstrainedSystem(self.f.change_ring(ring), tuple(g.change_ring(ring) for g in self.constraints))


def jacobian_matrix(polys: Sequence[Polynomial], ring: Ring = None) -> PolyMatrix:
    ring = ring or polys[0].ring
    return PolyMatrix(ring, [[g.derivative(j) for j in range(ring.nvars)] for g in polys], ring.nvars)


def augmented_jacobian(sys: ConstrainedSystem) -> PolyMatrix:
    """Rows ``d f_1, ..., d f_r`` followed by ``d f``."""
    return jacobian_matrix(list(sys.constraints) + [sys.f], sys.ring)


def leading_form_jacobian(sys: ConstrainedSystem) -> PolyMatrix:
    """Same layout built from the top-degree forms of ``f_1, ..., f_r, f``."""
    forms = [g.leading_form() for g in sys.constraints] + [sys.f.leading_form()]
    return jacobian_matrix(forms, sys.ring)


def minor_ideal(m: PolyMatrix, k: int) -> List[Polynomial]:
    return m.minors(k)


def critical_ideal(sys: ConstrainedSystem, limits: Limits = None) -> Ideal:
    """``I + J``: the constraints plus the (r+1)-minors of the augmented Jacobian."""
    gens = list(sys.constraints) + augmented_jacobian(sys).minors(sys.r + 1)
    return Ideal(gens, sys.ring, limits)


def leading_critical_ideal(sys: ConstrainedSystem, limits: Limits = None) -> Ideal:
    """``I' + J'`` built from leading forms."""
    gens = [g.leading_form() for g in sys.constraints] + leading_form_jacobian(sys).minors(sys.r + 1)
    return Ideal(gens, sys.ring, limits)


def _finite_dimension(ideal: Ideal) -> int:
    if ideal.is_unit():
        return 0
    try:
        return ideal.quotient_dimension()
    except InfiniteDimensional as exc:
        raise NonIsolatedCritical(str(exc)) from None


def milnor_sum(sys: ConstrainedSystem, limits: Limits = None) -> int:
    """``dim_K K[x]/(I + J)``; 0 when there are no critical points."""
    return _finite_dimension(critical_ideal(sys, limits))


def lagrange_ring(sys: ConstrainedSystem) -> Ring:
    """``K[y_1..y_r, x_1..x_n]``; multipliers first, which Buchberger handles faster."""
    ys = tuple(f"{LAGRANGE_PREFIX}{i + 1}" for i in range(sys.r))
    return Ring(sys.field, ys + sys.ring.names, sys.ring.order)


def lagrange_function(sys: ConstrainedSystem) -> Polynomial:
    """``F = f + sum_i y_i f_i``."""
    ring = lagrange_ring(sys)
    r = sys.r
    positions = [r + j for j in range(sys.n)]
    F = sys.f.embed(ring, positions)
    for i, g in enumerate(sys.constraints):
        F = F + ring.gen(i) * g.embed(ring, positions)
    return F


def lagrange_jacobian_ideal(sys: ConstrainedSystem, limits: Limits = None) -> Ideal:
    F = lagrange_function(sys)
    ring = F.ring
    gens = [F.derivative(j) for j in range(ring.nvars)]
    return Ideal(gens, ring, limits)


def lagrange_jacobian_dimension(sys: ConstrainedSystem, limits: Limits = None) -> int:
    """``dim_K K[x, y] / (dF/dx_1, ..., dF/dx_n, f_1, ..., f_r)``."""
    return _finite_dimension(lagrange_jacobian_ideal(sys, limits))


def jacobian_ring_dimension(f: Polynomial, limits: Limits = None) -> int:
    """Unconstrained Milnor sum of ``f``; a debugging aid."""
    return _finite_dimension(Ideal([f.derivative(j) for j in range(f.ring.nvars)], f.ring, limits))


def predicted_milnor_sum(n: int, degrees: Sequence[int]) -> int:
    return series.predicted_milnor_sum(n, degrees)


# -- projective certificates ---------------------------------------------------


def _require_homogeneous(gens: Sequence[Polynomial]):
    for g in gens:
        if not g.is_homogeneous():
            raise NotHomogeneous(f"{g} is not homogeneous")


def proj_variety_empty(homogeneous_gens: Sequence[Polynomial], ring: Ring = None,
                       limits: Limits = None) -> bool:
    """True iff the homogeneous ideal is irrelevant (finite-dimensional quotient)."""
    _require_homogeneous(homogeneous_gens)
    ring = ring or homogeneous_gens[0].ring
    return Ideal(homogeneous_gens, ring, limits).is_zero_dimensional()


@dataclass
class SmoothCICheck:
    """Outcome of a smooth-complete-intersection test in projective space."""

    passed: bool
    empty: bool
    krull_dimension: int
    expected_dimension: int
    codimension_ok: bool
    smooth: bool
    certificate: List[str] = field(default_factory=list)

    def as_dict(self) -> Dict:
        return {
            "passed": self.passed,
            "empty": self.empty,
            "krull_dimension": self.krull_dimension,
            "expected_dimension": self.expected_dimension,
            "codimension_ok": self.codimension_ok,
            "smooth": self.smooth,
            "certificate": list(self.certificate),
        }


def smooth_ci_check(gens: Sequence[Polynomial], ring: Ring = None, limits: Limits = None) -> SmoothCICheck:
    """Complete intersection of the expected codimension whose singular locus is empty.

    An empty projective scheme passes vacuously and is flagged ``empty``.
    """
    _require_homogeneous(gens)
    ring = ring or gens[0].ring
    k = len(gens)
    ideal = Ideal(gens, ring, limits)
    dim = ideal.krull_dimension()
    expected = ring.nvars - k
    empty = ideal.is_zero_dimensional()
    codim_ok = empty or dim == expected
    if empty:
        smooth = True
        sing = ideal
    else:
        minors = jacobian_matrix(gens, ring).minors(k)
        sing = Ideal(list(gens) + minors, ring, limits)
        smooth = sing.is_zero_dimensional()
    passed = codim_ok and smooth
    certificate = []
    if not codim_ok:
        certificate = [str(g) for g in ideal.gb]
    elif not smooth:
        certificate = [str(g) for g in sing.gb]
    return SmoothCICheck(passed, empty, dim, expected, codim_ok, smooth, certificate)


def proj_smooth_ci(homogeneous_gens: Sequence[Polynomial], ambient_dim: int = None,
                   ring: Ring = None, limits: Limits = None) -> bool:
    ring = ring or homogeneous_gens[0].ring
    if ambient_dim is not None and ambient_dim != ring.nvars - 1:
        raise ValueError(f"ring has {ring.nvars} variables, not P^{ambient_dim}")
    if len(homogeneous_gens) > ring.nvars:
        raise ValueError("more generators than variables")
    return smooth_ci_check(homogeneous_gens, ring, limits).passed


@dataclass
class HypothesisReport:
    """The four hypotheses under which the degree formula applies.

    h1: the projective closure of ``f_1 = ... = f_r = 0`` is a smooth complete
        intersection in P^n;
    h2: it meets the hyperplane at infinity transversally (leading forms of the
        constraints cut a smooth complete intersection in P^(n-1));
    h3: leading forms of the constraints and of ``f`` do the same;
    h4: ``deg f`` is prime to a positive characteristic.
    """

    h1: bool
    h2: bool
    h3: bool
    h4: bool
    details: Dict[str, Dict] = field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return self.h1 and self.h2 and self.h3 and self.h4

    def failed(self) -> List[str]:
        return [name.upper() for name in ("h1", "h2", "h3", "h4") if not getattr(self, name)]

    def as_dict(self) -> Dict:
        return {
            "H1": self.h1,
            "H2": self.h2,
            "H3": self.h3,
            "H4": self.h4,
            "all_pass": self.all_pass,
            "details": self.details,
            "note": "scheme-theoretic certificates only",
        }


def characteristic_condition(sys: ConstrainedSystem) -> bool:
    p = sys.field.characteristic
    return p == 0 or sys.degrees[-1] % p != 0


def check_hypotheses(sys: ConstrainedSystem, limits: Limits = None) -> HypothesisReport:
    proj_ring = sys.ring.prepend()
    closures = [g.homogenize(proj_ring) for g in sys.constraints]
    forms = [g.leading_form() for g in sys.constraints]
    c1 = smooth_ci_check(closures, proj_ring, limits)
    c2 = smooth_ci_check(forms, sys.ring, limits)
    c3 = smooth_ci_check(forms + [sys.f.leading_form()], sys.ring, limits)
    h4 = characteristic_condition(sys)
    details = {
        "H1": c1.as_dict(),
        "H2": c2.as_dict(),
        "H3": c3.as_dict(),
        "H4": {"passed": h4, "characteristic": sys.field.characteristic, "deg_f": sys.degrees[-1]},
    }
    return HypothesisReport(c1.passed, c2.passed, c3.passed, h4, details)


def affine_smooth_ci(sys: ConstrainedSystem, limits: Limits = None) -> bool:
    """``1 in I + (r x r minors of the constraint Jacobian)``."""
    minors = jacobian_matrix(sys.constraints, sys.ring).minors(sys.r)
    return Ideal(list(sys.constraints) + minors, sys.ring, limits).is_unit()


# -- point oracles over F_p ----------------------------------------------------


def _grid(p: int, n: int) -> List[np.ndarray]:
    if p**n > BRUTE_FORCE_LIMIT:
        raise FieldTooLarge(f"{p}^{n} points exceed the scan limit {BRUTE_FORCE_LIMIT}")
    axes = np.indices((p,) * n, dtype=np.int64).reshape(n, -1)
    return list(axes)


def _evaluate_grid(poly: Polynomial, coords: Sequence[np.ndarray], p: int) -> np.ndarray:
    size = coords[0].shape[0] if coords else 1
    total = np.zeros(size, dtype=np.int64)
    powers: Dict[Tuple[int, int], np.ndarray] = {}

    def power(i: int, a: int) -> np.ndarray:
        key = (i, a)
        if key not in powers:
            powers[key] = coords[i] % p if a == 1 else power(i, a - 1) * coords[i] % p
        return powers[key]

    for e, c in poly.coeffs.items():
        term = np.full(size, int(c) % p, dtype=np.int64)
        for i, a in enumerate(e):
            if a:
                term = term * power(i, a) % p
        total = (total + term) % p
    return total


def _require_small_prime_field(sys: ConstrainedSystem) -> int:
    p = sys.field.characteristic
    if p == 0:
        raise RationalFieldUnsupported("point scans need a prime field")
    if p**sys.n > BRUTE_FORCE_LIMIT:
        raise FieldTooLarge(f"{p}^{sys.n} points exceed the scan limit {BRUTE_FORCE_LIMIT}")
    return p


def brute_force_critical_points(sys: ConstrainedSystem) -> Set[Tuple[int, ...]]:
    """Points of F_p^n on the constraints where the augmented Jacobian has rank <= r."""
    p = _require_small_prime_field(sys)
    coords = _grid(p, sys.n)
    mask = np.ones(coords[0].shape[0], dtype=bool)
    for g in sys.constraints:
        mask &= _evaluate_grid(g, coords, p) == 0
    candidates = np.nonzero(mask)[0]
    jac = augmented_jacobian(sys)
    out = set()
    for idx in candidates:
        pt = tuple(int(c[idx]) for c in coords)
        if dense_rank(jac.evaluate(pt), sys.field) <= sys.r:
            out.add(pt)
    return out


def variety_points(ideal: Ideal) -> Set[Tuple[int, ...]]:
    """Common zeros in F_p^n of the ideal's reduced Groebner basis."""
    ring = ideal.ring
    p = ring.field.characteristic
    if p == 0:
        raise RationalFieldUnsupported("point scans need a prime field")
    coords = _grid(p, ring.nvars)
    mask = np.ones(coords[0].shape[0], dtype=bool)
    for g in ideal.gb:
        mask &= _evaluate_grid(g, coords, p) == 0
    return {tuple(int(c[i]) for c in coords) for i in np.nonzero(mask)[0]}


# -- coordinate changes ----------------------------------------------------------


def linear_substitution(poly: Polynomial, M: Sequence[Sequence[int]]) -> Polynomial:
    """``poly(M x)``: variable ``x_i`` becomes ``sum_j M[i][j] x_j``."""
    ring = poly.ring
    images = []
    for i in range(ring.nvars):
        lin = ring.zero()
        for j, a in enumerate(M[i]):
            if a:
                lin = lin + ring.gen(j).scale(a)
        images.append(lin)
    out = ring.zero()
    cache: Dict[Tuple[int, int], Polynomial] = {}
    for e, c in poly.coeffs.items():
        term = ring.constant(c)
        for i, a in enumerate(e):
            if a:
                if (i, a) not in cache:
                    cache[(i, a)] = images[i] ** a
                term = term * cache[(i, a)]
        out = out + term
    return out


def transform_system(sys: ConstrainedSystem, M: Sequence[Sequence[int]]) -> ConstrainedSystem:
    return ConstrainedSystem(
        linear_substitution(sys.f, M), tuple(linear_substitution(g, M) for g in sys.constraints)
    )
