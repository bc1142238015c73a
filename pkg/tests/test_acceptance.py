"""Acceptance criteria, one test per criterion.

Each test writes a single ``[PASS]``/``[FAIL]`` line straight to the terminal
(bypassing output capture) and then asserts the criterion.
"""

import random
import time

import pytest
from itertools import product
from math import comb

from lagmul.arith import FieldSpec
from lagmul.cli import random_system, run_random_harness
from lagmul.complexes import (
    affine_complexes,
    eagon_northcott,
    eagon_northcott_rank,
    h0_hilbert_report,
    homology_vanishes,
    koszul_regularity_check,
    leading_complexes,
)
from lagmul.critical import (
    ConstrainedSystem,
    brute_force_critical_points,
    check_hypotheses,
    critical_ideal,
    lagrange_jacobian_dimension,
    lagrange_jacobian_ideal,
    leading_critical_ideal,
    milnor_sum,
    predicted_milnor_sum,
    transform_system,
    variety_points,
)
from lagmul.errors import InfiniteDimensional
from lagmul.groebner import Ideal, groebner_basis
from lagmul.matrix import PolyMatrix
from lagmul.poly import Ring, euler_check


@pytest.fixture
def report(request):
    terminal = request.config.pluginmanager.get_plugin("terminalreporter")

    def emit(number: int, ok: bool, detail: str):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
        if terminal is not None:
            terminal.write_line("")
            terminal.write_line(line)
        else:
            print(line)
        assert ok, detail

    return emit


def circle(char=0):
    return ConstrainedSystem.from_text(char, ["x1", "x2"], "x1", ["x1^2 + x2^2 - 1"])


def fermat():
    return ConstrainedSystem.from_text(0, ["x1", "x2", "x3"], "x1 + 2*x2", ["x1^3 + x2^3 + x3^3 - 1"])


def parabola():
    return ConstrainedSystem.from_text(0, ["x1", "x2"], "x2", ["x2 - x1^2"])


def _three_way(sys_):
    start = time.perf_counter()
    hyp = check_hypotheses(sys_)
    values = (milnor_sum(sys_), lagrange_jacobian_dimension(sys_), predicted_milnor_sum(sys_.n, sys_.degrees))
    return hyp, values, time.perf_counter() - start


def test_criterion_1_circle(report):
    hyp, values, elapsed = _three_way(circle())
    ok = hyp.all_pass and values == (2, 2, 2) and elapsed < 1.0
    report(1, ok, f"circle hypotheses={hyp.all_pass} values={values} time={elapsed:.3f}s (<1s)")


def test_criterion_2_fermat(report):
    hyp, values, elapsed = _three_way(fermat())
    ok = values == (12, 12, 12) and elapsed < 10.0
    report(2, ok, f"Fermat cubic values={values} time={elapsed:.3f}s (<10s)")


def test_criterion_3_parabola(report):
    hyp, values, _ = _three_way(parabola())
    ok = (not hyp.h2) and values == (1, 1, 2) and not hyp.all_pass
    report(3, ok, f"parabola H2={hyp.h2} failed={hyp.failed()} values={values} formula_applicable={hyp.all_pass}")


def test_criterion_4_random_harness(report):
    start = time.perf_counter()
    summary = run_random_harness(4, 2, 3, 32003, 60, 42)
    elapsed = time.perf_counter() - start
    ok = (
        summary["hypotheses_passed"] >= 50
        and summary["disagreements"] == 0
        and summary["errors"] == 0
        and elapsed < 600
    )
    report(
        4,
        ok,
        f"generated={summary['generated']} passed={summary['hypotheses_passed']} (>=50) "
        f"agreements={summary['agreements']} disagreements={summary['disagreements']} "
        f"errors={summary['errors']} time={elapsed:.1f}s (<600s)",
    )


def test_criterion_5_brute_force(report):
    rng = random.Random(2024)
    checked = mismatches = 0
    for p in (5, 7, 11):
        for _ in range(8):
            sys_ = random_system(rng, 4, 2, 3, p)
            assert p**sys_.n <= 10**6
            gb_points = variety_points(critical_ideal(sys_))
            bf_points = brute_force_critical_points(sys_)
            checked += 1
            mismatches += gb_points != bf_points
    report(5, checked >= 20 and mismatches == 0, f"systems={checked} (>=20) over p in {{5,7,11}} mismatches={mismatches}")


def test_criterion_6_complexes(report):
    failures = []
    for n in range(2, 6):
        R = Ring(FieldSpec(32003), tuple(f"x{i + 1}" for i in range(n)))
        rng = random.Random(n)
        for r in range(1, n):
            expected = [1] + [comb(n, p + r) * comb(p + r - 1, r) for p in range(1, n - r + 1)]
            rows = [[R.from_dict({tuple(int(k == j) for k in range(n)): 1}) * rng.randrange(1, 32003)
                     + R.gen((i + j + 1) % n).scale(rng.randrange(32003)) for j in range(n)]
                    for i in range(r + 1)]
            c = eagon_northcott(PolyMatrix(R, rows), [2] * (r + 1))
            if c.ranks() != expected or [eagon_northcott_rank(n, r, p) for p in range(n - r + 1)] != expected:
                failures.append(f"EN ranks n={n} r={r}")
            if not c.d_squared_zero():
                failures.append(f"EN delta^2 n={n} r={r}")
    for name, sys_ in (("circle", circle()), ("fermat", fermat())):
        for c in affine_complexes(sys_) + leading_complexes(sys_):
            if not c.d_squared_zero():
                failures.append(f"delta^2 {name} {c.name}")
    R3 = Ring(FieldSpec(0), ("x1", "x2", "x3"))
    regular = [R3.parse("x1"), R3.parse("x2^2"), R3.parse("x3^3 + x1*x2*x3")]
    if not koszul_regularity_check(regular, 8)["regular"]:
        failures.append("Koszul on a regular sequence")
    if not koszul_regularity_check([R3.parse("x1"), R3.parse("x2")], 8)["regular"]:
        failures.append("Koszul on (x1, x2)")
    bad = koszul_regularity_check([R3.parse("x1"), R3.parse("x1")], 8)
    if bad["regular"] or not bad["witness"]["homology"][1]:
        failures.append("Koszul on (x1, x1) should have H1 != 0")
    report(6, not failures, "EN ranks n<=5, delta^2=0, Koszul exactness/non-exactness" + (f": {failures}" if failures else ""))


def test_criterion_7_dimension_identities(report):
    failures = []
    for name, sys_ in (("circle", circle()), ("fermat", fermat())):
        I = critical_ideal(sys_)
        Ip = leading_critical_ideal(sys_)
        *_, total = affine_complexes(sys_)
        en, kz, ltotal = leading_complexes(sys_)
        if not Ideal(total.h0_presentation(), sys_.ring).same_ideal(I):
            failures.append(f"{name}: H0(T) != I+J")
        if not Ideal(ltotal.h0_presentation(), sys_.ring).same_ideal(Ip):
            failures.append(f"{name}: H0(Tbar) != I'+J'")
        if Ip.quotient_dimension() != I.quotient_dimension():
            failures.append(f"{name}: dim K[x]/(I'+J') != dim K[x]/(I+J)")
        for label, c in (("EN", en), ("total", ltotal)):
            ok, witness = homology_vanishes(c, 10)
            if not ok:
                failures.append(f"{name}: {label} homology {witness}")
        rep = h0_hilbert_report(sys_, 10)
        if not rep.passed:
            failures.append(f"{name}: Hilbert identity {rep.as_dict()}")
    report(7, not failures, "presentations, dimension equality, homology vanishing, Hilbert identity to 10"
           + (f": {failures}" if failures else ""))


def test_criterion_8_linear_change(report):
    p = 32003
    rng = random.Random(8)
    base = circle(p)
    values = []
    while len(values) < 10:
        M = [[rng.randrange(p) for _ in range(2)] for _ in range(2)]
        if (M[0][0] * M[1][1] - M[0][1] * M[1][0]) % p == 0:
            continue
        values.append(milnor_sum(transform_system(base, M)))
    report(8, values == [2] * 10, f"milnor_sum under 10 invertible substitutions over F_32003: {values}")


def _acceptance_ideals():
    out = []
    for sys_ in (circle(), fermat(), parabola()):
        out.append(critical_ideal(sys_))
        out.append(leading_critical_ideal(sys_))
        out.append(lagrange_jacobian_ideal(sys_))
    return out


def _dimension(ideal):
    """Quotient dimension, or the Krull dimension when the quotient is infinite."""
    try:
        return ideal.quotient_dimension()
    except InfiniteDimensional:
        return ("infinite", ideal.krull_dimension())


def _random_homogeneous(ring, degree, rng):
    mons = [e for e in product(range(degree + 1), repeat=ring.nvars) if sum(e) == degree]
    return ring.from_dict({e: rng.randint(-50, 50) for e in mons})


def test_criterion_9_engine(report):
    failures = []
    rng = random.Random(9)
    for ideal in _acceptance_ideals():
        gens = list(ideal.generators)
        base = groebner_basis(gens, ideal.ring)
        for _ in range(5):
            rng.shuffle(gens)
            if groebner_basis(gens, ideal.ring) != base:
                failures.append(f"shuffle changed the reduced basis of {ideal}")
        lex = ideal.ring.with_order("lex")
        if _dimension(Ideal([g.change_ring(lex) for g in ideal.generators], lex)) != _dimension(ideal):
            failures.append(f"order dependence {ideal}")
    euler_total = 0
    for char in (0, 3, 5, 2):
        ring = Ring(FieldSpec(char), ("x1", "x2", "x3"))
        made = 0
        while made < 25:
            g = _random_homogeneous(ring, rng.randint(1, 6), rng)
            if not g:
                continue
            made += 1
            if not euler_check(g):
                failures.append(f"euler_check char {char}: {g}")
        euler_total += made
    report(9, not failures and euler_total == 100,
           f"GB shuffle invariance, degrevlex/lex dimensions, euler_check on {euler_total} polynomials"
           + (f": {failures}" if failures else ""))
