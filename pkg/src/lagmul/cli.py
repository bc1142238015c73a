"""Command line front end: problem files, reports, and the random harness.

Problem files are line oriented::

    # circle
    field: 0
    vars: x1 x2
    f: x1
    constraint: x1^2 + x2^2 - 1

``field`` defaults to 32003; ``order`` (degrevlex|grlex|lex) and
``truncate`` are optional.  ``constraint`` may repeat.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from . import complexes, critical
from .arith import FieldSpec
from .critical import ConstrainedSystem
from .errors import (
    LagmulError,
    NonIsolatedCritical,
    ParseError,
    ReservedVariable,
    ResourceLimit,
    TooManyConstraints,
    TruncationTooSmall,
)
from .groebner import Ideal, Limits
from .poly import ORDERS, Ring

DEFAULT_CHARACTERISTIC = 32003
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_DISAGREEMENT = 3

_KEYS = ("field", "vars", "f", "constraint", "order", "truncate")


@dataclass
class ProblemSpec:
    characteristic: int
    variables: Tuple[str, ...]
    objective: str
    constraints: List[str]
    order: str = "degrevlex"
    truncation: Optional[int] = None
    field_confirm: bool = False
    system: Optional[ConstrainedSystem] = field(default=None, repr=False)

    @property
    def degrees(self) -> Tuple[int, ...]:
        return self.system.degrees

    def build(self, characteristic: int = None, order: str = None) -> ConstrainedSystem:
        return ConstrainedSystem.from_text(
            self.characteristic if characteristic is None else characteristic,
            self.variables,
            self.objective,
            self.constraints,
            order or self.order,
        )


def parse_problem(text: str, order: str = None) -> ProblemSpec:
    values: Dict[str, Tuple[str, int, int]] = {}
    constraints: List[Tuple[str, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if ":" not in line:
            raise ParseError("expected 'key: value'", lineno, len(line) - len(line.lstrip()) + 1)
        key, _, rest = line.partition(":")
        key = key.strip().lower()
        col = line.index(":") + 2 + len(rest) - len(rest.lstrip())
        if key not in _KEYS:
            raise ParseError(f"unknown key {key!r}", lineno, 1)
        entry = (rest.strip(), lineno, col)
        if key == "constraint":
            constraints.append(entry)
        elif key in values:
            raise ParseError(f"duplicate key {key!r}", lineno, 1)
        else:
            values[key] = entry
    for required in ("vars", "f"):
        if required not in values:
            raise ParseError(f"missing '{required}:' line", 1, 1)
    if not constraints:
        raise TooManyConstraints("at least one 'constraint:' line is required")

    characteristic = DEFAULT_CHARACTERISTIC
    if "field" in values:
        text_value, lineno, col = values["field"]
        try:
            characteristic = int(text_value)
            FieldSpec(characteristic)
        except ValueError as exc:
            raise ParseError(f"bad field characteristic {text_value!r}: {exc}", lineno, col) from None
    chosen_order = order or (values["order"][0] if "order" in values else "degrevlex")
    if chosen_order not in ORDERS:
        lineno = values["order"][1] if "order" in values else 1
        raise ParseError(f"unknown monomial order {chosen_order!r}", lineno, 1)
    truncation = None
    if "truncate" in values:
        text_value, lineno, col = values["truncate"]
        if not text_value.isdigit():
            raise ParseError("truncate must be a nonnegative integer", lineno, col)
        truncation = int(text_value)

    names = tuple(values["vars"][0].split())
    for name in names:
        if critical.is_reserved_name(name):
            raise ReservedVariable(f"variable name {name!r} is reserved")
    if len(constraints) >= len(names):
        raise TooManyConstraints(
            f"{len(constraints)} constraints for {len(names)} variables; need r < n"
        )
    try:
        ring = Ring(FieldSpec(characteristic), names, chosen_order)
    except ValueError as exc:
        raise ParseError(str(exc), values["vars"][1], values["vars"][2]) from None

    def parse_poly(entry):
        body, lineno, col = entry
        try:
            return ring.parse(body, lineno)
        except ParseError as exc:
            raise ParseError(exc.message, lineno, exc.column + col - 1) from None

    f = parse_poly(values["f"])
    cs = tuple(parse_poly(c) for c in constraints)
    system = ConstrainedSystem(f, cs)
    return ProblemSpec(
        characteristic,
        names,
        values["f"][0],
        [c[0] for c in constraints],
        chosen_order,
        truncation,
        False,
        system,
    )


# -- reports ------------------------------------------------------------------


class _Timer:
    def __init__(self):
        self.stages: Dict[str, float] = {}

    @contextmanager
    def stage(self, name: str):
        start = time.perf_counter()
        try:
            yield
        finally:
            self.stages[name] = round(time.perf_counter() - start, 6)


def _json_int(value: int):
    return str(value) if abs(value) > 2**53 else value


def system_echo(sys_: ConstrainedSystem) -> Dict:
    return {
        "field": sys_.field.characteristic,
        "variables": list(sys_.ring.names),
        "order": sys_.ring.order,
        "f": str(sys_.f),
        "constraints": [str(g) for g in sys_.constraints],
        "n": sys_.n,
        "r": sys_.r,
    }


def _attempt(fn, *args):
    try:
        return _json_int(fn(*args)), None
    except NonIsolatedCritical:
        return None, "NonIsolatedCritical"


def run_milnor(spec, method: str = "all", limits: Limits = None, timer: _Timer = None,
               check: bool = True) -> Dict:
    """Compute the Milnor-number sum by one or all methods and compare."""
    if method not in ("all", "grobner", "jacobian", "formula"):
        raise ValueError(f"unknown method {method!r}")
    sys_ = spec.system if isinstance(spec, ProblemSpec) else spec
    timer = timer or _Timer()
    report: Dict = {"system": system_echo(sys_), "degrees": list(sys_.degrees), "method": method}
    warnings: List[str] = []
    hyp = None
    if check or method in ("all", "formula"):
        with timer.stage("hypotheses"):
            hyp = critical.check_hypotheses(sys_, limits)
        report["hypotheses"] = hyp.as_dict()
        if not hyp.all_pass:
            warnings.append(f"hypotheses {', '.join(hyp.failed())} failed; degree formula inapplicable")
    results: Dict[str, Optional[int]] = {}
    if method in ("all", "grobner"):
        with timer.stage("milnor_sum"):
            value, err = _attempt(critical.milnor_sum, sys_, limits)
        report["milnor_sum"] = value
        if err:
            report["milnor_sum_error"] = err
            warnings.append("critical locus I+J is not zero-dimensional")
        results["milnor_sum"] = value
    if method in ("all", "jacobian"):
        with timer.stage("jacobian_dim"):
            value, err = _attempt(critical.lagrange_jacobian_dimension, sys_, limits)
        report["jacobian_dim"] = value
        if err:
            report["jacobian_dim_error"] = err
            warnings.append("Jacobian ideal of the Lagrange function is not zero-dimensional")
        results["jacobian_dim"] = value
    if method in ("all", "formula"):
        with timer.stage("predicted"):
            report["predicted"] = _json_int(critical.predicted_milnor_sum(sys_.n, sys_.degrees))
        results["predicted"] = report["predicted"]
    if hyp is not None:
        report["formula_applicable"] = hyp.all_pass

    disagreement = False
    m, j, p = results.get("milnor_sum"), results.get("jacobian_dim"), results.get("predicted")
    if m is not None and j is not None:
        report["agree_methods"] = m == j
        if m != j and critical.affine_smooth_ci(sys_, limits):
            disagreement = True
    if m is not None and p is not None:
        report["agree_formula"] = m == p
    if j is not None and p is not None:
        report["agree_jacobian_formula"] = j == p
    if m is not None and j is not None and p is not None:
        report["agree"] = m == j == p
        if hyp is not None and hyp.all_pass and not report["agree"]:
            disagreement = True
    report["disagreement"] = disagreement
    report["warnings"] = warnings
    report["status"] = "disagreement" if disagreement else ("computed_with_warnings" if warnings else "ok")
    return report


def _presentation_matches(total: complexes.GradedFreeComplex, ideal: Ideal) -> bool:
    gens = total.h0_presentation()
    return Ideal(gens, ideal.ring, ideal.limits).same_ideal(ideal)


def run_complex_verification(spec, truncation: int = None, limits: Limits = None,
                             dump: List[str] = None) -> Dict:
    """Build the affine and leading-form complexes and evaluate their invariants."""
    sys_ = spec.system if isinstance(spec, ProblemSpec) else spec
    if truncation is None and isinstance(spec, ProblemSpec):
        truncation = spec.truncation
    if truncation is None:
        truncation = complexes.default_truncation(sys_.degrees)
    n, r = sys_.n, sys_.r
    section: Dict = {"truncation": truncation}
    expected_ranks = [complexes.eagon_northcott_rank(n, r, p) for p in range(n - r + 1)]

    en, kz, total = complexes.affine_complexes(sys_)
    section["affine"] = {
        "en_ranks": en.ranks(),
        "en_rank_formula": expected_ranks,
        "ranks_match": en.ranks() == expected_ranks,
        "koszul_ranks": kz.ranks(),
        "total_ranks": total.ranks(),
        "d_squared_zero": {
            "en": en.d_squared_zero(),
            "koszul": kz.d_squared_zero(),
            "total": total.d_squared_zero(),
        },
        "h0_presentation_equals_I_plus_J": _presentation_matches(total, critical.critical_ideal(sys_, limits)),
    }
    len_, lkz, ltotal = complexes.leading_complexes(sys_)
    lead = {
        "en_ranks": len_.ranks(),
        "ranks_match": len_.ranks() == expected_ranks,
        "d_squared_zero": {
            "en": len_.d_squared_zero(),
            "koszul": lkz.d_squared_zero(),
            "total": ltotal.d_squared_zero(),
        },
        "graded": {"en": len_.is_graded(), "koszul": lkz.is_graded(), "total": ltotal.is_graded()},
        "h0_presentation_equals_Iprime_plus_Jprime": _presentation_matches(
            ltotal, critical.leading_critical_ideal(sys_, limits)
        ),
        "h0_en_equals_Jprime": Ideal(len_.h0_presentation(), sys_.ring, limits).same_ideal(
            Ideal(critical.leading_form_jacobian(sys_).minors(r + 1), sys_.ring, limits)
        ),
    }
    section["leading"] = lead
    if dump is not None:
        for c in (en, kz, total, len_, lkz, ltotal):
            dump.append(c.dump())

    hyp = critical.check_hypotheses(sys_, limits)
    section["hypotheses"] = hyp.as_dict()
    if not hyp.all_pass:
        section["homology"] = {"skipped": f"hypotheses {', '.join(hyp.failed())} failed"}
        section["hilbert"] = {"skipped": f"hypotheses {', '.join(hyp.failed())} failed"}
    else:
        homology = {}
        for name, c in (("en", len_), ("koszul", lkz), ("total", ltotal)):
            ok, witness = complexes.homology_vanishes(c, truncation)
            homology[name] = {
                "vanishes_for_p_positive": ok,
                "witness": None if ok else {"degree": witness[0], "homology": witness[1]},
            }
        section["homology"] = homology
        try:
            check = complexes.h0_hilbert_report(sys_, truncation, limits)
            section["hilbert"] = check.as_dict()
        except TruncationTooSmall as exc:
            section["hilbert"] = {"error": "TruncationTooSmall", "degree": exc.degree, "message": str(exc)}
    section["all_checks_pass"] = _all_true(section)
    return section


def _all_true(section: Dict) -> bool:
    a, l = section["affine"], section["leading"]
    ok = a["ranks_match"] and all(a["d_squared_zero"].values()) and a["h0_presentation_equals_I_plus_J"]
    ok = ok and l["ranks_match"] and all(l["d_squared_zero"].values()) and all(l["graded"].values())
    ok = ok and l["h0_presentation_equals_Iprime_plus_Jprime"] and l["h0_en_equals_Jprime"]
    hom = section.get("homology", {})
    if "skipped" not in hom:
        ok = ok and all(v["vanishes_for_p_positive"] for v in hom.values())
        ok = ok and section["hilbert"].get("passed", False)
    return ok


# -- random harness -----------------------------------------------------------


def random_polynomial(ring: Ring, degree: int, rng: random.Random, coeff_bound: int = 9):
    """Dense random polynomial of exact total degree ``degree``."""
    p = ring.field.characteristic
    support = [e for e in product(range(degree + 1), repeat=ring.nvars) if sum(e) <= degree]
    while True:
        if p:
            terms = {e: rng.randrange(p) for e in support}
        else:
            terms = {e: rng.randint(-coeff_bound, coeff_bound) for e in support}
        poly = ring.from_dict(terms)
        if poly and poly.total_degree() == degree:
            return poly


def random_system(rng: random.Random, n_max: int, r_max: int, d_max: int, characteristic: int):
    n = rng.randint(2, n_max)
    r = rng.randint(1, min(r_max, n - 1))
    degrees = [rng.randint(1, d_max) for _ in range(r + 1)]
    ring = Ring(FieldSpec(characteristic), tuple(f"x{i + 1}" for i in range(n)))
    constraints = tuple(random_polynomial(ring, d, rng) for d in degrees[:r])
    f = random_polynomial(ring, degrees[r], rng)
    return ConstrainedSystem(f, constraints)


def run_random_harness(n_max: int, r_max: int, d_max: int, characteristic: int, count: int,
                       seed: int, brute_force_limit: int = 10**6, limits: Limits = None) -> Dict:
    """Three-way agreement on seeded random systems that pass the hypotheses."""
    if count < 1:
        raise ValueError("count must be at least 1")
    if n_max < 2 or r_max < 1 or d_max < 1:
        raise ValueError("need n_max >= 2, r_max >= 1, d_max >= 1")
    rng = random.Random(seed)
    summary = {
        "params": {"n_max": n_max, "r_max": r_max, "d_max": d_max, "char": characteristic,
                   "count": count, "seed": seed},
        "generated": 0,
        "hypotheses_passed": 0,
        "agreements": 0,
        "disagreements": 0,
        "errors": 0,
        "brute_force_checked": 0,
        "brute_force_mismatches": 0,
        "instances": [],
        "disagreement_dumps": [],
    }
    for index in range(count):
        sys_ = random_system(rng, n_max, r_max, d_max, characteristic)
        summary["generated"] += 1
        record = {"index": index, "n": sys_.n, "r": sys_.r, "degrees": list(sys_.degrees)}
        try:
            hyp = critical.check_hypotheses(sys_, limits)
            record["hypotheses_passed"] = hyp.all_pass
            if not hyp.all_pass:
                record["failed"] = hyp.failed()
                summary["instances"].append(record)
                continue
            summary["hypotheses_passed"] += 1
            m = critical.milnor_sum(sys_, limits)
            j = critical.lagrange_jacobian_dimension(sys_, limits)
            pred = critical.predicted_milnor_sum(sys_.n, sys_.degrees)
            record.update(milnor_sum=m, jacobian_dim=j, predicted=pred, agree=m == j == pred)
            if characteristic and characteristic**sys_.n <= brute_force_limit:
                pts_gb = critical.variety_points(critical.critical_ideal(sys_, limits))
                pts_bf = critical.brute_force_critical_points(sys_)
                summary["brute_force_checked"] += 1
                record["points"] = len(pts_bf)
                record["points_agree"] = pts_gb == pts_bf
                if pts_gb != pts_bf:
                    summary["brute_force_mismatches"] += 1
            if record["agree"]:
                summary["agreements"] += 1
            else:
                summary["disagreements"] += 1
                summary["disagreement_dumps"].append({"index": index, "system": system_echo(sys_),
                                                      "values": [m, j, pred]})
        except (ResourceLimit, NonIsolatedCritical) as exc:
            summary["errors"] += 1
            record["error"] = f"{type(exc).__name__}: {exc}"
        summary["instances"].append(record)
    return summary


# -- entry point --------------------------------------------------------------


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _load(path: str, order: str = None) -> ProblemSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read(), order)


def _confirm_over_rationals(spec: ProblemSpec, method: str, limits: Limits) -> Dict:
    if spec.characteristic == 0:
        return {"skipped": "already over QQ"}
    rational = spec.build(characteristic=0)
    return run_milnor(rational, method, limits)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lagmul",
        description="Milnor-number sums of constrained critical points, three ways.",
    )
    parser.add_argument("--order", choices=ORDERS, help="monomial order for Groebner bases")
    parser.add_argument("--field-confirm", action="store_true",
                        help="repeat the computation over QQ and report both")
    parser.add_argument("--timings", action="store_true", help="include per-stage timings")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check the hypotheses of the degree formula")
    p.add_argument("file")

    p = sub.add_parser("milnor", help="compute the Milnor-number sum")
    p.add_argument("file")
    p.add_argument("--method", choices=("all", "grobner", "jacobian", "formula"), default="all")
    p.add_argument("--unconstrained", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("en", help="build and verify the Eagon-Northcott/Koszul complexes")
    p.add_argument("file")
    p.add_argument("--truncate", type=int)
    p.add_argument("--dump", metavar="PATH", help="write the complexes in text form")

    p = sub.add_parser("random", help="seeded random agreement harness")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--dmax", type=int, default=3)
    p.add_argument("--char", type=int, default=DEFAULT_CHARACTERISTIC)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=42)
    return parser


def main(argv: Sequence[str] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    limits = Limits()
    timer = _Timer()
    try:
        if args.command == "random":
            summary = run_random_harness(args.n, args.r, args.dmax, args.char, args.count, args.seed,
                                         limits=limits)
            print(_dumps(summary))
            return EXIT_DISAGREEMENT if summary["disagreements"] or summary["brute_force_mismatches"] else EXIT_OK

        spec = _load(args.file, args.order)
        if args.command == "check":
            with timer.stage("hypotheses"):
                hyp = critical.check_hypotheses(spec.system, limits)
            report = {"system": system_echo(spec.system), "degrees": list(spec.degrees),
                      "hypotheses": hyp.as_dict(),
                      "status": "ok" if hyp.all_pass else "computed_with_warnings"}
            code = EXIT_OK
        elif args.command == "milnor":
            if args.unconstrained:
                report = {"system": system_echo(spec.system),
                          "jacobian_ring_dimension": critical.jacobian_ring_dimension(spec.system.f, limits),
                          "status": "ok"}
                code = EXIT_OK
            else:
                report = run_milnor(spec, args.method, limits, timer)
                if args.field_confirm:
                    with timer.stage("field_confirm"):
                        report["field_confirmation"] = _confirm_over_rationals(spec, args.method, limits)
                code = EXIT_DISAGREEMENT if report["disagreement"] else EXIT_OK
        else:
            dump: Optional[List[str]] = [] if args.dump else None
            with timer.stage("complexes"):
                section = run_complex_verification(spec, args.truncate, limits, dump)
            report = {"system": system_echo(spec.system), "degrees": list(spec.degrees),
                      "complexes": section,
                      "status": "ok" if section["all_checks_pass"] else "computed_with_warnings"}
            if dump is not None:
                with open(args.dump, "w", encoding="utf-8") as fh:
                    fh.write("\n".join(dump))
            code = EXIT_OK
        if args.timings:
            report["timings"] = timer.stages
        print(_dumps(report))
        return code
    except (ParseError, ReservedVariable, TooManyConstraints) as exc:
        print(f"lagmul: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (LagmulError, OSError) as exc:
        print(f"lagmul: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
