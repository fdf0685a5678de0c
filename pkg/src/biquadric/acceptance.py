"""Acceptance criteria, runnable as a suite (CLI `selftest`) or one by one
from the test suite.  Every expected value is either computed here by an
independent oracle or pinned from an exact hand calculation; seeds are
fixed so runs replay byte-identically.

Criterion 7 records whatever the sampler finds: the finite-place
vanishing hypothesis is empirically false at p = 3, 7, 11 (see README),
so its odd-p clause and the overall selftest status are expected to be
red there, with every counterexample re-verified through independent
oracle routes.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from math import isqrt
from typing import Callable, Optional

from . import _kernels as kernels
from .arith import REAL_PLACE, Place, odd_prime_divisors, padic_valuation
from .brauer import (
    invariant_profile,
    local_invariant,
    reverify_counterexample,
    verify_finite_vanishing,
    wa_verdict,
)
from .fourfold import BasePoint, Fourfold
from .hilbert import hilbert_oracle, hilbert_symbol, reciprocity_product
from .polynomials import MPoly
from .quadforms import diagonal_form, is_isotropic_global, isotropy_oracle
from .residues import (
    PROJECTIVE_VARS,
    PrimeDivisor,
    TernaryForm,
    axis_tangent_form,
    check_form_conditions,
    discriminant_residue_class,
    reduce_square_class_univariate,
    residue_of_symbol,
    standard_symbol,
)

HALF = Fraction(1, 2)


@dataclass
class CriterionResult:
    name: str
    passed: bool
    detail: str
    seconds: float
    artifact: Optional[dict] = field(default=None, repr=False)


def _timed(fn: Callable[[], tuple[bool, str, Optional[dict]]],
           name: str) -> CriterionResult:
    start = time.monotonic()
    passed, detail, artifact = fn()
    return CriterionResult(name, passed, detail, time.monotonic() - start, artifact)


# ------------------------------------------------------- criterion 1


def _square_class_domain(limit: int = 50) -> list[int]:
    """Signed squarefree parts realized by n/d with |n|, d <= limit."""
    positive = {kernels.squarefree_int(n * d)
                for n in range(1, limit + 1) for d in range(1, limit + 1)}
    return sorted(positive) + sorted(-c for c in positive)


def _local_index(n: int, code: int) -> int:
    """Index of the square class of n in Q_v*/(Q_v*)^2."""
    if code == 0:
        return 0 if n > 0 else 1
    v, u = kernels.valuation_unit(n, code)
    if code == 2:
        return (v & 1) * 4 + ((u % 8) >> 1)
    return (v & 1) * 2 + (0 if kernels.legendre_int(u, code) == 1 else 1)


def criterion_1() -> CriterionResult:
    """Hilbert formula = conic-search oracle on |numerator|, denominator
    <= 50 at real, 2, 3, 5, 7; zero discrepancies in under 60 s.

    Both routes factor through square classes (the formula uses only
    valuation parities and unit residues, the oracle normalises by
    rational squares before searching), so the scan runs the formula on
    every ordered pair of realized square classes and compares against
    honest oracle searches, one per local square-class pair.  A seeded
    sample of raw rational pairs additionally exercises the oracle's full
    normalisation path.
    """

    def run():
        classes = _square_class_domain(50)
        places = [REAL_PLACE, Place.finite(2), Place.finite(3),
                  Place.finite(5), Place.finite(7)]
        total_mismatches = 0
        first = None
        for v in places:
            code = v.code
            idx = [_local_index(c, code) for c in classes]
            buckets: dict[int, int] = {}
            for c, i in zip(classes, idx):
                buckets.setdefault(i, c)
            size = max(idx) + 1
            table = [[2] * size for _ in range(size)]
            for i, rep_a in buckets.items():
                for j, rep_b in buckets.items():
                    table[i][j] = hilbert_oracle(rep_a, rep_b, v)
            mism, fi, fj = kernels.scan_hilbert_table(classes, idx, table, code)
            total_mismatches += mism
            if mism and first is None:
                first = (classes[fi], classes[fj], str(v))
        # full-path spot checks, oracle run per raw pair with no bucketing
        rng = random.Random(1001)
        spot = 0
        spot_budget = {0: 250, 2: 250, 3: 120, 5: 30, 7: 6}
        for v in places:
            tried = 0
            while tried < spot_budget[v.code]:
                num_a = rng.randrange(-50, 51)
                num_b = rng.randrange(-50, 51)
                den_a = rng.randrange(1, 51)
                den_b = rng.randrange(1, 51)
                if num_a == 0 or num_b == 0:
                    continue
                a = Fraction(num_a, den_a)
                b = Fraction(num_b, den_b)
                if v.code >= 5:
                    if max(abs(padic_valuation(a, v.code)),
                           abs(padic_valuation(b, v.code))) > 1:
                        continue  # keep the search space p^7 at most
                tried += 1
                if hilbert_symbol(a, b, v) != hilbert_oracle(a, b, v):
                    total_mismatches += 1
                    if first is None:
                        first = (str(a), str(b), str(v))
                else:
                    spot += 1
        n = len(classes)
        ok = total_mismatches == 0
        detail = (f"{n} square classes, {n * n} pairs x 5 places scanned, "
                  f"{spot} full-path spot checks; mismatches: {total_mismatches}"
                  + (f", first {first}" if first else ""))
        return ok, detail, None

    result = _timed(run, "1. Hilbert formula = oracle, |num|,den <= 50, 5 places")
    if result.seconds >= 60:
        result.passed = False
        result.detail += f"; OVER TIME BUDGET ({result.seconds:.1f}s >= 60s)"
    return result


# ------------------------------------------------------- criterion 2


def criterion_2() -> CriterionResult:
    def run():
        rng = random.Random(1002)
        failures = 0
        for _ in range(1000):
            a = Fraction(rng.choice([n for n in range(-60, 61) if n]),
                         rng.randrange(1, 41))
            b = Fraction(rng.choice([n for n in range(-60, 61) if n]),
                         rng.randrange(1, 41))
            _, product = reciprocity_product(a, b)
            if product != 1:
                failures += 1
        return failures == 0, f"1000 seeded pairs, failures: {failures}", None

    return _timed(run, "2. Hilbert reciprocity on 1000 seeded pairs")


# ------------------------------------------------------- criterion 3


def criterion_3() -> CriterionResult:
    def run():
        report = check_form_conditions(axis_tangent_form())
        vars_yz = ("y", "z")
        vars_xz = ("x", "z")
        vars_xy = ("x", "y")
        expected = {
            "x": MPoly.var("y", vars_yz) - MPoly.var("z", vars_yz),
            "y": MPoly.var("x", vars_xz) - MPoly.var("z", vars_xz),
            "z": MPoly.var("x", vars_xy) - MPoly.var("y", vars_xy),
        }
        roots_ok = all(report.restriction_roots[a] == expected[a]
                       for a in PROJECTIVE_VARS)
        ok = report.passes and roots_ok
        roots = {a: str(report.restriction_roots[a]) for a in PROJECTIVE_VARS}
        return ok, f"passes: {report.passes}, roots: {roots}", None

    return _timed(run, "3. Square-restriction conditions on the tangent form")


# ------------------------------------------------------- criterion 4


def criterion_4() -> CriterionResult:
    def run():
        form = axis_tangent_form()
        alpha = standard_symbol()
        expected_var = {"x": "y", "y": "x", "z": "x"}
        problems = []
        for axis in PROJECTIVE_VARS:
            divisor = PrimeDivisor.coordinate_axis(axis)
            res = residue_of_symbol(alpha, divisor)
            tvar = expected_var[axis]
            minus_t = reduce_square_class_univariate(-MPoly.var(tvar, (tvar,)))
            disc = discriminant_residue_class(form, axis)
            if res.trivial:
                problems.append(f"axis {axis}: symbol residue trivial")
            if res != minus_t:
                problems.append(f"axis {axis}: symbol residue {res} != class of -{tvar}")
            if disc != minus_t:
                problems.append(f"axis {axis}: discriminant class {disc} != class of -{tvar}")
        return (not problems,
                "all three axes: residue nontrivial and equal to -(remaining coordinate)"
                if not problems else "; ".join(problems), None)

    return _timed(run, "4. Symbol residues and discriminant classes along the axes")


# ------------------------------------------------------- criterion 5


def criterion_5() -> CriterionResult:
    def run():
        values = [s * v for v in (1, 2, 3, 5) for s in (1, -1)]
        discrepancies = 0
        first = None
        checked = 0
        for rank in (2, 3, 4):
            for coeffs in iproduct(values, repeat=rank):
                q = diagonal_form(coeffs)
                local_verdict = is_isotropic_global(q)[0]
                witness = isotropy_oracle(q, 30)
                checked += 1
                if local_verdict != (witness is not None):
                    discrepancies += 1
                    if first is None:
                        first = (coeffs, local_verdict, witness)
                elif witness is not None:
                    total = sum(c * w * w for c, w in zip(coeffs, witness))
                    if total != 0 or not any(witness):
                        discrepancies += 1
                        if first is None:
                            first = (coeffs, "bad witness", witness)
        ok = discrepancies == 0
        detail = (f"{checked} forms (ranks 2-4, coefficients ±1,±2,±3,±5), "
                  f"oracle bound 30; discrepancies: {discrepancies}"
                  + (f", first {first}" if first else ""))
        return ok, detail, None

    return _timed(run, "5. Local solubility criteria = search oracle on the small corpus")


# ------------------------------------------------------- criterion 6


def criterion_6() -> CriterionResult:
    def run():
        X = Fourfold(axis_tangent_form())
        points = X.search_rational_points(1, 1)
        target = next((p for p in points
                       if p.base.coords == (1, 1, 1) and p.t == (1, 1, 1, 1)), None)
        if target is None:
            return False, "search at heights (1,1) missed ((1:1:1),(1,1,1,1))", None
        profile = invariant_profile(X, target)
        prof_ok = (profile.entries[REAL_PLACE] == HALF
                   and profile.entries[Place.finite(2)] == HALF
                   and all(e == 0 for v, e in profile.entries.items()
                           if v.is_finite and v.p != 2)
                   and profile.total == 0)
        verdict = wa_verdict(X, (2, 2), seed=0)
        w = verdict.witness
        verdict_ok = (verdict.verdict.value == "FailsWithWitness"
                      and w is not None and w.total == HALF)
        recheck_ok = False
        if w is not None:
            real_inv = local_invariant(w.real_base, REAL_PLACE)
            comp = w.finite_components[0]
            finite_inv = local_invariant(comp.base, comp.place)
            recheck_ok = (real_inv + finite_inv) % 1 == HALF
        ok = prof_ok and verdict_ok and recheck_ok
        return ok, (f"point found, profile {profile}, verdict "
                    f"{verdict.verdict.value}, witness total re-verified: {recheck_ok}"),\
            None

    result = _timed(run, "6. Witness pipeline on the tangent form")
    if result.seconds >= 10:
        result.passed = False
        result.detail += f"; OVER TIME BUDGET ({result.seconds:.1f}s >= 10s)"
    return result


# ------------------------------------------------------- criterion 7


def criterion_7() -> CriterionResult:
    def run():
        X = Fourfold(axis_tangent_form())
        odd_counts = {}
        odd_ok = True
        reverify_ok = True
        for p in (3, 5, 7, 11, 13):
            report = verify_finite_vanishing(X, Place.finite(p), 500, depth=5, seed=1)
            odd_counts[p] = report.nonzero_count
            if report.nonzero_count != 0:
                odd_ok = False
            for ce in report.counterexamples:
                if not reverify_counterexample(X, ce, Place.finite(p))["confirmed"]:
                    reverify_ok = False
        report2 = verify_finite_vanishing(X, Place.finite(2), 500, depth=8, seed=1)
        archive = {
            "place": "2",
            "requested": report2.requested,
            "tested": report2.tested,
            "nonzero_count": report2.nonzero_count,
            "depth": report2.depth,
            "seed": report2.seed,
            "counterexamples": [],
        }
        for ce in report2.counterexamples:
            check = reverify_counterexample(X, ce, Place.finite(2))
            if not check["confirmed"]:
                reverify_ok = False
            archive["counterexamples"].append({
                "base": list(ce.base.coords),
                "invariant": str(ce.invariant),
                "symbol": ce.symbol,
                "oracle_symbol": check["symbol_oracle"],
                "fiber_soluble_oracle": check["fiber_soluble_oracle"],
                "confirmed": check["confirmed"],
            })
        ok = odd_ok and reverify_ok
        detail = (f"odd-p nonzero counts {odd_counts} (criterion expects all 0); "
                  f"p=2: {report2.nonzero_count} nonzero of {report2.tested}, "
                  f"report archived; every entry re-verified: {reverify_ok}")
        return ok, detail, archive

    return _timed(run, "7. Finite-place vanishing sampling at p in {3,5,7,11,13} and 2")


# ------------------------------------------------------- criterion 8


def _int_square_root(n: int) -> Optional[int]:
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def _fast_passes(a: int, b: int, c: int, d: int, e: int, g: int) -> bool:
    """Integer-only twin of check_form_conditions for the exhaustive scan.

    The form is a x^2 + b y^2 + c z^2 + 2d xy + 2e xz + 2g yz.  A binary
    quadratic is a polynomial square iff its outer coefficients are
    squares and its discriminant vanishes; the ternary form is a square
    iff it is (px + qy + rz)^2 for sign choices of the square roots.
    """
    for (al, be, cross) in ((b, c, g), (a, c, e), (a, b, d)):
        p_, q_ = _int_square_root(al), _int_square_root(be)
        if p_ is None or q_ is None or cross * cross != al * be:
            return False
    det = a * (b * c - g * g) - d * (d * c - g * e) + e * (d * g - b * e)
    if det == 0:
        return False
    p_, q_, r_ = _int_square_root(a), _int_square_root(b), _int_square_root(c)
    for sq in (q_, -q_):
        for sr in (r_, -r_):
            if d == p_ * sq and e == p_ * sr and g == sq * sr:
                return False  # the form itself is a square
    return True


def criterion_8() -> CriterionResult:
    def run():
        rng = random.Random(1008)
        span = range(-5, 6)
        passing = []
        cross_checked = 0
        cross_failures = 0
        scanned = 0
        for a in span:
            for b in span:
                for c in span:
                    for d in span:
                        for e in span:
                            for g in span:
                                scanned += 1
                                fast = _fast_passes(a, b, c, d, e, g)
                                if fast:
                                    passing.append((a, b, c, d, e, g))
                                elif rng.random() < 0.001:
                                    form = TernaryForm.of(a, b, c, d, e, g)
                                    cross_checked += 1
                                    if check_form_conditions(form).passes:
                                        cross_failures += 1
        identity_failures = 0
        for (a, b, c, d, e, g) in passing:
            form = TernaryForm.of(a, b, c, d, e, g)
            report = check_form_conditions(form)
            cross_checked += 1
            if not report.passes:
                cross_failures += 1
                continue
            if a <= 0 or b <= 0 or c <= 0:
                identity_failures += 1
                continue
            root_prod = _int_square_root(a) * _int_square_root(b) * _int_square_root(c)
            if form.det() != -4 * root_prod * root_prod or form.det() >= 0:
                identity_failures += 1
        ok = cross_failures == 0 and identity_failures == 0 and len(passing) > 0
        detail = (f"{scanned} forms scanned exhaustively, {len(passing)} pass; "
                  f"det = -4(abc)^2 < 0 failures: {identity_failures}; "
                  f"library cross-checks: {cross_checked}, "
                  f"disagreements: {cross_failures}")
        return ok, detail, None

    return _timed(run, "8. Gram determinant identity over all |coefficients| <= 5")


# ------------------------------------------------------- criterion 9


def criterion_9() -> CriterionResult:
    def run():
        rng = random.Random(1009)
        failures = 0
        tested = 0
        for _ in range(1000):
            coords = tuple(rng.choice([n for n in range(-40, 41) if n])
                           for _ in range(3))
            base = BasePoint.of(*coords)
            places = [REAL_PLACE, Place.finite(2)]
            places += [Place.finite(p) for p in odd_prime_divisors(base.coords)]
            x, y, z = coords
            lam = rng.choice([2, 3, -1, -6, 5])
            for v in places:
                code = v.code
                s1 = kernels.hilbert_int(-x * y, -y * z, code)
                s2 = kernels.hilbert_int(-y * z, -z * x, code)
                s3 = kernels.hilbert_int(-z * x, -x * y, code)
                scaled = kernels.hilbert_int(-(lam * x) * (lam * y),
                                             -(lam * y) * (lam * z), code)
                tested += 1
                if not (s1 == s2 == s3 == scaled):
                    failures += 1
        return (failures == 0,
                f"1000 seeded bases, {tested} (base, place) checks; failures: {failures}",
                None)

    return _timed(run, "9. Representative independence and scaling invariance")


CRITERIA: list[Callable[[], CriterionResult]] = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
    criterion_6, criterion_7, criterion_8, criterion_9,
]


def run_all() -> list[CriterionResult]:
    """Run criteria 1-9 in order (criterion 10 is the selftest wrapper
    itself: exit status 0 in under five minutes)."""
    return [c() for c in CRITERIA]
