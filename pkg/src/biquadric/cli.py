"""Command-line front end.

Every subcommand supports --json for machine-readable output; JSON is
emitted with sorted keys so re-runs with the same seed are byte-stable.
Exit codes: 0 ok, 2 parse error, 3 condition check failed, 4 violated
mathematical precondition, 1 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

# lets argparse accept negative rationals like -1 or -3/4 as positionals
_NEGATIVE_RATIONAL = re.compile(r"^-\d+(/\d+)?$")

from .arith import REAL_PLACE, Place
from .brauer import (
    ObstructionWitness,
    invariant_profile,
    reverify_counterexample,
    verify_finite_vanishing,
    wa_verdict,
)
from .errors import DomainError, FConditionError, PolyParseError
from .fourfold import BasePoint, Fourfold, real_component
from .hilbert import hilbert_oracle, hilbert_symbol, reciprocity_product
from .quadforms import (
    DiagonalForm,
    diagonal_form,
    discriminant_class,
    hasse_invariant,
    is_isotropic_global,
    is_isotropic_local,
    isotropy_oracle,
    relevant_places,
)
from .residues import (
    PROJECTIVE_VARS,
    PrimeDivisor,
    TernaryForm,
    check_form_conditions,
    discriminant_residue_class,
    residue_of_symbol,
    standard_symbol,
)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_PARSE = 2
EXIT_CONDITION = 3
EXIT_PRECONDITION = 4


def _default_seed() -> int:
    raw = os.environ.get("BIQUADRIC_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"BIQUADRIC_SEED must be an integer, got {raw!r}")


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise PolyParseError(f"not a rational number: {text!r}", 0)


def _parse_place(text: str) -> Place:
    if text in ("real", "inf", "oo"):
        return REAL_PLACE
    try:
        p = int(text)
    except ValueError:
        raise PolyParseError(f"place must be 'real' or a prime, got {text!r}", 0)
    return Place.finite(p)


def _parse_coefficients(text: str) -> list[Fraction]:
    return [_parse_rational(part) for part in text.split(",") if part.strip() != ""]


def _place_key(v: Place) -> str:
    return str(v)


def _frac(f: Fraction) -> str:
    return str(f)


def _emit(payload: dict, text_lines: list[str], as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


# ---------------------------------------------------------------- hilbert


def cmd_hilbert(args) -> int:
    a = _parse_rational(args.a)
    b = _parse_rational(args.b)
    payload: dict = {"command": "hilbert", "a": str(a), "b": str(b)}
    lines = []
    if args.place is not None:
        v = _parse_place(args.place)
        s = hilbert_symbol(a, b, v)
        payload["place"] = _place_key(v)
        payload["symbol"] = s
        lines.append(f"({a},{b})_{v} = {s:+d}")
        if args.oracle:
            o = hilbert_oracle(a, b, v, args.depth)
            payload["oracle"] = o
            lines.append(f"oracle: {o:+d}")
    else:
        symbols, product = reciprocity_product(a, b)
        payload["symbols"] = {_place_key(v): s for v, s in symbols.items()}
        payload["product"] = product
        for v in sorted(symbols):
            lines.append(f"({a},{b})_{v} = {symbols[v]:+d}")
        lines.append(f"product over relevant places = {product:+d}")
        if args.oracle:
            oracle = {_place_key(v): hilbert_oracle(a, b, v, args.depth)
                      for v in symbols}
            payload["oracle"] = oracle
            lines.append("oracle: " + ", ".join(
                f"{k}: {s:+d}" for k, s in sorted(oracle.items())))
    _emit(payload, lines, args.json)
    return EXIT_OK


# -------------------------------------------------------------- isotropic


def _form_from_args(args) -> DiagonalForm:
    return diagonal_form(_parse_coefficients(args.coefficients),
                         radical_dim=args.radical)


def cmd_isotropic(args) -> int:
    q = _form_from_args(args)
    payload: dict = {
        "command": "isotropic",
        "coefficients": [str(c) for c in q.coefficients],
        "radical_dim": q.radical_dim,
    }
    lines = [f"form {q}"]
    if args.place is not None:
        v = _parse_place(args.place)
        verdict = is_isotropic_local(q, v)
        payload["place"] = _place_key(v)
        payload["isotropic"] = verdict
        lines.append(f"isotropic over Q_{v}: {verdict}")
    else:
        verdict, failing = is_isotropic_global(q)
        payload["global"] = True
        payload["isotropic"] = verdict
        payload["failing_places"] = [_place_key(v) for v in failing]
        lines.append(f"isotropic over Q: {verdict}")
        if failing:
            lines.append("fails at: " + ", ".join(str(v) for v in failing))
    witness = isotropy_oracle(q, args.oracle_bound)
    payload["witness"] = list(witness) if witness is not None else None
    payload["oracle_bound"] = args.oracle_bound
    lines.append(f"witness at bound {args.oracle_bound}: "
                 + (str(witness) if witness is not None else "not found"))
    _emit(payload, lines, args.json)
    return EXIT_OK


def cmd_hasse(args) -> int:
    q = _form_from_args(args)
    payload: dict = {
        "command": "hasse",
        "coefficients": [str(c) for c in q.coefficients],
        "radical_dim": q.radical_dim,
    }
    lines = [f"form {q}"]
    places = ([_parse_place(args.place)] if args.place is not None
              else relevant_places(q))
    disc = discriminant_class(q)
    payload["discriminant_class"] = str(disc)
    lines.append(f"discriminant class: {disc}")
    entries = {}
    for v in places:
        eps = hasse_invariant(q, v)
        _, loc = discriminant_class(q, v)
        entries[_place_key(v)] = {"hasse": eps, "disc_is_local_square": loc}
        lines.append(f"at {v}: hasse {eps:+d}, disc local square: {loc}")
    payload["places"] = entries
    _emit(payload, lines, args.json)
    return EXIT_OK


# ---------------------------------------------------------------- check-f


def _fcond_payload(form: TernaryForm) -> tuple[dict, list[str], bool]:
    report = check_form_conditions(form)
    payload = {
        "command": "check-f",
        "form": str(form),
        "nondegenerate": report.nondegenerate,
        "restrictions_square": dict(sorted(report.restrictions_square.items())),
        "restriction_roots": {a: (str(r) if r is not None else None)
                              for a, r in sorted(report.restriction_roots.items())},
        "f_not_square": report.f_not_square,
        "f_root": str(report.f_root) if report.f_root is not None else None,
        "passes": report.passes,
    }
    lines = [f"F = {form}",
             f"nondegenerate: {report.nondegenerate}"]
    for axis in PROJECTIVE_VARS:
        root = report.restriction_roots[axis]
        lines.append(f"restriction {axis}=0 square: {report.restrictions_square[axis]}"
                     + (f" (root {root})" if root is not None else ""))
    lines.append(f"F not a square: {report.f_not_square}"
                 + (f" (F = ({report.f_root})^2)" if report.f_root is not None else ""))
    lines.append(f"passes: {report.passes}")
    return payload, lines, report.passes


def cmd_check_f(args) -> int:
    form = TernaryForm.from_text(args.polynomial)
    payload, lines, passes = _fcond_payload(form)
    _emit(payload, lines, args.json)
    return EXIT_OK if passes else EXIT_CONDITION


# ---------------------------------------------------------------- residues


def cmd_residues(args) -> int:
    form = TernaryForm.from_text(args.polynomial)
    axes = [args.divisor] if args.divisor else list(PROJECTIVE_VARS)
    alpha = standard_symbol()
    payload: dict = {"command": "residues", "form": str(form), "axes": {}}
    lines = [f"F = {form}", f"symbol {alpha}"]
    for axis in axes:
        divisor = PrimeDivisor.coordinate_axis(axis)
        res = residue_of_symbol(alpha, divisor)
        entry = {
            "divisor": str(divisor),
            "symbol_residue": str(res),
            "symbol_residue_trivial": res.trivial,
        }
        lines.append(f"axis {axis}: residue of symbol = {res}")
        try:
            disc = discriminant_residue_class(form, axis)
            entry["discriminant_class"] = str(disc)
            entry["matches_symbol_residue"] = disc == res
            lines.append(f"axis {axis}: discriminant class = {disc}")
        except FConditionError as e:
            entry["discriminant_class"] = None
            entry["error"] = str(e)
            lines.append(f"axis {axis}: discriminant class unavailable ({e})")
        payload["axes"][axis] = entry
    _emit(payload, lines, args.json)
    return EXIT_OK


# ---------------------------------------------------------------- invariant


def _profile_payload(profile) -> dict:
    return {
        "point": str(profile.point),
        "entries": {_place_key(v): _frac(e) for v, e in profile.entries.items()},
        "relevant_places": [_place_key(v) for v in profile.relevant_places],
        "total": _frac(profile.total),
    }


def cmd_invariant(args) -> int:
    X = Fourfold.from_text(args.polynomial)
    values = _parse_coefficients(args.point)
    if len(values) != 7:
        raise DomainError("--point needs x,y,z,t1,t2,t3,t4")
    base = BasePoint.of(*values[:3])
    point = X.point(base, values[3:])  # raises DomainError when off the fourfold
    profile = invariant_profile(X, point)
    payload = {"command": "invariant", "form": str(X.form)}
    payload.update(_profile_payload(profile))
    lines = [f"point {point}", f"profile {profile}"]
    _emit(payload, lines, args.json)
    return EXIT_OK


# ---------------------------------------------------------------- search


def cmd_search(args) -> int:
    X = Fourfold.from_text(args.polynomial)
    points = X.search_rational_points(args.base_height, args.fiber_height)
    payload: dict = {
        "command": "search",
        "form": str(X.form),
        "base_height": args.base_height,
        "fiber_height": args.fiber_height,
        "count": len(points),
        "points": [],
    }
    lines = [f"F = {X.form}",
             f"{len(points)} points at heights ({args.base_height},{args.fiber_height})"]
    for p in points:
        comp = (real_component(p.base).value if p.xyz_nonzero else "Boundary")
        payload["points"].append({
            "base": list(p.base.coords),
            "t": list(p.t),
            "xyz_nonzero": p.xyz_nonzero,
            "component": comp,
        })
        lines.append(f"  {p}  [{comp}{'' if p.xyz_nonzero else ', on coordinate lines'}]")
    _emit(payload, lines, args.json)
    return EXIT_OK


# ---------------------------------------------------------------- verify-p


def cmd_verify_p(args) -> int:
    X = Fourfold.from_text(args.polynomial)
    seed = args.seed if args.seed is not None else _default_seed()
    v = Place.finite(args.prime)
    report = verify_finite_vanishing(X, v, args.samples, args.depth, seed)
    payload: dict = {
        "command": "verify-p",
        "form": str(X.form),
        "place": _place_key(v),
        "requested": report.requested,
        "tested": report.tested,
        "nonzero_count": report.nonzero_count,
        "depth": report.depth,
        "seed": report.seed,
        "sampling_exhausted": report.sampling_exhausted,
        "counterexamples": [],
    }
    lines = [f"F = {X.form}",
             f"p = {v}: tested {report.tested} sampled bases "
             f"(depth {report.depth}, seed {report.seed})",
             f"nonzero invariants: {report.nonzero_count}"]
    for ce in report.counterexamples:
        check = reverify_counterexample(X, ce, v)
        payload["counterexamples"].append({
            "base": list(ce.base.coords),
            "invariant": _frac(ce.invariant),
            "symbol": ce.symbol,
            "fiber": [str(c) for c in ce.fiber.coefficients],
            "fiber_radical_dim": ce.fiber.radical_dim,
            "oracle_symbol": check["symbol_oracle"],
            "fiber_soluble_oracle": check["fiber_soluble_oracle"],
            "small_global_witness": (list(check["small_global_witness"])
                                     if check["small_global_witness"] else None),
            "confirmed": check["confirmed"],
        })
        lines.append(f"  base {ce.base}: invariant {ce.invariant}, "
                     f"symbol {ce.symbol:+d}, re-verified: {check['confirmed']}")
    _emit(payload, lines, args.json)
    return EXIT_OK


# ---------------------------------------------------------------- verdict


def _witness_payload(w: ObstructionWitness) -> dict:
    return {
        "real_base": list(w.real_base.coords),
        "real_f_value": _frac(w.real_f_value),
        "real_invariant": _frac(w.real_invariant),
        "real_point": str(w.real_point) if w.real_point is not None else None,
        "finite_components": [
            {
                "place": _place_key(c.place),
                "base": list(c.base.coords),
                "depth": c.depth,
                "invariant": _frac(c.invariant),
                "fiber_locally_soluble": c.fiber_locally_soluble,
            }
            for c in w.finite_components
        ],
        "default_rule": w.default_rule,
        "total": _frac(w.total),
    }


def cmd_verdict(args) -> int:
    X = Fourfold.from_text(args.polynomial)
    seed = args.seed if args.seed is not None else _default_seed()
    heights = tuple(int(h) for h in args.heights.split(","))
    if len(heights) != 2:
        raise DomainError("--heights needs two integers H,K")
    v = wa_verdict(X, heights, seed)
    payload: dict = {
        "command": "verdict",
        "form": str(X.form),
        "verdict": v.verdict.value,
        "fcond_passes": v.fcond.passes,
        "real_signature": list(v.real_signature),
        "components": v.components,
        "seed": seed,
        "heights": list(heights),
        "witness": _witness_payload(v.witness) if v.witness is not None else None,
    }
    lines = [f"F = {X.form}",
             f"form conditions pass: {v.fcond.passes}",
             f"real signature of F (pos, neg, zero): {v.real_signature}",
             f"verdict: {v.verdict.value}"]
    if v.witness is not None:
        w = v.witness
        lines.append(f"witness: real base {w.real_base} (F = {w.real_f_value}, "
                     f"invariant {w.real_invariant})")
        if w.real_point is not None:
            lines.append(f"         rational point {w.real_point}")
        for c in w.finite_components:
            lines.append(f"         at p={c.place}: base {c.base} "
                         f"(invariant {c.invariant}, fiber soluble: "
                         f"{c.fiber_locally_soluble}, lift depth {c.depth})")
        lines.append(f"         elsewhere: {w.default_rule}")
        lines.append(f"         total = {w.total}")
    _emit(payload, lines, args.json)
    return EXIT_OK


# ---------------------------------------------------------------- selftest


def cmd_selftest(args) -> int:
    from .acceptance import run_all

    results = run_all()
    payload: dict = {"command": "selftest", "criteria": [], "passed": True}
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        payload["criteria"].append({
            "name": r.name,
            "passed": r.passed,
            "detail": r.detail,
            "seconds": round(r.seconds, 2),
        })
        payload["passed"] = payload["passed"] and r.passed
        lines.append(f"[{status}] {r.name} ({r.seconds:.1f}s): {r.detail}")
    lines.append("overall: " + ("PASS" if payload["passed"] else "FAIL"))
    _emit(payload, lines, args.json)
    return EXIT_OK if payload["passed"] else EXIT_CONDITION


# ---------------------------------------------------------------- wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="biquadric",
        description="Exact computations on the quadric surface bundle "
                    "xy t1^2 + xz t2^2 + yz t3^2 + F(x,y,z) t4^2 = 0 over P^2",
    )
    parser._negative_number_matcher = _NEGATIVE_RATIONAL
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_json(p):
        p._negative_number_matcher = _NEGATIVE_RATIONAL
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("hilbert", help="Hilbert symbol of two rationals")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--place", help="'real' or a prime; default: all relevant places")
    p.add_argument("--oracle", action="store_true",
                   help="also run the exhaustive conic-search oracle")
    p.add_argument("--depth", type=int, default=None, help="oracle search depth")
    add_json(p)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("isotropic", help="isotropy of a diagonal form")
    p.add_argument("coefficients", help="comma-separated nonzero rationals")
    p.add_argument("--place", help="'real' or a prime; default: global verdict")
    p.add_argument("--global", dest="global_", action="store_true",
                   help="global verdict (default when --place is absent)")
    p.add_argument("--oracle-bound", type=int, default=10)
    p.add_argument("--radical", type=int, default=0, help="radical dimension")
    add_json(p)
    p.set_defaults(func=cmd_isotropic)

    p = sub.add_parser("hasse", help="Hasse invariant and discriminant class")
    p.add_argument("coefficients")
    p.add_argument("--place", help="'real' or a prime; default: all relevant places")
    p.add_argument("--radical", type=int, default=0)
    add_json(p)
    p.set_defaults(func=cmd_hasse)

    p = sub.add_parser("check-f", help="square-restriction conditions on a ternary form")
    p.add_argument("polynomial")
    add_json(p)
    p.set_defaults(func=cmd_check_f)

    p = sub.add_parser("residues", help="residues along the coordinate axes")
    p.add_argument("polynomial")
    p.add_argument("--divisor", choices=list(PROJECTIVE_VARS),
                   help="restrict to one axis")
    add_json(p)
    p.set_defaults(func=cmd_residues)

    p = sub.add_parser("invariant", help="invariant profile of a rational point")
    p.add_argument("polynomial")
    p.add_argument("--point", required=True, help="x,y,z,t1,t2,t3,t4")
    add_json(p)
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("search", help="bounded-height rational point search")
    p.add_argument("polynomial")
    p.add_argument("--base-height", type=int, required=True)
    p.add_argument("--fiber-height", type=int, required=True)
    add_json(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify-p", help="finite-place vanishing check by sampling")
    p.add_argument("polynomial")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--depth", type=int, default=5)
    p.add_argument("--seed", type=int, default=None,
                   help="default: BIQUADRIC_SEED or 0")
    add_json(p)
    p.set_defaults(func=cmd_verify_p)

    p = sub.add_parser("verdict", help="weak-approximation verdict with witness")
    p.add_argument("polynomial")
    p.add_argument("--heights", default="2,2", help="base,fiber search heights")
    p.add_argument("--seed", type=int, default=None)
    add_json(p)
    p.set_defaults(func=cmd_verdict)

    p = sub.add_parser("selftest", help="run every acceptance criterion")
    add_json(p)
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PolyParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (FConditionError, DomainError) as e:
        print(f"precondition violated ({type(e).__name__}): {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except Exception as e:  # noqa: BLE001
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
