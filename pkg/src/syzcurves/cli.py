"""Command line interface: ``syzcurves analyze | eigenscheme | paper-suite | catalog``.

Exit codes: 0 success, 2 usage or parse error, 3 unmet precondition
(non-reduced curve, cone, hypotheses of a criterion), 4 internal
failure (no stabilisation, backend disagreement).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from typing import Any

from . import __version__, catalog, suite
from .classify import CurveReport, analyze
from .eigenscheme import (Derivation, EigenschemeError, PencilSpec, eigenscheme_ideal,
                          free_pencil_check, is_zero_dimensional, mpog_pencil_check, pencil_arrangement,
                          plus_one_criterion, quotient_profile)
from .jacobian import CurveError, JacobianEngine, StabilizationError, jacobian_triple
from .linalg import BackendDisagreement
from .poly import ParseError, Polynomial, parse, to_text

SCHEMA = "syzcurves.report/1"
SEED_ENV = "SYZCURVES_SEED"

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 2, 3, 4


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# input


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _source(args) -> tuple[Polynomial, str, catalog.CatalogEntry | None]:
    if getattr(args, "catalog", None):
        try:
            e = catalog.entry(args.catalog)
        except catalog.UnknownCurveError:
            raise UsageError(f"unknown catalog entry {args.catalog!r} (see 'catalog list')") from None
        return e.projective, f"catalog:{e.name}", e
    if getattr(args, "poly", None):
        return parse(args.poly), "poly", None
    raise UsageError("give --poly or --catalog")


def _jsonable(v: Any) -> Any:
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    if isinstance(v, Polynomial):
        return to_text(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _emit(doc: dict, as_json: bool, out) -> None:
    if as_json:
        out.write(json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n")
        return
    for key, value in doc.items():
        if isinstance(value, dict):
            out.write(f"{key}:\n")
            for k, v in value.items():
                out.write(f"  {k}: {_text(v)}\n")
        else:
            out.write(f"{key}: {_text(value)}\n")


def _text(v: Any) -> str:
    v = _jsonable(v)
    if isinstance(v, list):
        return "(" + ", ".join(_text(x) for x in v) + ")"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_text(x)}" for k, x in v.items()) + "}"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _nonzero(values: dict[int, int]) -> dict[int, int]:
    return {k: v for k, v in values.items() if v}


def report_fields(r: CurveReport) -> dict:
    b = r.bounds
    return {
        "degree": r.d,
        "mdr": r.r,
        "exponents": list(r.exponents),
        "label": str(r.label),
        "facets": [str(f) for f in r.label.facets],
        "tau": r.tau,
        "smooth": r.tau == 0,
        "nu": r.nu,
        "tau_min": b.tau_min,
        "tau_max": b.tau_max,
        "tau_max_prime": b.tau_max_prime,
        "n_values": _nonzero(r.record.n_values),
        "window": r.record.window,
        "syzygy_profile_complete": r.complete,
        "consistent": r.consistency.passed,
        "consistency_notes": list(r.consistency.details),
    }


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args, out) -> int:
    f, src, e = _source(args)
    seed = args.seed if args.seed is not None else _default_seed()
    t0 = time.perf_counter()
    j = jacobian_triple(f)
    eng = JacobianEngine(j, args.backend, seed)
    r = analyze(j, engine=eng, k_max=args.kmax, window=args.window)
    doc: dict[str, Any] = {
        "schema": SCHEMA,
        "command": "analyze",
        "input": {"source": src, "polynomial": to_text(f), "degree": j.d},
        "backend": {"name": eng.backend, "seed": seed, "primes": list(eng.primes)},
        "report": report_fields(r),
    }
    if e is not None and e.expected is not None:
        doc["expected"] = {"source": e.expected.source, "matches": suite.matches_expected(r, e.expected)}
    if args.timing:
        doc["timing"] = {"seconds": round(time.perf_counter() - t0, 3)}
    _emit(doc, args.json, out)
    return EXIT_OK


def _parse_theta(text: str) -> Derivation:
    parts = text.replace(";", ",").split(",")
    if len(parts) != 3:
        raise UsageError("--theta takes 'auto' or three polynomials 'a, b, c'")
    return Derivation(*(parse(p) for p in parts))


def _members(text: str | None, base: str | None) -> tuple:
    if not text:
        return ()
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if ":" in tok:
            a, b = tok.split(":")
            out.append((Fraction(a), Fraction(b)))
        else:
            try:
                out.append(catalog.member_value(tok, base))
            except (ValueError, ZeroDivisionError):
                raise UsageError(f"bad pencil member {tok!r}") from None
    return tuple(out)


# older names of the two pencil checks
_CHECK_ALIASES = {"corE1": "free-pencil", "corE2": "mpog-pencil"}


def cmd_eigenscheme(args, out) -> int:
    doc: dict[str, Any] = {"schema": SCHEMA, "command": "eigenscheme"}
    if args.pencil:
        try:
            base = catalog.pencil_base(args.pencil)
        except catalog.UnknownCurveError:
            raise UsageError(f"unknown catalog entry {args.pencil!r}") from None
        spec = PencilSpec(base, _members(args.members, catalog.resolve(args.pencil)), args.line,
                          parse(args.form) if args.form else None)
        arr = pencil_arrangement(spec)
        f, theta, src = arr.F, arr.delta, f"pencil:{catalog.resolve(args.pencil)}"
        doc["input"] = {"source": src, "base": to_text(base), "members": len(spec.members) or spec.k,
                        "line_at_infinity": args.line, "degree": arr.d}
        checks = args.check or ["free-pencil"]
    else:
        f, src, _ = _source(args)
        doc["input"] = {"source": src, "polynomial": to_text(f), "degree": int(f.degree())}
        checks = args.check or ["quotient", "classify"]
        if args.theta == "auto":
            eng = JacobianEngine(jacobian_triple(f), args.backend, _default_seed())
            theta = Derivation(*eng.exact_generators()[0].components())
        else:
            theta = _parse_theta(args.theta)
    ideal = eigenscheme_ideal(theta)
    doc["theta"] = str(theta)
    doc["ideal"] = {"generators": [to_text(g) for g in ideal.generators()], "degree": ideal.degree,
                    "zero_dimensional": (not ideal.is_zero()) and is_zero_dimensional(ideal)}
    results: dict[str, Any] = {}
    for check in checks:
        check = _CHECK_ALIASES.get(check, check)
        if check == "membership":
            g = parse(args.member) if args.member else f
            results["membership"] = {"polynomial": to_text(g), "member": bool(ideal.contains(g))}
        elif check == "quotient":
            prof = quotient_profile(ideal, f)
            q: dict[str, Any] = {"verdict": prof.verdict, "dims": prof.dims}
            if prof.ell is not None:
                q.update(ell=to_text(prof.ell), e=prof.e, h=to_text(prof.h))
            results["quotient"] = q
        elif check == "classify":
            res = plus_one_criterion(f, theta, backend=args.backend)
            results["classify"] = {"verdict": res.profile.verdict, "label": res.label, "mdr": res.mdr}
        elif check in ("free-pencil", "mpog-pencil"):
            if not args.pencil:
                raise UsageError(f"--check {check} needs --pencil")
            v = free_pencil_check(spec) if check == "free-pencil" else mpog_pencil_check(spec)
            kind = "Free" if check == "free-pencil" else "MPOG"
            results[check] = {"holds": v.holds,
                              "label": f"{kind}({','.join(map(str, v.exponents))})" if v.holds else "none"}
    doc["checks"] = results
    _emit(doc, args.json, out)
    return EXIT_OK


def cmd_paper_suite(args, out) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    criteria = None
    if args.criteria:
        try:
            criteria = {int(c) for c in args.criteria.split(",")}
        except ValueError:
            raise UsageError("--criteria takes comma separated integers") from None
    t0 = time.perf_counter()
    results = suite.run_suite(args.tier, seed, args.jobs, criteria)
    verdicts = suite.criterion_verdicts(results)
    if args.json:
        doc = {
            "schema": SCHEMA, "command": "paper-suite", "tier": args.tier, "seed": seed,
            "fixtures": [{"name": r.name, "criterion": r.criterion, "tier": r.tier, "passed": r.passed,
                          "observed": r.outcome.observed, "expected": r.outcome.expected,
                          "source": r.source, "properties": r.outcome.properties,
                          "note": r.outcome.note} for r in results],
            "criteria": {str(k): v for k, v in verdicts.items()},
            "passed": all(r.passed for r in results),
        }
        if args.timing:
            doc["timing"] = {"seconds": round(time.perf_counter() - t0, 3)}
        _emit(doc, True, out)
    else:
        for r in results:
            mark = "PASS" if r.passed else "FAIL"
            out.write(f"{mark} [{r.criterion}] {r.name}: {r.outcome.observed}\n")
            if not r.passed:
                out.write(f"     expected: {r.outcome.expected}\n")
                bad = [k for k, v in r.outcome.properties.items() if not v]
                if bad:
                    out.write(f"     failed properties: {', '.join(bad)}\n")
                if r.outcome.note:
                    out.write(f"     note: {r.outcome.note}\n")
            out.write(f"     source: {r.source}\n")
        for c, ok in verdicts.items():
            out.write(f"criterion {c}: {'pass' if ok else 'fail'}\n")
        n = sum(r.passed for r in results)
        out.write(f"{n}/{len(results)} fixtures passed\n")
        if args.timing:
            out.write(f"elapsed: {time.perf_counter() - t0:.1f}s\n")
    return EXIT_OK if all(r.passed for r in results) else 1


def cmd_catalog(args, out) -> int:
    if args.action == "list":
        for n in catalog.names(args.tier):
            e = catalog.entry(n)
            out.write(f"{n}\tdegree {int(e.projective.degree())}\t{e.tier}\t{e.description}\n")
        return EXIT_OK
    if not args.name:
        raise UsageError("catalog show needs a name")
    try:
        e = catalog.entry(args.name)
    except catalog.UnknownCurveError:
        raise UsageError(f"unknown catalog entry {args.name!r}") from None
    doc: dict[str, Any] = {"name": e.name, "degree": int(e.projective.degree()), "tier": e.tier,
                           "description": e.description, "polynomial": to_text(e.projective)}
    if e.affine is not None:
        doc["affine"] = to_text(e.affine)
    if e.expected is not None:
        doc["expected"] = suite._expected_text(e.expected)
        doc["source"] = e.expected.source
    _emit(doc, args.json, out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="syzcurves", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--backend", choices=["exact", "modular"], default=None,
                        help="linear algebra backend (default: modular from degree 24)")
        sp.add_argument("--json", action="store_true", help="structured output")

    a = sub.add_parser("analyze", help="exponents, tau, nu and facets of a curve")
    src = a.add_mutually_exclusive_group(required=True)
    src.add_argument("--poly", help="homogeneous polynomial in x, y, z")
    src.add_argument("--catalog", help="catalog entry name")
    a.add_argument("--kmax", type=int, default=None, help="last syzygy degree scanned (default 2d + 1)")
    a.add_argument("--window", choices=["full", "half"], default=None)
    a.add_argument("--seed", type=int, default=None, help=f"prime seed (default ${SEED_ENV} or 0)")
    a.add_argument("--timing", action="store_true", help="include wall time")
    common(a)
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("eigenscheme", help="eigenscheme ideal, quotient and pencil checks")
    src = e.add_mutually_exclusive_group(required=True)
    src.add_argument("--poly")
    src.add_argument("--catalog")
    src.add_argument("--pencil", help="base curve f of the pencil alpha f + beta z^d")
    e.add_argument("--members", help="pencil members: fibre values (0, 1, b, -16/9) or alpha:beta")
    e.add_argument("--form", help="binary form P(x, y); the arrangement is P(f, z^d)")
    e.add_argument("--line", action="store_true", help="add the line z = 0")
    e.add_argument("--theta", default="auto", help="'auto' (minimal degree syzygy) or 'a, b, c'")
    e.add_argument("--check", action="append",
                   choices=["membership", "quotient", "classify", "free-pencil", "mpog-pencil", *_CHECK_ALIASES],
                   help="free-pencil / mpog-pencil test the pencil arrangement (aliases corE1 / corE2)")
    e.add_argument("--member", help="polynomial for --check membership (default: the curve)")
    common(e)
    e.set_defaults(func=cmd_eigenscheme)

    s = sub.add_parser("paper-suite", help="run the reference fixtures")
    s.add_argument("--tier", required=True, choices=list(suite.TIERS))
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--criteria", help="restrict to criteria, e.g. 1,2,3")
    s.add_argument("--json", action="store_true")
    s.add_argument("--timing", action="store_true")
    s.set_defaults(func=cmd_paper_suite)

    c = sub.add_parser("catalog", help="list or show named curves")
    c.add_argument("action", choices=["list", "show"])
    c.add_argument("name", nargs="?")
    c.add_argument("--tier", choices=list(suite.TIERS))
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_catalog)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CurveError, EigenschemeError) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (StabilizationError, BackendDisagreement, RuntimeError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
