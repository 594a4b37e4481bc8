"""Reference fixtures with published values, grouped by acceptance criterion.

Every fixture has a tier (``fast`` or ``full``), the criterion it
belongs to and a ``source`` string describing the published claim.  A
fixture run returns an :class:`Outcome`; failures are results, never
exceptions, so a suite run always completes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from . import catalog
from .classify import CurveReport, analyze
from .eigenscheme import (Derivation, PencilSpec, det_certificate, eigenscheme_ideal, free_pencil_check,
                          mpog_pencil_check, quotient_profile)
from .jacobian import CurveError, JacobianEngine, jacobian_triple
from .linalg import QQ, basis_size
from .poly import Polynomial, parse, to_text

TIERS = ("fast", "full")


@dataclass(frozen=True)
class Outcome:
    passed: bool
    observed: str
    expected: str
    properties: dict[str, bool] = field(default_factory=dict)
    note: str = ""


@dataclass(frozen=True)
class Fixture:
    name: str
    criterion: int
    tier: str
    source: str
    run: Callable[[int], Outcome] = field(compare=False, repr=False)


@dataclass(frozen=True)
class FixtureResult:
    name: str
    criterion: int
    tier: str
    source: str
    outcome: Outcome

    @property
    def passed(self) -> bool:
        return self.outcome.passed and all(self.outcome.properties.values())


# ---------------------------------------------------------------------------
# cached analyses


def backend_for(name: str) -> str | None:
    """Backend used for a catalog fixture: modular for the large ones."""
    e = catalog.entry(name)
    d = int(e.projective.degree())
    return "modular" if d >= 20 or name in ("D0", "D0p") else None


@lru_cache(maxsize=None)
def analysis(name: str, backend: str | None, seed: int) -> tuple[CurveReport, JacobianEngine]:
    j = jacobian_triple(catalog.entry(name).projective)
    eng = JacobianEngine(j, backend, seed)
    return analyze(j, engine=eng), eng


def _facet_matches(report: CurveReport, spec: str) -> bool:
    if "(" in spec:
        return spec in {str(f) for f in report.label.facets}
    return spec in report.label


def _summary(r: CurveReport) -> str:
    return f"exponents {r.exponents}, tau {r.tau}, nu {r.nu}, {r.label}"


def _expected_text(e: catalog.Expected) -> str:
    parts = []
    if e.exponents is not None:
        parts.append(f"exponents {tuple(e.exponents)}")
    if e.tau is not None:
        parts.append(f"tau {e.tau}")
    if e.nu is not None:
        parts.append(f"nu {e.nu}")
    parts.extend(e.facets)
    return ", ".join(parts)


def matches_expected(report: CurveReport, e: catalog.Expected) -> bool:
    return ((e.exponents is None or tuple(e.exponents) == report.exponents)
            and (e.tau is None or e.tau == report.tau)
            and (e.nu is None or e.nu == report.nu)
            and all(_facet_matches(report, s) for s in e.facets))


# ---------------------------------------------------------------------------
# structural properties (criterion 9)


def saito_check(report: CurveReport, eng: JacobianEngine) -> bool:
    """det(E, theta_1, theta_2) is a nonzero constant times f for free curves."""
    gens = eng.exact_generators(report.profile)
    if len(gens) != 2:
        return False
    t1, t2 = (Derivation(*g.components()) for g in gens)
    q = det_certificate(t1, t2, eng.triple.f)
    return q.is_constant() and not q.is_zero()


def rank_agreement(eng: JacobianEngine, degrees) -> bool:
    """Exact and modular ranks of (J_f)_k agree at the given degrees."""
    for k in degrees:
        ncols, entries = eng._entries(k)
        if not ncols:
            continue
        exact = QQ.rank(QQ.matrix(basis_size(k), ncols, entries))
        for i in (0, 1):
            F = eng.pool.field(i)
            if F.rank(F.matrix(basis_size(k), ncols, entries)) != exact:
                return False
    return True


def property_checks(report: CurveReport, eng: JacobianEngine, ranks: bool = True) -> dict[str, bool]:
    """Structural identities that must hold for every reduced curve."""
    t = eng.triple
    x, y, z = (Polynomial.var(v, t.f.gens) for v in "xyz")
    b = report.bounds
    rec = report.record
    T = 3 * report.d - 6
    out = {
        "euler": x * t.fx + y * t.fy + z * t.fz == t.f.scale(report.d),
        "tau_sandwich": b.tau_min <= report.tau <= b.tau_max
        and (b.tau_max_prime is None or report.tau <= b.tau_max_prime),
        "cross_check": report.consistency.passed,
        "nu_is_max": rec.nu == max(rec.n_values.values(), default=0),
        "n_symmetric": all(rec.n_values[k] == rec.n_values[T - k]
                           for k in rec.n_values if T - k in rec.n_values),
    }
    if ranks:
        d = report.d
        out["backend_ranks"] = rank_agreement(eng, (d - 1 + report.r, 2 * d - 2))
    if "Free" in report.label:
        out["saito"] = saito_check(report, eng)
    return out


def random_curve(rng: random.Random, max_degree: int = 8) -> Polynomial:
    """A product of random low degree factors; singular more often than not."""
    target = rng.randint(3, max_degree)
    f = Polynomial.constant(1)
    deg = 0
    while deg < target:
        k = rng.randint(1, min(3, target - deg))
        terms = {}
        for a in range(k + 1):
            for c in range(k + 1 - a):
                if rng.random() < 0.6:
                    terms[(a, k - a - c, c, 0)] = rng.randint(-3, 3)
        g = Polynomial(terms)
        if g.is_zero() or g.degree() != k:
            continue
        f = f * g
        deg += k
    return f


def random_curves(count: int = 50, seed: int = 0, max_degree: int = 8) -> list[Polynomial]:
    """Reduced, non-cone random curves of degree 3..max_degree."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        f = random_curve(rng, max_degree)
        try:
            jacobian_triple(f)
        except CurveError:
            continue
        out.append(f)
    return out


def random_property_run(count: int = 50, seed: int = 0) -> Outcome:
    bad = []
    for f in random_curves(count, seed):
        j = jacobian_triple(f)
        exact_eng = JacobianEngine(j, "exact", seed)
        mod_eng = JacobianEngine(j, "modular", seed)
        r1, r2 = analyze(j, engine=exact_eng), analyze(j, engine=mod_eng)
        props = property_checks(r1, exact_eng)
        props["backends_agree"] = (r1.exponents, r1.tau, r1.nu) == (r2.exponents, r2.tau, r2.nu)
        failed = [k for k, v in props.items() if not v]
        if failed:
            bad.append(f"{to_text(f)}: {','.join(failed)}")
    return Outcome(not bad, f"{count - len(bad)}/{count} curves pass", f"{count}/{count} curves pass",
                   note="; ".join(bad))


# ---------------------------------------------------------------------------
# fixture builders


def _catalog_fixture(name: str, criterion: int) -> Fixture:
    e = catalog.entry(name)

    def run(seed: int) -> Outcome:
        report, eng = analysis(name, backend_for(name), seed)
        ok = matches_expected(report, e.expected)
        return Outcome(ok, _summary(report), _expected_text(e.expected),
                       property_checks(report, eng, ranks=report.d <= 13))

    return Fixture(name, criterion, e.tier, e.expected.source, run)


def _pencil_free_fixture(union: str, base: str, line: bool) -> Fixture:
    e = catalog.entry(union)

    def run(seed: int) -> Outcome:
        report, _ = analysis(union, backend_for(union), seed)
        spec = PencilSpec(catalog.pencil_base(base),
                          (Fraction(0), catalog.member_value("b", base)), line)
        verdict = free_pencil_check(spec)
        direct = report.exponents if "Free" in report.label else None
        ok = (verdict.holds and matches_expected(report, e.expected)
              and tuple(e.expected.exponents) == verdict.exponents == direct)
        obs = f"syzygies: {_summary(report)}; membership: {verdict.exponents if verdict.holds else 'not free'}"
        return Outcome(ok, obs, _expected_text(e.expected) + ", both paths agree")

    return Fixture(f"{union}/both-paths", 4, e.tier, e.expected.source + " (syzygies and membership)", run)


def _delta(base: str) -> tuple[Polynomial, Derivation]:
    f = catalog.entry(base).projective
    return f, Derivation.delta(f)


def _membership_fixture(base: str, label: str) -> Fixture:
    def run(seed: int) -> Outcome:
        f, delta = _delta(base)
        z = Polynomial.var("z", f.gens)
        ideal = eigenscheme_ideal(delta)
        tests = {f"{label}^2": f * f, f"z^10 {label}": z ** 10 * f, "z^20": z ** 20}
        got = {k: bool(ideal.contains(g)) for k, g in tests.items()}
        return Outcome(all(got.values()), ", ".join(f"{k}: {v}" for k, v in got.items()),
                       "all three in the ideal")

    return Fixture(f"{base}/powers-in-I_delta", 8, "fast",
                   f"published: {label}^2, z^10 {label}, z^20 lie in I_delta", run)


def _zpower_fixture(base: str, power: int) -> Fixture:
    def run(seed: int) -> Outcome:
        f, delta = _delta(base)
        z = Polynomial.var("z", f.gens)
        ideal = eigenscheme_ideal(delta)
        first = next(p for p in range(power - 2, power + 4) if ideal.contains(z ** p))
        ok = bool(ideal.contains(z ** power))
        return Outcome(ok, f"z^{power} in I_delta: {ok}; smallest power in I_delta: {first}",
                       f"z^{power} in I_delta")

    return Fixture(f"{base}/z^{power}-in-I_delta", 8, "fast",
                   f"published: z^{power} lies in I_delta", run)


_ELL = parse("793202173*x+3698829360*y-1039006968*z")
_QUAD = parse("106288200*y^2-23416645*y*z-11726872*z^2")


def _proportional(a: Polynomial, b: Polynomial) -> bool:
    return a.primitive() in (b.primitive(), -b.primitive())


def _quotient_fixture() -> Fixture:
    def run(seed: int) -> Outcome:
        f, delta = _delta("C0(5/8)")
        z = Polynomial.var("z", f.gens)
        ideal = eigenscheme_ideal(delta)
        seen = []
        ok = True
        for g in (f * f, z ** 10 * f, z ** 20):
            prof = quotient_profile(ideal, g)
            good = prof.verdict == "Proper" and prof.e == 2 and _proportional(prof.ell, _ELL) \
                and _proportional(prof.h, _QUAD)
            ok &= good
            seen.append(f"{prof.verdict}" + (f" ({to_text(prof.ell.primitive())}, {to_text(prof.h)})"
                                             if prof.ell is not None else ""))
        return Outcome(ok, "; ".join(seen), f"({to_text(_ELL)}, {to_text(_QUAD)}) for all three")

    return Fixture("C0(5/8)/quotient", 8, "fast",
                   "published: K = (l1, l2 l3) for f^2, z^10 f and z^20", run)


def _mpog_pencil_fixture(members=None, form: str | None = None, line: bool = False,
                         expected=(9, 11, 12), tier: str = "fast") -> Fixture:
    tag = f"form {form}" if form else "members " + ",".join(members)

    def run(seed: int) -> Outcome:
        f = catalog.pencil_base("C0(5/8)")
        pts = tuple(catalog.member_value(m) for m in members) if members else ()
        spec = PencilSpec(f, pts, line, parse(form) if form else None)
        v = mpog_pencil_check(spec)
        return Outcome(v.holds and v.exponents == expected, str(v.exponents if v.holds else "not MPOG"),
                       str(expected))

    name = f"C0(5/8)/pencil-{tag}" + ("+Lz" if line else "")
    return Fixture(name, 8, tier, f"published: MPOG, exponents {expected}", run)


_C_PUBLISHED = {
    "x=tz": (20, parse("32768*t^3-768*t^2+1824*t-243")),
    "y=tx": (39, parse("282429536481*t^5+276496482330144*t^4+2414080421160192*t^3"
                       "+16059343010660352*t^2+2540256075186176*t+91534343012352")),
}


def _discriminant_fixture(kind: str) -> Fixture:
    def run(seed: int) -> Outcome:
        m, c = catalog.line_discriminant(kind)
        pm, pc = _C_PUBLISHED[kind]
        return Outcome(m == pm and _proportional(c, pc), f"t^{m} * ({to_text(c)})",
                       f"t^{pm} * ({to_text(pc)})")

    return Fixture(f"discriminant {kind}", 5, "fast", "published: discriminant of the line pencil", run)


def _random_fixture(count: int = 50) -> Fixture:
    return Fixture(f"random-curves-{count}", 9, "fast",
                   "structural identities on seeded random curves of degree <= 8",
                   lambda seed: random_property_run(count, seed))


# ---------------------------------------------------------------------------
# registry

_CRITERIA = {
    1: ["C0", "C1", "Cb"],
    2: ["C1p", "C0p", "Cbp"],
    3: ["C0_Lz", "C1_Lz", "Cb_Lz", "C0p_Lz", "Cbp_Lz", "C1p_Lz", "C0_Lx", "C0_Ly", "C0_LxLyLz",
        "C0p_Lx", "C0p_Ly", "C0p_LxLyLz"],
    5: ["D0", "D0p"],
    6: ["C0(0)", "C0(5/8)", "C0(-10/3)", "C0(-1/3)", "C0(-65/48)", "C0(5/8)-x^10", "C0(5/8)-x^9z",
        "C0(5/8)-x^4z^6", "xyz(C0(5/8)-x^10)", "C0(5/8,-25/27)", "C0(5/8,163/180)"],
    7: ["C0pp", "C1pp", "Cbpp", "C0pp_Lz", "C1pp_Lz", "Cbpp_Lz", "C20p", "C30p",
        "C0pp_Cbpp", "C0pp_Cbpp_Lz", "C40p"],
    8: ["F2(5/8)", "zF2(5/8)", "F3(5/8)", "zF3(5/8)"],
}


@lru_cache(maxsize=None)
def fixtures() -> tuple[Fixture, ...]:
    out: list[Fixture] = []
    for crit, names in _CRITERIA.items():
        if crit == 5:
            out += [_discriminant_fixture("x=tz"), _discriminant_fixture("y=tx")]
        if crit == 8:
            out += [_membership_fixture("C0", "f0"), _membership_fixture("C0p", "f0'"),
                    _zpower_fixture("C0", 14), _zpower_fixture("C0p", 17), _quotient_fixture(),
                    _mpog_pencil_fixture(("0", "1")), _mpog_pencil_fixture(("0", "1"), line=True,
                                                                           expected=(9, 12, 13)),
                    _mpog_pencil_fixture(form="x^3+y^3", expected=(9, 21, 22), tier="full")]
        out += [_catalog_fixture(n, crit) for n in names]
        if crit == 3:
            out += [_pencil_free_fixture("C0_Cb", "C0", False), _pencil_free_fixture("C0_Cb_Lz", "C0", True),
                    _pencil_free_fixture("C0p_Cbp", "C0p", False),
                    _pencil_free_fixture("C0p_Cbp_Lz", "C0p", True)]
    out.append(_random_fixture())
    return tuple(out)


def select(tier: str, criteria=None) -> list[Fixture]:
    """Fixtures of a tier; ``full`` includes the fast ones."""
    if tier not in TIERS:
        raise ValueError(f"unknown tier {tier!r}; choose from {', '.join(TIERS)}")
    allowed = {"fast"} if tier == "fast" else set(TIERS)
    return [f for f in fixtures() if f.tier in allowed and (criteria is None or f.criterion in criteria)]


def fixture(name: str) -> Fixture:
    for f in fixtures():
        if f.name == name:
            return f
    raise KeyError(name)


def run_fixture(name: str, seed: int = 0) -> FixtureResult:
    fx = fixture(name)
    try:
        outcome = fx.run(seed)
    except Exception as exc:  # a crash is a failed fixture, not a failed suite
        outcome = Outcome(False, f"error: {type(exc).__name__}: {exc}", "")
    return FixtureResult(fx.name, fx.criterion, fx.tier, fx.source, outcome)


def run_suite(tier: str = "fast", seed: int = 0, jobs: int = 1, criteria=None) -> list[FixtureResult]:
    """Run a tier and return results in registry order."""
    chosen = [f.name for f in select(tier, criteria)]
    if jobs <= 1:
        results = [run_fixture(n, seed) for n in chosen]
    else:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(run_fixture, chosen, [seed] * len(chosen)))
    order = {n: i for i, n in enumerate(chosen)}
    return sorted(results, key=lambda r: order[r.name])


def criterion_verdicts(results: list[FixtureResult]) -> dict[int, bool]:
    """Pass or fail per criterion; catalog property flags count towards 9."""
    out: dict[int, bool] = {}
    for r in results:
        out[r.criterion] = out.get(r.criterion, True) and r.outcome.passed
        if r.outcome.properties:
            out[9] = out.get(9, True) and all(r.outcome.properties.values())
    return dict(sorted(out.items()))
