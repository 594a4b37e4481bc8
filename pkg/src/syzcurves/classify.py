"""Tjurina bounds and the freeness taxonomy of plane curves.

A curve gets a *set* of facets rather than one label: a nearly free
curve with exponents (5, 5) in degree 10 is also a maximal Tjurina
curve and a curve of type (10, 5, 3).  Facets can be derived in two
independent ways, from (d, r, tau) through the bound formulas and from
the exponents, and :func:`cross_check` insists that both derivations
agree on the facets they share.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from math import comb

from .jacobian import JacobianEngine, JacobianTriple, SyzygyProfile, TjurinaRecord

SHARED = ("Free", "NearlyFree", "MPOG", "MaxTjurina")


class BoundViolation(ValueError):
    """tau lies outside the admissible interval for (d, r)."""


@dataclass(frozen=True)
class TauBounds:
    d: int
    r: int
    tau_min: int
    tau_max: int
    tau_max_prime: int | None


def tau_bounds(d: int, r: int) -> TauBounds:
    if d < 3 or not 1 <= r <= d - 1:
        raise ValueError(f"need d >= 3 and 1 <= r <= d-1, got d={d}, r={r}")
    lo = (d - 1) * (d - r - 1)
    hi = (d - 1) ** 2 - r * (d - r - 1)
    prime = hi - comb(2 * r + 2 - d, 2) if 2 * r >= d else None
    return TauBounds(d, r, lo, hi, prime)


@dataclass(frozen=True, order=True)
class Facet:
    kind: str
    params: tuple[int, ...] = ()

    def __str__(self) -> str:
        if self.kind == "General" and not self.params:
            return "General"
        return f"{self.kind}({','.join(map(str, self.params))})"


@dataclass(frozen=True)
class ClassificationLabel:
    facets: tuple[Facet, ...]

    def kinds(self) -> set[str]:
        return {f.kind for f in self.facets}

    def shared(self) -> set[str]:
        return self.kinds() & set(SHARED)

    def get(self, kind: str) -> Facet | None:
        return next((f for f in self.facets if f.kind == kind), None)

    def __contains__(self, kind: str) -> bool:
        return kind in self.kinds()

    def __str__(self) -> str:
        return "+".join(str(f) for f in self.facets)


def _label(facets: list[Facet], fallback: tuple[int, ...] = ()) -> ClassificationLabel:
    if not facets:
        facets = [Facet("General", fallback)]
    return ClassificationLabel(tuple(sorted(set(facets), key=lambda f: (_ORDER.get(f.kind, 9), f.params))))


_ORDER = {k: i for i, k in enumerate(
    ["Free", "NearlyFree", "MPOG", "PlusOneGenerated", "MaxTjurina", "TypeDRM", "General"])}


def classify_from_tau(d: int, r: int, tau: int) -> ClassificationLabel:
    """Facets implied by tau alone, given the degree and mdr."""
    b = tau_bounds(d, r)
    if not b.tau_min <= tau <= b.tau_max:
        raise BoundViolation(f"tau={tau} outside [{b.tau_min}, {b.tau_max}] for (d, r) = ({d}, {r})")
    if b.tau_max_prime is not None and tau > b.tau_max_prime:
        raise BoundViolation(f"tau={tau} exceeds the sharper bound {b.tau_max_prime} for (d, r) = ({d}, {r})")
    facets = []
    gap = b.tau_max - tau
    if gap == 0:
        facets.append(Facet("Free", (r, d - 1 - r)))
    elif gap == 1:
        facets.append(Facet("NearlyFree", (r, d - r)))
    elif gap == 2:
        facets.append(Facet("MPOG", (r, d - r, d - r + 1)))
    if b.tau_max_prime is not None and tau == b.tau_max_prime:
        facets.append(Facet("MaxTjurina", (d, r)))
    return _label(facets)


def classify_from_exponents(d: int, exponents: tuple[int, ...] | list[int]) -> ClassificationLabel:
    """Facets implied by the generator degrees of D_0(f)."""
    e = tuple(sorted(exponents))
    if len(e) < 2:
        raise ValueError("a reduced curve has at least two exponents")
    m = len(e)
    facets = []
    if m == 2 and e[0] + e[1] == d - 1:
        facets.append(Facet("Free", e))
    if m == 3 and e[0] + e[1] == d:
        level = e[2] - e[1]
        facets.append(Facet("PlusOneGenerated", e + (level,)))
        if level == 0:
            facets.append(Facet("NearlyFree", e[:2]))
        elif level == 1:
            facets.append(Facet("MPOG", e))
    # type (d, r, m); m = 2 is excluded since free curves have r < d/2
    if m >= 3 and e[0] == e[-1]:
        r = e[0]
        dm = 2 * r - d + 3 - m
        facets.append(Facet("TypeDRM", (d, r, m, dm)))
        if dm == 0:
            facets.append(Facet("MaxTjurina", (d, r)))
    return _label(facets, e)


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class Consistency:
    passed: bool
    details: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class CurveReport:
    d: int
    r: int
    exponents: tuple[int, ...]
    tau: int
    nu: int
    bounds: TauBounds
    label: ClassificationLabel
    consistency: Consistency
    complete: bool = True
    tau_label: ClassificationLabel | None = None
    exponent_label: ClassificationLabel | None = None
    profile: SyzygyProfile | None = field(default=None, compare=False, repr=False)
    record: TjurinaRecord | None = field(default=None, compare=False, repr=False)


def nu_prediction(d: int, r: int, tau: int) -> int | None:
    """nu forced by (d, r, tau) when 2r <= d, otherwise None."""
    if 2 * r < d:
        return tau_bounds(d, r).tau_max - tau
    if 2 * r == d:
        return 3 * r * r - 3 * r + 1 - tau
    return None


def cross_check(report: CurveReport) -> Consistency:
    """Recompute both labels from the raw numbers and compare them."""
    problems = []
    try:
        by_tau = classify_from_tau(report.d, report.r, report.tau)
    except BoundViolation as exc:
        return Consistency(False, (str(exc),))
    by_exp = classify_from_exponents(report.d, report.exponents)
    if by_tau.shared() != by_exp.shared():
        problems.append(f"tau gives {by_tau}, exponents give {by_exp}")
    if report.r != report.exponents[0]:
        problems.append(f"mdr {report.r} differs from the first exponent {report.exponents[0]}")
    free_sum = len(report.exponents) == 2 and sum(report.exponents) == report.d - 1
    if free_sum != (report.tau == report.bounds.tau_max):
        problems.append("d1 + d2 = d - 1 does not match tau = tau_max")
    predicted = nu_prediction(report.d, report.r, report.tau)
    if predicted is not None and predicted != report.nu:
        problems.append(f"nu = {report.nu}, but (d, r, tau) force {predicted}")
    if ("Free" in by_exp) != (report.nu == 0):
        problems.append(f"nu = {report.nu} contradicts the freeness facet")
    if ("NearlyFree" in by_exp) != (report.nu == 1):
        problems.append(f"nu = {report.nu} contradicts the nearly free facet")
    if not report.complete:
        problems.append("syzygy profile incomplete")
    return Consistency(not problems, tuple(problems))


def analyze(j: JacobianTriple, backend: str | None = None, seed: int = 0,
            k_max: int | None = None, window: str | None = None,
            engine: JacobianEngine | None = None) -> CurveReport:
    """Exponents, tau, nu, bounds and the checked facet set for one curve."""
    eng = engine or JacobianEngine(j, backend, seed)
    prof = eng.syzygy_profile(k_max)
    rec = eng.freeness_defect(window)
    d, r = eng.d, prof.mdr
    exps = prof.generator_degrees
    bounds = tau_bounds(d, r)
    by_exp = classify_from_exponents(d, exps) if len(exps) >= 2 else _label([], exps)
    try:
        by_tau = classify_from_tau(d, r, rec.tau)
    except BoundViolation:
        by_tau = None
    facets = list(by_exp.facets)
    if by_tau is not None:
        facets += [f for f in by_tau.facets if f.kind != "General"]
        if any(f.kind != "General" for f in facets):
            facets = [f for f in facets if f.kind != "General"]
    label = _label(facets, exps)
    report = CurveReport(d, r, exps, rec.tau, rec.nu, bounds, label, Consistency(True),
                         prof.complete, by_tau, by_exp, prof, rec)
    return replace(report, consistency=cross_check(report))
