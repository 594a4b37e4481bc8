"""Eigenscheme ideals of derivations and free or MPOG pencil arrangements.

For a derivation theta = a d_x + b d_y + c d_z the eigenscheme ideal
I_theta is generated by the 2-minors of the matrix with rows (x, y, z)
and (a, b, c).  The quotient K = I_theta : (f) decides freeness (K = S)
and plus-one generation (K = (l, h) with l linear) of a curve f = 0
that theta annihilates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .jacobian import JacobianEngine, Syzygy, jacobian_triple
from .linalg import QQ, Membership, basis_size, image_membership, mono_index, monomial_basis, multiplication_map
from .poly import NotDivisibleError, Polynomial, det3, exact_divide, gcd, gcd_many, is_squarefree


class EigenschemeError(ValueError):
    pass


class HypothesisError(EigenschemeError):
    """A criterion was applied outside its hypotheses."""


# ---------------------------------------------------------------------------
# derivations


def _vars(gens):
    return tuple(Polynomial.var(v, gens) for v in "xyz")


@dataclass(frozen=True)
class Derivation:
    """theta = a d_x + b d_y + c d_z with homogeneous a, b, c of one degree."""

    a: Polynomial
    b: Polynomial
    c: Polynomial

    def __post_init__(self):
        degs = {int(p.degree()) for p in self.components() if not p.is_zero()}
        if len(degs) > 1 or not all(p.is_homogeneous() for p in self.components()):
            raise EigenschemeError("derivation coefficients must be homogeneous of one degree")

    def components(self) -> tuple[Polynomial, Polynomial, Polynomial]:
        return self.a, self.b, self.c

    @property
    def degree(self) -> int:
        for p in self.components():
            if not p.is_zero():
                return int(p.degree())
        raise EigenschemeError("the zero derivation has no degree")

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.components())

    def is_primitive(self) -> bool:
        return gcd_many([p for p in self.components() if not p.is_zero()]).is_constant()

    def apply(self, g: Polynomial) -> Polynomial:
        return self.a * g.diff("x") + self.b * g.diff("y") + self.c * g.diff("z")

    @classmethod
    def euler(cls, gens=("x", "y", "z", "t")) -> "Derivation":
        return cls(*_vars(gens))

    @classmethod
    def delta(cls, f: Polynomial) -> "Derivation":
        """f_y d_x - f_x d_y, which kills f and z."""
        return cls(f.diff("y"), -f.diff("x"), Polynomial.zero(f.gens))

    @classmethod
    def from_syzygy(cls, s: Syzygy) -> "Derivation":
        return cls(s.a, s.b, s.c)

    def __str__(self) -> str:
        return f"({self.a})*d_x + ({self.b})*d_y + ({self.c})*d_z"


# ---------------------------------------------------------------------------
# the ideal


class EigenschemeIdeal:
    """The minors (y c - z b, z a - x c, x b - y a) of a derivation."""

    def __init__(self, minors: tuple[Polynomial, Polynomial, Polynomial], source: Derivation | None = None):
        self.minors = minors
        self.source = source
        self._dual: dict[int, list[list[int]]] = {}

    @property
    def degree(self) -> int:
        return int(max(m.degree() for m in self.minors))

    def generators(self) -> list[Polynomial]:
        return [m for m in self.minors if not m.is_zero()]

    def is_zero(self) -> bool:
        return not self.generators()

    def dual(self, D: int) -> list[list[int]]:
        """Functionals on S_D spanning the annihilator of (I)_D, one row per monomial."""
        if D not in self._dual:
            n = basis_size(D)
            gens = self.generators()
            if D < self.degree or not gens:
                rows = [[int(i == j) for j in range(n)] for i in range(n)]
            else:
                m = multiplication_map(gens, D)
                M = QQ.matrix(len(m.columns), n, ((c, r, v) for r, c, v in m.triplets()))
                null = QQ.nullspace(M)
                rows = [list(col) for col in zip(*null)] if null else [[] for _ in range(n)]
            self._dual[D] = rows
        return self._dual[D]

    def hilbert(self, k: int) -> int:
        """dim (S/I)_k."""
        if k < 0:
            return 0
        rows = self.dual(k)
        return len(rows[0]) if rows else 0

    def contains(self, g: Polynomial) -> Membership:
        if g.is_zero():
            return Membership(True)
        if not g.is_homogeneous():
            raise EigenschemeError("membership is tested for homogeneous polynomials")
        return image_membership(multiplication_map(self.generators(), int(g.degree())), g)

    def __contains__(self, g: Polynomial) -> bool:
        return bool(self.contains(g))


def eigenscheme_ideal(theta: Derivation) -> EigenschemeIdeal:
    if theta.is_zero():
        raise EigenschemeError("the zero derivation has no eigenscheme")
    x, y, z = _vars(theta.a.gens)
    a, b, c = theta.components()
    return EigenschemeIdeal((y * c - z * b, z * a - x * c, x * b - y * a), theta)


def is_zero_dimensional(ideal: EigenschemeIdeal) -> bool:
    """Constant gcd of the minors and a positive stable Hilbert value."""
    gens = ideal.generators()
    if not gens:
        raise EigenschemeError("all minors vanish (radial derivation)")
    if not gcd_many(gens).is_constant():
        return False
    start = 3 * ideal.degree
    prev = ideal.hilbert(start)
    for k in range(start + 1, 6 * ideal.degree + 2):
        cur = ideal.hilbert(k)
        if cur == prev:
            return cur > 0
        prev = cur
    return False


# ---------------------------------------------------------------------------
# ideal quotients


@dataclass(frozen=True)
class QuotientProfile:
    """Dimensions of K = I : (f) and the detected generator structure.

    ``verdict`` is ``WholeRing``, ``Proper`` (then K = (ell, h) with
    deg h = e, checked on the window) or ``Other``.
    """

    dims: dict[int, int]
    verdict: str
    ell: Polynomial | None = None
    e: int | None = None
    h: Polynomial | None = None
    window: int = 0


def _quotient_kernel(ideal: EigenschemeIdeal, f: Polynomial, k: int) -> list[list[int]]:
    """Basis (integer vectors on S_k) of {h in S_k : h f in I}."""
    d = int(f.degree())
    lam = ideal.dual(k + d)
    width = len(lam[0]) if lam else 0
    n = basis_size(k)
    if width == 0:
        return [[int(i == j) for i in range(n)] for j in range(n)]
    den = lcm(*(c.denominator for c in f.terms.values()))
    fterms = [(e[:3], int(c * den)) for e, c in f.terms.items()]
    entries = []
    for j, m in enumerate(monomial_basis(k).monomials):
        acc = [0] * width
        for e, c in fterms:
            row = lam[mono_index((m[0] + e[0], m[1] + e[1], m[2] + e[2]))]
            for q, v in enumerate(row):
                if v:
                    acc[q] += c * v
        entries.extend((q, j, v) for q, v in enumerate(acc) if v)
    return QQ.nullspace(QQ.matrix(width, n, entries))


def _primitive_from(vec: Sequence[int], k: int, gens) -> Polynomial:
    return monomial_basis(k).polynomial([Fraction(v) for v in vec], gens).primitive()


def _ci_dims(k: int, e: int) -> int:
    return basis_size(k - 1) + basis_size(k - e) - basis_size(k - e - 1)


def _reduce_mod_linear(h: Polynomial, ell: Polynomial) -> Polynomial:
    """Eliminate the first variable of ell that occurs in it."""
    n = len(ell.gens)
    for i, v in enumerate("xyz"):
        c = ell.coeff(tuple(int(j == i) for j in range(n)))
        if c:
            rest = ell - Polynomial.var(v, ell.gens).scale(c)
            return h.subs({v: rest.scale(Fraction(-1) / c)})
    raise EigenschemeError("not a linear form")


def quotient_profile(ideal: EigenschemeIdeal, f: Polynomial, k_max: int | None = None,
                     search_limit: int | None = None) -> QuotientProfile:
    """Compute K = I : (f) degree by degree and recognise its shape.

    For a ``Proper`` verdict the complete intersection dimensions
    dim S_{k-1} + dim S_{k-e} - dim S_{k-e-1} are verified up to
    ``k_max`` (default e + 5); a mismatch gives ``Other``.
    """
    if not f.is_homogeneous() or f.is_zero():
        raise EigenschemeError("f must be a nonzero homogeneous polynomial")
    gens = f.gens
    dims: dict[int, int] = {}
    kernels: dict[int, list[list[int]]] = {}

    def dim(k):
        if k not in dims:
            kernels[k] = _quotient_kernel(ideal, f, k)
            dims[k] = len(kernels[k])
        return dims[k]

    if dim(0) == 1:
        return QuotientProfile(dims, "WholeRing", window=0)
    if dim(1) == 0:
        top = k_max if k_max is not None else 3
        for k in range(2, top + 1):
            dim(k)
        return QuotientProfile(dims, "Other", window=max(dims))
    ell = _primitive_from(kernels[1][0], 1, gens)
    limit = search_limit or ideal.degree + 2 * int(f.degree())
    e = None
    for k in range(1, limit + 1):
        if dim(k) > basis_size(k - 1):
            e = k
            break
    if e is None:
        return QuotientProfile(dims, "Other", ell=ell, window=max(dims))
    # h: a degree e element outside ell * S_{e-1}, reduced modulo ell
    h = None
    for vec in kernels[e]:
        cand = _reduce_mod_linear(_primitive_from(vec, e, gens), ell)
        if not cand.is_zero():
            h = cand.primitive()
            break
    top = k_max if k_max is not None else e + 5
    for k in range(0, top + 1):
        if dim(k) != _ci_dims(k, e):
            return QuotientProfile(dims, "Other", ell=ell, e=e, h=h, window=top)
    return QuotientProfile(dims, "Proper", ell=ell, e=e, h=h, window=top)


# ---------------------------------------------------------------------------
# criteria


@dataclass(frozen=True)
class CriterionResult:
    """Outcome of the ideal quotient criterion for one curve and one theta."""

    kind: str
    exponents: tuple[int, ...] | None
    profile: QuotientProfile
    mdr: int | None = None
    e: int | None = None

    @property
    def label(self) -> str:
        if self.exponents is None:
            return self.kind
        return f"{self.kind}({','.join(map(str, self.exponents))})"


def _check_hypotheses(f: Polynomial, theta: Derivation, ideal: EigenschemeIdeal | None = None) -> EigenschemeIdeal:
    if not theta.apply(f).is_zero():
        raise HypothesisError("theta does not annihilate f")
    r, d = theta.degree, int(f.degree())
    if 2 * r > d - 1:
        raise HypothesisError(f"need 2r <= d - 1, got r = {r}, d = {d}")
    ideal = ideal or eigenscheme_ideal(theta)
    if not is_zero_dimensional(ideal):
        raise HypothesisError("the eigenscheme of theta is not zero dimensional")
    return ideal


def plus_one_criterion(f: Polynomial, theta: Derivation, check_mdr: bool = True,
                       backend: str | None = None) -> CriterionResult:
    """Read freeness or plus-one generation of f = 0 off K = I_theta : (f).

    K = S gives exponents (r, d-r-1); K = (l, h) with deg h = e gives a
    plus-one generated curve with exponents (r, d-r, d-r-1+e).  With
    ``check_mdr`` the claim r = mdr(f) is confirmed by linear algebra.
    """
    ideal = _check_hypotheses(f, theta)
    r, d = theta.degree, int(f.degree())
    mdr = None
    if check_mdr:
        mdr = JacobianEngine(jacobian_triple(f), backend).mdr()
        if mdr != r:
            raise HypothesisError(f"mdr(f) = {mdr} differs from deg theta = {r}")
    prof = quotient_profile(ideal, f)
    if prof.verdict == "WholeRing":
        return CriterionResult("Free", (r, d - r - 1), prof, mdr)
    if prof.verdict == "Proper":
        e = prof.e
        exps = (r, d - r, d - r - 1 + e)
        kind = {1: "NearlyFree", 2: "MPOG"}.get(e, "PlusOneGenerated")
        return CriterionResult(kind, exps, prof, mdr, e)
    return CriterionResult("NotPlusOne", None, prof, mdr)


def det_certificate(theta: Derivation, eta: Derivation, f: Polynomial) -> Polynomial:
    """det(E, theta, eta) / f, raising NotDivisibleError if f does not divide."""
    for t in (theta, eta):
        if not t.apply(f).is_zero():
            raise EigenschemeError("both derivations must annihilate f")
    x, y, z = _vars(f.gens)
    rows = [[x, y, z], list(theta.components()), list(eta.components())]
    det = det3(rows)
    if det.is_zero():
        raise NotDivisibleError("determinant vanishes identically", None)
    return exact_divide(det, f)


# ---------------------------------------------------------------------------
# pencils


def _as_point(m) -> tuple[Fraction, Fraction]:
    """Member spec: (alpha, beta) or a fibre value t meaning f - t z^d."""
    if isinstance(m, tuple):
        a, b = (Fraction(v) for v in m)
        if a == 0 and b == 0:
            raise EigenschemeError("(0:0) is not a point of P^1")
        return a, b
    return Fraction(1), -Fraction(m)


def _same_point(p, q) -> bool:
    return p[0] * q[1] == p[1] * q[0]


@dataclass(frozen=True)
class PencilSpec:
    """Members of the pencil alpha f + beta z^d.

    Members are given either as points (alpha, beta) or through a binary
    form P(u, v) in the variables x, y of ``form``: then
    F = P(f, z^d), which describes unions whose members are not defined
    over Q, such as f^3 + z^(3d).
    """

    f: Polynomial
    members: tuple = ()
    include_line_at_infinity: bool = False
    form: Polynomial | None = None

    @property
    def k(self) -> int:
        return int(self.form.degree()) if self.form is not None else len(self.members)


@dataclass(frozen=True)
class Arrangement:
    F: Polynomial
    delta: Derivation
    spec: PencilSpec
    d: int = field(default=0)


def pencil_arrangement(spec: PencilSpec) -> Arrangement:
    f = spec.f
    d = int(f.degree())
    if not f.is_homogeneous():
        raise EigenschemeError("f must be homogeneous")
    gens = f.gens
    x, y, z = _vars(gens)
    fx, fy = f.diff("x"), f.diff("y")
    if not gcd(fx, fy).is_constant():
        raise HypothesisError("f_x and f_y have a common factor")
    if f.subs({"z": Polynomial.zero(gens)}).is_zero():
        raise HypothesisError("the line z = 0 is a component of f = 0")
    zd = z ** d
    if spec.form is not None:
        form = spec.form
        if not form.is_homogeneous() or form.degree() < 1:
            raise EigenschemeError("member form must be a nonzero binary form")
        if not is_squarefree(form):
            raise EigenschemeError("member form has a repeated factor (duplicate members)")
        F = form.subs({"x": f, "y": zd})
    else:
        pts = [_as_point(m) for m in spec.members]
        if not pts:
            raise EigenschemeError("no pencil members given")
        for i, p in enumerate(pts):
            for q in pts[:i]:
                if _same_point(p, q):
                    raise EigenschemeError(f"duplicate members {q} and {p}")
        F = Polynomial.constant(1, gens)
        for a, b in pts:
            member = f.scale(a) + zd.scale(b)
            if not is_squarefree(member):
                raise EigenschemeError(f"member ({a}:{b}) is not reduced")
            F = F * member
    if not is_squarefree(F):
        raise EigenschemeError("the union is not reduced")
    if spec.include_line_at_infinity:
        F = z * F
    delta = Derivation.delta(f)
    if not delta.apply(F).is_zero():
        raise EigenschemeError("delta does not annihilate the union")  # cannot happen
    return Arrangement(F, delta, spec, d)


@dataclass(frozen=True)
class PencilVerdict:
    holds: bool
    exponents: tuple[int, ...] | None
    detail: object = None


def _require_two(spec: PencilSpec) -> None:
    if spec.k < 2:
        raise HypothesisError(f"pencil criteria need at least two members, got {spec.k}")


def free_pencil_check(spec: PencilSpec) -> PencilVerdict:
    """Freeness of the union by membership F in I_delta.

    Exponents on success: (d-1, (k-1)d), or (d-1, (k-1)d+1) with z = 0.
    """
    _require_two(spec)
    arr = pencil_arrangement(spec)
    I = eigenscheme_ideal(arr.delta)
    mem = I.contains(arr.F)
    d, k = arr.d, spec.k
    if not mem:
        return PencilVerdict(False, None, mem)
    second = (k - 1) * d + (1 if spec.include_line_at_infinity else 0)
    return PencilVerdict(True, (d - 1, second), mem)


def mpog_pencil_check(spec: PencilSpec) -> PencilVerdict:
    """MPOG test through K = I_delta : (F) = (l, q) with q quadratic.

    Exponents on success: (d-1, (k-1)d+1, (k-1)d+2), shifted by one
    more with the line z = 0.
    """
    _require_two(spec)
    arr = pencil_arrangement(spec)
    prof = quotient_profile(eigenscheme_ideal(arr.delta), arr.F)
    d, k = arr.d, spec.k
    if prof.verdict == "Proper" and prof.e == 2:
        s = (k - 1) * d + (2 if spec.include_line_at_infinity else 1)
        return PencilVerdict(True, (d - 1, s, s + 1), prof)
    return PencilVerdict(False, None, prof)
