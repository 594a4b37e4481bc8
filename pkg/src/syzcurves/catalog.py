"""Named curves built from Briançon-type polynomials.

Everything is constructed from the building blocks

    s = xy + 1,   p = xs + 1,   u = s^2 + y

and the family

    g_n = p^(2n) u + s (a_0 + a_1 p + ... + a_n p^n + p^(n+1) + ... + p^(2n-1)),

of degree 6n + 4.  Projective curves are homogenisations with respect
to z; the fibre g = t closes up to f - t z^d.  Each registry entry may
carry expected invariants together with a short ``source`` string
describing where the value comes from.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .poly import Polynomial, discriminant, exact_divide, homogenize, parse

F = Fraction


class UnknownCurveError(KeyError):
    pass


def _v(name: str) -> Polynomial:
    return Polynomial.var(name)


# ---------------------------------------------------------------------------
# building blocks


@dataclass(frozen=True)
class BrianconBasis:
    s: Polynomial
    p: Polynomial
    u: Polynomial


@lru_cache(maxsize=None)
def briancon_basis() -> BrianconBasis:
    x, y = _v("x"), _v("y")
    s = x * y + 1
    p = x * s + 1
    u = s * s + y
    return BrianconBasis(s, p, u)


@dataclass(frozen=True)
class GnSpec:
    n: int
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if len(self.coefficients) != self.n + 1:
            raise ValueError(f"need {self.n + 1} coefficients a_0..a_n")


def build_gn(spec: GnSpec) -> Polynomial:
    B = briancon_basis()
    n = spec.n
    inner = Polynomial.zero()
    for j, a in enumerate(spec.coefficients):
        inner = inner + (B.p ** j).scale(F(a))
    for j in range(n + 1, 2 * n):
        inner = inner + B.p ** j
    return B.p ** (2 * n) * B.u + B.s * inner


def build_g(variant: str = "g", b: Fraction | str | None = None, c: Fraction | str = 0) -> Polynomial:
    """The degree 10 polynomials.

    ``g`` and ``g'`` are the two original ones; ``b`` selects
    g(b) = p^2 u - 5/3 p s + b s, and a nonzero ``c`` subtracts the
    constant c as well.
    """
    if variant == "g'":
        return build_gn(GnSpec(1, (F(1, 9), F(-7, 9))))
    if variant != "g":
        raise ValueError(f"unknown variant {variant!r}")
    b = F(-1, 3) if b is None else F(b)
    return build_gn(GnSpec(1, (b, F(-5, 3)))) - Polynomial.constant(F(c))


GPP = GnSpec(2, (F(-1, 5), F(-3, 5), F(-11, 5)))
G_PRIME_N = {
    2: GnSpec(2, (F(-1, 125), F(17, 125), F(-91, 125))),
    3: GnSpec(3, (F(1, 2401), F(-31, 2401), F(353, 2401), F(-1695, 2401))),
    4: GnSpec(4, tuple(F(a, 59049) for a in (-1, 49, -951, 9049, -40951))),
}

B_ATYPICAL = F(-16, 9)
B_PRIME_ATYPICAL = F(-64, 81)
B_SECOND_ATYPICAL = F(-64, 25)


def fibre(g: Polynomial, t: Fraction | int = 0) -> Polynomial:
    """Projective closure of g = t."""
    d = int(g.degree())
    return homogenize(g, d) - (_v("z") ** d).scale(F(t))


def verify_unit_identity(which: str = "g", perturb: Polynomial | None = None) -> bool:
    """Check the explicit relation A g_x + B g_y = 1 (no critical points)."""
    x, y = _v("x"), _v("y")
    if which == "g":
        g = build_g("g")
        A = parse("4*x^4*y+4*x^3+x^2")
        B = -parse("6*x^3*y^2+8*x^2*y+2*x-1")
    elif which == "g'":
        g = build_g("g'")
        A = -parse("48*x^6*y^2+96*x^5*y+72*x^4*y+48*x^4+88/3*x^3+15*x^2")
        B = parse("72*x^5*y^3+168*x^4*y^2+90*x^3*y^2+120*x^3*y+44*x^2*y+24*x^2-10/3*x+1")
    else:
        raise ValueError(f"unknown polynomial {which!r}")
    if perturb is not None:
        A = A + perturb
    return A * g.diff("x") + B * g.diff("y") == Polynomial.constant(1)


def unit_cofactors(which: str = "g") -> tuple[Polynomial, Polynomial, Polynomial]:
    """(A, B, g) with A g_x + B g_y = 1."""
    if which == "g":
        return (parse("4*x^4*y+4*x^3+x^2"), -parse("6*x^3*y^2+8*x^2*y+2*x-1"), build_g("g"))
    return (-parse("48*x^6*y^2+96*x^5*y+72*x^4*y+48*x^4+88/3*x^3+15*x^2"),
            parse("72*x^5*y^3+168*x^4*y^2+90*x^3*y^2+120*x^3*y+44*x^2*y+24*x^2-10/3*x+1"),
            build_g("g'"))


# ---------------------------------------------------------------------------
# exceptional lines through the two special points


def _strip_power(f: Polynomial, v: str) -> tuple[int, Polynomial]:
    i = "xyzt".index(v)
    m = min(e[i] for e in f.terms)
    mono = [0, 0, 0, 0]
    mono[i] = m
    return m, exact_divide(f, Polynomial.monomial(mono))


def line_discriminant(kind: str = "x=tz") -> tuple[int, Polynomial]:
    """Discriminant of C_0 restricted to the lines x = t z or y = t x.

    Returns (m, c) with the discriminant equal to t^m c(t) up to a
    nonzero constant, c primitive with positive leading coefficient.
    The discriminant is taken as the plain resultant of the restriction
    and its derivative (no division by the leading coefficient).
    """
    f0 = fibre(build_g("g"))
    t, one = _v("t"), Polynomial.constant(1)
    if kind == "x=tz":
        eq = f0.subs({"x": t, "z": one})
        D = discriminant(eq, "y")
    elif kind == "y=tx":
        eq = f0.subs({"y": t * _v("x"), "z": one})
        D = discriminant(eq, "x")
    else:
        raise ValueError(kind)
    m, c = _strip_power(D, "t")
    return m, c.primitive()


def exceptional_cubic() -> Polynomial:
    """h(x, z) whose linear factors are the special lines x = t z."""
    _, c = line_discriminant("x=tz")
    return homogenize(c.subs({"t": _v("x")}), 3, "z")


def exceptional_quintic() -> Polynomial:
    """h'(x, y) = x^5 c'(y/x) for the special lines y = t x."""
    _, c = line_discriminant("y=tx")
    return homogenize(c.subs({"t": _v("y")}), 5, "x")


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class Expected:
    """Published invariants; ``None`` means not stated."""

    exponents: tuple[int, ...] | None = None
    tau: int | None = None
    nu: int | None = None
    facets: tuple[str, ...] = ()
    source: str = ""


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    projective: Polynomial
    affine: Polynomial | None = None
    expected: Expected | None = None
    description: str = ""
    tier: str = "fast"

    @property
    def degree(self) -> int:
        return int(self.projective.degree())


@dataclass
class _Recipe:
    build: Callable[[], tuple[Polynomial, Polynomial | None]]
    expected: Expected | None
    description: str
    tier: str = "fast"


_REGISTRY: dict[str, _Recipe] = {}
_ALIASES: dict[str, str] = {}


def _register(name, build, expected=None, description="", tier="fast", aliases=()):
    _REGISTRY[name] = _Recipe(build, expected, description, tier)
    for a in aliases:
        _ALIASES[a] = name


def _E(exps=None, tau=None, nu=None, facets=(), source=""):
    return Expected(tuple(exps) if exps else None, tau, nu, tuple(facets), source)


@lru_cache(maxsize=None)
def _f(which: str, t: Fraction) -> Polynomial:
    g = {"": build_g("g"), "p": build_g("g'"), "pp": build_gn(GPP)}[which]
    return fibre(g, t)


def _fib(which, t):
    g = {"": lambda: build_g("g"), "p": lambda: build_g("g'"), "pp": lambda: build_gn(GPP)}[which]
    return lambda: (_f(which, F(t)), g() if t == 0 else None)


X, Y, Z = _v("x"), _v("y"), _v("z")

# degree 10 and 16 fibres
for _w, _b, _deg in (("", B_ATYPICAL, 10), ("p", B_PRIME_ATYPICAL, 10), ("pp", B_SECOND_ATYPICAL, 16)):
    for _tag, _t in (("0", 0), ("b", _b), ("1", 1)):
        _register(f"C{_tag}{_w}", _fib(_w, _t), None, f"closure of the fibre at t = {_t}, degree {_deg}")

_SRC = "published: "
_EXPECT = {
    "C0": _E((5, 5, 6), 59, 2, ("MPOG",), _SRC + "MPOG, exponents (5,5,6), tau 59"),
    "C1": _E((5, 5, 6), 59, 2, ("MPOG",), _SRC + "MPOG, exponents (5,5,6), tau 59"),
    "Cb": _E((4, 5), 61, 0, ("Free",), _SRC + "free, exponents (4,5), tau 61"),
    "C1p": _E((5, 5, 6), 59, None, ("MPOG",), _SRC + "MPOG, exponents (5,5,6), tau 59"),
    "C0p": _E((5, 5, 5), 60, 1, ("NearlyFree",), _SRC + "nearly free, exponents (5,5), tau 60"),
    "Cbp": _E((5, 5, 5), 60, 1, ("NearlyFree",), _SRC + "nearly free, exponents (5,5), tau 60"),
    "C0pp": _E((8, 8, 9), 167, None, ("MPOG",), _SRC + "MPOG, exponents (8,8,9), tau 167"),
    "C1pp": _E((8, 8, 9), 167, None, ("MPOG",), _SRC + "MPOG, exponents (8,8,9), tau 167"),
    "Cbpp": _E((7, 8), 169, None, ("Free",), _SRC + "free, exponents (7,8), tau 169"),
}
for _n, _e in _EXPECT.items():
    _REGISTRY[_n].expected = _e


def _union(*parts: str, extra: Polynomial | None = None):
    def build():
        F_ = Polynomial.constant(1)
        for p in parts:
            F_ = F_ * entry(p).projective
        if extra is not None:
            F_ = extra * F_
        return F_, None
    return build


_LINES = {"Lx": X, "Ly": Y, "Lz": Z, "LxLyLz": X * Y * Z}
for _name, _base, _line, _exp in [
    ("C0_Lz", "C0", "Lz", _E((5, 6, 6), 74, None, ("NearlyFree",), _SRC + "nearly free, exponents (5,6), tau 74")),
    ("C1_Lz", "C1", "Lz", _E((5, 6, 6), 74, None, ("NearlyFree",), _SRC + "nearly free, exponents (5,6), tau 74")),
    ("Cb_Lz", "Cb", "Lz", _E((4, 6), 76, None, ("Free",), _SRC + "free, exponents (4,6), tau 76")),
    ("C0p_Lz", "C0p", "Lz", _E((5, 5), None, None, ("Free",), _SRC + "free, exponents (5,5)")),
    ("Cbp_Lz", "Cbp", "Lz", _E((5, 5), 75, None, ("Free",), _SRC + "free, exponents (5,5), tau 75")),
    ("C1p_Lz", "C1p", "Lz", _E((5, 6, 6), 74, None, ("NearlyFree",), _SRC + "nearly free, exponents (5,6), tau 74")),
    ("C0_Lx", "C0", "Lx", _E((5, 6, 6), None, None, ("NearlyFree",), _SRC + "nearly free, exponents (5,6)")),
    ("C0_Ly", "C0", "Ly", _E(None, None, None, ("MaxTjurina(11,6)",), _SRC + "maximal Tjurina of type (11,6)")),
    ("C0_LxLyLz", "C0", "LxLyLz", _E(None, None, None, ("MaxTjurina(13,7)",), _SRC + "maximal Tjurina of type (13,7)")),
    ("C0p_Lx", "C0p", "Lx", _E((5, 5), None, None, ("Free",), _SRC + "free, exponents (5,5)")),
    ("C0p_Ly", "C0p", "Ly", _E((5, 6, 6), None, None, ("NearlyFree",), _SRC + "nearly free, exponents (5,6)")),
    ("C0p_LxLyLz", "C0p", "LxLyLz", _E((6, 7, 7), None, None, ("NearlyFree",), _SRC + "nearly free, exponents (6,7)")),
    ("C0pp_Lz", "C0pp", "Lz", _E((8, 9, 9), 191, None, ("NearlyFree",), _SRC + "nearly free, exponents (8,9), tau 191")),
    ("C1pp_Lz", "C1pp", "Lz", _E((8, 9, 9), 191, None, ("NearlyFree",), _SRC + "nearly free, exponents (8,9), tau 191")),
    ("Cbpp_Lz", "Cbpp", "Lz", _E((7, 9), 193, None, ("Free",), _SRC + "free, exponents (7,9), tau 193")),
]:
    _register(_name, _union(_base, extra=_LINES[_line]), _exp, f"{_base} together with the line(s) {_line}")

for _name, _parts, _line, _exp, _tier, _al in [
    ("C0_Cb", ("C0", "Cb"), False, _E((9, 10), 271, 0, ("Free",), _SRC + "free, exponents (9,10), tau 271"), "fast", ()),
    ("C0_Cb_Lz", ("C0", "Cb"), True, _E((9, 11), 301, 0, ("Free",), _SRC + "free, exponents (9,11), tau 301"), "fast", ()),
    ("C0p_Cbp", ("C0p", "Cbp"), False, _E((9, 10), 271, 0, ("Free",), _SRC + "free, exponents (9,10), tau 271"), "fast", ()),
    ("C0p_Cbp_Lz", ("C0p", "Cbp"), True, _E((9, 11), 301, 0, ("Free",), _SRC + "free, exponents (9,11), tau 301"), "fast", ()),
    ("C0pp_Cbpp", ("C0pp", "Cbpp"), False, _E((15, 16), 721, 0, ("Free",), _SRC + "free, exponents (15,16), tau 721"), "full", ()),
    ("C0pp_Cbpp_Lz", ("C0pp", "Cbpp"), True, _E((15, 17), 769, 0, ("Free",), _SRC + "free, exponents (15,17), tau 769"), "full",
     ("C0bpp_union_line",)),
]:
    _register(_name, _union(*_parts, extra=Z if _line else None), _exp,
              "union of two pencil members" + (" and the line z = 0" if _line else ""), _tier, _al)

_register("D0", lambda: (X * Z * exceptional_cubic() * entry("C0").projective, None),
          _E((8, 8, 8, 8), None, 2, ("MaxTjurina(15,8)", "TypeDRM(15,8,4,0)"),
             _SRC + "4-syzygy curve with exponents (8,8,8,8), maximal Tjurina of type (15,8), nu 2"),
          "C0 with the six lines through (0:1:0) it meets in fewer points")
_register("D0p", lambda: (X * Y * exceptional_quintic() * entry("C0").projective, None),
          _E((10, 11, 11, 11, 11), None, 13, (), _SRC + "5-syzygy curve with exponents (10,11,11,11,11), nu 13"),
          "C0 with the seven special lines through (0:0:1)")

# the one parameter family g(b) and its special members
for _b, _exp in [
    ("0", _E((5, 5, 5), 60, 1, ("NearlyFree",), _SRC + "nearly free, exponents (5,5), tau 60")),
    ("5/8", _E((5, 5, 5), 60, 1, ("NearlyFree",), _SRC + "nearly free, exponents (5,5), tau 60")),
    ("-10/3", _E((5, 5, 5), 60, 1, ("NearlyFree",), _SRC + "nearly free, exponents (5,5), tau 60")),
    ("-1/3", _E((5, 5, 6), 59, 2, ("MPOG",), _SRC + "MPOG, exponents (5,5,6), tau 59")),
    ("-65/48", _E((5, 5, 6), 59, 2, ("MPOG",), _SRC + "MPOG, exponents (5,5,6), tau 59")),
]:
    _register(f"C0({_b})", (lambda b=F(_b): (fibre(build_g("g", b)), build_g("g", b))), _exp,
              f"zero fibre of g(b) at b = {_b}")

_F58 = lambda: entry("C0(5/8)").projective  # noqa: E731
for _name, _extra, _exp in [
    ("C0(5/8)-x^10", lambda: _F58() - X ** 10,
     _E([9] * 11, None, None, ("TypeDRM(10,9,11,0)", "MaxTjurina(10,9)"), _SRC + "type (10,9,11), delta m = 0")),
    ("C0(5/8)-x^9z", lambda: _F58() - X ** 9 * Z,
     _E([9] * 11, None, None, ("TypeDRM(10,9,11,0)", "MaxTjurina(10,9)"), _SRC + "type (10,9,11), delta m = 0")),
    ("C0(5/8)-x^4z^6", lambda: _F58() - X ** 4 * Z ** 6,
     _E([7] * 6, None, None, ("TypeDRM(10,7,6,1)",), _SRC + "type (10,7,6), delta m = 1")),
    ("xyz(C0(5/8)-x^10)", lambda: X * Y * Z * (_F58() - X ** 10),
     _E([11] * 10, None, None, ("TypeDRM(13,11,10,2)",), _SRC + "type (13,11,10), delta m = 2")),
]:
    _register(_name, (lambda fn=_extra: (fn(), None)), _exp, "perturbation of the nearly free curve C0(5/8)")

for _c in ("-25/27", "163/180"):
    _register(f"C0(5/8,{_c})", (lambda c=F(_c): (fibre(build_g("g", F(5, 8), c)), build_g("g", F(5, 8), c))),
              _E((4, 5), None, 0, ("Free",), _SRC + "free, exponents (4,5)"),
              f"zero fibre of g(5/8) - c at c = {_c}")

# pencil powers f^k + z^(10k) of the nearly free curve C0(5/8)
for _k, _tier in ((2, "fast"), (3, "full")):
    _s = 10 * _k
    _register(f"F{_k}(5/8)", (lambda k=_k: (_F58() ** k + Z ** (10 * k), None)),
              _E((9, _s - 9, _s - 8), None, 2, ("MPOG",), _SRC + f"MPOG, exponents (9,{_s - 9},{_s - 8})"),
              f"f^{_k} + z^{_s} for f = C0(5/8): {_k} members of its pencil", _tier)
    _register(f"zF{_k}(5/8)", (lambda k=_k: (Z * (_F58() ** k + Z ** (10 * k)), None)),
              _E((9, _s - 8, _s - 7), None, 2, ("MPOG",), _SRC + f"MPOG, exponents (9,{_s - 8},{_s - 7})"),
              f"z (f^{_k} + z^{_s}) for f = C0(5/8)", _tier)

for _n, _exp, _tier in ((2, (7, 8), "fast"), (3, (7, 14), "fast"), (4, (7, 20), "full")):
    _register(f"C{_n}0p", (lambda n=_n: (fibre(build_gn(G_PRIME_N[n])), build_gn(G_PRIME_N[n]))),
              _E(_exp, None, 0, ("Free",), _SRC + f"free of degree {6 * _n + 4}, exponents {_exp}"),
              f"zero fibre of the degree {6 * _n + 4} polynomial with n = {_n}", _tier)


def names(tier: str | None = None) -> list[str]:
    return [n for n, r in _REGISTRY.items() if tier is None or r.tier == tier]


def resolve(name: str) -> str:
    name = _ALIASES.get(name, name)
    if name not in _REGISTRY:
        raise UnknownCurveError(name)
    return name


@lru_cache(maxsize=None)
def entry(name: str) -> CatalogEntry:
    key = resolve(name)
    rec = _REGISTRY[key]
    proj, aff = rec.build()
    return CatalogEntry(key, proj, aff, rec.expected, rec.description, rec.tier)


def named_curve(name: str) -> CatalogEntry:
    return entry(name)


def pencil_base(name: str) -> Polynomial:
    """Base curve for pencil commands: a catalog entry of degree d."""
    return entry(name).projective


NAMED_PARAMETERS = {"b": B_ATYPICAL, "b'": B_PRIME_ATYPICAL, "b''": B_SECOND_ATYPICAL}


def member_value(token: str, base: str | None = None) -> Fraction:
    """Fibre value from a token such as ``0``, ``1``, ``-16/9`` or ``b``.

    ``b`` refers to the atypical value of the family the base curve
    belongs to.
    """
    token = token.strip()
    if token == "b" and base is not None:
        if base.startswith("C0pp") or base.startswith("Cbpp"):
            return B_SECOND_ATYPICAL
        if base.endswith("p") and base.startswith("C"):
            return B_PRIME_ATYPICAL
    if token in NAMED_PARAMETERS:
        return NAMED_PARAMETERS[token]
    return F(token)
