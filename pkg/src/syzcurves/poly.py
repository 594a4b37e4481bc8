"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` is an immutable mapping from exponent tuples to
nonzero :class:`~fractions.Fraction` coefficients, over a fixed tuple of
generator names.  Monomials are plain exponent tuples aligned with
``gens``; the canonical (printing) order is graded lexicographic with
``x > y > z > t``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd as igcd, lcm as ilcm
from typing import Iterable, Mapping, Sequence, Union

import flint

DEFAULT_GENS: tuple[str, ...] = ("x", "y", "z", "t")

#: Degree of the zero polynomial.
NEG_INF = float("-inf")

Exps = tuple[int, ...]
Scalar = Union[int, Fraction]


class ParseError(ValueError):
    """Malformed polynomial text; ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NotDivisibleError(ArithmeticError):
    def __init__(self, message: str, monomial: str):
        super().__init__(message)
        self.monomial = monomial


def grlex_key(e: Exps) -> tuple[int, Exps]:
    return (sum(e), e)


class Polynomial:
    """Immutable sparse polynomial over Q."""

    __slots__ = ("_terms", "gens", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], Scalar] | None = None,
                 gens: Sequence[str] = DEFAULT_GENS):
        gens = tuple(gens)
        clean: dict[Exps, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != len(gens) or any(k < 0 for k in e):
                raise ValueError(f"bad exponent tuple {e} for gens {gens}")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self._terms = clean
        self.gens = gens
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exps, Fraction], gens: tuple[str, ...]) -> "Polynomial":
        # trusted constructor: no zero coefficients, tuples of the right length
        obj = cls.__new__(cls)
        obj._terms = terms
        obj.gens = gens
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, gens: Sequence[str] = DEFAULT_GENS) -> "Polynomial":
        return cls._raw({}, tuple(gens))

    @classmethod
    def constant(cls, c: Scalar, gens: Sequence[str] = DEFAULT_GENS) -> "Polynomial":
        gens = tuple(gens)
        c = Fraction(c)
        return cls._raw({(0,) * len(gens): c} if c else {}, gens)

    @classmethod
    def var(cls, name: str, gens: Sequence[str] = DEFAULT_GENS) -> "Polynomial":
        gens = tuple(gens)
        e = [0] * len(gens)
        e[gens.index(name)] = 1
        return cls._raw({tuple(e): Fraction(1)}, gens)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: Scalar = 1,
                 gens: Sequence[str] = DEFAULT_GENS) -> "Polynomial":
        return cls({tuple(exps): coeff}, gens)

    # -- basic queries ----------------------------------------------------
    @property
    def terms(self) -> Mapping[Exps, Fraction]:
        return self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int | float:
        if not self._terms:
            return NEG_INF
        return max(sum(e) for e in self._terms)

    def degree_in(self, v: str) -> int | float:
        if not self._terms:
            return NEG_INF
        i = self.gens.index(v)
        return max(e[i] for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Fraction:
        return self._terms.get((0,) * len(self.gens), Fraction(0))

    def variables(self) -> tuple[str, ...]:
        used = [False] * len(self.gens)
        for e in self._terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(g for g, u in zip(self.gens, used) if u)

    def coeff(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def sorted_terms(self) -> list[tuple[Exps, Fraction]]:
        """Terms in canonical order (graded lex, descending)."""
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def leading_term(self) -> tuple[Exps, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=grlex_key)
        return e, self._terms[e]

    def homogeneous_component(self, k: int) -> "Polynomial":
        return Polynomial._raw({e: c for e, c in self._terms.items() if sum(e) == k}, self.gens)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.gens != self.gens:
                raise ValueError(f"generator mismatch: {self.gens} vs {other.gens}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.gens)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(out, self.gens)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({e: -c for e, c in self._terms.items()}, self.gens)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.gens)
        return Polynomial._raw({e: v * c for e, v in self._terms.items()}, self.gens)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Exps, Fraction] = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple([i + j for i, j in zip(ea, eb)])
                out[e] = get(e, 0) + ca * cb
        return Polynomial._raw({e: c for e, c in out.items() if c}, self.gens)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(1, self.gens)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.gens)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.gens == other.gens and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.gens, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and substitution ----------------------------------------
    def diff(self, v: str) -> "Polynomial":
        i = self.gens.index(v)
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return Polynomial._raw(out, self.gens)

    def subs(self, values: Mapping[str, Union["Polynomial", Scalar]]) -> "Polynomial":
        """Substitute polynomials (or scalars) for some generators."""
        idx = {self.gens.index(v): (val if isinstance(val, Polynomial)
                                    else Polynomial.constant(val, self.gens))
               for v, val in values.items()}
        powers: dict[tuple[int, int], Polynomial] = {}

        def pw(i: int, k: int) -> Polynomial:
            key = (i, k)
            if key not in powers:
                powers[key] = idx[i] ** k
            return powers[key]

        result = Polynomial.zero(self.gens)
        acc: dict[Exps, Fraction] = {}
        for e, c in self._terms.items():
            rest = tuple(0 if i in idx else k for i, k in enumerate(e))
            term = Polynomial._raw({rest: c}, self.gens)
            for i, k in enumerate(e):
                if i in idx and k:
                    term = term * pw(i, k)
            for te, tc in term._terms.items():
                acc[te] = acc.get(te, 0) + tc
        result = Polynomial._raw({e: c for e, c in acc.items() if c}, self.gens)
        return result

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        vals = [Fraction(point.get(g, 0)) for g in self.gens]
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term *= v ** k
            total += term
        return total

    def coefficients_in(self, v: str) -> dict[int, "Polynomial"]:
        """View as a polynomial in ``v`` with coefficients free of ``v``."""
        i = self.gens.index(v)
        parts: dict[int, dict[Exps, Fraction]] = {}
        for e, c in self._terms.items():
            ne = e[:i] + (0,) + e[i + 1:]
            parts.setdefault(e[i], {})[ne] = c
        return {k: Polynomial._raw(t, self.gens) for k, t in parts.items()}

    def with_gens(self, gens: Sequence[str]) -> "Polynomial":
        gens = tuple(gens)
        missing = [v for v in self.variables() if v not in gens]
        if missing:
            raise ValueError(f"variables {missing} not in {gens}")
        pos = [self.gens.index(g) if g in self.gens else None for g in gens]
        out = {tuple(e[p] if p is not None else 0 for p in pos): c
               for e, c in self._terms.items()}
        return Polynomial._raw(out, gens)

    # -- normalization ----------------------------------------------------
    def integer_scaled(self) -> tuple[int, dict[Exps, int]]:
        """Return ``(L, terms)`` with ``L*self`` having the integer ``terms``."""
        L = reduce(ilcm, (c.denominator for c in self._terms.values()), 1)
        return L, {e: int(c * L) for e, c in self._terms.items()}

    def primitive(self) -> "Polynomial":
        """Integer primitive associate with positive leading coefficient."""
        if not self._terms:
            return self
        L, ints = self.integer_scaled()
        g = reduce(igcd, ints.values(), 0)
        _, lc = self.leading_term()
        sign = 1 if lc > 0 else -1
        return Polynomial._raw({e: Fraction(sign * c // g) for e, c in ints.items()}, self.gens)

    def monic(self) -> "Polynomial":
        _, lc = self.leading_term()
        return self.scale(1 / lc)

    # -- text -------------------------------------------------------------
    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"Polynomial('{to_text(self)}')"


# ---------------------------------------------------------------------------
# printing and parsing


def _mono_text(e: Exps, gens: tuple[str, ...]) -> str:
    parts = []
    for g, k in zip(gens, e):
        if k == 1:
            parts.append(g)
        elif k:
            parts.append(f"{g}^{k}")
    return "*".join(parts)


def to_text(f: Polynomial) -> str:
    """Canonical text form, parseable by :func:`parse`."""
    if f.is_zero():
        return "0"
    out = []
    for e, c in f.sorted_terms():
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = _mono_text(e, f.gens)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        out.append((sign, body))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += sign + body
    return text


def parse(text: str, alphabet: Sequence[str] = DEFAULT_GENS) -> Polynomial:
    """Parse ``text`` into a polynomial over ``alphabet``.

    Grammar: integers, variables, ``+ - * / ^`` (``**`` accepted for ``^``),
    parentheses.  Division is allowed only by nonzero constants, so rational
    literals are written ``a/b``.  Whitespace is ignored.
    """
    return _Parser(text, tuple(alphabet)).run()


class _Parser:
    def __init__(self, text: str, gens: tuple[str, ...]):
        self.text = text
        self.gens = gens
        self.toks = self._lex(text)
        self.i = 0

    def _lex(self, text: str) -> list[tuple[str, str, int]]:
        toks = []
        i, n = 0, len(text)
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                toks.append(("num", text[i:j], i))
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                toks.append(("var", text[i:j], i))
                i = j
            elif text.startswith("**", i):
                toks.append(("op", "^", i))
                i += 2
            elif ch in "+-*/^()":
                toks.append(("op", ch, i))
                i += 1
            else:
                raise ParseError(f"unexpected character {ch!r}", i)
        toks.append(("end", "", n))
        return toks

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, v, pos = self.take()
        if v != value or kind != "op":
            raise ParseError(f"expected {value!r}", pos)

    def run(self) -> Polynomial:
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        p = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {v!r}", pos)
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op, pos = self.take()[1], self.peek()[2]
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant():
                    raise ParseError("division by a non-constant", pos)
                c = q.constant_value()
                if not c:
                    raise ParseError("zero denominator", pos)
                p = p.scale(1 / c)
        return p

    def unary(self) -> Polynomial:
        kind, v, _ = self.peek()
        if kind == "op" and v in ("+", "-"):
            self.take()
            p = self.unary()
            return -p if v == "-" else p
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, v, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer literal", pos)
            base = base ** int(v)
        return base

    def atom(self) -> Polynomial:
        kind, v, pos = self.take()
        if kind == "num":
            return Polynomial.constant(int(v), self.gens)
        if kind == "var":
            if v not in self.gens:
                raise ParseError(f"unknown variable {v!r}", pos)
            return Polynomial.var(v, self.gens)
        if kind == "op" and v == "(":
            p = self.expr()
            self.expect(")")
            return p
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected token {v!r}", pos)


# ---------------------------------------------------------------------------
# calculus, homogenization


def differentiate(f: Polynomial, v: str) -> Polynomial:
    return f.diff(v)


def homogenize(f: Polynomial, d: int, v: str = "z") -> Polynomial:
    """Homogenize ``f`` to degree ``d`` using the variable ``v``."""
    if f.degree() > d:
        raise ValueError(f"degree {f.degree()} exceeds target degree {d}")
    i = f.gens.index(v)
    out = {}
    for e, c in f.terms.items():
        ne = list(e)
        ne[i] += d - sum(e)
        out[tuple(ne)] = c
    return Polynomial._raw(out, f.gens)


# ---------------------------------------------------------------------------
# division


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient ``q`` with ``q*g == f``; raises NotDivisibleError otherwise."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.gens != g.gens:
        raise ValueError("generator mismatch")
    lt_e, lt_c = g.leading_term()
    gterms = list(g.terms.items())
    rem = dict(f.terms)
    quot: dict[Exps, Fraction] = {}
    while rem:
        e = max(rem, key=grlex_key)
        if any(a < b for a, b in zip(e, lt_e)):
            mono = _mono_text(e, f.gens) or "1"
            raise NotDivisibleError(f"division is not exact: leading monomial {mono} "
                                    f"of the remainder is not divisible", mono)
        qe = tuple(a - b for a, b in zip(e, lt_e))
        qc = rem[e] / lt_c
        quot[qe] = qc
        for ge, gc in gterms:
            ne = tuple(a + b for a, b in zip(ge, qe))
            val = rem.get(ne, 0) - qc * gc
            if val:
                rem[ne] = val
            else:
                rem.pop(ne, None)
    return Polynomial._raw(quot, f.gens)


def divides(g: Polynomial, f: Polynomial) -> bool:
    try:
        exact_divide(f, g)
    except NotDivisibleError:
        return False
    return True


# ---------------------------------------------------------------------------
# univariate helpers (dense lists, lowest degree first)

def _u_trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _u_gcd(a: list, b: list) -> list:
    """Monic gcd of two dense univariate polynomials over Q."""
    a, b = _u_trim([Fraction(c) for c in a]), _u_trim([Fraction(c) for c in b])
    if not a or not b:
        rest = a or b
        return [c / rest[-1] for c in rest] if rest else []
    g = flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in a]).gcd(
        flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in b]))
    out = [Fraction(int(c.p), int(c.q)) for c in g.coeffs()]
    return [c / out[-1] for c in out]


def _u_deriv(a: list) -> list:
    return _u_trim([a[i] * i for i in range(1, len(a))])


def _restrict_to_line(f: Polynomial, direction: Sequence[int], base: Sequence[int]) -> list:
    """Univariate polynomial ``s -> f(direction*s + base)``."""
    n = len(f.gens)
    deg = int(f.degree()) if not f.is_zero() else 0
    powers = []
    for i in range(n):
        lin = [Fraction(base[i]), Fraction(direction[i])]
        pw = [[Fraction(1)]]
        for _ in range(deg):
            prev = pw[-1]
            nxt = [Fraction(0)] * (len(prev) + 1)
            for k, c in enumerate(prev):
                nxt[k] += c * lin[0]
                nxt[k + 1] += c * lin[1]
            pw.append(nxt)
        powers.append(pw)
    out = [Fraction(0)] * (deg + 1)
    for e, c in f.terms.items():
        acc = [c]
        for i, k in enumerate(e):
            if k:
                p = powers[i][k]
                nxt = [Fraction(0)] * (len(acc) + len(p) - 1)
                for a_i, a in enumerate(acc):
                    if a:
                        for b_i, b in enumerate(p):
                            nxt[a_i + b_i] += a * b
                acc = nxt
        for k, v in enumerate(acc):
            out[k] += v
    return _u_trim(out)


def _top_form_value(f: Polynomial, point: Sequence[int]) -> Fraction:
    top = f.homogeneous_component(int(f.degree()))
    return top.evaluate(dict(zip(f.gens, point)))


# ---------------------------------------------------------------------------
# gcd


def coprime_certificate(f: Polynomial, g: Polynomial, rng: random.Random,
                        tries: int = 3) -> tuple[Sequence[int], Sequence[int]] | None:
    """Search for a line on which ``f`` and ``g`` restrict to coprime
    univariate polynomials of full degree.  Such a line proves that ``f``
    and ``g`` have no common factor; ``None`` means nothing was proven."""
    n = len(f.gens)
    for _ in range(tries):
        a = [rng.randint(-97, 97) for _ in range(n)]
        b = [rng.randint(-97, 97) for _ in range(n)]
        if not _top_form_value(f, a) or not _top_form_value(g, a):
            continue
        uf = _restrict_to_line(f, a, b)
        ug = _restrict_to_line(g, a, b)
        if len(_u_gcd(uf, ug)) == 1:
            return a, b
    return None


def _to_mpoly(f: Polynomial):
    ctx = flint.fmpq_mpoly_ctx.get(f.gens, "lex")
    return ctx.from_dict({e: flint.fmpq(c.numerator, c.denominator) for e, c in f.terms.items()})


def _from_mpoly(p, gens: tuple[str, ...]) -> Polynomial:
    return Polynomial({tuple(map(int, e)): Fraction(int(c.p), int(c.q)) for e, c in p.to_dict().items()}, gens)


def _gcd_rec(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.is_zero():
        return g.primitive() if not g.is_zero() else g
    if g.is_zero():
        return f.primitive()
    if f.is_constant() or g.is_constant():
        return Polynomial.constant(1, f.gens)
    return _from_mpoly(_to_mpoly(f).gcd(_to_mpoly(g)), f.gens).primitive()


def gcd(f: Polynomial, g: Polynomial, seed: int = 0) -> Polynomial:
    """Greatest common divisor, normalized by :meth:`Polynomial.primitive`.

    Coprime pairs are recognized through a line-restriction certificate;
    otherwise flint's multivariate gcd is used.
    """
    if f.gens != g.gens:
        raise ValueError("generator mismatch")
    if f.is_zero() or g.is_zero() or f.is_constant() or g.is_constant():
        return _gcd_rec(f, g)
    if coprime_certificate(f, g, random.Random(seed)) is not None:
        return Polynomial.constant(1, f.gens)
    return _gcd_rec(f, g)


def gcd_many(polys: Iterable[Polynomial], seed: int = 0) -> Polynomial:
    polys = [p for p in polys]
    return reduce(lambda a, b: gcd(a, b, seed), polys)


# ---------------------------------------------------------------------------
# squarefreeness


@dataclass(frozen=True)
class SquarefreeResult:
    squarefree: bool
    method: str            # "line" or "gcd" or "lines-probabilistic"
    certificate: str

    def __bool__(self) -> bool:
        return self.squarefree


def is_squarefree(f: Polynomial, trials: int = 4, exact: bool = True,
                  seed: int = 0) -> SquarefreeResult:
    """Decide whether ``f`` has no repeated factor.

    Random line restrictions are tried first: a squarefree restriction of
    full degree certifies squarefreeness.  When no line certifies it, the
    exact route computes ``gcd(f, f_x, f_y, ...)``.  With ``exact=False`` the
    answer falls back to the (probabilistic) line verdict instead.
    """
    if f.is_zero():
        raise ValueError("the zero polynomial has no squarefree decomposition")
    if f.is_constant():
        return SquarefreeResult(True, "gcd", "constant")
    rng = random.Random(seed)
    n = len(f.gens)
    for _ in range(trials):
        a = [rng.randint(-97, 97) for _ in range(n)]
        b = [rng.randint(-97, 97) for _ in range(n)]
        if not _top_form_value(f, a):
            continue
        u = _restrict_to_line(f, a, b)
        if len(_u_gcd(u, _u_deriv(u))) == 1:
            return SquarefreeResult(True, "line", f"squarefree restriction to line {a}*s+{b}")
    if not exact:
        return SquarefreeResult(False, "lines-probabilistic",
                                f"no squarefree restriction in {trials} random lines")
    g = f
    for v in f.variables():
        g = gcd(g, f.diff(v), seed)
        if g.is_constant():
            break
    if g.is_constant():
        return SquarefreeResult(True, "gcd", "gcd of f and its partials is 1")
    return SquarefreeResult(False, "gcd", to_text(g))


# ---------------------------------------------------------------------------
# determinants and resultants


def det3(m: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Cofactor expansion of a 3x3 polynomial matrix."""
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def bareiss_det(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Fraction-free determinant of a square polynomial matrix."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    gens = rows[0][0].gens
    m = [list(r) for r in rows]
    sign = 1
    prev = Polynomial.constant(1, gens)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return Polynomial.zero(gens)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        piv = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                num = piv * m[i][j] - mik * m[k][j]
                m[i][j] = exact_divide(num, prev) if not num.is_zero() else num
            m[i][k] = Polynomial.zero(gens)
        prev = piv
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def sylvester_matrix(f: Polynomial, g: Polynomial, v: str) -> list[list[Polynomial]]:
    m, n = int(f.degree_in(v)), int(g.degree_in(v))
    cf, cg = f.coefficients_in(v), g.coefficients_in(v)
    zero = Polynomial.zero(f.gens)
    size = m + n
    rows = []
    for r in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[r + (m - k)] = cf.get(k, zero)
        rows.append(row)
    for r in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[r + (n - k)] = cg.get(k, zero)
        rows.append(row)
    return rows


def resultant(f: Polynomial, g: Polynomial, v: str) -> Polynomial:
    """Sylvester resultant of ``f`` and ``g`` with respect to ``v``."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of a zero polynomial")
    if f.gens != g.gens:
        raise ValueError("generator mismatch")
    if v not in f.variables() and v not in g.variables():
        raise ValueError(f"variable {v} absent from both inputs")
    m, n = int(f.degree_in(v)), int(g.degree_in(v))
    if m == 0:
        return f ** n
    if n == 0:
        return g ** m
    return bareiss_det(sylvester_matrix(f, g, v))


def discriminant(f: Polynomial, v: str, normalized: bool = False) -> Polynomial:
    """``Res_v(f, df/dv)``; with ``normalized=True`` the classical
    discriminant ``(-1)^(n(n-1)/2) Res_v(f, f') / lc_v(f)``."""
    r = resultant(f, f.diff(v), v)
    if not normalized:
        return r
    n = int(f.degree_in(v))
    lc = f.coefficients_in(v)[n]
    q = exact_divide(r, lc)
    return q if (n * (n - 1) // 2) % 2 == 0 else -q
