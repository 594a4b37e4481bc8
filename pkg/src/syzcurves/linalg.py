"""Degreewise linear algebra for homogeneous maps in x, y, z.

Every ideal-theoretic question handled by the package is reduced to the
rank or kernel of a map between graded pieces S_k of Q[x, y, z].  This
module owns the monomial bases, the assembly of such maps as sparse
integer matrices, and three interchangeable elimination backends:

``exact``
    rational arithmetic through flint's ``fmpz_mat``;
``modular``
    ``nmod_mat`` over two random primes of about 62 bits, with a third
    prime consulted whenever the first two disagree;
``reference``
    a small pure Python fraction-free eliminator, slow but independent
    of flint, used by the test-suite as an oracle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Sequence

import flint

from .poly import DEFAULT_GENS, Polynomial

Exp3 = tuple[int, int, int]

PRIME_LO = 1 << 61
PRIME_HI = 1 << 62


class LinalgError(ValueError):
    """Raised for malformed matrices or mismatched dimensions."""


class BackendDisagreement(RuntimeError):
    """Raised when no majority emerges among the modular images."""


# ---------------------------------------------------------------------------
# monomial bases


def basis_size(k: int) -> int:
    return (k + 1) * (k + 2) // 2 if k >= 0 else 0


def mono_index(e: Sequence[int]) -> int:
    """Position of x^a y^b z^c inside its graded piece."""
    m = e[1] + e[2]
    return m * (m + 1) // 2 + e[2]


@dataclass(frozen=True)
class GradedBasis:
    degree: int
    monomials: tuple[Exp3, ...]

    def __len__(self) -> int:
        return len(self.monomials)

    def index(self, e: Sequence[int]) -> int:
        if sum(e[:3]) != self.degree:
            raise LinalgError(f"monomial {tuple(e)} is not of degree {self.degree}")
        return mono_index(e)

    def polynomial(self, vector: Sequence, gens: tuple[str, ...] = DEFAULT_GENS) -> Polynomial:
        if len(vector) != len(self):
            raise LinalgError("vector length does not match the basis")
        pad = (0,) * (len(gens) - 3)
        return Polynomial(
            {e + pad: Fraction(c) for e, c in zip(self.monomials, vector) if c},
            gens,
        )

    def vector(self, f: Polynomial) -> list[Fraction]:
        out = [Fraction(0)] * len(self)
        for e, c in f.terms.items():
            if any(e[3:]):
                raise LinalgError("polynomial involves variables beyond x, y, z")
            out[self.index(e)] = c
        return out


@lru_cache(maxsize=None)
def _monomials(k: int) -> tuple[Exp3, ...]:
    out = []
    for m in range(k + 1):
        for c in range(m + 1):
            out.append((k - m, m - c, c))
    return tuple(out)


def monomial_basis(k: int) -> GradedBasis:
    """All monomials of degree k, ordered x^k, x^(k-1)y, x^(k-1)z, ..."""
    if k < 0:
        raise LinalgError("degree must be non-negative")
    return GradedBasis(k, _monomials(k))


# ---------------------------------------------------------------------------
# map matrices


def _scaled_generators(generators: Sequence[Polynomial]) -> tuple[int, list[dict[Exp3, int]]]:
    """Clear all denominators with one common factor.

    A common factor keeps kernels and images unchanged, which matters
    because the kernel vectors are read as tuples of polynomials.
    """
    den = 1
    for g in generators:
        for c in g.terms.values():
            den = lcm(den, c.denominator)
    scaled = []
    for g in generators:
        if not g.is_homogeneous():
            raise LinalgError("map generators must be homogeneous")
        terms = {}
        for e, c in g.terms.items():
            if any(e[3:]):
                raise LinalgError("map generators must only involve x, y, z")
            terms[e[:3]] = int(c * den)
        scaled.append(terms)
    return den, scaled


@dataclass
class MapMatrix:
    """Matrix of (h_1, ..., h_s) -> sum h_i g_i into S_target.

    Columns are indexed by the domain blocks S_{target - deg g_i} laid
    side by side, rows by the monomials of S_target.  Entries are the
    integers ``scale * coefficient``, with the single positive ``scale``
    shared by all generators.
    """

    generators: tuple[Polynomial, ...]
    target: int
    scale: int
    blocks: tuple[GradedBasis | None, ...]
    columns: list[dict[int, int]]
    provenance: str
    offsets: tuple[int, ...] = field(default=())

    @property
    def codomain(self) -> GradedBasis:
        return monomial_basis(self.target)

    @property
    def shape(self) -> tuple[int, int]:
        return basis_size(self.target), len(self.columns)

    def triplets(self) -> Iterable[tuple[int, int, int]]:
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                yield i, j, v

    def rational_entry(self, i: int, j: int) -> Fraction:
        return Fraction(self.columns[j].get(i, 0), self.scale)

    def split(self, vector: Sequence) -> list[Polynomial]:
        """Cut a domain vector into one polynomial per generator block."""
        if len(vector) != len(self.columns):
            raise LinalgError("vector length does not match the domain")
        gens = self.generators[0].gens if self.generators else ("x", "y", "z")
        out = []
        for blk, off in zip(self.blocks, self.offsets):
            if blk is None:
                out.append(Polynomial.zero(gens))
            else:
                out.append(blk.polynomial(vector[off:off + len(blk)], gens))
        return out

    def expand(self, vector: Sequence) -> Polynomial:
        """Image of a domain vector, computed symbolically."""
        total = None
        for h, g in zip(self.split(vector), self.generators):
            term = h * g
            total = term if total is None else total + term
        return total if total is not None else Polynomial.zero()

    def dump(self) -> str:
        """Plain text dump: a header line then one ``i j value`` triplet per line."""
        r, c = self.shape
        lines = [f"# degree {self.target} shape {r}x{c} scale {self.scale} :: {self.provenance}"]
        lines += [f"{i} {j} {v}" for i, j, v in sorted(self.triplets())]
        return "\n".join(lines) + "\n"


def multiplication_map(generators: Sequence[Polynomial], target: int, provenance: str = "") -> MapMatrix:
    """Assemble the map S_{target-d_1} x ... x S_{target-d_s} -> S_target."""
    generators = tuple(generators)
    scale, scaled = _scaled_generators(generators)
    blocks: list[GradedBasis | None] = []
    offsets = []
    columns: list[dict[int, int]] = []
    for g, terms in zip(generators, scaled):
        offsets.append(len(columns))
        if g.is_zero():
            dom = target
        else:
            dom = target - int(g.degree())
        if dom < 0:
            blocks.append(None)
            continue
        basis = monomial_basis(dom)
        blocks.append(basis)
        items = list(terms.items())
        for m in basis.monomials:
            col = {}
            for e, v in items:
                col[mono_index((m[0] + e[0], m[1] + e[1], m[2] + e[2]))] = v
            columns.append(col)
    if not provenance:
        provenance = f"(h_i) -> sum h_i g_i at degree {target}"
    return MapMatrix(generators, target, scale, tuple(blocks), columns, provenance, tuple(offsets))


# ---------------------------------------------------------------------------
# fields


class RationalField:
    """Exact elimination over Q on integer matrices."""

    name = "exact"
    prime = 0

    def matrix(self, nrows: int, ncols: int, entries: Iterable[tuple[int, int, int]]):
        M = flint.fmpz_mat(nrows, ncols)
        for i, j, v in entries:
            M[i, j] = v
        return M

    def rank(self, M) -> int:
        if M.nrows() == 0 or M.ncols() == 0:
            return 0
        return M.rank()

    def nullspace(self, M) -> list[list[int]]:
        n = M.ncols()
        if M.nrows() == 0:
            return [[int(i == j) for i in range(n)] for j in range(n)]
        if n == 0:
            return []
        X, nullity = M.nullspace()
        return [[int(X[i, j]) for i in range(n)] for j in range(nullity)]

    def __repr__(self) -> str:
        return "QQ"


class PrimeField:
    """Elimination modulo a word-size prime."""

    name = "modular"

    def __init__(self, prime: int):
        self.prime = prime

    def matrix(self, nrows: int, ncols: int, entries: Iterable[tuple[int, int, int]]):
        p = self.prime
        M = flint.nmod_mat(nrows, ncols, p)
        for i, j, v in entries:
            M[i, j] = v % p
        return M

    def rank(self, M) -> int:
        if M.nrows() == 0 or M.ncols() == 0:
            return 0
        return M.rank()

    def nullspace(self, M) -> list[list[int]]:
        n = M.ncols()
        if M.nrows() == 0:
            return [[int(i == j) for i in range(n)] for j in range(n)]
        if n == 0:
            return []
        X, nullity = M.nullspace()
        return [[int(X[i, j]) for i in range(n)] for j in range(nullity)]

    def __repr__(self) -> str:
        return f"GF({self.prime})"


QQ = RationalField()


def random_prime(rng: random.Random, avoid: int = 1) -> int:
    """A prime in [2^61, 2^62) drawn from rng that does not divide ``avoid``."""
    while True:
        p = rng.randrange(PRIME_LO, PRIME_HI) | 1
        if flint.fmpz(p).is_prime() and avoid % p != 0:
            return p


@dataclass
class PrimePool:
    """Deterministic stream of primes used by the modular backend.

    ``avoid`` is a product of denominators and leading coefficients of
    the input; a prime dividing it is skipped and recorded in
    ``rejected``.
    """

    seed: int = 0
    avoid: int = 1
    primes: list[int] = field(default_factory=list)
    rejected: list[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        self._rng = random.Random(self.seed)

    def get(self, i: int) -> int:
        while len(self.primes) <= i:
            p = random_prime(self._rng)
            if self.avoid % p == 0:
                self.rejected.append(p)
                continue
            self.primes.append(p)
        return self.primes[i]

    def field(self, i: int) -> PrimeField:
        return PrimeField(self.get(i))


# ---------------------------------------------------------------------------
# reference eliminator


def reference_rank(nrows: int, ncols: int, entries: Iterable[tuple[int, int, int]]) -> int:
    return len(_reference_echelon(nrows, ncols, entries)[0])


def _reference_echelon(nrows, ncols, entries):
    """Fraction-free row reduction on sparse rows.

    Returns pivot columns and the reduced rows (dicts col -> int).
    """
    rows: list[dict[int, int]] = [dict() for _ in range(nrows)]
    for i, j, v in entries:
        if v:
            rows[i][j] = rows[i].get(j, 0) + v
    rows = [r for r in rows if any(r.values())]
    pivots: list[int] = []
    done: list[dict[int, int]] = []
    for col in range(ncols):
        k = next((t for t, r in enumerate(rows) if r.get(col)), None)
        if k is None:
            continue
        prow = rows.pop(k)
        a = prow[col]
        nxt = []
        for r in rows:
            b = r.get(col)
            if b:
                new = {}
                for c in set(prow) | set(r):
                    v = a * r.get(c, 0) - b * prow.get(c, 0)
                    if v:
                        new[c] = v
                r = new
            if r:
                g = 0
                for v in r.values():
                    g = _gcd(g, v)
                r = {c: v // g for c, v in r.items()}
                nxt.append(r)
        rows = nxt
        pivots.append(col)
        done.append(prow)
    return pivots, done


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def reference_nullspace(nrows: int, ncols: int, entries) -> list[list[Fraction]]:
    pivots, rows = _reference_echelon(nrows, ncols, entries)
    # back substitution on the echelon rows, one free column at a time
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        x = [Fraction(0)] * ncols
        x[fcol] = Fraction(1)
        for pcol, row in reversed(list(zip(pivots, rows))):
            s = sum((Fraction(v) * x[c] for c, v in row.items() if c != pcol), Fraction(0))
            x[pcol] = -s / row[pcol]
        basis.append(x)
    return basis


# ---------------------------------------------------------------------------
# public operations


@dataclass(frozen=True)
class RankWitness:
    rank: int
    backend: str
    primes: tuple[int, ...] = ()
    crosscheck: bool = True

    def describe(self) -> str:
        if self.backend == "modular":
            return f"modular{list(self.primes)}"
        return self.backend


def _entries(m: MapMatrix):
    return list(m.triplets())


def majority(values: list, compute_more) -> tuple[object, bool]:
    """Two-out-of-three agreement.

    ``values`` holds the first two results; ``compute_more`` is called
    for a third one only when they differ.  Returns the agreed value and
    whether the first two already agreed.
    """
    if values[0] == values[1]:
        return values[0], True
    third = compute_more()
    for v in values[:2]:
        if v == third:
            return v, False
    raise BackendDisagreement(f"no two modular images agree: {values + [third]}")


def kernel_and_rank(m: MapMatrix, backend: str = "exact", seed: int = 0,
                    pool: PrimePool | None = None) -> tuple[RankWitness, list[list[Fraction]] | None]:
    """Rank of m with a kernel basis (``None`` for the modular backend)."""
    nrows, ncols = m.shape
    entries = _entries(m)
    if backend == "exact":
        M = QQ.matrix(nrows, ncols, entries)
        ker = [[Fraction(v) for v in vec] for vec in QQ.nullspace(M)]
        return RankWitness(ncols - len(ker), "exact"), ker
    if backend == "reference":
        ker = reference_nullspace(nrows, ncols, entries)
        return RankWitness(ncols - len(ker), "reference"), ker
    if backend == "modular":
        pool = pool or PrimePool(seed, m.scale)

        def at(i):
            F = pool.field(i)
            return F.rank(F.matrix(nrows, ncols, entries))

        r, agreed = majority([at(0), at(1)], lambda: at(2))
        return RankWitness(r, "modular", tuple(pool.primes), agreed), None
    raise LinalgError(f"unknown backend {backend!r}")


@dataclass(frozen=True)
class Membership:
    member: bool
    witness: list[Fraction] | None = None
    functional: list[Fraction] | None = None

    def __bool__(self) -> bool:
        return self.member


def image_membership(m: MapMatrix, target: Sequence | Polynomial) -> Membership:
    """Decide whether target lies in the image of m, exactly.

    On success the witness is a domain vector whose expansion equals the
    target.  Otherwise the functional is a vector on the codomain that
    kills every column of m but not the target.
    """
    nrows, ncols = m.shape
    if isinstance(target, Polynomial):
        target = m.codomain.vector(target)
    target = [Fraction(t) for t in target]
    if len(target) != nrows:
        raise LinalgError(f"target has length {len(target)}, codomain has dimension {nrows}")
    if not any(target):
        return Membership(True, [Fraction(0)] * ncols)
    den = lcm(*(t.denominator for t in target))
    tcol = {i: int(t * den) for i, t in enumerate(target) if t}
    # kernel of [M | -t] with last coordinate nonzero gives the witness
    entries = _entries(m) + [(i, ncols, -v) for i, v in tcol.items()]
    M = QQ.matrix(nrows, ncols + 1, entries)
    for vec in QQ.nullspace(M):
        if vec[ncols]:
            # M v = t*den*v_last/scale... rescale to get sum h_i g_i = target
            c = Fraction(vec[ncols])
            w = [Fraction(v) / c * Fraction(m.scale, den) for v in vec[:ncols]]
            return Membership(True, w)
    # left kernel of M not killing t
    Mt = QQ.matrix(ncols, nrows, ((j, i, v) for i, j, v in _entries(m)))
    for lam in QQ.nullspace(Mt):
        s = sum(lam[i] * v for i, v in tcol.items())
        if s:
            return Membership(False, functional=[Fraction(v) for v in lam])
    raise LinalgError("inconsistent membership computation")
