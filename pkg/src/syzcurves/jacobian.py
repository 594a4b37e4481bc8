"""Jacobian syzygies, Milnor algebra dimensions and the freeness defect.

For a reduced plane curve C : f = 0 of degree d everything here is read
off from ranks of the maps

    S_{k-d+1}^3 -> S_k,   (a, b, c) -> a f_x + b f_y + c f_z,

one degree at a time.  A :class:`JacobianEngine` owns the caches for a
single curve so that a full report never assembles the same matrix
twice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from . import linalg
from .linalg import QQ, PrimePool, basis_size, mono_index, monomial_basis
from .poly import Polynomial, is_squarefree

MODULAR_FROM_DEGREE = 24
FULL_WINDOW_UP_TO = 21
COMPLETENESS_RUN = 5


class CurveError(ValueError):
    """Input polynomial does not define a curve the package can analyse."""


class NotHomogeneousError(CurveError):
    pass


class NotSquarefreeError(CurveError):
    pass


class ConeError(CurveError):
    pass


class DegreeError(CurveError):
    pass


class StabilizationError(RuntimeError):
    """A degree scan hit its cap; never expected for reduced curves."""


# ---------------------------------------------------------------------------
# data


@dataclass(frozen=True)
class JacobianTriple:
    f: Polynomial
    fx: Polynomial
    fy: Polynomial
    fz: Polynomial

    @property
    def d(self) -> int:
        return int(self.f.degree())

    @property
    def partials(self) -> tuple[Polynomial, Polynomial, Polynomial]:
        return self.fx, self.fy, self.fz


@dataclass(frozen=True)
class Syzygy:
    """A relation a f_x + b f_y + c f_z = 0 of degree ``degree``."""

    degree: int
    a: Polynomial
    b: Polynomial
    c: Polynomial

    def components(self) -> tuple[Polynomial, Polynomial, Polynomial]:
        return self.a, self.b, self.c


@dataclass(frozen=True)
class SyzygyProfile:
    dims: dict[int, int]
    generator_degrees: tuple[int, ...]
    mdr: int | None
    complete: bool
    k_max: int
    new_generators: dict[int, int] = field(default_factory=dict)

    @property
    def m(self) -> int:
        return len(self.generator_degrees)


@dataclass(frozen=True)
class TjurinaRecord:
    tau: int
    milnor_hilbert: dict[int, int]
    n_values: dict[int, int]
    nu: int
    stabilization_degree: int
    window: str = "full"


# ---------------------------------------------------------------------------
# construction


def _linear_rank(polys: list[Polynomial], degree: int) -> int:
    basis = monomial_basis(degree)
    entries = []
    den = 1
    for p in polys:
        for c in p.terms.values():
            den = lcm(den, c.denominator)
    for j, p in enumerate(polys):
        for e, c in p.terms.items():
            entries.append((basis.index(e), j, int(c * den)))
    return QQ.rank(QQ.matrix(len(basis), len(polys), entries))


def jacobian_triple(f: Polynomial) -> JacobianTriple:
    """Validate f and attach its partial derivatives.

    Rejected inputs: extra variables, non-homogeneous or zero f, degree
    below 3, repeated factors, and cones (partials linearly dependent,
    i.e. a syzygy in degree 0).
    """
    if f.is_zero():
        raise NotHomogeneousError("the zero polynomial defines no curve")
    if any(any(e[3:]) for e in f.terms):
        raise CurveError("curve equations may only involve x, y, z")
    if not f.is_homogeneous():
        raise NotHomogeneousError("polynomial is not homogeneous")
    d = int(f.degree())
    if d < 3:
        raise DegreeError(f"degree {d} is below 3")
    fx, fy, fz = f.diff("x"), f.diff("y"), f.diff("z")
    if _linear_rank([fx, fy, fz], d - 1) < 3:
        sq = is_squarefree(f)
        if not sq:
            raise NotSquarefreeError(f"polynomial has a repeated factor {sq.certificate} (and defines a cone)")
        raise ConeError("curve is a cone: the partial derivatives are linearly dependent")
    sq = is_squarefree(f)
    if not sq:
        raise NotSquarefreeError(f"polynomial has a repeated factor {sq.certificate}")
    x, y, z = (Polynomial.var(v, f.gens) for v in "xyz")
    if x * fx + y * fy + z * fz != f.scale(d):
        raise CurveError("Euler relation failed")  # cannot happen for homogeneous f
    return JacobianTriple(f, fx, fy, fz)


# ---------------------------------------------------------------------------
# engine


@lru_cache(maxsize=None)
def _shift(k: int, var: int, power: int = 1) -> tuple[int, ...]:
    """Index map S_k -> S_{k+power} for multiplication by a variable power."""
    out = []
    for e in monomial_basis(k).monomials:
        e = list(e)
        e[var] += power
        out.append(mono_index(e))
    return tuple(out)


class JacobianEngine:
    """Cached degreewise computations for one curve.

    ``backend`` is ``exact``, ``modular`` or ``None`` (modular from
    degree 24 on).  Modular answers need two agreeing primes; a third
    prime settles a disagreement, which is counted in ``disagreements``.
    """

    def __init__(self, triple: JacobianTriple, backend: str | None = None, seed: int = 0):
        self.triple = triple
        self.d = triple.d
        if backend is None:
            backend = "modular" if self.d >= MODULAR_FROM_DEGREE else "exact"
        if backend not in ("exact", "modular"):
            raise ValueError(f"unknown backend {backend!r}")
        self.backend = backend
        self.seed = seed
        self.scale, scaled = linalg._scaled_generators(triple.partials)
        self._gens = scaled
        self.pool = PrimePool(seed, self.scale)
        self.disagreements = 0
        self._jrank: dict[int, int] = {}
        self._kernels: dict[tuple[int, int], list[list[int]]] = {}
        self._lift: dict[int, int] = {}
        self._annihilators: dict[tuple[int, int], list[list[int]]] = {}
        self._profile: SyzygyProfile | None = None
        self._tau: tuple[int, int, dict[int, int]] | None = None
        self._cert: list[tuple[int, list[dict]]] | None = None

    # fields ----------------------------------------------------------------

    def field(self, i: int):
        return QQ if self.backend == "exact" else self.pool.field(i)

    def agree(self, fn):
        if self.backend == "exact":
            return fn(0)
        value, agreed = linalg.majority([fn(0), fn(1)], lambda: fn(2))
        if not agreed:
            self.disagreements += 1
        return value

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(self.pool.primes) if self.backend == "modular" else ()

    # the Jacobian map ------------------------------------------------------

    def _entries(self, target: int):
        """Triplets of S_{target-d+1}^3 -> S_target."""
        dom = target - self.d + 1
        if dom < 0:
            return 0, []
        n = basis_size(dom)
        mons = monomial_basis(dom).monomials
        out = []
        for g, gen in enumerate(self._gens):
            items = list(gen.items())
            for j, m in enumerate(mons):
                col = g * n + j
                for e, v in items:
                    out.append((mono_index((m[0] + e[0], m[1] + e[1], m[2] + e[2])), col, v))
        return 3 * n, out

    def jacobian_rank(self, k: int) -> int:
        """Rank of (J_f)_k, that is dim S_k - dim M(f)_k."""
        if k not in self._jrank and (0, k) in self._annihilators:
            # the annihilator's nullity already determines this rank
            return self.annihilator_rank(k)
        if k not in self._jrank:
            ncols, entries = self._entries(k)
            certified = self._certified_rank(k, ncols, entries) if ncols else None
            if ncols == 0:
                self._jrank[k] = 0
            elif certified is not None:
                self._jrank[k] = certified
            else:
                nrows = basis_size(k)

                def at(i):
                    F = self.field(i)
                    return F.rank(F.matrix(nrows, ncols, entries))

                self._jrank[k] = self.agree(at)
        return self._jrank[k]

    def _certified_rank(self, k: int, ncols: int, entries) -> int | None:
        """Exact rank of (J_f)_k from one prime plus known syzygies, or None.

        Reduction mod p never raises the rank, and multiples of exact
        syzygies independent mod p bound the kernel from below over Q.
        When the two bounds meet the value is exact.  Only used once the
        profile is complete, so in the degrees past the syzygy scan.
        """
        if self.backend != "exact" or self._profile is None or not self._profile.complete:
            return None
        j = k - self.d + 1
        n = basis_size(j)
        rows = []
        for deg, comps in self._certificate_generators():
            if deg > j:
                continue
            for m in monomial_basis(j - deg).monomials:
                row = {}
                for blk, comp in enumerate(comps):
                    for e, v in comp.items():
                        row[blk * n + mono_index((m[0] + e[0], m[1] + e[1], m[2] + e[2]))] = v
                rows.append(row)
        F = self.pool.field(0)
        kern = F.rank(F.matrix(len(rows), 3 * n, ((r, c, v) for r, row in enumerate(rows)
                                                  for c, v in row.items()))) if rows else 0
        rank = F.rank(F.matrix(basis_size(k), ncols, entries))
        return rank if rank == ncols - kern else None

    def _certificate_generators(self) -> list[tuple[int, list[dict]]]:
        if self._cert is None:
            t = self.triple
            gens = []
            for s in self.exact_generators(self._profile):
                if s.a * t.fx + s.b * t.fy + s.c * t.fz:
                    raise RuntimeError("extracted generator is not a syzygy")
                gens.append((s.degree, [{e[:3]: int(v) for e, v in comp.terms.items()}
                                        for comp in s.components()]))
            self._cert = gens
        return self._cert

    def milnor_hilbert(self, k: int) -> int:
        return basis_size(k) - self.jacobian_rank(k)

    def syzygy_dim(self, k: int) -> int:
        if k < 0:
            return 0
        return 3 * basis_size(k) - self.jacobian_rank(k + self.d - 1)

    # syzygies --------------------------------------------------------------

    def kernel(self, i: int, k: int) -> list[list[int]]:
        """Basis of D_0(f)_k over field i, as vectors in S_k^3."""
        key = (i, k)
        if key not in self._kernels:
            F = self.field(i)
            ncols, entries = self._entries(k + self.d - 1)
            M = F.matrix(basis_size(k + self.d - 1), ncols, entries)
            self._kernels[key] = F.nullspace(M)
        return self._kernels[key]

    def _lift_vectors(self, vectors: list[list[int]], k: int) -> list[dict[int, int]]:
        """Multiply vectors of S_{k-1}^3 by x, y and z."""
        n0, n1 = basis_size(k - 1), basis_size(k)
        out = []
        for vec in vectors:
            for var in range(3):
                sh = _shift(k - 1, var)
                row = {}
                for blk in range(3):
                    for j in range(n0):
                        v = vec[blk * n0 + j]
                        if v:
                            row[blk * n1 + sh[j]] = v
                out.append(row)
        return out

    def lift_rank(self, k: int) -> int:
        """dim S_1 * D_0(f)_{k-1} inside D_0(f)_k."""
        if k not in self._lift:
            if k <= 0 or self.syzygy_dim(k - 1) == 0:
                self._lift[k] = 0
            else:
                def at(i):
                    F = self.field(i)
                    rows = self._lift_vectors(self.kernel(i, k - 1), k)
                    ent = [(r, c, v) for r, row in enumerate(rows) for c, v in row.items()]
                    return F.rank(F.matrix(len(rows), 3 * basis_size(k), ent))

                self._lift[k] = self.agree(at)
        return self._lift[k]

    def new_generators(self, k: int) -> int:
        return self.syzygy_dim(k) - self.lift_rank(k)

    def default_cap(self) -> int:
        # generators sit in degree <= 2d - 4, so five quiet degrees end by 2d + 1
        return 2 * self.d - 4 + COMPLETENESS_RUN

    def syzygy_profile(self, k_max: int | None = None) -> SyzygyProfile:
        """Exponents of the curve by graded Nakayama.

        The scan stops once at least two generators have been found and
        five consecutive degrees bring no new one.  Reaching ``k_max``
        (default 2d + 1) first yields a profile flagged incomplete.
        """
        if k_max is None:
            k_max = self.default_cap()
        if self._profile is not None and self._profile.k_max == k_max:
            return self._profile
        dims: dict[int, int] = {}
        counts: dict[int, int] = {}
        degrees: list[int] = []
        quiet = 0
        complete = False
        mdr = None
        for k in range(0, k_max + 1):
            dims[k] = self.syzygy_dim(k)
            if dims[k] == 0:
                continue
            if mdr is None:
                mdr = k
            new = dims[k] - self.lift_rank(k)
            if new < 0:
                raise RuntimeError(f"negative generator count in degree {k}")
            if new:
                counts[k] = new
                degrees.extend([k] * new)
                quiet = 0
            else:
                quiet += 1
            if len(degrees) >= 2 and quiet >= COMPLETENESS_RUN:
                complete = True
                break
        prof = SyzygyProfile(dims, tuple(degrees), mdr, complete, k_max, counts)
        if k_max == self.default_cap():
            self._profile = prof
        return prof

    def mdr(self) -> int:
        k = 1
        while self.syzygy_dim(k) == 0:
            k += 1
            if k > self.d - 1:
                # the Koszul relations live in degree d-1
                raise RuntimeError("no syzygy up to degree d-1")
        return k

    def exact_generators(self, profile: SyzygyProfile | None = None) -> list[Syzygy]:
        """A minimal generating set of D_0(f) over Q.

        Each generator is rescaled to have coprime integer coefficients
        and a positive leading coefficient.
        """
        profile = profile or self.syzygy_profile()
        out: list[Syzygy] = []
        gens = self.triple.f.gens
        for k in sorted(profile.new_generators):
            need = profile.new_generators[k]
            ker = QQ.nullspace(QQ.matrix(basis_size(k + self.d - 1), *self._entries(k + self.d - 1)))
            if k > 0:
                prev = QQ.nullspace(QQ.matrix(basis_size(k + self.d - 2), *self._entries(k + self.d - 2)))
                rows = [dict(r) for r in self._lift_vectors(prev, k)]
            else:
                rows = []
            n = basis_size(k)
            base = _rank_rows(rows, 3 * n)
            chosen = 0
            for vec in sorted(ker, key=lambda v: sum(1 for t in v if t)):
                row = {c: v for c, v in enumerate(vec) if v}
                r = _rank_rows(rows + [row], 3 * n)
                if r > base:
                    rows.append(row)
                    base = r
                    chosen += 1
                    out.append(_syzygy_from_vector(vec, k, gens))
                    if chosen == need:
                        break
            if chosen != need:
                raise RuntimeError(f"could not extract {need} generators in degree {k}")
        return out

    # Tjurina number --------------------------------------------------------

    def total_tjurina(self) -> int:
        return self._scan_tau()[0]

    def _scan_tau(self):
        if self._tau is None:
            d = self.d
            start = max(3 * d - 6, 0)
            values = {start: self.milnor_hilbert(start)}
            k = start
            while True:
                if k + 1 > 4 * d:
                    raise StabilizationError(f"Milnor algebra did not stabilise by degree {4 * d}")
                values[k + 1] = self.milnor_hilbert(k + 1)
                if values[k + 1] == values[k]:
                    break
                k += 1
            self._tau = (values[k], k, values)
        return self._tau

    # saturation ------------------------------------------------------------

    def annihilator(self, i: int, D: int) -> list[list[int]]:
        """Rows lambda_m for monomials m of S_D spanning the dual of M(f)_D.

        h in S_D lies in (J_f)_D iff sum_m h_m lambda_m = 0.  Returned as
        one row per monomial, each of length dim M(f)_D.
        """
        key = (i, D)
        if key not in self._annihilators:
            F = self.field(i)
            ncols, entries = self._entries(D)
            n = basis_size(D)
            # transpose: the generators become rows, monomials columns
            M = F.matrix(ncols, n, ((c, r, v) for r, c, v in entries))
            null = F.nullspace(M) if ncols else [[int(a == b) for a in range(n)] for b in range(n)]
            self._annihilators[key] = [list(col) for col in zip(*null)] if null else [[] for _ in range(n)]
        return self._annihilators[key]

    def annihilator_rank(self, D: int) -> int:
        if D not in self._jrank:
            def at(i):
                return basis_size(D) - len(self.annihilator(i, D)[0])

            self._jrank[D] = self.agree(at)
        return self._jrank[D]

    def _quotient_rank(self, i: int, k: int, D: int, multipliers: list[tuple[int, int, int]],
                       field=None) -> int:
        """Rank of h -> (lambda(m h))_m for h in S_k and the given monomials m of degree D-k.

        ``field`` overrides the field the rank is taken in, so an exact
        annihilator can be reduced modulo a prime.
        """
        F = field or self.field(i)
        lam = self.annihilator(i, D)
        width = len(lam[0]) if lam else 0
        if width == 0:
            return 0
        maps = []
        for m in multipliers:
            maps.append(tuple(
                mono_index((e[0] + m[0], e[1] + m[1], e[2] + m[2]))
                for e in monomial_basis(k).monomials
            ))
        entries = []
        for r in range(basis_size(k)):
            for b, mp in enumerate(maps):
                row = lam[mp[r]]
                off = b * width
                for c, v in enumerate(row):
                    if v:
                        entries.append((r, off + c, v))
        M = F.matrix(basis_size(k), width * len(maps), entries)
        return F.rank(M)

    def saturation_dim(self, k: int, method: str = "bound", patience: int = 2) -> int:
        """dim (I_f)_k, I_f the saturation of the Jacobian ideal.

        ``bound`` tests h x^N, h y^N, h z^N against (J_f)_{3d-5}, where
        J_f and I_f already agree.  ``escalate`` raises N from 1 and
        tests all monomial multiples of degree N until the answer is
        the same for ``patience`` consecutive N.  That stopping rule can
        fire early: for the degree 10 curve C_0 at k = 11 the values run
        18, 18, 19, ...
        """
        T = 3 * self.d - 6
        if method == "bound":
            if k > T:
                return self.jacobian_rank(k)
            D = T + 1
            N = D - k
            mult = [(N, 0, 0), (0, N, 0), (0, 0, N)]
            if self.backend == "exact":
                # (J_f)_k lies in the kernel, so the rank is at most S_k - rank (J_f)_k;
                # a prime reaching that bound settles the exact rank
                top = basis_size(k) - self.jacobian_rank(k)
                if self._quotient_rank(0, k, D, mult, self.pool.field(0)) == top:
                    return basis_size(k) - top
            r = self.agree(lambda i: self._quotient_rank(i, k, D, mult))
            return basis_size(k) - r
        if method == "escalate":
            prev, run = None, 0
            for N in range(1, 3 * self.d + 1):
                mult = list(monomial_basis(N).monomials)
                r = self.agree(lambda i: self._quotient_rank(i, k, k + N, mult))
                cur = basis_size(k) - r
                run = run + 1 if cur == prev else 1
                if run >= patience:
                    return cur
                prev = cur
            raise StabilizationError(f"saturation in degree {k} did not stabilise for N <= {3 * self.d}")
        raise ValueError(f"unknown saturation method {method!r}")

    def n_value(self, k: int, method: str = "bound", patience: int = 2) -> int:
        return self.saturation_dim(k, method, patience) - self.jacobian_rank(k)

    def freeness_defect(self, window: str | None = None) -> TjurinaRecord:
        """The record (tau, M(f)_k, n(f)_k, nu).

        ``window`` is ``full`` (every k in [0, 3d-6]) or ``half`` (k up to
        the centre, mirrored by the self-duality n_k = n_{3d-6-k}); the
        default is full up to degree 21.
        """
        T = 3 * self.d - 6
        self.annihilator_rank(T + 1)
        tau, stab, values = self._scan_tau()
        if window is None:
            window = "full" if self.d <= FULL_WINDOW_UP_TO else "half"
        top = T if window == "full" else T // 2
        n: dict[int, int] = {}
        for k in range(0, top + 1):
            n[k] = self.n_value(k)
            if n[k] < 0:
                raise RuntimeError(f"negative n(f)_{k}")
        if window == "half":
            for k in range(top + 1, T + 1):
                n[k] = n[T - k]
        nu = max(n.values(), default=0)
        return TjurinaRecord(tau, dict(values), n, nu, stab, window)


def _rank_rows(rows: list[dict[int, int]], ncols: int) -> int:
    if not rows:
        return 0
    ent = [(r, c, v) for r, row in enumerate(rows) for c, v in row.items()]
    return QQ.rank(QQ.matrix(len(rows), ncols, ent))


def _syzygy_from_vector(vec: list[int], k: int, gens: tuple[str, ...]) -> Syzygy:
    g = 0
    for v in vec:
        g = gcd(g, v)
    lead = next(v for v in vec if v)
    if lead < 0:
        g = -g
    basis = monomial_basis(k)
    n = len(basis)
    comps = [basis.polynomial([Fraction(v, g) for v in vec[b * n:(b + 1) * n]], gens) for b in range(3)]
    return Syzygy(k, *comps)


# ---------------------------------------------------------------------------
# functional interface


@lru_cache(maxsize=16)
def engine(triple: JacobianTriple, backend: str | None = None, seed: int = 0) -> JacobianEngine:
    return JacobianEngine(triple, backend, seed)


def syzygy_profile(j: JacobianTriple, k_max: int | None = None, backend: str | None = None) -> SyzygyProfile:
    return engine(j, backend).syzygy_profile(k_max)


def milnor_hilbert(j: JacobianTriple, k: int, backend: str | None = None) -> int:
    return engine(j, backend).milnor_hilbert(k)


def total_tjurina(j: JacobianTriple, backend: str | None = None) -> int:
    return engine(j, backend).total_tjurina()


def saturation_dim(j: JacobianTriple, k: int, method: str = "bound", backend: str | None = None,
                   patience: int = 2) -> int:
    return engine(j, backend).saturation_dim(k, method, patience)


def freeness_defect(j: JacobianTriple, backend: str | None = None, window: str | None = None) -> TjurinaRecord:
    return engine(j, backend).freeness_defect(window)


def mdr(j: JacobianTriple, backend: str | None = None) -> int:
    return engine(j, backend).mdr()
