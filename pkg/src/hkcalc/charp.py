"""Graded quotient rings R = S/J, free complexes over R, and Frobenius twists.

Modules over R are handled through lifts to S: a free R-module R^b with
degree shifts is represented by S^b plus the relations J in every component,
and every matrix entry is kept as a normal form modulo J.  The Frobenius
functor F^n is never built as a module; it acts on complexes by raising every
differential entry to the q-th power (q = p^n).
"""
from __future__ import annotations

from functools import cached_property
from itertools import combinations

from .errors import PreconditionError
from .field import is_power_of
from .groebner import (
    IdealHandle, ModuleGB, _Engine, _vector_to_dict, bracket_power, colength,
    hilbert_series, krull_dimension, lift, syzygies,
)
from .hilbert import HilbertSeries, InfiniteLength
from .matrix import PolyMatrix
from .monomials import MonomialOrder
from .polynomial import PolyRing, Polynomial


class QuotientRing:
    """Standard graded R = F_p[x_1..x_m] / J with J homogeneous."""

    def __init__(self, p: int, variables, relations=(), order=MonomialOrder.DEGREVLEX):
        self.S = PolyRing(p, variables, order)
        rels = [self.S.parse(r) if isinstance(r, str) else r for r in relations]
        rels = [r for r in rels if r]
        for r in rels:
            if r.ring != self.S:
                raise ValueError(f"relation {r} is not in {self.S}")
            if not r.is_homogeneous():
                raise PreconditionError(f"relation {r} is not homogeneous")
        self.relations = tuple(rels)
        self.J = IdealHandle(self.S, rels)
        if self.J.is_unit():
            raise PreconditionError("the relations generate the unit ideal")
        self.dim = krull_dimension(self.J)
        self.graded = True
        self._resolutions: dict = {}

    @property
    def p(self) -> int:
        return self.S.p

    @property
    def variables(self) -> tuple[str, ...]:
        return self.S.variables

    @property
    def nvars(self) -> int:
        return self.S.nvars

    def __repr__(self):
        rel = ", ".join(map(str, self.relations)) or "0"
        return f"QuotientRing(F_{self.p}[{', '.join(self.variables)}]/({rel}), dim={self.dim})"

    def __call__(self, text: str) -> Polynomial:
        return self.reduce(self.S.parse(text))

    def reduce(self, f: Polynomial) -> Polynomial:
        return self.J.reduce(f)

    def ideal(self, generators) -> IdealHandle:
        """An ideal of R, represented by its lift to S."""
        gens = [self.S.parse(g) if isinstance(g, str) else g for g in generators]
        return IdealHandle(self.S, gens)

    def maximal_ideal(self) -> IdealHandle:
        return IdealHandle.maximal(self.S)

    def lifted(self, ideal: IdealHandle) -> IdealHandle:
        """J + I in S."""
        return self.J + ideal

    def quotient_colength(self, ideal: IdealHandle) -> int:
        """Length of R/I, i.e. colength of J + I in S."""
        return colength(self.J + ideal)

    def is_m_primary(self, ideal: IdealHandle) -> bool:
        try:
            self.quotient_colength(ideal)
        except InfiniteLength:
            return False
        return True

    def hilbert_series(self) -> HilbertSeries:
        return hilbert_series(self.J)

    @cached_property
    def is_regular_ring(self) -> bool:
        """Polynomial ring presentation (no relations)."""
        return not self.relations


def quotient_ring(p: int, variables, relations=()) -> QuotientRing:
    return QuotientRing(p, variables, relations)


# ---------------------------------------------------------------------------
# complexes
# ---------------------------------------------------------------------------

def _infer_column_degrees(M: PolyMatrix, row_shifts) -> list[int]:
    out = []
    for j, col in enumerate(M.columns()):
        degs = set()
        for e, s in zip(col, row_shifts):
            for d in e.degrees():
                degs.add(d + s)
        if len(degs) > 1:
            raise PreconditionError(f"column {j} of a differential is not homogeneous")
        out.append(degs.pop() if degs else 0)
    return out


class FreeComplex:
    """0 <- F_0 <-d_1- F_1 <- ... <-d_s- F_s of graded free R-modules.

    ``differentials[i]`` is d_{i+1} with shape rank(F_i) x rank(F_{i+1});
    ``degrees[i]`` lists the degree shifts of the basis of F_i.
    """

    def __init__(self, ring: QuotientRing, differentials, degrees=None, check: bool = True,
                 base_rank: int | None = None):
        self.ring = ring
        diffs = [d.map(ring.reduce) for d in differentials]
        for d in diffs:
            if d.ring != ring.S:
                raise ValueError("differential over the wrong ring")
        ranks = [diffs[0].rows if diffs else (base_rank or 0)]
        for k, d in enumerate(diffs):
            if d.rows != ranks[-1]:
                raise ValueError(f"d_{k + 1} has {d.rows} rows, expected {ranks[-1]}")
            ranks.append(d.cols)
        self.differentials = tuple(diffs)
        self.ranks = tuple(ranks)
        if degrees is None:
            degrees = [[0] * ranks[0]]
            for d in diffs:
                degrees.append(_infer_column_degrees(d, degrees[-1]))
        self.degrees = tuple(tuple(x) for x in degrees)
        if [len(x) for x in self.degrees] != list(self.ranks):
            raise ValueError("degree lists do not match ranks")
        if check:
            self.verify()

    @property
    def length(self) -> int:
        return len(self.differentials)

    def differential(self, i: int) -> PolyMatrix:
        """d_i : F_i -> F_{i-1} for 1 <= i <= length."""
        return self.differentials[i - 1]

    def verify(self) -> None:
        for k in range(len(self.differentials) - 1):
            prod = self.differentials[k] @ self.differentials[k + 1]
            if any(self.ring.reduce(e) for e in prod.entries):
                raise ValueError(f"d_{k + 1} * d_{k + 2} is not zero modulo J")

    def truncate(self, stages: int) -> "FreeComplex":
        return FreeComplex(self.ring, self.differentials[:stages], self.degrees[:stages + 1],
                           check=False, base_rank=self.ranks[0])

    def has_unit_entries(self) -> bool:
        return any(e.constant_term() for d in self.differentials for e in d.entries)

    def __repr__(self):
        return f"FreeComplex(ranks={list(self.ranks)})"


class ModulePresentation:
    """The R-module coker(P : R^c -> R^r); ``degrees`` are the shifts of R^r."""

    def __init__(self, ring: QuotientRing, matrix: PolyMatrix, degrees=None):
        self.ring = ring
        self.matrix = matrix.map(ring.reduce)
        self.degrees = tuple(degrees) if degrees is not None else (0,) * matrix.rows
        if len(self.degrees) != matrix.rows:
            raise ValueError("one degree per generator expected")

    @property
    def rank(self) -> int:
        return self.matrix.rows

    def length(self) -> int:
        return _cokernel(self.ring, self.matrix, self.degrees).colength()


def koszul_complex(R: QuotientRing, elems) -> FreeComplex:
    """Koszul complex on homogeneous elements, bases ordered by sorted subsets."""
    elems = [R.reduce(R.S.parse(e) if isinstance(e, str) else e) for e in elems]
    n = len(elems)
    degs = []
    for f in elems:
        if not f.is_homogeneous():
            raise PreconditionError(f"Koszul element {f} is not homogeneous")
        degs.append(f.degree() if f else 0)
    bases = [list(combinations(range(n), k)) for k in range(n + 1)]
    S = R.S
    zero = S.zero()
    diffs = []
    for k in range(1, n + 1):
        src, tgt = bases[k], bases[k - 1]
        pos = {s: i for i, s in enumerate(tgt)}
        entries = [[zero] * len(src) for _ in tgt]
        for j, subset in enumerate(src):
            for t, v in enumerate(subset):
                rest = subset[:t] + subset[t + 1:]
                entries[pos[rest]][j] = elems[v] if t % 2 == 0 else -elems[v]
        diffs.append(PolyMatrix.from_rows(S, entries, cols=len(src)))
    degrees = [[sum(degs[v] for v in s) for s in basis] for basis in bases]
    return FreeComplex(R, diffs, degrees, base_rank=1)


# ---------------------------------------------------------------------------
# minimalization and resolutions
# ---------------------------------------------------------------------------

def _relations_module(R: QuotientRing, rank: int, vectors, shifts) -> ModuleGB:
    return ModuleGB(R.S, rank, vectors, R.J if R.relations else None, shifts=shifts)


def _cokernel(R: QuotientRing, M: PolyMatrix, row_shifts) -> ModuleGB:
    return _relations_module(R, M.rows, M.columns(), row_shifts)


def _vector_degree(vec, shifts) -> int | None:
    degs = {d + s for e, s in zip(vec, shifts) for d in e.degrees()}
    if len(degs) > 1:
        raise PreconditionError("inhomogeneous vector in a graded module")
    return degs.pop() if degs else None


def minimal_generators(R: QuotientRing, vectors, rank: int, shifts) -> list[tuple[list[Polynomial], int]]:
    """A minimal homogeneous generating subset of the given vectors in R^rank.

    Works degree by degree: a vector is kept when its normal form modulo the
    submodule generated in lower degrees is linearly independent of the normal
    forms of the vectors already kept in its degree.
    """
    items = []
    for n, v in enumerate(vectors):
        v = [R.reduce(e) for e in v]
        d = _vector_degree(v, shifts)
        if d is not None:
            items.append((d, n, v))
    items.sort(key=lambda t: (t[0], t[1]))
    kept: list[tuple[list[Polynomial], int]] = []
    p = R.p
    k = 0
    while k < len(items):
        deg = items[k][0]
        group = []
        while k < len(items) and items[k][0] == deg:
            group.append(items[k][2])
            k += 1
        lower = _relations_module(R, rank, [v for v, _ in kept], shifts)
        pivots: dict[int, dict] = {}
        for v in group:
            nf = lower.reduce_dict(_vector_to_dict(v, R.S.codec))
            while nf:
                lead = max(nf)
                row = pivots.get(lead)
                if row is None:
                    inv = pow(nf[lead], -1, p)
                    pivots[lead] = {key: c * inv % p for key, c in nf.items()}
                    kept.append((v, deg))
                    break
                c = nf[lead]
                for key, val in row.items():
                    nv = (nf.get(key, 0) - c * val) % p
                    if nv:
                        nf[key] = nv
                    else:
                        nf.pop(key, None)
    return kept


def prune_units(R: QuotientRing, P: PolyMatrix, row_shifts):
    """Eliminate constant entries from a presentation matrix.

    Scans for a nonzero constant entry (lowest row, then lowest column),
    clears its row with column operations and deletes that row and column.
    Returns the new matrix and row shifts; the cokernel is unchanged.
    """
    rows = [P.row(i) for i in range(P.rows)]
    shifts = list(row_shifts)
    ncols = P.cols
    p = R.p
    while True:
        found = None
        for a, row in enumerate(rows):
            for b, e in enumerate(row):
                if e and e.is_constant():
                    found = (a, b)
                    break
                if e.constant_term():
                    raise PreconditionError(f"entry {e} is neither constant nor in the maximal ideal")
            if found:
                break
        if found is None:
            break
        a, b = found
        u_inv = pow(rows[a][b].constant_term(), -1, p)
        for j in range(ncols):
            if j != b and rows[a][j]:
                factor = rows[a][j] * u_inv
                for i in range(len(rows)):
                    if rows[i][b]:
                        rows[i][j] = R.reduce(rows[i][j] - factor * rows[i][b])
        del rows[a]
        del shifts[a]
        for row in rows:
            del row[b]
        ncols -= 1
    return PolyMatrix.from_rows(R.S, rows, cols=ncols), shifts


def _resolve(R: QuotientRing, d1: PolyMatrix, shifts0, shifts1, stages: int) -> FreeComplex:
    diffs = [d1]
    degrees = [list(shifts0), list(shifts1)]
    J = R.J if R.relations else None
    while len(diffs) < stages:
        d = diffs[-1]
        if d.cols == 0:
            diffs.append(PolyMatrix.zeros(R.S, 0, 0))
            degrees.append([])
            continue
        K = syzygies(d, J, row_shifts=degrees[-2])
        gens = minimal_generators(R, K.columns(), d.cols, degrees[-1])
        diffs.append(PolyMatrix.from_columns(R.S, [v for v, _ in gens], d.cols))
        degrees.append([deg for _, deg in gens])
    return FreeComplex(R, diffs, degrees, check=False, base_rank=len(shifts0))


def resolve_ideal(R: QuotientRing, ideal: IdealHandle, stages: int) -> FreeComplex:
    """Minimal graded free resolution of R/I over R through homological degree ``stages``."""
    if stages < 1:
        raise ValueError("stages must be at least 1")
    for g in ideal.generators:
        if not g.is_homogeneous():
            raise PreconditionError(f"ideal generator {g} is not homogeneous")
    key = tuple(sorted(str(g) for g in ideal.generators))
    cached = R._resolutions.get(key)
    if cached is not None and cached.length >= stages:
        return cached.truncate(stages)
    gens = minimal_generators(R, [[g] for g in ideal.generators], 1, [0])
    d1 = PolyMatrix.from_columns(R.S, [v for v, _ in gens], 1)
    C = _resolve(R, d1, [0], [deg for _, deg in gens], stages)
    R._resolutions[key] = C
    return C


def resolve_module(M: ModulePresentation, stages: int) -> FreeComplex:
    """Minimal graded free resolution of coker(P) through homological degree ``stages``."""
    if stages < 1:
        raise ValueError("stages must be at least 1")
    R = M.ring
    P, shifts0 = prune_units(R, M.matrix, M.degrees)
    gens = minimal_generators(R, P.columns(), P.rows, shifts0)
    d1 = PolyMatrix.from_columns(R.S, [v for v, _ in gens], P.rows)
    return _resolve(R, d1, shifts0, [deg for _, deg in gens], stages)


def frobenius_twist(C: FreeComplex, q: int) -> FreeComplex:
    """Apply F^n (q = p^n): raise every differential entry to the q-th power."""
    R = C.ring
    if not is_power_of(q, R.p):
        raise ValueError(f"{q} is not a power of the characteristic {R.p}")
    if q == 1:
        return C
    diffs = [d.map(lambda e: R.reduce(e.frobenius(q))) for d in C.differentials]
    degrees = [[q * s for s in shifts] for shifts in C.degrees]
    return FreeComplex(R, diffs, degrees, check=False, base_rank=C.ranks[0])


# ---------------------------------------------------------------------------
# homology
# ---------------------------------------------------------------------------

def _coker_series(C: FreeComplex, i: int) -> HilbertSeries:
    """Hilbert series of coker(d_{i+1} : F_{i+1} -> F_i); F_j = 0 outside [0, length]."""
    R = C.ring
    if i < 0 or i > C.length:
        return HilbertSeries((), R.nvars)
    if i == C.length:
        return _relations_module(R, C.ranks[i], [], C.degrees[i]).hilbert_series()
    return _cokernel(R, C.differential(i + 1), C.degrees[i]).hilbert_series()


def _free_series(C: FreeComplex, i: int) -> HilbertSeries:
    R = C.ring
    if i < 0 or i > C.length:
        return HilbertSeries((), R.nvars)
    return _relations_module(R, C.ranks[i], [], C.degrees[i]).hilbert_series()


def homology_length(C: FreeComplex, i: int, method: str = "hilbert") -> int:
    """Length of H_i(C) = ker d_i / im d_{i+1}; raises InfiniteLength when not finite.

    ``method="hilbert"`` combines Hilbert series of cokernels,
    HS(H_i) = HS(coker d_{i+1}) + HS(coker d_i) - HS(F_{i-1});
    ``method="presentation"`` presents H_i over the generators of ker d_i
    and counts standard monomials.
    """
    if not 0 <= i <= C.length:
        raise ValueError(f"homological degree {i} outside [0, {C.length}]")
    if C.ranks[i] == 0:
        return 0
    if i == 0 and C.length >= 1:
        return _cokernel(C.ring, C.differential(1), C.degrees[0]).colength()
    if method == "presentation":
        return _homology_by_presentation(C, i)
    if method != "hilbert":
        raise ValueError(f"unknown method {method!r}")
    series = _coker_series(C, i) + _coker_series(C, i - 1) - _free_series(C, i - 1)
    return series.length()


def _homology_by_presentation(C: FreeComplex, i: int) -> int:
    R = C.ring
    S = R.S
    J = R.J if R.relations else None
    b = C.ranks[i]
    if i == 0:
        K = PolyMatrix.identity(S, b)
    else:
        K = syzygies(C.differential(i), J, row_shifts=C.degrees[i - 1])
    if K.cols == 0:
        return 0
    columns = []
    if i < C.length:
        d_next = C.differential(i + 1)
        for col in d_next.columns():
            if any(col):
                columns.append([R.reduce(e) for e in lift(K, col, J, row_shifts=C.degrees[i])])
    Z = syzygies(K, J, row_shifts=C.degrees[i])
    columns.extend(Z.columns())
    ker_shifts = [0] * K.cols
    for j, col in enumerate(K.columns()):
        d = _vector_degree(col, C.degrees[i])
        ker_shifts[j] = d if d is not None else 0
    return _relations_module(R, K.cols, columns, ker_shifts).colength()


def tor_length(R: QuotientRing, ideal: IdealHandle, i: int, n: int) -> int:
    """Length of Tor_i(R/I, ^{f^n}R)."""
    if i < 0 or n < 0:
        raise ValueError("i and n must be non-negative")
    if not R.is_m_primary(ideal):
        raise InfiniteLength("ideal is not primary to the maximal ideal")
    C = resolve_ideal(R, ideal, i + 1)
    return homology_length(frobenius_twist(C, R.p ** n), i)


def bi_surjection_bound(C: FreeComplex, n: int) -> tuple[int, int]:
    """(length H_1(F^n C), length Tor_1(H_0(C), ^{f^n}R)); the first bounds the second."""
    R = C.ring
    if C.length < 1:
        raise ValueError("complex must have at least one differential")
    for i in range(1, C.length + 1):
        homology_length(C, i)
    q = R.p ** n
    first = homology_length(frobenius_twist(C, q), 1)
    H0 = ModulePresentation(R, C.differential(1), C.degrees[0])
    G = resolve_module(H0, 2)
    second = homology_length(frobenius_twist(G, q), 1)
    return first, second
