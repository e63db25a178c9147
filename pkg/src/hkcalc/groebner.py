"""Groebner bases of ideals and submodules of free modules over F_p[x].

The engine works on "vectors": dicts mapping packed module monomials (see
:mod:`hkcalc.monomials`) to coefficients in ``[0, p)``.  Submodules of S^r use
position over term with component 0 highest; an ideal is the rank-1 case.
Pairs are selected by (shifted) degree of their lcm, then by the order, and
pruned with the Gebauer-Moeller criteria.
"""
from __future__ import annotations

import logging
from functools import cached_property
from itertools import combinations

from . import cache as _cache
from .deadline import check_deadline
from .field import is_power_of
from .hilbert import HilbertSeries, InfiniteLength, count_standard_monomials, hs_multiplicity
from .matrix import PolyMatrix
from .monomials import MonomialOrder
from .polynomial import PolyRing, Polynomial

log = logging.getLogger(__name__)

__all__ = [
    "IdealHandle", "ModuleGB", "InfiniteLength", "HilbertSeries",
    "buchberger", "normal_form", "is_member", "bracket_power", "colength",
    "krull_dimension", "hilbert_series", "hs_multiplicity", "syzygies", "lift",
]


# ---------------------------------------------------------------------------
# engine
# ---------------------------------------------------------------------------

class _Engine:
    """Reduction and Buchberger's algorithm for one codec / characteristic."""

    def __init__(self, ring: PolyRing, shifts=None):
        self.ring = ring
        self.codec = ring.codec
        self.p = ring.p
        self.shifts = list(shifts) if shifts is not None else None

    def degree(self, key: int) -> int:
        d = self.codec.degree(key)
        if self.shifts:
            d += self.shifts[self.codec.component(key)]
        return d

    def reduce(self, f: dict, basis: dict, full: bool = True) -> dict:
        """Normal form of ``f`` modulo monic ``basis`` (comp field -> [(lm, em, poly)])."""
        codec, p = self.codec, self.p
        cshift, emask, guard = codec.cshift, codec.emask, codec.guard
        f = dict(f)
        r: dict[int, int] = {}
        while f:
            m = max(f)
            c = f[m]
            hit = None
            cands = basis.get(m >> cshift)
            if cands:
                em = (m & emask) | guard
                for lm, elm, poly in cands:
                    if (em - elm) & guard == guard:
                        hit = (lm, poly)
                        break
            if hit is None:
                if not full:
                    f.update(r)
                    return f
                r[m] = c
                del f[m]
                continue
            lm, poly = hit
            s = m - lm
            get = f.get
            for k, v in poly.items():
                kk = k + s
                nv = (get(kk, 0) - c * v) % p
                if nv:
                    f[kk] = nv
                else:
                    f.pop(kk, None)
        return r

    def monic(self, f: dict) -> dict:
        lc = f[max(f)]
        if lc == 1:
            return f
        inv = pow(lc, -1, self.p)
        p = self.p
        return {k: v * inv % p for k, v in f.items()}

    def index(self, polys) -> dict:
        codec = self.codec
        basis: dict[int, list] = {}
        for poly in polys:
            lm = max(poly)
            basis.setdefault(lm >> codec.cshift, []).append((lm, lm & codec.emask, poly))
        return basis

    def groebner(self, gens: list[dict], rank: int) -> list[dict]:
        """Reduced Groebner basis (monic, sorted by descending leading monomial)."""
        codec = self.codec
        use_product = rank == 1
        polys: list[dict] = []
        lms: list[int] = []
        active: list[int] = []
        pairs: dict[tuple[int, int], tuple] = {}
        queue = []
        index: dict[int, list] = {}
        for g in gens:
            g = {k: v % self.p for k, v in g.items() if v % self.p}
            if g:
                queue.append((self.degree(max(g)), max(g), g))
        queue.sort(key=lambda t: (t[0], t[1]))

        def lcm_key(i, j):
            return codec.lcm(lms[i], lms[j])

        def add(h: dict):
            ih = len(polys)
            polys.append(h)
            mh = max(h)
            lms.append(mh)
            cf = mh >> codec.cshift
            same = [ig for ig in active if lms[ig] >> codec.cshift == cf]
            lcms = {ig: lcm_key(ih, ig) for ig in same}
            # Gebauer-Moeller: new pairs
            cand = []
            for n, ig in enumerate(same):
                L = lcms[ig]
                coprime = use_product and codec.coprime(mh, lms[ig])
                if coprime:
                    cand.append((ig, True))
                    continue
                rest = same[n + 1:]
                if any(codec.divides(lcms[o], L) for o in rest):
                    continue
                if any(codec.divides(lcms[o], L) for o, _ in cand):
                    continue
                cand.append((ig, False))
            new_pairs = [ig for ig, cp in cand if not cp]
            # drop old pairs made redundant by h
            for (a, b), val in list(pairs.items()):
                L = val[1]
                if (codec.divides(mh, L) and lcm_key(a, ih) != L and lcm_key(b, ih) != L):
                    del pairs[(a, b)]
            for ig in new_pairs:
                L = lcms[ig]
                pairs[(ig, ih)] = (self.degree(L), L)
            active[:] = [ig for ig in active if not codec.divides(mh, lms[ig])]
            active.append(ih)
            index.clear()
            index.update(self.index(polys[a] for a in active))

        while queue or pairs:
            check_deadline()
            best_pair = min(pairs, key=lambda k: (pairs[k], k)) if pairs else None
            if queue and (best_pair is None or (queue[0][0], queue[0][1]) <= pairs[best_pair]):
                _, _, f = queue.pop(0)
            else:
                i, j = best_pair
                del pairs[best_pair]
                L = lcm_key(i, j)
                f = {}
                p = self.p
                for src, lm_src, sign in ((polys[i], lms[i], 1), (polys[j], lms[j], p - 1)):
                    s = L - lm_src
                    for k, v in src.items():
                        kk = k + s
                        nv = (f.get(kk, 0) + sign * v) % p
                        if nv:
                            f[kk] = nv
                        else:
                            f.pop(kk, None)
            h = self.reduce(f, index)
            if h:
                add(self.monic(h))
        basis = [polys[a] for a in active]
        out = []
        for n, g in enumerate(basis):
            others = self.index(basis[:n] + basis[n + 1:])
            lm = max(g)
            tail = dict(g)
            del tail[lm]
            red = self.reduce(tail, others)
            red[lm] = 1
            out.append(red)
        out.sort(key=max, reverse=True)
        return out


def _vector_to_dict(vec, codec) -> dict:
    out = {}
    for c, poly in enumerate(vec):
        if poly:
            off = codec.comp_offset(c)
            for k, v in poly._t.items():
                out[k + off] = v
    return out


def _dict_to_vector(d: dict, ring: PolyRing, rank: int) -> list[Polynomial]:
    codec = ring.codec
    parts: list[dict] = [{} for _ in range(rank)]
    for k, v in d.items():
        parts[codec.component(k)][codec.strip(k)] = v
    return [Polynomial(ring, t) for t in parts]


def _groebner_dicts(ring: PolyRing, gens: list[dict], rank: int, shifts=None) -> list[dict]:
    store = _cache.active()
    if store is not None:
        key = store.key_for(ring, rank, shifts, gens)
        hit = store.load(key, ring)
        if hit is not None:
            return hit
    result = _Engine(ring, shifts).groebner(gens, rank)
    if store is not None:
        store.save(key, ring, result)
    return result


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------

class IdealHandle:
    """An ideal of a polynomial ring given by generators, with a lazily cached reduced GB."""

    def __init__(self, ring: PolyRing, generators):
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = ring.parse(g)
            if not isinstance(g, Polynomial) or g.ring != ring:
                raise ValueError(f"generator {g!r} does not belong to {ring}")
            gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)

    @classmethod
    def maximal(cls, ring: PolyRing) -> "IdealHandle":
        return cls(ring, ring.gens)

    @cached_property
    def gb(self) -> tuple[Polynomial, ...]:
        codec = self.ring.codec
        dicts = _groebner_dicts(self.ring, [_vector_to_dict([g], codec) for g in self.generators], 1)
        return tuple(_dict_to_vector(d, self.ring, 1)[0] for d in dicts)

    @cached_property
    def _basis_index(self):
        eng = _Engine(self.ring)
        off = self.ring.codec.comp_offset(0)
        return eng, eng.index({k + off: v for k, v in g._t.items()} for g in self.gb)

    def reduce(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise ValueError(f"order or ring mismatch: {f.ring} vs {self.ring}")
        if not self.gb:
            return f
        eng, basis = self._basis_index
        off = self.ring.codec.comp_offset(0)
        r = eng.reduce({k + off: v for k, v in f._t.items()}, basis)
        return Polynomial(self.ring, {k - off: v for k, v in r.items()})

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    __contains__ = contains

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [g.leading_monomial for g in self.gb]

    def is_unit(self) -> bool:
        return any(g.is_constant() and g for g in self.gb)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def __add__(self, other: "IdealHandle") -> "IdealHandle":
        if other.ring != self.ring:
            raise ValueError("ideals in different rings")
        return IdealHandle(self.ring, self.generators + other.generators)

    def __eq__(self, other):
        if not isinstance(other, IdealHandle):
            return NotImplemented
        return self.ring == other.ring and self.gb == other.gb

    def __hash__(self):
        return hash((self.ring, self.gb))

    def __repr__(self):
        return f"IdealHandle({', '.join(map(str, self.generators))})"


def buchberger(gens, order=MonomialOrder.DEGREVLEX) -> IdealHandle:
    """Ideal handle with its reduced Groebner basis already computed."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator to infer the ring; use IdealHandle(ring, [])")
    ring = gens[0].ring
    order = MonomialOrder(order)
    if order != ring.order:
        ring = ring.with_order(order)
        gens = [g.change_ring(ring) for g in gens]
    ideal = IdealHandle(ring, gens)
    ideal.gb
    return ideal


def normal_form(f: Polynomial, ideal: IdealHandle) -> Polynomial:
    return ideal.reduce(f)


def is_member(f: Polynomial, ideal: IdealHandle) -> bool:
    return ideal.contains(f)


def bracket_power(ideal: IdealHandle, q: int) -> IdealHandle:
    """The ideal generated by q-th powers of the generators (q a power of p)."""
    if not is_power_of(q, ideal.ring.p):
        raise ValueError(f"{q} is not a power of the characteristic {ideal.ring.p}")
    return IdealHandle(ideal.ring, [g.frobenius(q) for g in ideal.generators])


def colength(ideal: IdealHandle) -> int:
    """dim_k S/I, counted as standard monomials; raises InfiniteLength otherwise."""
    ring = ideal.ring
    lms = ideal.leading_monomials()
    pure = {i for e in lms for i, x in enumerate(e) if x and sum(e) == x}
    if lms and not any(not any(e) for e in lms):
        missing = [ring.variables[i] for i in range(ring.nvars) if i not in pure]
        if missing:
            raise InfiniteLength(f"quotient is infinite: no leading term is a pure power of {', '.join(missing)}")
    return count_standard_monomials(lms, ring.nvars)


def krull_dimension(ideal: IdealHandle) -> int:
    """Largest set of variables containing the support of no leading monomial."""
    lms = ideal.leading_monomials()
    m = ideal.ring.nvars
    if any(not any(e) for e in lms):
        return -1
    supports = [frozenset(i for i, e in enumerate(lm) if e) for lm in lms]
    for size in range(m, -1, -1):
        for subset in combinations(range(m), size):
            u = frozenset(subset)
            if not any(s <= u for s in supports):
                return size
    return 0


def hilbert_series(ideal: IdealHandle) -> HilbertSeries:
    if not ideal.is_homogeneous():
        bad = next(g for g in ideal.generators if not g.is_homogeneous())
        raise ValueError(f"Hilbert series needs homogeneous generators; {bad} is not")
    return HilbertSeries.of_monomial_ideal(ideal.leading_monomials(), ideal.ring.nvars)


# ---------------------------------------------------------------------------
# submodules
# ---------------------------------------------------------------------------

class ModuleGB:
    """Submodule of S^rank generated by vectors, optionally plus J * S^rank.

    ``shifts`` are the degrees of the basis vectors; they only steer pair
    selection and the Hilbert series.
    """

    def __init__(self, ring: PolyRing, rank: int, generators, relations: IdealHandle | None = None,
                 shifts=None):
        self.ring = ring
        self.rank = rank
        self.generators = tuple(tuple(v) for v in generators)
        for v in self.generators:
            if len(v) != rank:
                raise ValueError(f"vector of length {len(v)} in a rank-{rank} module")
        self.relations = relations
        self.shifts = tuple(shifts) if shifts is not None else (0,) * rank

    def _input_dicts(self) -> list[dict]:
        codec = self.ring.codec
        out = [_vector_to_dict(v, codec) for v in self.generators]
        if self.relations is not None:
            for g in self.relations.gb:
                for c in range(self.rank):
                    off = codec.comp_offset(c)
                    out.append({k + off: v for k, v in g._t.items()})
        return [d for d in out if d]

    @cached_property
    def _gb_dicts(self) -> list[dict]:
        return _groebner_dicts(self.ring, self._input_dicts(), self.rank, self.shifts)

    @property
    def gb(self) -> list[list[Polynomial]]:
        return [_dict_to_vector(d, self.ring, self.rank) for d in self._gb_dicts]

    @cached_property
    def _basis_index(self):
        eng = _Engine(self.ring, self.shifts)
        return eng, eng.index(self._gb_dicts)

    def reduce_dict(self, d: dict) -> dict:
        eng, basis = self._basis_index
        return eng.reduce(d, basis)

    def reduce(self, vec) -> list[Polynomial]:
        d = self.reduce_dict(_vector_to_dict(vec, self.ring.codec))
        return _dict_to_vector(d, self.ring, self.rank)

    def contains(self, vec) -> bool:
        return not self.reduce_dict(_vector_to_dict(vec, self.ring.codec))

    def leading_monomials(self) -> list[list[tuple[int, ...]]]:
        codec = self.ring.codec
        comps: list[list] = [[] for _ in range(self.rank)]
        for d in self._gb_dicts:
            lm = max(d)
            comps[codec.component(lm)].append(codec.decode(lm))
        return comps

    def colength(self) -> int:
        """Length of S^rank / M, summed over components."""
        return sum(count_standard_monomials(g, self.ring.nvars) for g in self.leading_monomials())

    def hilbert_series(self) -> HilbertSeries:
        return HilbertSeries.of_module(self.leading_monomials(), self.shifts, self.ring.nvars)


def _column_degrees(M: PolyMatrix, row_shifts) -> list[int]:
    out = []
    for col in M.columns():
        degs = [e.degree() + s for e, s in zip(col, row_shifts) if e]
        out.append(max(degs) if degs else 0)
    return out


def syzygies(M: PolyMatrix, relations: IdealHandle | None = None, row_shifts=None) -> PolyMatrix:
    """Generators of {v : M v = 0 modulo J S^rows}, entries reduced modulo J.

    Computed by eliminating the top block of a GB of the columns of M stacked
    over an identity, with J relations added in every component.
    """
    ring = M.ring
    r, c = M.rows, M.cols
    if c == 0:
        return PolyMatrix.zeros(ring, 0, 0)
    row_shifts = list(row_shifts) if row_shifts is not None else [0] * r
    col_deg = _column_degrees(M, row_shifts)
    gens = []
    one = ring.one()
    zero = ring.zero()
    for j, col in enumerate(M.columns()):
        gens.append(list(col) + [one if k == j else zero for k in range(c)])
    mod = ModuleGB(ring, r + c, gens, relations, shifts=row_shifts + col_deg)
    out = []
    for vec in mod.gb:
        if all(e.is_zero() for e in vec[:r]):
            tail = [relations.reduce(e) if relations is not None else e for e in vec[r:]]
            if any(tail):
                out.append(tail)
    return PolyMatrix.from_columns(ring, out, c)


def lift(M: PolyMatrix, target, relations: IdealHandle | None = None,
         row_shifts=None) -> list[Polynomial]:
    """Return u with M u = target modulo J; raise ValueError if impossible."""
    ring = M.ring
    r, c = M.rows, M.cols
    row_shifts = list(row_shifts) if row_shifts is not None else [0] * r
    col_deg = _column_degrees(M, row_shifts)
    one, zero = ring.one(), ring.zero()
    gens = [list(col) + [one if k == j else zero for k in range(c)]
            for j, col in enumerate(M.columns())]
    mod = ModuleGB(ring, r + c, gens, relations, shifts=row_shifts + col_deg)
    rem = mod.reduce(list(target) + [zero] * c)
    if any(not e.is_zero() for e in rem[:r]):
        raise ValueError("target is not in the image")
    return [-e for e in rem[r:]]
