"""Independent checks that never touch a Groebner basis.

* ``dense_colength``: dim_k S/I from ranks of Macaulay matrices, degree by degree.
* ``staircase_count``: brute-force lattice enumeration for monomial ideals.
* ``degreewise_homology``: dim_k H_i(C)_t from ranks of the differentials
  restricted to each degree, with J handled by spanning sets of J_t.
"""
from __future__ import annotations

from itertools import combinations_with_replacement, product

import numpy as np

from .linalg import rank_mod_p


def monomials_of_degree(nvars: int, t: int) -> list[tuple[int, ...]]:
    if t < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), t):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return out


def _times(mono, poly_dict):
    return {tuple(a + b for a, b in zip(mono, e)): c for e, c in poly_dict.items()}


def dense_colength(ring, generators, max_degree: int = 200) -> int:
    """dim_k S/I for homogeneous generators, stopping once I_t = S_t."""
    gens = [g.as_dict() for g in generators if g]
    degs = []
    for g in generators:
        if g:
            ds = g.degrees()
            if len(ds) != 1:
                raise ValueError(f"{g} is not homogeneous")
            degs.append(ds.pop())
    m, p = ring.nvars, ring.p
    total = 0
    for t in range(max_degree + 1):
        basis = monomials_of_degree(m, t)
        index = {e: k for k, e in enumerate(basis)}
        rows = []
        for g, dg in zip(gens, degs):
            for mono in monomials_of_degree(m, t - dg):
                row = np.zeros(len(basis), dtype=np.int64)
                for e, c in _times(mono, g).items():
                    row[index[e]] = c
                rows.append(row)
        rank = rank_mod_p(np.array(rows), p) if rows else 0
        if rank == len(basis):
            return total
        total += len(basis) - rank
    raise ValueError(f"quotient not finite up to degree {max_degree}")


def staircase_count(generators, nvars: int) -> int:
    """Count exponent vectors divisible by no generator (box enumeration)."""
    gens = [tuple(g) for g in generators]
    bounds = []
    for i in range(nvars):
        pure = [g[i] for g in gens if g[i] and all(g[j] == 0 for j in range(nvars) if j != i)]
        if not pure:
            raise ValueError(f"variable {i} has no pure power")
        bounds.append(min(pure))
    count = 0
    for pt in product(*(range(b) for b in bounds)):
        if not any(all(a <= b for a, b in zip(g, pt)) for g in gens):
            count += 1
    return count


class _GradedFree:
    """Coordinates of (F)_t = (+)_c S_{t - shift_c} for a graded free S-module."""

    def __init__(self, nvars: int, shifts, t: int):
        self.coords = []
        for c, s in enumerate(shifts):
            for mono in monomials_of_degree(nvars, t - s):
                self.coords.append((c, mono))
        self.index = {x: k for k, x in enumerate(self.coords)}

    def __len__(self):
        return len(self.coords)


def _relation_rows(R, target: _GradedFree, shifts, t: int) -> list[np.ndarray]:
    rows = []
    for g in R.relations:
        gd = g.as_dict()
        (dg,) = g.degrees()
        for c, s in enumerate(shifts):
            for mono in monomials_of_degree(R.nvars, t - s - dg):
                row = np.zeros(len(target), dtype=np.int64)
                for e, v in _times(mono, gd).items():
                    row[target.index[(c, e)]] = v
                rows.append(row)
    return rows


def _image_rows(R, d, src: _GradedFree, target: _GradedFree) -> list[np.ndarray]:
    cols = [[e.as_dict() for e in col] for col in d.columns()]
    rows = []
    for c, mono in src.coords:
        row = np.zeros(len(target), dtype=np.int64)
        for r, entry in enumerate(cols[c]):
            for e, v in _times(mono, entry).items():
                k = target.index[(r, e)]
                row[k] = (row[k] + v) % R.p
        rows.append(row)
    return rows


def _rank(rows, width, p) -> int:
    if not rows or width == 0:
        return 0
    return rank_mod_p(np.array(rows), p)


def degreewise_homology(C, i: int, top_degree: int | None = None) -> dict[int, int]:
    """dim_k H_i(C)_t for every degree t up to ``top_degree``.

    Without an explicit bound the scan runs to twice the largest shift among
    F_i and F_{i+1} plus the number of variables.
    """
    R = C.ring
    p, m = R.p, R.nvars
    sh_i = C.degrees[i]
    sh_prev = C.degrees[i - 1] if i >= 1 else ()
    sh_next = C.degrees[i + 1] if i + 1 <= C.length else ()
    if top_degree is None:
        top_degree = 2 * max(list(sh_i) + list(sh_next) + [0]) + m
    out = {}
    low = min(sh_i) if sh_i else 0
    for t in range(low, top_degree + 1):
        A = _GradedFree(m, sh_i, t)
        if not len(A):
            continue
        JA = _relation_rows(R, A, sh_i, t)
        if i >= 1:
            P = _GradedFree(m, sh_prev, t)
            W = _relation_rows(R, P, sh_prev, t)
            img = _image_rows(R, C.differential(i), A, P)
            ker_part = len(A) - _rank(img + W, len(P), p) + _rank(W, len(P), p)
        else:
            ker_part = len(A)
        if i + 1 <= C.length:
            B = _GradedFree(m, sh_next, t)
            img_next = _image_rows(R, C.differential(i + 1), B, A)
        else:
            img_next = []
        h = ker_part - _rank(img_next + JA, len(A), p)
        if h:
            out[t] = h
    return out


def degreewise_homology_length(C, i: int, top_degree: int | None = None) -> int:
    return sum(degreewise_homology(C, i, top_degree).values())
