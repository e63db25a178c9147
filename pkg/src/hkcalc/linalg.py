"""Dense linear algebra over F_p with numpy int64 arrays (p < 2^31)."""
from __future__ import annotations

import numpy as np


def row_echelon(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` mod p and its pivot columns."""
    m = np.array(a, dtype=np.int64) % p
    if m.ndim != 2:
        raise ValueError("expected a 2-d array")
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = m[r] * pow(int(m[r, c]), -1, p) % p
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank_mod_p(a, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(row_echelon(a, p)[1])


def nullspace_mod_p(a, p: int) -> np.ndarray:
    """Basis of {x : a x = 0} as rows."""
    a = np.asarray(a, dtype=np.int64)
    rows, cols = a.shape
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    m, pivots = row_echelon(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for r, pc in enumerate(pivots):
            v[pc] = -m[r, f] % p
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), cols)
