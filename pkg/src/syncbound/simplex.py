"""Dense tableau simplex for ``max c.x  s.t.  A x <= b, x >= 0`` with ``b >= 0``.

The slack basis is feasible when ``b >= 0``, so no phase one is needed; both
LPs in this package have that form.  Entering variables follow Dantzig's
rule and the solver falls back to Bland's rule after a run of degenerate
pivots, which rules out cycling.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleError, UnboundedError


@dataclass
class LPResult:
    value: float
    x: np.ndarray
    iterations: int


def simplex_max(c, A_ub, b_ub, tol: float = 1e-10, max_iter: int | None = None) -> LPResult:
    c = np.asarray(c, dtype=float)
    A = np.asarray(A_ub, dtype=float)
    b = np.asarray(b_ub, dtype=float)
    m, n = A.shape
    if c.shape != (n,) or b.shape != (m,):
        raise ValueError("shape mismatch between c, A_ub and b_ub")
    if np.any(b < 0):
        raise InfeasibleError("simplex_max requires b_ub >= 0")
    if max_iter is None:
        max_iter = 50 * (m + n) + 100

    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n:n + m] = np.eye(m)
    T[:m, -1] = b
    T[m, :n] = -c
    basis = np.arange(n, n + m)

    degenerate_run = 0
    bland = False
    for it in range(max_iter):
        reduced = T[m, :-1]
        if bland:
            cands = np.flatnonzero(reduced < -tol)
            if cands.size == 0:
                break
            j = cands[0]
        else:
            j = int(np.argmin(reduced))
            if reduced[j] >= -tol:
                break
        col = T[:m, j]
        rows = np.flatnonzero(col > tol)
        if rows.size == 0:
            raise UnboundedError("objective is unbounded")
        ratios = T[rows, -1] / col[rows]
        best = ratios.min()
        ties = rows[ratios <= best + tol * max(1.0, abs(best))]
        r = ties[np.argmin(basis[ties])]
        if T[r, -1] <= tol:
            degenerate_run += 1
            if degenerate_run > 50:
                bland = True
        else:
            degenerate_run = 0
            bland = False
        _pivot(T, r, j)
        basis[r] = j
    else:
        raise RuntimeError(f"simplex did not converge in {max_iter} iterations")

    x = np.zeros(n + m)
    x[basis] = T[:m, -1]
    return LPResult(float(T[m, -1]), x[:n], it)


def _pivot(T, r, j):
    T[r] /= T[r, j]
    col = T[:, j].copy()
    col[r] = 0.0
    nz = np.flatnonzero(col)
    if nz.size:
        T[nz] -= np.outer(col[nz], T[r])
