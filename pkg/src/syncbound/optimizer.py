"""The bucket-count maximization behind the cubic coefficient.

For ``k = n // 2`` and a budget ``0 < rho < n/2`` we maximize

    phi(s) = sum_{r=rho}^{k} min(r^2/4, 1*s_1 + ... + r*s_r)

over ``s >= 0`` with ``sum(s) <= rho``, in two independent ways:

* numerically, as a linear program (``lp_max_phi``);
* analytically, through the upper-bounding function ``psi(beta, gamma)`` of
  the first and last nonzero indices of a maximizer, maximized over a
  quadrilateral in the ``(beta, gamma)`` plane (``maximize_psi``).

Both should approach ``15625/1597536 * n^3``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from numpy.polynomial import Polynomial

from .errors import InfeasibleError, PreconditionError
from .simplex import simplex_max

PHI_CONSTANT = Fraction(15625, 1597536)
BETA_RATIO = Fraction(25, 129)
GAMMA_RATIO = Fraction(125, 258)
FEAS_TOL = 1e-9


def _quarter_square(r: int) -> Fraction:
    return Fraction(r * r, 4)


@dataclass(frozen=True)
class FeasibleTuple:
    """``(s_1, ..., s_k)`` with ``s >= 0`` and ``sum(s) <= rho``.

    Entries may be floats or Fractions; float checks allow ``FEAS_TOL``
    relative slack.
    """

    n: int
    rho: int
    s: tuple

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(self.s))
        if not (0 < self.rho and 2 * self.rho < self.n):
            raise InfeasibleError(f"need 0 < rho < n/2, got rho={self.rho}, n={self.n}")
        if len(self.s) != self.k:
            raise InfeasibleError(f"expected {self.k} coordinates, got {len(self.s)}")
        tol = FEAS_TOL * max(1, self.rho)
        if any(x < -tol for x in self.s):
            raise InfeasibleError("negative coordinate")
        if sum(self.s) > self.rho + tol:
            raise InfeasibleError(f"sum {float(sum(self.s))} exceeds rho = {self.rho}")

    @property
    def k(self) -> int:
        return self.n // 2

    def at(self, r: int):
        """``s_r`` with 1-based ``r``."""
        return self.s[r - 1]

    def prefix(self, r: int):
        """``1*s_1 + ... + r*s_r``."""
        return sum(j * self.s[j - 1] for j in range(1, r + 1))

    def normalized(self, tol: float = 0.0) -> bool:
        """Zero below ``rho`` and every weighted prefix from ``rho`` on within its cap.

        Float tuples coming out of :func:`claim1_normalize` can sit an ulp
        above a cap; pass a small ``tol`` for those.
        """
        if any(self.s[j - 1] != 0 for j in range(1, self.rho)):
            return False
        acc = 0
        for tau in range(1, self.k + 1):
            acc += tau * self.s[tau - 1]
            if tau >= self.rho and acc > _quarter_square(tau) + tol * max(1, tau * tau):
                return False
        return True


def phi(t: FeasibleTuple):
    """``sum_{r=rho}^{k} min(r^2/4, 1s_1 + ... + rs_r)``."""
    total = 0
    acc = 0
    for r in range(1, t.k + 1):
        acc += r * t.s[r - 1]
        if r >= t.rho:
            total += min(_quarter_square(r), acc)
    return total


def phi_linear(t: FeasibleTuple):
    """``sum_{r=rho}^{k} (k - r + 1) r s_r``; equals ``phi`` on normalized tuples."""
    k = t.k
    return sum((k - r + 1) * r * t.s[r - 1] for r in range(t.rho, k + 1))


def claim1_normalize(t: FeasibleTuple) -> FeasibleTuple:
    """Move mass so the tuple becomes normalized without lowering ``phi``.

    First all weight below ``rho`` is folded into ``s_rho`` (same weighted
    prefix, no larger sum).  Then, while some prefix ``tau`` overshoots
    ``tau^2/4``, the excess weight of ``s_tau`` is cut back to the cap and
    carried into ``s_{tau+1}`` (dropped at ``tau = k``).  The first failing
    index strictly increases, so at most ``k`` passes are needed.
    """
    n, rho, k = t.n, t.rho, t.k
    s = [Fraction(x) if isinstance(x, (int, Fraction)) else float(x) for x in t.s]
    head = sum(j * s[j - 1] for j in range(1, rho + 1))
    for j in range(1, rho):
        s[j - 1] = 0 * s[j - 1]
    s[rho - 1] = head / rho if isinstance(head, float) else Fraction(head) / rho

    first = rho
    while True:
        acc = sum(j * s[j - 1] for j in range(1, first))
        bad = None
        for tau in range(first, k + 1):
            acc += tau * s[tau - 1]
            if acc > _quarter_square(tau):
                bad, alpha = tau, acc
                break
        if bad is None:
            break
        shift = alpha / bad - Fraction(bad, 4)
        s[bad - 1] = s[bad - 1] - shift
        if bad != k:
            s[bad] = s[bad] + shift
        first = bad + 1
        if first > k:
            break
    return FeasibleTuple(n, rho, tuple(s))


@dataclass(frozen=True)
class PhiOptimum:
    value: float
    argmax: FeasibleTuple
    beta: int
    gamma: int


def _support(s: Sequence[float], scale: float) -> tuple[int, int]:
    nz = [r for r, x in enumerate(s, start=1) if x > 1e-9 * scale]
    if not nz:
        return 0, 0
    return nz[0], nz[-1]


def lp_max_phi(n: int, rho: int, method: str = "reduced") -> PhiOptimum:
    """Exact maximum of ``phi`` for the given ``n`` and ``rho``.

    ``method="epigraph"`` solves the direct LP with one epigraph variable
    per summand: maximize ``sum t_r`` subject to ``t_r <= r^2/4``,
    ``t_r <= 1s_1 + ... + rs_r``, ``sum(s) <= rho``, ``s >= 0``.

    ``method="reduced"`` solves the equivalent smaller LP over normalized
    tuples in the variables ``x_r = r s_r`` (``r >= rho``): maximize
    ``sum (k - r + 1) x_r`` subject to ``x_rho + ... + x_tau <= tau^2/4`` and
    ``sum x_r / r <= rho``.
    """
    if not (0 < rho and 2 * rho < n):
        raise InfeasibleError(f"need 0 < rho < n/2, got rho={rho}, n={n}")
    k = n // 2
    if method == "reduced":
        rs = np.arange(rho, k + 1, dtype=float)
        p = rs.size
        A = np.vstack([np.tril(np.ones((p, p))), 1.0 / rs])
        b = np.concatenate([rs * rs / 4.0, [float(rho)]])
        c = k - rs + 1.0
        res = simplex_max(c, A, b)
        s = np.zeros(k)
        s[rho - 1:] = res.x / rs
    elif method == "epigraph":
        p = k - rho + 1
        A = np.zeros((2 * p + 1, k + p))
        b = np.zeros(2 * p + 1)
        weights = np.arange(1, k + 1, dtype=float)
        for i, r in enumerate(range(rho, k + 1)):
            A[i, k + i] = 1.0
            b[i] = r * r / 4.0
            A[p + i, :r] = -weights[:r]
            A[p + i, k + i] = 1.0
        A[2 * p, :k] = 1.0
        b[2 * p] = rho
        c = np.concatenate([np.zeros(k), np.ones(p)])
        res = simplex_max(c, A, b)
        s = res.x[:k].copy()
    else:
        raise ValueError(f"unknown method {method!r}")
    s[s < 0] = 0.0
    arg = FeasibleTuple(n, rho, tuple(float(x) for x in s))
    beta, gamma = _support(arg.s, 1.0)
    return PhiOptimum(res.value, arg, beta, gamma)


def psi(beta, gamma, n):
    """``(-2 beta^3 - 4 gamma^3 + 3 gamma^2 n + 6 gamma^2 + 6 gamma + 2) / 24``."""
    num = -2 * beta**3 - 4 * gamma**3 + 3 * gamma**2 * n + 6 * gamma**2 + 6 * gamma + 2
    return Fraction(num, 24) if isinstance(num, int) else num / 24


def quadrilateral(n: float) -> list[tuple[float, float]]:
    """Vertices ``(beta, gamma)`` of the region ``0 <= beta <= gamma <= n/2``,
    ``beta >= 0.4 gamma - 0.6 - 0.2 ln n``, in boundary order."""
    ln = math.log(n)
    return [
        (0.0, 0.0),
        (0.0, 0.5 * ln + 1.5),
        (0.2 * n - 0.2 * ln - 0.6, 0.5 * n),
        (0.5 * n, 0.5 * n),
    ]


def harmonic_constraint_slack(beta, gamma, n) -> float:
    """``beta - (0.25(beta+1) + 0.5(gamma - beta - 2) - 0.25 ln n)``; nonnegative inside."""
    return beta - (0.25 * (beta + 1) + 0.5 * (gamma - beta - 2) - 0.25 * math.log(n))


def _edge_max(p0, p1, n):
    b = Polynomial([p0[0], p1[0] - p0[0]])
    g = Polynomial([p0[1], p1[1] - p0[1]])
    f = (-2 * b**3 - 4 * g**3 + 3 * n * g**2 + 6 * g**2 + 6 * g + 2) / 24
    ts = [0.0, 1.0]
    for root in f.deriv().roots():
        if abs(root.imag) < 1e-12 and 0.0 <= root.real <= 1.0:
            ts.append(float(root.real))
    best = max(ts, key=f)
    return f(best), (b(best), g(best))


def maximize_psi(n: float) -> tuple[float, float, float]:
    """Maximize ``psi`` over the quadrilateral; returns ``(beta, gamma, value)``.

    ``psi`` strictly decreases in ``beta`` for ``beta > 0``, so the maximum
    sits on the boundary; along each edge ``psi`` is a cubic in the edge
    parameter and is maximized over its endpoints and critical points.
    """
    verts = quadrilateral(n)
    if verts[2][0] < 0 or verts[1][1] > 0.5 * n:
        raise PreconditionError(f"region is degenerate for n = {n}")
    best = None
    for i in range(4):
        val, (b, g) = _edge_max(verts[i], verts[(i + 1) % 4], n)
        if best is None or val > best[2]:
            best = (float(b), float(g), float(val))
    return best


def psi_leading_coefficient() -> Fraction:
    """Exact ``n^3`` coefficient of ``psi(25n/129, 125n/258, n)``."""
    a, c = BETA_RATIO, GAMMA_RATIO
    return (-2 * a**3 - 4 * c**3 + 3 * c**2) / 24


def rho_grid(n: int, size: int = 40) -> list[int]:
    hi = (n - 1) // 2
    pts = np.unique(np.round(np.geomspace(1, hi, size)).astype(int))
    return [int(x) for x in pts if 1 <= x <= hi]


def best_over_rho(n: int, size: int = 40) -> tuple[int, PhiOptimum]:
    """Scan ``rho`` on a geometric grid, refine between the grid neighbours of
    the best point by ternary search, then check a +-2 neighbourhood."""
    hi = (n - 1) // 2
    cache: dict[int, PhiOptimum] = {}

    def val(r):
        if r not in cache:
            cache[r] = lp_max_phi(n, r)
        return cache[r].value

    grid = rho_grid(n, size)
    vals = [val(r) for r in grid]
    i = int(np.argmax(vals))
    lo = grid[i - 1] if i > 0 else grid[0]
    up = grid[i + 1] if i + 1 < len(grid) else grid[-1]
    while up - lo > 4:
        m1 = lo + (up - lo) // 3
        m2 = up - (up - lo) // 3
        if val(m1) < val(m2):
            lo = m1
        else:
            up = m2
    centre = max(range(lo, up + 1), key=val)
    while True:
        around = [r for r in range(centre - 2, centre + 3) if 1 <= r <= hi]
        nxt = max(around, key=val)
        if nxt == centre:
            break
        centre = nxt
    best = max(cache, key=lambda r: cache[r].value)
    return best, cache[best]


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    rho: int
    lp_value: float
    lp_ratio: float
    psi_beta: float
    psi_gamma: float
    psi_value: float
    psi_ratio: float
    gap: float  # psi_value - lp_value


def convergence_report(n_values) -> tuple[list[ConvergenceRow], float]:
    """Per-``n`` rows plus the coefficient ``7/48 + 2 * ratio`` at the last ``n``."""
    rows = []
    for n in n_values:
        if n < 100:
            raise PreconditionError("convergence_report needs n >= 100")
        rho, opt = best_over_rho(n)
        b, g, pv = maximize_psi(n)
        rows.append(ConvergenceRow(n, rho, opt.value, opt.value / n**3, b, g, pv, pv / n**3, pv - opt.value))
    coefficient = 7 / 48 + 2 * rows[-1].lp_ratio if rows else float("nan")
    return rows, coefficient
