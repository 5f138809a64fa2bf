"""Evaluate reset-threshold bounds on a concrete automaton, in exact arithmetic."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .automaton import Automaton, Word, is_synchronizing
from .errors import BudgetExceededError, NotSynchronizingError
from .spectrum import DEFAULT_BUDGET, RankProfile, rank_profile
from .synthesis import SynthesisTrace, frankl_budget, synthesize

# limiting constant of the optimization bound and the resulting cubic coefficient
PHI_CONSTANT = Fraction(15625, 1597536)
CUBIC_COEFFICIENT = Fraction(7, 48) + 2 * PHI_CONSTANT


def cerny_bound(n: int) -> int:
    return (n - 1) ** 2


def pin_frankl_budget(n: int) -> int:
    """``sum_{r=0}^{n-2} (r+1)(r+2)/2``, equal to ``(n^3 - n)/6``."""
    return sum(frankl_budget(r) for r in range(n - 1))


def corollary6_value(profile: RankProfile) -> Fraction:
    """``7n^3/48 + 2 * sum_{r=rho}^{n//2} min(r^2/4, 1s_1+...+rs_r) + 3n^2``."""
    n = profile.n
    total = Fraction(0)
    for r in range(profile.rho, n // 2 + 1):
        total += min(Fraction(r * r, 4), Fraction(profile.weighted_prefix(r)))
    return Fraction(7 * n**3, 48) + 2 * total + 3 * n * n


@dataclass(frozen=True)
class CertificateReport:
    n: int
    m: int
    rt_exact: int | None
    rt_word: Word | None
    rt_constructed: int
    cerny_bound: int
    pin_frankl_bound: int
    corollary6_value: Fraction
    flags: dict
    trace: SynthesisTrace

    @property
    def ok(self) -> bool:
        return all(self.flags.values())


def certify(A: Automaton, with_exact: bool = True, budget: int = DEFAULT_BUDGET) -> CertificateReport:
    """Compare exact and constructed reset lengths against the bounds.

    The constructed word needs the rank profile, so the search budget
    applies to it too; ``rt_exact`` is dropped only when ``with_exact`` is
    false.  A false flag is a bug or a counterexample; it is reported, and
    callers are expected to fail loudly on ``report.ok``.
    """
    if not is_synchronizing(A):
        raise NotSynchronizingError("automaton is not synchronizing")
    n = A.n
    prof = rank_profile(A, budget)
    trace = synthesize(A, budget, profile=prof) if n >= 2 else None
    constructed = len(trace.final_word) if trace else 0
    cb, pf, c6 = cerny_bound(n), pin_frankl_budget(n), corollary6_value(prof)
    flags = {
        "constructed_le_pin_frankl": constructed <= pf,
        "constructed_le_corollary6": constructed <= c6,
        "trace_budgets_ok": trace.all_ok if trace else True,
    }
    rt = word = None
    if with_exact:
        rt, word = prof.lam[-1], prof.witnesses[-1]
        flags["exact_le_cerny"] = rt <= cb
        flags["exact_le_pin_frankl"] = rt <= pf
        flags["exact_le_corollary6"] = rt <= c6
        flags["exact_le_constructed"] = rt <= constructed
    return CertificateReport(n, A.m, rt, word, constructed, cb, pf, c6, flags, trace)


def bound_table(n_values) -> list[dict]:
    """Rows of ``(n-1)^2`` and the cumulative compression budget, plus a coefficient row."""
    rows = []
    for n in n_values:
        if n < 2:
            raise ValueError("bound_table needs n >= 2")
        rows.append({"n": n, "cerny": cerny_bound(n), "pin_frankl": pin_frankl_budget(n)})
    rows.append({
        "n": None,
        "coefficient": CUBIC_COEFFICIENT,
        "coefficient_decimal": f"{float(CUBIC_COEFFICIENT):.6f}",
        "pin_frankl_coefficient": f"{1 / 6:.6f}",
    })
    return rows
