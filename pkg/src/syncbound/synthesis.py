"""Constructive reset-word synthesis with per-step length guarantees.

The pipeline starts from the shortest word of corank ``rho`` (length below
``n**2``), raises the corank one step at a time while ``2r <= n - 2`` using
the cheaper of two moves, then finishes with compression steps:

* compression (Pin-Frankl): append a shortest word ``w`` with
  ``|Q.u.w| < |Q.u|``; ``|w| <= (r+1)(r+2)/2``.
* prepend step: with ``A`` the singleton kernel of ``u`` and ``v`` a
  rank-minimal word of length ``lam``, find ``w`` with ``A`` not inside
  ``Q.v.w`` (``|w| <= 2r``) and return ``v.w.u``; its corank exceeds ``r``.

Every realized step is compared against its budget, and a miss raises
:class:`GuaranteeViolation`.
"""
from __future__ import annotations

from dataclasses import dataclass

from .automaton import Automaton, StateSet, Word, corank, singleton_kernel
from .errors import GuaranteeViolation, PreconditionError, PremiseViolatedError
from .spectrum import DEFAULT_BUDGET, INF, RankProfile, _search, rank_profile


def frankl_budget(r: int) -> int:
    return (r + 1) * (r + 2) // 2


def shitov_budget(profile: RankProfile, r: int) -> int:
    """``2(1s_1 + ... + r s_r) + 2r``."""
    return 2 * profile.weighted_prefix(r) + 2 * r


def _first_hit(A: Automaton, root: int, hit, budget: int) -> Word | None:
    search = _search(A, root, budget, stop=hit)
    last = search.order[-1]
    return search.word(last) if hit(last) else None


def escape_word(
    Aset: StateSet, S: StateSet, A: Automaton, budget: int = DEFAULT_BUDGET, allow_shrink: bool = True
) -> Word:
    """Shortest word ``w`` with ``Aset`` not inside ``S.w`` or ``|S.w| < |S|``.

    When ``Aset`` is a proper nonempty subset of ``S`` and some word moves
    ``S`` off ``Aset``, the result has length at most ``n - |Aset|``.  With
    ``allow_shrink=False`` only the first condition counts.
    """
    if not Aset.mask:
        raise PreconditionError("Aset must be nonempty")
    amask, smask = Aset.mask, S.mask
    size = smask.bit_count()

    def hit(img):
        return amask & ~img or (allow_shrink and img.bit_count() < size)

    w = _first_hit(A, smask, hit, budget)
    if w is None:
        raise PremiseViolatedError("no word moves S off Aset or shrinks it")
    if amask & ~smask == 0 and amask != smask and len(w) > A.n - len(Aset):
        if escape_premise(Aset, S, A, budget):
            raise GuaranteeViolation(
                f"escape word of length {len(w)} exceeds n - |Aset| = {A.n - len(Aset)}"
            )
    return w


def escape_premise(Aset: StateSet, S: StateSet, A: Automaton, budget: int = DEFAULT_BUDGET) -> bool:
    """Whether some word ``w`` gives ``Aset`` not inside ``S.w``."""
    amask = Aset.mask
    return _first_hit(A, S.mask, lambda img: amask & ~img, budget) is not None


def compressing_word(u: Word, A: Automaton, budget: int = DEFAULT_BUDGET) -> Word | None:
    img = A.image_word(A.full_mask, u)
    size = img.bit_count()
    return _first_hit(A, img, lambda x: x.bit_count() < size, budget)


def frankl_step(u, A: Automaton, budget: int = DEFAULT_BUDGET) -> Word:
    """Append a shortest word that lowers the rank of ``u``."""
    u = A.check_word(u)
    r = corank(u, A)
    if r > A.n - 2:
        raise PreconditionError(f"corank {r} exceeds n - 2 = {A.n - 2}")
    w = compressing_word(u, A, budget)
    if w is None:
        raise PremiseViolatedError("no word compresses Q.u")
    if len(w) > frankl_budget(r):
        raise GuaranteeViolation(f"compression of length {len(w)} exceeds {frankl_budget(r)} at corank {r}")
    return u + w


def shitov_step(u, v, A: Automaton, budget: int = DEFAULT_BUDGET, check_range: bool = True) -> Word:
    """Return ``v.w.u`` with ``w`` an escape word from ``Q.v`` off the singleton kernel of ``u``.

    The caller guarantees that ``v`` has minimal rank among all words of
    length at most ``len(v) + 2r``.  The corank of ``u`` must lie in
    ``[1, n/2 - 1]``; ``check_range=False`` only requires ``r >= 1`` and
    still enforces every length and corank guarantee.
    """
    u = A.check_word(u)
    v = A.check_word(v)
    n = A.n
    r = corank(u, A)
    if r < 1 or (check_range and 2 * r > n - 2):
        raise PreconditionError(f"corank {r} outside [1, n/2 - 1] for n = {n}")
    kernel = singleton_kernel(u, A)
    if len(kernel) < n - 2 * r or not kernel.mask:
        raise GuaranteeViolation(f"singleton kernel has {len(kernel)} < n - 2r = {n - 2 * r} states")
    Qv = StateSet(A.image_word(A.full_mask, v), n)
    w = escape_word(kernel, Qv, A, budget)
    if len(w) > 2 * r:
        raise GuaranteeViolation(f"escape word of length {len(w)} exceeds 2r = {2 * r}")
    out = v + w + u
    if len(out) > len(u) + len(v) + 2 * r:
        raise GuaranteeViolation("prepend step exceeds l + lam + 2r")
    if corank(out, A) < r + 1:
        raise GuaranteeViolation(f"prepend step did not raise corank above {r}")
    return out


@dataclass(frozen=True)
class Step:
    kind: str  # "initial", "frankl", "shitov" or "final-frankl"
    r_in: int
    increment: int
    budget: int  # n**2 for the initial step
    length: int
    r_out: int
    bound_ok: bool
    # (kind, increment, budget, r_out) of every candidate evaluated at this step
    candidates: tuple = ()


@dataclass(frozen=True)
class SynthesisTrace:
    n: int
    steps: tuple[Step, ...]
    final_word: Word

    @property
    def bound_ok(self) -> tuple[bool, ...]:
        return tuple(s.bound_ok for s in self.steps)

    @property
    def all_ok(self) -> bool:
        return all(self.bound_ok)


def shitov_pivot(profile: RankProfile, r: int) -> int:
    """Smallest index ``tau`` with ``delta[tau] > 2r``."""
    for tau, gap in enumerate(profile.delta):
        if gap is INF or gap > 2 * r:
            return tau
    raise AssertionError("delta[rho] always exceeds n")


def synthesize(
    A: Automaton,
    budget: int = DEFAULT_BUDGET,
    profile: RankProfile | None = None,
    start=None,
) -> SynthesisTrace:
    """Build a reset word and record every step against its budget.

    By default the pipeline starts from the shortest word of corank ``rho``.
    On small random automata ``rho`` is usually ``n - 1`` already, so
    ``start`` lets callers begin from any word (``()`` runs the whole
    corank-raising loop); the initial step's ``n**2`` check then applies
    to that word.
    """
    n = A.n
    if n < 2:
        raise PreconditionError("synthesis needs n >= 2")
    prof = profile if profile is not None else rank_profile(A, budget)
    u = prof.witnesses[prof.rho] if start is None else A.check_word(start)
    r = corank(u, A)
    steps = [Step("initial", 0, len(u), n * n, len(u), r, len(u) < n * n)]

    while 2 * r <= n - 2:
        cand = frankl_step(u, A, budget)
        kind, cited = "frankl", frankl_budget(r)
        seen = [(kind, len(cand) - len(u), cited, corank(cand, A))]
        if r >= 1:
            tau = shitov_pivot(prof, r)
            alt = shitov_step(u, prof.witnesses[tau], A, budget)
            seen.append(("shitov", len(alt) - len(u), shitov_budget(prof, r), corank(alt, A)))
            # ties keep the compression step
            if len(alt) < len(cand):
                cand, kind, cited = alt, "shitov", shitov_budget(prof, r)
        r_out = corank(cand, A)
        inc = len(cand) - len(u)
        ok = inc <= cited and r_out > r
        if kind == "shitov":
            ok = ok and len(cand) <= len(u) + prof.lam[tau] + 2 * r
        steps.append(Step(kind, r, inc, cited, len(cand), r_out, ok, tuple(seen)))
        u, r = cand, r_out

    while r < n - 1:
        cand = frankl_step(u, A, budget)
        r_out = corank(cand, A)
        inc = len(cand) - len(u)
        cited = frankl_budget(r)
        steps.append(Step("final-frankl", r, inc, cited, len(cand), r_out, inc <= cited and r_out > r))
        u, r = cand, r_out

    return SynthesisTrace(n, tuple(steps), u)

