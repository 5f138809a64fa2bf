"""Breadth-first search over the images ``Q.w`` and the rank profile built on it.

For an automaton with ``n`` states the profile records ``lam[i]``, the
length of a shortest word of corank at least ``i``, the consecutive gaps
``delta[j] = lam[j+1] - lam[j]``, the first corank ``rho`` whose gap exceeds
``n``, and the bucket counts ``s[r] = #{j <= rho : delta[j] in {2r-1, 2r}}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .automaton import Automaton, StateSet, Word, is_synchronizing
from .errors import BudgetExceededError, NotSynchronizingError

DEFAULT_BUDGET = 1 << 22


class _Infinity:
    """Marker for an unreachable corank.  Orders above every int, refuses arithmetic."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("syncbound.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


class ImageSearch:
    """Result of a BFS over ``{S.w}``: shortest depth and least witness per image.

    Images are keyed by bitmask.  ``order`` lists the images in discovery
    order, which is also increasing ``(depth, witness)`` in shortlex order.
    """

    def __init__(self, automaton: Automaton, root: int):
        self.automaton = automaton
        self.root = root
        self.order: list[int] = [root]
        self._parent: dict[int, tuple[int, int] | None] = {root: None}
        self._depth: dict[int, int] = {root: 0}

    def __len__(self):
        return len(self.order)

    def __contains__(self, image) -> bool:
        return _as_mask(image) in self._depth

    def depth(self, image) -> int:
        return self._depth[_as_mask(image)]

    def word(self, image) -> Word:
        mask = _as_mask(image)
        letters = []
        link = self._parent[mask]
        while link is not None:
            mask, a = link
            letters.append(a)
            link = self._parent[mask]
        return tuple(reversed(letters))

    def items(self) -> Iterator[tuple[StateSet, int, Word]]:
        n = self.automaton.n
        for mask in self.order:
            yield StateSet(mask, n), self._depth[mask], self.word(mask)


def _as_mask(image) -> int:
    return image.mask if isinstance(image, StateSet) else image


def _search(A: Automaton, root: int, budget: int, stop=None) -> ImageSearch:
    """BFS from ``root``.  Stops early once ``stop(mask)`` is true for a discovered image.

    Letters are tried in index order and the queue is FIFO, so the first
    discovery of each image uses its shortlex-least shortest word.
    """
    res = ImageSearch(A, root)
    if stop is not None and stop(root):
        return res
    parent, depth, order = res._parent, res._depth, res.order
    image, m = A.image, A.m
    head = 0
    while head < len(order):
        cur = order[head]
        head += 1
        d = depth[cur] + 1
        for a in range(m):
            nxt = image(cur, a)
            if nxt in depth:
                continue
            parent[nxt] = (cur, a)
            depth[nxt] = d
            order.append(nxt)
            if len(order) > budget:
                raise BudgetExceededError(f"image search exceeded {budget} nodes")
            if stop is not None and stop(nxt):
                return res
    return res


def image_bfs(A: Automaton, budget: int = DEFAULT_BUDGET) -> ImageSearch:
    """Exhaustive BFS over all images ``Q.w`` reachable from ``Q``."""
    return _search(A, A.full_mask, budget)


@dataclass(frozen=True)
class RankProfile:
    n: int
    lam: tuple[int, ...]
    rho: int
    delta: tuple  # ints, last entry may be INF
    s: tuple[int, ...]  # s[r - 1] is the count for bucket r, r = 1..n // 2
    witnesses: tuple[Word, ...]  # witnesses[i] has length lam[i] and corank >= i

    @property
    def k(self) -> int:
        return self.n // 2

    def bucket(self, r: int) -> int:
        """``s_r``; zero for ``r`` outside ``1..n // 2``."""
        if 1 <= r <= self.k:
            return self.s[r - 1]
        return 0

    def lam_ext(self, i: int):
        """``lam[i]`` with ``lam[n] = INF``."""
        return INF if i >= self.n else self.lam[i]

    def weighted_prefix(self, r: int) -> int:
        """``1*s_1 + 2*s_2 + ... + r*s_r``."""
        return sum(j * self.bucket(j) for j in range(1, r + 1))


def gap_bucket(gap) -> int | None:
    """Bucket ``r`` with ``gap in {2r-1, 2r}``; None for zero or infinite gaps."""
    if gap is INF or gap <= 0:
        return None
    return (gap + 1) // 2


def profile_from_lambdas(lam, witnesses=None) -> RankProfile:
    """Derive ``delta``, ``rho`` and buckets from a full lambda sequence."""
    lam = tuple(lam)
    n = len(lam)
    k = n // 2
    rho = None
    for i in range(n):
        nxt = INF if i + 1 == n else lam[i + 1]
        if nxt is INF or nxt - lam[i] > n:
            rho = i
            break
    delta = []
    for j in range(rho + 1):
        nxt = INF if j + 1 == n else lam[j + 1]
        delta.append(INF if nxt is INF else nxt - lam[j])
    s = [0] * k
    for g in delta:
        r = gap_bucket(g)
        if r is not None and r <= k:
            s[r - 1] += 1
    if witnesses is None:
        witnesses = ()
    return RankProfile(n, lam, rho, tuple(delta), tuple(s), tuple(witnesses))


def rank_profile(A: Automaton, budget: int = DEFAULT_BUDGET) -> RankProfile:
    """Exact rank profile of a synchronizing automaton."""
    n = A.n
    if not is_synchronizing(A):
        raise NotSynchronizingError("automaton is not synchronizing")
    search = _search(A, A.full_mask, budget, stop=lambda mask: mask & (mask - 1) == 0)
    lam: list[int | None] = [None] * n
    wit: list[int | None] = [None] * n
    # discovery order is by depth, so the first image of size <= n - i fixes lam[i]
    filled = 0
    for mask in search.order:
        size = mask.bit_count()
        for i in range(n - size, -1, -1):
            if lam[i] is not None:
                break
            lam[i] = search.depth(mask)
            wit[i] = mask
            filled += 1
        if filled == n:
            break
    if filled < n:
        raise NotSynchronizingError("no rank-one image reachable")
    witnesses = tuple(search.word(mask) for mask in wit)
    return profile_from_lambdas(lam, witnesses)


def exact_rt(A: Automaton, budget: int = DEFAULT_BUDGET) -> tuple[int, Word]:
    """Reset threshold and the shortlex-least shortest reset word."""
    prof = rank_profile(A, budget)
    return prof.lam[-1], prof.witnesses[-1]
