"""Complete deterministic automata, state subsets as bitmasks, and word actions.

States and letters are dense 0-based indices.  A subset of states is an
``int`` bitmask internally (bit ``q`` set iff ``q`` is a member); the public
:class:`StateSet` wraps one together with the ambient state count.  Words are
plain tuples of letter indices.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InvalidWordError

Word = tuple[int, ...]

_CHUNK = 8
_CHUNK_MASK = (1 << _CHUNK) - 1


def _popcount(mask: int) -> int:
    return mask.bit_count()


def _members(mask: int):
    q = 0
    while mask:
        if mask & 1:
            yield q
        mask >>= 1
        q += 1


@dataclass(frozen=True, slots=True)
class StateSet:
    """An immutable subset of ``range(n)`` stored as a bitmask."""

    mask: int
    n: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"mask has members outside range({self.n})")

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> StateSet:
        mask = 0
        for q in members:
            if not 0 <= q < n:
                raise ValueError(f"state {q} out of range({n})")
            mask |= 1 << q
        return cls(mask, n)

    @classmethod
    def full(cls, n: int) -> StateSet:
        return cls((1 << n) - 1, n)

    def __len__(self) -> int:
        return _popcount(self.mask)

    def __iter__(self):
        return _members(self.mask)

    def __contains__(self, q) -> bool:
        return isinstance(q, int) and 0 <= q < self.n and bool(self.mask >> q & 1)

    def issubset(self, other: StateSet) -> bool:
        return self.mask & ~other.mask == 0

    def __le__(self, other: StateSet) -> bool:
        return self.issubset(other)

    def __lt__(self, other: StateSet) -> bool:
        return self.issubset(other) and self.mask != other.mask

    def __or__(self, other: StateSet) -> StateSet:
        return StateSet(self.mask | other.mask, self.n)

    def __and__(self, other: StateSet) -> StateSet:
        return StateSet(self.mask & other.mask, self.n)

    def __repr__(self):
        return "{" + ", ".join(map(str, self)) + "}"


@dataclass(frozen=True)
class Automaton:
    """Complete DFA: ``delta[q][a]`` is the state reached from ``q`` by letter ``a``."""

    delta: tuple[tuple[int, ...], ...]
    _tables: tuple = field(init=False, repr=False, compare=False)

    def __init__(self, delta: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in delta)
        if not rows:
            raise ValueError("automaton needs at least one state")
        m = len(rows[0])
        if m == 0:
            raise ValueError("automaton needs at least one letter")
        n = len(rows)
        for q, row in enumerate(rows):
            if len(row) != m:
                raise ValueError(f"row {q} has {len(row)} entries, expected {m}")
            for x in row:
                if not 0 <= x < n:
                    raise ValueError(f"state index {x} out of range in row {q}")
        object.__setattr__(self, "delta", rows)
        object.__setattr__(self, "_tables", _build_tables(rows, n, m))

    @property
    def n(self) -> int:
        return len(self.delta)

    @property
    def m(self) -> int:
        return len(self.delta[0])

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def step(self, q: int, a: int) -> int:
        return self.delta[q][a]

    def image(self, mask: int, a: int) -> int:
        """Image of the bitmask ``mask`` under letter ``a``."""
        tabs = self._tables[a]
        out = 0
        i = 0
        while mask:
            out |= tabs[i][mask & _CHUNK_MASK]
            mask >>= _CHUNK
            i += 1
        return out

    def image_word(self, mask: int, word: Iterable[int]) -> int:
        for a in word:
            mask = self.image(mask, a)
        return mask

    def check_word(self, word: Iterable[int]) -> Word:
        w = tuple(word)
        for a in w:
            if not isinstance(a, int) or not 0 <= a < self.m:
                raise InvalidWordError(f"letter {a!r} out of range({self.m})")
        return w


def _build_tables(rows, n, m):
    # tables[a][chunk][bits] = image of the states encoded by `bits` in that chunk
    nchunks = (n + _CHUNK - 1) // _CHUNK
    tables = []
    for a in range(m):
        per_chunk = []
        for c in range(nchunks):
            base = c * _CHUNK
            width = min(_CHUNK, n - base)
            singles = [1 << rows[base + i][a] for i in range(width)]
            tab = [0] * (1 << width)
            for bits in range(1, 1 << width):
                low = bits & -bits
                tab[bits] = tab[bits ^ low] | singles[low.bit_length() - 1]
            per_chunk.append(tuple(tab))
        tables.append(tuple(per_chunk))
    return tuple(tables)


def format_word(word: Sequence[int], m: int) -> str:
    """Letters ``a, b, c, ...`` when ``m <= 26``, otherwise an index list."""
    if m <= 26:
        return "".join(chr(ord("a") + x) for x in word)
    return "[" + ",".join(map(str, word)) + "]"


def parse_word(text: str, m: int) -> Word:
    text = text.strip()
    if text.startswith("["):
        body = text.strip("[]").strip()
        letters = tuple(int(x) for x in body.split(",")) if body else ()
    else:
        letters = tuple(ord(ch) - ord("a") for ch in text)
    for a in letters:
        if not 0 <= a < m:
            raise InvalidWordError(f"letter {a} out of range({m})")
    return letters


def apply_word(S: StateSet, w: Sequence[int], A: Automaton) -> StateSet:
    """Return ``S.w``, the set of images of members of ``S`` under ``w``."""
    if S.n != A.n:
        raise ValueError("state set and automaton disagree on n")
    w = A.check_word(w)
    return StateSet(A.image_word(S.mask, w), A.n)


def rank(w: Sequence[int], A: Automaton) -> int:
    return _popcount(A.image_word(A.full_mask, A.check_word(w)))


def corank(w: Sequence[int], A: Automaton) -> int:
    """``n - |Q.w|``."""
    return A.n - rank(w, A)


def preimages(u: Sequence[int], A: Automaton) -> dict[int, int]:
    """Map each state of ``Q.u`` to the bitmask of its preimage under ``u``."""
    u = A.check_word(u)
    blocks: dict[int, int] = {}
    for q in range(A.n):
        t = q
        for a in u:
            t = A.delta[t][a]
        blocks[t] = blocks.get(t, 0) | (1 << q)
    return blocks


def singleton_kernel(u: Sequence[int], A: Automaton) -> StateSet:
    """Union of the preimages ``sigma.u^-1`` that contain exactly one state.

    If ``u`` has corank ``r`` the result has at least ``n - 2r`` members: the
    ``n - r`` preimage blocks partition ``Q`` and every non-singleton block
    uses up at least two states.
    """
    mask = 0
    for block in preimages(u, A).values():
        if block & (block - 1) == 0:
            mask |= block
    return StateSet(mask, A.n)


def is_synchronizing(A: Automaton) -> bool:
    """Pairwise-merge criterion, by backward BFS on the pair graph."""
    n, m = A.n, A.m
    if n == 1:
        return True
    delta = A.delta

    def pid(p, q):
        return p * n + q if p < q else q * n + p

    rev: dict[int, list[int]] = {}
    merged = set()
    for p in range(n):
        for q in range(p + 1, n):
            here = p * n + q
            for a in range(m):
                x, y = delta[p][a], delta[q][a]
                if x == y:
                    merged.add(here)
                else:
                    rev.setdefault(pid(x, y), []).append(here)
    queue = deque(merged)
    while queue:
        cur = queue.popleft()
        for prev in rev.get(cur, ()):
            if prev not in merged:
                merged.add(prev)
                queue.append(prev)
    return len(merged) == n * (n - 1) // 2
