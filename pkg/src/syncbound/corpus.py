"""Automaton generators and the ``.dfa`` text format.

Random automata use a fixed, library-independent generator so that corpora
reproduce across implementations:

* the 64-bit seed is expanded with one SplitMix64 step into the state of an
  xorshift64* generator (a zero state is replaced by the SplitMix64 constant
  ``0x9E3779B97F4A7C15``);
* xorshift64*: ``x ^= x >> 12; x ^= x << 25; x ^= x >> 27`` (mod 2**64),
  output ``x * 0x2545F4914F6CDD1D mod 2**64``;
* a draw from ``[0, n)`` rejects outputs ``>= 2**64 - (2**64 mod n)`` and
  returns ``output mod n``;
* the table is filled row by row: ``delta[0][0], delta[0][1], ..., delta[n-1][m-1]``.

The ``i``-th automaton of a generated batch uses seed ``seed + i`` (mod 2**64).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .automaton import Automaton, is_synchronizing
from .errors import ParseError, PreconditionError

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    z = (x + GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class XorShift64Star:
    def __init__(self, seed: int):
        self.state = splitmix64(seed & MASK64) or GOLDEN

    def next(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK64

    def below(self, n: int) -> int:
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next()
            if x < limit:
                return x % n


def cerny(n: int) -> Automaton:
    """Cerny automaton: letter 0 is the cycle ``i -> i+1 mod n``, letter 1 merges 0 into 1."""
    if n < 2:
        raise PreconditionError("cerny(n) needs n >= 2")
    return Automaton([((q + 1) % n, 1 if q == 0 else q) for q in range(n)])


def random_automaton(n: int, m: int, seed: int) -> Automaton:
    if n < 1 or m < 1:
        raise PreconditionError("need n >= 1 and m >= 1")
    rng = XorShift64Star(seed)
    return Automaton([[rng.below(n) for _ in range(m)] for _ in range(n)])


@dataclass(frozen=True)
class CorpusSpec:
    kind: str  # "cerny" or "random"
    n: int
    m: int = 2
    seed: int = 0
    count: int = 1
    sync_only: bool = False

    def __post_init__(self):
        if self.kind not in ("cerny", "random"):
            raise PreconditionError(f"unknown corpus kind {self.kind!r}")
        if self.kind == "cerny" and self.n < 2:
            raise PreconditionError("cerny corpus needs n >= 2")
        if self.m < 1 or self.n < 1:
            raise PreconditionError("need n >= 1 and m >= 1")
        if not 0 <= self.seed <= MASK64:
            raise PreconditionError("seed must be an unsigned 64-bit integer")


def generate(spec: CorpusSpec) -> Iterator[tuple[int, Automaton]]:
    """Yield ``(seed, automaton)`` pairs.

    With ``sync_only`` non-synchronizing draws are skipped (their seeds are
    consumed) until ``count`` automata have been produced.
    """
    if spec.kind == "cerny":
        for _ in range(spec.count):
            yield spec.seed, cerny(spec.n)
        return
    made = 0
    i = 0
    while made < spec.count:
        s = (spec.seed + i) & MASK64
        i += 1
        A = random_automaton(spec.n, spec.m, s)
        if spec.sync_only and not is_synchronizing(A):
            continue
        made += 1
        yield s, A


def serialize(A: Automaton, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend("# " + c for c in comment.splitlines())
    lines.append(f"{A.n} {A.m}")
    lines.extend(" ".join(map(str, row)) for row in A.delta)
    return "\n".join(lines) + "\n"


def parse(text: str) -> Automaton:
    """Parse the ``.dfa`` format: header ``n m`` then ``n`` rows of ``m`` indices."""
    header = None
    rows: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            nums = [int(x) for x in parts]
        except ValueError:
            raise ParseError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if len(nums) != 2 or nums[0] < 1 or nums[1] < 1:
                raise ParseError("malformed header, expected 'n m' with n, m >= 1", lineno)
            header = nums
            continue
        n, m = header
        if len(rows) == n:
            raise ParseError(f"more than {n} rows", lineno)
        if len(nums) != m:
            raise ParseError(f"expected {m} entries, got {len(nums)}", lineno)
        for x in nums:
            if not 0 <= x < n:
                raise ParseError(f"state index {x} out of range", lineno)
        rows.append(nums)
    if header is None:
        raise ParseError("missing header")
    if len(rows) != header[0]:
        raise ParseError(f"expected {header[0]} rows, got {len(rows)}")
    return Automaton(rows)


def load(path) -> Automaton:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def dump(A: Automaton, path, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(A, comment))
