"""Independent reference computations.

Nothing here touches the bitmask tables or the BFS in ``syncbound``; states
are plain Python sets and words are enumerated or iterated level by level.
"""
from itertools import product


def act(delta, states, word):
    out = set(states)
    for a in word:
        out = {delta[q][a] for q in out}
    return out


def words_upto(m, length):
    for L in range(length + 1):
        yield from product(range(m), repeat=L)


def brute_lambdas(delta, max_len):
    """lam_i by enumerating every word of length <= max_len (None if not reached)."""
    n, m = len(delta), len(delta[0])
    lam = [None] * n
    for w in words_upto(m, max_len):
        c = n - len(act(delta, range(n), w))
        for i in range(c + 1):
            if lam[i] is None:
                lam[i] = len(w)
    return lam


def levelset_lambdas(delta, max_len=10_000):
    """lam_i from the sets of images reachable with exactly d letters, d = 0, 1, ..."""
    n, m = len(delta), len(delta[0])
    lam = [None] * n
    level = {frozenset(range(n))}
    seen_levels = set()
    for d in range(max_len + 1):
        smallest = min(len(s) for s in level)
        for i in range(n - smallest + 1):
            if lam[i] is None:
                lam[i] = d
        if lam[-1] is not None:
            return lam
        key = frozenset(level)
        if key in seen_levels:
            return lam  # level sets cycle: remaining coranks unreachable
        seen_levels.add(key)
        level = {frozenset(delta[q][a] for q in s) for s in level for a in range(m)}
    return lam


def brute_shortest(delta, start, accept, max_len):
    """Shortlex-least word w (|w| <= max_len) with accept(start.w), else None."""
    m = len(delta[0])
    for w in words_upto(m, max_len):
        if accept(act(delta, start, w)):
            return w
    return None


def pairs_synchronizing(delta):
    """Every pair merges: fixed-point iteration over explicit pair sets."""
    n, m = len(delta), len(delta[0])
    good = set()
    changed = True
    while changed:
        changed = False
        for p in range(n):
            for q in range(p + 1, n):
                if (p, q) in good:
                    continue
                for a in range(m):
                    x, y = sorted((delta[p][a], delta[q][a]))
                    if x == y or (x, y) in good:
                        good.add((p, q))
                        changed = True
                        break
    return len(good) == n * (n - 1) // 2
