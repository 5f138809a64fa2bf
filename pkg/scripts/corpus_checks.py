"""Run the synthesis pipeline and certificates over a seeded random corpus.

    python scripts/corpus_checks.py --n 6-12 --m 2,3 --per-pair 36 --seed 24301
"""
import argparse
import collections
import time

from syncbound.certify import certify
from syncbound.corpus import CorpusSpec, generate
from syncbound.spectrum import rank_profile
from syncbound.synthesis import synthesize


def int_range(text):
    if "-" in text:
        lo, hi = text.split("-")
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",")]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int_range, default=int_range("6-12"))
    ap.add_argument("--m", type=int_range, default=[2, 3])
    ap.add_argument("--per-pair", type=int, default=36)
    ap.add_argument("--seed", type=int, default=0x5EED)
    args = ap.parse_args()

    t0 = time.perf_counter()
    kinds = collections.Counter()
    wins = collections.Counter()
    rho_full = 0
    worst = 0.0
    total = bad = 0
    for n in args.n:
        for m in args.m:
            spec = CorpusSpec("random", n, m, seed=args.seed + 1_000_000 * n + 10_000 * m,
                              count=args.per_pair, sync_only=True)
            for _, A in generate(spec):
                prof = rank_profile(A)
                rep = certify(A)
                tr = synthesize(A, profile=prof, start=())
                total += 1
                bad += not (rep.ok and tr.all_ok)
                rho_full += prof.rho == n - 1
                worst = max(worst, len(tr.final_word) / rep.rt_exact)
                for s in tr.steps:
                    kinds[s.kind] += 1
                    if s.candidates:
                        wins[s.kind] += 1
    print(f"automata: {total}, with a false flag: {bad}")
    print(f"rho = n - 1 on {rho_full} of {total}")
    print(f"steps from the empty word: {dict(kinds)}")
    print(f"middle-loop winners: {dict(wins)}")
    print(f"worst constructed / exact length: {worst:.2f}")
    print(f"elapsed {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
