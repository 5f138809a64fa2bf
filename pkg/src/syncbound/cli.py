"""``syncbound`` command line: gen, rt, spectrum, synth, certify, opt.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 not synchronizing,
4 search budget exceeded.  JSON output is key-sorted; see docs/schema.md.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from dataclasses import asdict
from fractions import Fraction

from . import __version__
from .automaton import Automaton, format_word
from .certify import CUBIC_COEFFICIENT, bound_table, certify
from .corpus import CorpusSpec, dump, generate, parse
from .errors import BudgetExceededError, NotSynchronizingError, ParseError, SyncError
from .optimizer import PHI_CONSTANT, convergence_report, maximize_psi
from .spectrum import DEFAULT_BUDGET, INF, exact_rt, rank_profile
from .synthesis import synthesize

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_NOT_SYNC, EXIT_BUDGET = range(5)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _num(x):
    """Exact numbers as ints or ``"p/q"`` strings; INF as ``"inf"``."""
    if x is INF:
        return "inf"
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


def _word(w, m):
    return {"text": format_word(w, m), "letters": list(w), "length": len(w)}


def _show(w, m):
    return format_word(w, m) or "ε"


def _load(path) -> tuple[Automaton, str]:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise ParseError("file is not valid UTF-8") from None
    return parse(text), "sha256:" + hashlib.sha256(raw).hexdigest()


def _digest_of(obj) -> str:
    blob = json.dumps(obj, sort_keys=True).encode()
    return "sha256:" + hashlib.sha256(blob).hexdigest()


def _emit(args, payload, digest, started, out):
    env = {
        "tool": "syncbound",
        "version": __version__,
        "command": args.command,
        "input_digest": digest,
        "payload": payload,
    }
    if not args.no_timing:
        env["timing_s"] = round(time.perf_counter() - started, 6)
    out.write(json.dumps(env, sort_keys=True, indent=2, ensure_ascii=False) + "\n")


def _profile_payload(prof, m):
    return {
        "n": prof.n,
        "lambda": list(prof.lam),
        "delta": [_num(d) for d in prof.delta],
        "rho": prof.rho,
        "s": {str(r): prof.bucket(r) for r in range(1, prof.k + 1)},
        "witnesses": [_word(w, m) for w in prof.witnesses],
    }


def _trace_payload(trace, m):
    return {
        "n": trace.n,
        "final_word": _word(trace.final_word, m),
        "all_ok": trace.all_ok,
        "steps": [
            {
                "kind": s.kind,
                "r_in": s.r_in,
                "increment": s.increment,
                "budget": s.budget,
                "length": s.length,
                "r_out": s.r_out,
                "bound_ok": s.bound_ok,
                "candidates": [
                    {"kind": c[0], "increment": c[1], "budget": c[2], "r_out": c[3]} for c in s.candidates
                ],
            }
            for s in trace.steps
        ],
    }


def _cmd_gen(args, out):
    spec = CorpusSpec(args.kind, args.n, args.m, args.seed, args.count, args.sync_only)
    os.makedirs(args.out, exist_ok=True)
    written = []
    for i, (seed, A) in enumerate(generate(spec)):
        if spec.kind == "cerny":
            name = f"cerny_n{spec.n}.dfa" if spec.count == 1 else f"cerny_n{spec.n}_{i}.dfa"
            note = f"cerny n={spec.n}"
        else:
            name = f"random_n{spec.n}_m{spec.m}_s{seed}.dfa"
            note = f"random n={spec.n} m={spec.m} seed={seed} (xorshift64*, splitmix64 seeding)"
        path = os.path.join(args.out, name)
        dump(A, path, comment=note)
        written.append(path)
    if args.json:
        return {"files": written, "spec": asdict(spec)}, _digest_of(asdict(spec))
    for p in written:
        out.write(p + "\n")
    return None, None


def _cmd_rt(args, out):
    A, digest = _load(args.file)
    rt, w = exact_rt(A, args.budget)
    if args.json:
        return {"n": A.n, "m": A.m, "rt": rt, "word": _word(w, A.m)}, digest
    out.write(f"rt={rt} word={_show(w, A.m)}\n")
    return None, None


def _cmd_spectrum(args, out):
    A, digest = _load(args.file)
    prof = rank_profile(A, args.budget)
    if args.json:
        return _profile_payload(prof, A.m), digest
    out.write(f"n={prof.n} rho={prof.rho}\n")
    out.write("lambda=" + " ".join(map(str, prof.lam)) + "\n")
    out.write("delta=" + " ".join(str(_num(d)) for d in prof.delta) + "\n")
    out.write("s=" + " ".join(f"s{r}={prof.bucket(r)}" for r in range(1, prof.k + 1)) + "\n")
    return None, None


def _cmd_synth(args, out):
    A, digest = _load(args.file)
    trace = synthesize(A, args.budget, start=() if args.from_empty else None)
    if args.json:
        return _trace_payload(trace, A.m), digest
    for s in trace.steps:
        flag = "ok" if s.bound_ok else "VIOLATION"
        out.write(
            f"{s.kind:<13} r={s.r_in:<3} +{s.increment:<5} budget={s.budget:<6} "
            f"len={s.length:<6} r'={s.r_out:<3} {flag}\n"
        )
    out.write(f"word={_show(trace.final_word, A.m)} length={len(trace.final_word)}\n")
    return None, None


def _cmd_certify(args, out):
    A, digest = _load(args.file)
    rep = certify(A, with_exact=args.exact, budget=args.budget)
    payload = {
        "n": rep.n,
        "m": rep.m,
        "rt_exact": rep.rt_exact,
        "rt_word": _word(rep.rt_word, A.m) if rep.rt_word is not None else None,
        "rt_constructed": rep.rt_constructed,
        "cerny_bound": rep.cerny_bound,
        "pin_frankl_bound": rep.pin_frankl_bound,
        "corollary6_value": _num(rep.corollary6_value),
        "flags": rep.flags,
        "ok": rep.ok,
    }
    if args.json:
        return payload, digest
    for key in ("rt_exact", "rt_constructed", "cerny_bound", "pin_frankl_bound", "corollary6_value"):
        out.write(f"{key}={payload[key]}\n")
    for key, val in sorted(rep.flags.items()):
        out.write(f"{key}={'true' if val else 'FALSE'}\n")
    if not rep.ok:
        sys.stderr.write("certificate has a false flag\n")
    return None, None


def _cmd_opt(args, out):
    try:
        ns = [int(x) for x in args.n_list.split(",") if x.strip()]
    except ValueError:
        raise _UsageError(f"bad --n-list {args.n_list!r}") from None
    if not ns:
        raise _UsageError("--n-list is empty")
    rows, coef = convergence_report(ns)
    big = 10**6
    pb, pg, pv = maximize_psi(big)
    table = [
        {
            "n": r.n,
            "rho": r.rho,
            "lp_value": r.lp_value,
            "lp_ratio": r.lp_ratio,
            "psi_beta": r.psi_beta,
            "psi_gamma": r.psi_gamma,
            "psi_value": r.psi_value,
            "psi_ratio": r.psi_ratio,
            "gap": r.gap,
        }
        for r in rows
    ]
    payload = {
        "rows": table,
        "coefficient": coef,
        "limit_ratio": _num(PHI_CONSTANT),
        "limit_ratio_decimal": float(PHI_CONSTANT),
        "limit_coefficient": _num(CUBIC_COEFFICIENT),
        "limit_coefficient_decimal": float(CUBIC_COEFFICIENT),
        "psi_check": {"n": big, "beta_over_n": pb / big, "gamma_over_n": pg / big, "value_over_n3": pv / big**3},
        "bounds": [{k: _num(v) for k, v in row.items()} for row in bound_table(ns)],
    }
    if args.json:
        return payload, _digest_of({"n_list": ns})
    if args.csv:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(table[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(table)
        w.writerow({"n": "coefficient", "rho": f"{coef:.6f}"})
        out.write(buf.getvalue())
        return None, None
    out.write(f"{'n':>6} {'rho':>5} {'lp/n^3':>12} {'psi/n^3':>12} {'gap/n^2':>10}\n")
    for r in rows:
        out.write(f"{r.n:>6} {r.rho:>5} {r.lp_ratio:>12.7f} {r.psi_ratio:>12.7f} {r.gap / r.n**2:>10.4f}\n")
    out.write(f"limit ratio 15625/1597536 = {float(PHI_CONSTANT):.7f}\n")
    out.write(f"coefficient 7/48 + 2*ratio = {coef:.6f} (limit {float(CUBIC_COEFFICIENT):.6f})\n")
    out.write(f"psi maximizer at n=1e6: beta/n={pb / big:.6f} gamma/n={pg / big:.6f} value/n^3={pv / big**3:.7f}\n")
    return None, None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON envelope")
    common.add_argument("--no-timing", action="store_true", help="omit timing from JSON")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, metavar="NODES",
                        help="cap on explored images (default 2**22)")

    p = _Parser(prog="syncbound", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common], help="write .dfa files")
    g.add_argument("--kind", choices=("cerny", "random"), required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, default=2)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--count", type=int, default=1)
    g.add_argument("--sync-only", action="store_true", help="skip non-synchronizing draws")
    g.add_argument("--out", required=True, metavar="DIR")

    for name, text in (("rt", "exact reset threshold"), ("spectrum", "rank profile"),
                       ("synth", "synthesized reset word with step budgets"),
                       ("certify", "bound certificate")):
        sp = sub.add_parser(name, parents=[common], help=text)
        sp.add_argument("file")
        if name == "synth":
            sp.add_argument("--from-empty", action="store_true",
                            help="start from the empty word instead of the rho witness")
        if name == "certify":
            sp.add_argument("--exact", action="store_true", help="include the exact reset threshold")

    o = sub.add_parser("opt", parents=[common], help="optimizer convergence table")
    o.add_argument("--n-list", default="258,516,1032,2064")
    o.add_argument("--csv", action="store_true")
    return p


_COMMANDS = {
    "gen": _cmd_gen,
    "rt": _cmd_rt,
    "spectrum": _cmd_spectrum,
    "synth": _cmd_synth,
    "certify": _cmd_certify,
    "opt": _cmd_opt,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    started = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        payload, digest = _COMMANDS[args.command](args, out)
        if args.json and payload is not None:
            _emit(args, payload, digest, started, out)
        return EXIT_OK
    except _UsageError as exc:
        sys.stderr.write(f"syncbound: usage error: {exc}\n")
        return EXIT_USAGE
    except ParseError as exc:
        sys.stderr.write(f"syncbound: parse error: {exc}\n")
        return EXIT_PARSE
    except NotSynchronizingError as exc:
        sys.stderr.write(f"syncbound: {exc}\n")
        return EXIT_NOT_SYNC
    except BudgetExceededError as exc:
        sys.stderr.write(f"syncbound: {exc}\n")
        return EXIT_BUDGET
    except SyncError as exc:
        sys.stderr.write(f"syncbound: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
