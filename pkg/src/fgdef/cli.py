"""Command-line interface.

Subcommands: density, pieces, pattern, cuteq, basis, primitive, malcev,
witness.  Primary output is CSV (JSON where the data is a wire object or on
request via --json); all output is byte-deterministic for a fixed
configuration.  Exit codes: 0 success, 1 input error, 2 resource guard.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import cuteq, definable, genericity, patterns, pieces
from ._kernels import BACKEND
from .errors import FgdefError, InputError, ResourceLimitError
from .words import Alphabet

CACHE_ENV = "FGDEF_CACHE"


@dataclass
class RunConfig:
    rank: int = 2
    nmax: int = 8
    eps: Fraction = Fraction(1, 2)
    out: str | None = None
    cache_dir: str | None = None
    jobs: int = 1
    seed: int = 0          # reserved: no randomized corpora in the CLI yet
    budget: int = genericity.DEFAULT_BUDGET


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{message}\n{self.format_usage().rstrip()}")


def _fraction(text: str) -> Fraction:
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"expected a rational like 1/2, got {text!r}") from None


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cache_dir(flag_value: str | None) -> str | None:
    return os.environ.get(CACHE_ENV) or flag_value


# -- subcommand handlers --------------------------------------------------------

def _cmd_density(args) -> int:
    config = RunConfig(rank=args.rank, nmax=args.nmax, eps=_fraction(args.eps),
                       out=args.out, cache_dir=_cache_dir(args.cache_dir),
                       jobs=args.jobs, budget=args.budget)
    report = genericity.density_report(
        config.rank, range(1, config.nmax + 1), config.eps,
        jobs=config.jobs, cache_dir=config.cache_dir, budget=config.budget)
    import io
    buf = io.StringIO()
    genericity.write_density_csv(report, buf)
    _emit(buf.getvalue(), config.out)
    return 0


def _cmd_pieces(args) -> int:
    alphabet = Alphabet(args.rank)
    lines = (open(args.words, "r", encoding="utf-8") if args.words
             else sys.stdin)
    rows = ["word,length,piece,ratio\n"]
    with lines:
        for line in lines:
            text = line.strip()
            if not text:
                continue
            w = alphabet.word(text)
            report = pieces.longest_piece(w)
            piece = str(report.witness[0]) if report.witness else ""
            rows.append(f"{w},{report.length},{piece},{report.ratio}\n")
    _emit("".join(rows), args.out)
    return 0


def _cmd_pattern(args) -> int:
    if args.action == "match":
        system = patterns.load_pattern_system(_load_json(args.system))
        tuple_words = [system.alphabet.word(t)
                       for t in args.tuple.split(",")]
        result = patterns.match_pattern(system, tuple_words)
        if args.json:
            payload = {"matched": result is not None}
            if result is not None:
                payload["assignment"] = {k: str(v)
                                         for k, v in result.assignment.items()}
                payload["piece_flags"] = [
                    {"coordinate": j, "variable": v, "piece": flag}
                    for (j, v), flag in sorted(result.piece_flags.items())]
            _emit(json.dumps(payload, indent=2) + "\n", args.out)
        else:
            rows = ["variable,value\n"]
            if result is None:
                rows.append("(no match),\n")
            else:
                for name, value in result.assignment.items():
                    rows.append(f"{name},{value}\n")
            _emit("".join(rows), args.out)
        return 0

    # report
    alphabet = Alphabet(args.rank)
    eps = _fraction(args.eps)
    lines = (open(args.words, "r", encoding="utf-8") if args.words
             else sys.stdin)
    with lines:
        stream = (alphabet.word(line.strip()) for line in lines
                  if line.strip())
        report = patterns.negligibility_report(stream, eps,
                                               exception_cap=args.cap)
    if args.json:
        payload = {
            "eps": str(report.eps),
            "strata": {str(n): {"at_or_above": a, "below": b}
                       for n, (a, b) in report.strata.items()},
            "exceptions": [str(w) for w in report.exceptions],
            "truncated": report.truncated,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        rows = ["length,at_or_above,below\n"]
        for n, (above, below) in report.strata.items():
            rows.append(f"{n},{above},{below}\n")
        _emit("".join(rows), args.out)
    return 0


def _cmd_cuteq(args) -> int:
    if args.action == "build":
        ge = cuteq.load_generalized_equation(_load_json(args.omega))
        markers = [int(t) for t in args.cut.split(",")]
        built = cuteq.build_cut_equation(ge, markers)
        _emit(json.dumps(cuteq.cut_equation_to_json(built), indent=2) + "\n",
              args.out)
        return 0

    pi = cuteq.load_cut_equation(_load_json(args.pi))
    if args.action == "check":
        assign = _load_json(args.assign)
        try:
            beta = {k: pi.alphabet.word(v)
                    for k, v in assign.get("beta", {}).items()}
            alpha = {k: pi.alphabet.word(v)
                     for k, v in assign.get("alpha", {}).items()}
        except AttributeError:
            raise InputError("assignment file needs objects under "
                             "'beta' and 'alpha'") from None
        result = cuteq.check_solution(pi, beta, alpha, mode=args.mode)
        rows = ["interval,ok\n"]
        for idx, ok in enumerate(result.interval_ok, start=1):
            rows.append(f"{idx},{str(ok).lower()}\n")
        rows.append(f"overall,{str(result.ok).lower()}\n")
        _emit("".join(rows), args.out)
        return 0

    # eliminate
    reduced, trace = cuteq.eliminate_single_occurrence(pi)
    payload = {"result": cuteq.cut_equation_to_json(reduced)}
    if args.trace:
        payload["trace"] = [
            {"interval": r.interval_index, "variable": r.variable,
             "identity": r.identity}
            for r in trace.removals]
        payload["unconstrained"] = list(trace.unconstrained)
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def _cmd_basis(args) -> int:
    alphabet = Alphabet(args.rank)
    verdict = definable.is_basis_pair_f2(alphabet.word(args.g),
                                         alphabet.word(args.h))
    _emit(f"{str(verdict).lower()}\n", args.out)
    return 0


def _cmd_primitive(args) -> int:
    alphabet = Alphabet(args.rank)
    verdict = definable.is_primitive_f2(alphabet.word(args.word))
    _emit(f"{str(verdict).lower()}\n", args.out)
    return 0


def _cmd_malcev(args) -> int:
    alphabet = Alphabet(args.rank)
    try:
        with open(args.combine, "r", encoding="utf-8") as fh:
            lines = [line.strip() for line in fh]
    except OSError as exc:
        raise InputError(f"cannot read {args.combine}: {exc}") from None
    exprs = [definable.parse_equation(line, alphabet)
             for line in lines if line]
    combined = definable.combine_system_to_single(exprs)
    rows = [f"combined,{combined}\n"]
    if args.check is not None:
        verdict = definable.check_trivial_only(combined, args.check)
        rows.append(f"trivial_only,{str(verdict).lower()}\n")
    _emit("".join(rows), args.out)
    return 0


def _cmd_witness(args) -> int:
    alphabet = Alphabet(args.rank)
    w = patterns.witness_family(alphabet.word(args.x), alphabet.word(args.y),
                                args.i)
    _emit(f"{w}\n", args.out)
    return 0


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="fgdef",
                             description="Free-group word combinatorics: "
                                         "pieces, densities, patterns, cut "
                                         "equations, definability tests.")
    parser.add_argument("--version", action="version",
                        version=f"fgdef (kernel backend: {BACKEND})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("density", help="exact piece-rich density table")
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--eps", default="1/2", help="rational threshold, e.g. 1/2")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.add_argument("--cache-dir", help=f"sphere word cache (env {CACHE_ENV} "
                                       "overrides)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int, default=genericity.DEFAULT_BUDGET)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("pieces", help="longest-piece CSV for a word stream")
    p.add_argument("words", nargs="?", help="file of words, one per line "
                                            "(default stdin)")
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_pieces)

    p = sub.add_parser("pattern", help="parametrization-system tools")
    psub = p.add_subparsers(dest="action", required=True)
    m = psub.add_parser("match", help="match a tuple against a system")
    m.add_argument("--system", required=True, help="pattern system JSON file")
    m.add_argument("--tuple", required=True,
                   help="comma-separated word tuple, e.g. abab or ab,ba")
    m.add_argument("--json", action="store_true")
    m.add_argument("--out")
    m.set_defaults(func=_cmd_pattern)
    r = psub.add_parser("report", help="piece-ratio report over a word stream")
    r.add_argument("--eps", required=True)
    r.add_argument("--words", help="file of words (default stdin)")
    r.add_argument("--rank", type=int, default=2)
    r.add_argument("--cap", type=int, default=100,
                   help="cap on the listed exceptions")
    r.add_argument("--json", action="store_true")
    r.add_argument("--out")
    r.set_defaults(func=_cmd_pattern)

    p = sub.add_parser("cuteq", help="cut-equation tools")
    csub = p.add_subparsers(dest="action", required=True)
    b = csub.add_parser("build", help="cut equation of a generalized equation")
    b.add_argument("--omega", required=True, help="generalized equation JSON")
    b.add_argument("--cut", required=True,
                   help="comma-separated boundary markers, e.g. 1,3,6")
    b.add_argument("--out")
    b.set_defaults(func=_cmd_cuteq)
    c = csub.add_parser("check", help="check an assignment")
    c.add_argument("--pi", required=True, help="cut equation JSON")
    c.add_argument("--assign", required=True,
                   help='JSON {"beta": {...}, "alpha": {...}}')
    c.add_argument("--mode", choices=("graphical", "group"),
                   default="graphical")
    c.add_argument("--out")
    c.set_defaults(func=_cmd_cuteq)
    e = csub.add_parser("eliminate", help="single-occurrence cascade")
    e.add_argument("--pi", required=True, help="cut equation JSON")
    e.add_argument("--trace", action="store_true")
    e.add_argument("--out")
    e.set_defaults(func=_cmd_cuteq)

    p = sub.add_parser("basis", help="is a pair a basis of the rank-2 group?")
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_basis)

    p = sub.add_parser("primitive", help="is a word primitive (rank 2)?")
    p.add_argument("word")
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_primitive)

    p = sub.add_parser("malcev", help="fold an equation system into one "
                                      "equation")
    p.add_argument("--combine", required=True,
                   help="file of equations, one per line, $x for variables")
    p.add_argument("--check", type=int, default=None,
                   help="verify trivial-only up to this value length")
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_malcev)

    p = sub.add_parser("witness", help="non-negligible witness word "
                                       "x y x y^2 x ... x y^i x")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_witness)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except InputError as exc:
        print(f"fgdef: error: {exc}", file=sys.stderr)
        return 1
    except ResourceLimitError as exc:
        print(f"fgdef: resource guard: {exc}", file=sys.stderr)
        return 2
    except FgdefError as exc:
        print(f"fgdef: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
