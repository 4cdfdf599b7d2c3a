"""Command-line entry point: ``lcislab solve|gen|reduce|verify|bench``.

Exit codes: 0 success, 1 usage, 2 parse/shape error, 3 verification
failure, 4 resource cap.
"""
from __future__ import annotations

import argparse
import ast
import sys
from fractions import Fraction

from . import harness
from .errors import (GadgetContractError, InstanceTooLarge, ParameterError,
                     ShapeError, UnsupportedArity)
from .instances import (bp_sat_bruteforce, emit_bp, emit_kov, emit_ov, gen_bp,
                        gen_kov, gen_ov, k_min_product, min_inner_product,
                        parse_bp, parse_kov, parse_ov)
from .reductions import (ReductionOutput, bpsat_to_lcis, kov_to_klcis,
                         kov_to_klcwis, lcs_to_lcis, ov_to_lcis,
                         ov_to_lcis_unbalanced)
from .separators import separator_family, separator_pair
from .seqcore import format_seq, loads_seqs
from .solvers import (STRICT, WEAK, lcis_approx, lcis_dp2, lcis_dpk,
                      lcis_matching_pairs, lcs_bruteforce, lis_length)

EXIT_USAGE, EXIT_PARSE, EXIT_VERIFY, EXIT_CAP = 1, 2, 3, 4
# brute-force LCS for the "expected" line of lcs2lcis stays instant below this
LCS_EXPECT_CAP = 14


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _csv_ints(text):
    return [int(t) for t in text.split(",") if t]


# -- solve -----------------------------------------------------------------------

def cmd_solve(args):
    if args.problem == "approx":
        if len(args.files) == 2:
            x, y = (_single(loads_seqs(_read(f)), f) for f in args.files)
        elif len(args.files) == 1:
            seqs = loads_seqs(_read(args.files[0]))
            if len(seqs) != 2:
                raise ShapeError(f"{args.files[0]}: approx needs two sequences, found {len(seqs)}")
            x, y = seqs
        else:
            raise UsageError("solve approx takes two sequence files")
        if args.eps is None:
            raise UsageError("solve approx needs --eps")
        eps = Fraction(args.eps)
        res = lcis_approx(x, y, eps)
        print(res.length)
        # the optimum is at most (1+eps)|Z|
        print(f"bound {(1 + eps) * res.length}")
        print(f"branch {res.meta['branch']}")
        if args.witness:
            print(format_seq(res.witness))
        return 0
    mode = STRICT if args.problem == "lcis" else WEAK
    seqs = [s for f in args.files for s in loads_seqs(_read(f))]
    if args.k is not None and args.k != len(seqs):
        raise ShapeError(f"--k {args.k} given but the files hold {len(seqs)} sequences")
    if not seqs:
        raise ShapeError("no sequences given")
    witness = None
    if len(seqs) == 1:
        length = lis_length(seqs[0], mode)
        if args.witness:
            witness = _lis_witness(seqs[0], mode)
    elif len(seqs) == 2 and args.solver in ("auto", "dp2"):
        res = lcis_dp2(seqs[0], seqs[1], mode, witness=args.witness)
        length, witness = res.length, res.witness
    elif len(seqs) == 2 and args.solver == "matching":
        res = lcis_matching_pairs(seqs[0], seqs[1], mode, witness=args.witness)
        length, witness = res.length, res.witness
    else:
        if args.witness:
            raise UsageError("--witness is available for one or two sequences")
        length = lcis_dpk(seqs, mode).length
    print(length)
    if args.witness:
        print(format_seq(witness))
    return 0


def _single(seqs, name):
    if len(seqs) != 1:
        raise ShapeError(f"{name}: expected one sequence, found {len(seqs)}")
    return seqs[0]


def _lis_witness(s, mode):
    # a sequence is its own common subsequence; reuse the two-sequence solver
    return lcis_dp2(s, s, mode, witness=True).witness


# -- gen -------------------------------------------------------------------------

def cmd_gen(args):
    seed = harness.default_seed() if args.seed is None else args.seed
    if args.kind == "separator":
        if args.k is not None:
            p = separator_pair(args.k)
            blocked = [p.a, p.b]
        elif args.levels is not None:
            blocked = list(separator_family(args.levels, args.arity, weak=args.weak).seqs)
        else:
            raise UsageError("gen separator needs --k or --levels")
        lines = []
        for bs in blocked:
            lines.append("# blocks=" + ",".join(map(str, bs.block_starts)))
            lines.append(format_seq(bs.seq))
        text = "\n".join(lines) + "\n"
    elif args.kind == "ov":
        text = emit_ov(gen_ov(args.n, args.m or args.n, args.d, seed, args.density))
    elif args.kind == "kov":
        text = emit_kov(gen_kov(args.k or 3, args.n, args.d, seed, args.density))
    else:
        text = emit_bp(gen_bp(args.vars, args.width, args.t, args.density, seed))
    _write(text, args.output)
    return 0


# -- reduce ----------------------------------------------------------------------

def cmd_reduce(args):
    text = _read(args.input)
    expected = None
    if args.kind in ("ov2lcis", "ov2lcis-unbalanced"):
        inst = parse_ov(text)
        out = (ov_to_lcis if args.kind == "ov2lcis" else ov_to_lcis_unbalanced)(inst)
        expected = out.constant + inst.d - min_inner_product(inst)
    elif args.kind == "kov2klcis":
        inst = parse_kov(text)
        out = kov_to_klcis(inst)
        expected = _safe(lambda: out.constant + inst.d - k_min_product(inst))
    elif args.kind == "kov2klcwis":
        inst = parse_kov(text)
        out = kov_to_klcwis(inst)
        orth = _safe(lambda: k_min_product(inst) == 0)
        expected = None if orth is None else (out.threshold if orth else f"<{out.threshold}")
    elif args.kind == "lcs2lcis":
        seqs = loads_seqs(text)
        if len(seqs) < 2:
            raise ShapeError("lcs2lcis needs at least two sequences")
        out = ReductionOutput(lcs_to_lcis(seqs), 0, "lcs-lcis")
        if min(map(len, seqs)) <= LCS_EXPECT_CAP:
            expected = lcs_bruteforce(seqs)
    else:
        bp = parse_bp(text)
        out = bpsat_to_lcis(bp)
        sat = bp_sat_bruteforce(bp) is not None
        expected = out.threshold if sat else f"<{out.threshold}"
    _write(out.dumps(), args.output)
    report = sys.stdout if args.output not in (None, "-") else sys.stderr
    thr = "none" if out.threshold is None else out.threshold
    print(f"identity {out.target_identity}", file=report)
    print(f"constant {out.constant}", file=report)
    print(f"threshold {thr}", file=report)
    print(f"expected {'unknown' if expected is None else expected}", file=report)
    return 0


def _safe(fn):
    try:
        return fn()
    except InstanceTooLarge:
        return None


# -- verify / bench -----------------------------------------------------------------

def _budget(items):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"budget entries look like key=value, got {item!r}")
        key, val = item.split("=", 1)
        key = key.strip().replace("-", "_")
        try:
            out[key] = ast.literal_eval(val.strip())
        except (ValueError, SyntaxError):
            raise UsageError(f"cannot read budget value {val!r}") from None
    return out


def cmd_verify(args):
    rep = harness.verify_lemma(args.lemma, _budget(args.budget), args.seed)
    print(rep.summary())
    return 0 if rep.ok else EXIT_VERIFY


def cmd_bench(args):
    rows = harness.bench(tuple(args.solvers.split(",")), args.family, _csv_ints(args.sizes),
                         args.repetitions, args.seed, k=args.k, eps=Fraction(args.eps))
    _write(harness.rows_to_csv(rows), args.output)
    return 0


# -- parser ------------------------------------------------------------------------

def build_parser():
    p = _Parser(prog="lcislab", description="LCIS solvers, hardness reductions and their checks.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("solve", help="solve LCIS, LCWIS or approximate LCIS")
    s.add_argument("problem", choices=["lcis", "lcwis", "approx"])
    s.add_argument("files", nargs="+")
    s.add_argument("--k", type=int, help="expected number of sequences")
    s.add_argument("--witness", action="store_true")
    s.add_argument("--eps", help="approximation parameter, e.g. 0.5 or 1/10")
    s.add_argument("--solver", choices=["auto", "dp2", "matching"], default="auto")
    s.set_defaults(func=cmd_solve)

    g = sub.add_parser("gen", help="generate separators or instances")
    g.add_argument("kind", choices=["separator", "ov", "kov", "bp"])
    g.add_argument("--k", type=int, help="separator level, or the number of sets for kov")
    g.add_argument("--levels", type=int)
    g.add_argument("--arity", type=int, default=2)
    g.add_argument("--weak", action="store_true")
    g.add_argument("--n", type=int, default=4)
    g.add_argument("--m", type=int)
    g.add_argument("--d", type=int, default=3)
    g.add_argument("--vars", type=int, default=4)
    g.add_argument("--width", type=int, default=2)
    g.add_argument("--t", type=int, default=1)
    g.add_argument("--density", type=float, default=0.5)
    g.add_argument("--seed", type=int)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("reduce", help="reduce an instance to LCIS/LCWIS")
    r.add_argument("kind", choices=["ov2lcis", "ov2lcis-unbalanced", "kov2klcis",
                                    "kov2klcwis", "lcs2lcis", "bp2lcis"])
    r.add_argument("input")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_reduce)

    v = sub.add_parser("verify", help="run a verification grid")
    v.add_argument("lemma", choices=list(harness.LEMMAS))
    v.add_argument("--budget", action="append", help="key=value override, repeatable, e.g. trials=20")
    v.add_argument("--seed", type=int)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="time solvers, CSV output")
    b.add_argument("--solvers", default="dp2,matching")
    b.add_argument("--family", choices=["sparse", "dense", "planted", "uniform"], default="sparse")
    b.add_argument("--sizes", default="50,100,200")
    b.add_argument("--repetitions", type=int, default=3)
    b.add_argument("--k", type=int, default=2)
    b.add_argument("--eps", default="1/2")
    b.add_argument("--seed", type=int)
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (ShapeError, GadgetContractError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InstanceTooLarge, OverflowError, MemoryError) as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UnsupportedArity, ParameterError, ValueError, ZeroDivisionError) as exc:
        print(f"usage: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
