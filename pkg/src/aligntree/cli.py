"""Command-line front end: ``aligntree build|query|stats|verify|gen``."""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional

from .aligned_index import build_aligned
from .corpus import DNA, generate
from .search import InvalidPatternError, find_pattern
from .suffix_tree import InternalCorruptionError, build_generalized
from .text_model import (
    InconsistentAlignmentError, MalformedTextError, Text, align, compose, dumps_alignment,
    format_notation, loads_alignment, normalize, render,
)
from .verify import check_running_example, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read_text(path: str, side: str, keep_newline: bool) -> Text:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    if not keep_newline and raw.endswith(b"\n"):
        raw = raw[:-1]
    return Text.from_raw(side, raw)


def _load(args) -> tuple:
    """Texts and alignment from the common positional arguments."""
    a = _read_text(args.a_file, "A", args.keep_newline)
    b = _read_text(args.b_file, "B", args.keep_newline)
    if getattr(args, "alignment", None):
        try:
            al = loads_alignment(Path(args.alignment).read_text(encoding="latin-1"))
        except OSError as exc:
            raise UsageError(f"cannot read {args.alignment}: {exc.strerror}") from exc
        if args.coalesce:
            al = normalize(al, coalesce=True)
        if compose(al, "A").text != a or compose(al, "B").text != b:
            raise InconsistentAlignmentError("alignment does not compose to the given texts")
    else:
        al = align(a, b, coalesce=args.coalesce)
    return a, b, al


def _texts_args(p: argparse.ArgumentParser, gst: bool = True) -> None:
    p.add_argument("a_file", help="file holding text A (raw bytes)")
    p.add_argument("b_file", help="file holding text B (raw bytes)")
    p.add_argument("--alignment", metavar="FILE",
                   help="alignment record file; computed by the built-in aligner when omitted")
    p.add_argument("--coalesce", action="store_true",
                   help="push symbols shared by both variant ends into the next common chunk")
    p.add_argument("--keep-newline", action="store_true",
                   help="keep a trailing newline instead of stripping it")
    if gst:
        p.add_argument("--gst", action="store_true",
                       help="use the generalized suffix tree of A and B instead")


# ------------------------------------------------------------------ commands

def cmd_build(args) -> int:
    a, b, al = _load(args)
    if args.gst:
        tree = build_generalized(a, b)
        tree.check()
        print(f"leaves={tree.n_leaves} internal={tree.n_internal} kind=generalized")
        print(f"work: {tree.work}")
    else:
        built = build_aligned(al)
        tree = built.tree
        tree.check()
        print(built.metrics.summary())
        print("work: " + " ".join(f"{ph}={w.total}" for ph, w in built.metrics.work.items()))
    if args.dump:
        sys.stdout.write(tree.dump())
    return EXIT_OK


def _patterns(args) -> List[bytes]:
    pats = [os.fsencode(p) for p in args.patterns]
    if args.patterns_file:
        try:
            data = Path(args.patterns_file).read_bytes()
        except OSError as exc:
            raise UsageError(f"cannot read {args.patterns_file}: {exc.strerror}") from exc
        pats.extend(line for line in data.split(b"\n") if line)
    return pats


def format_hits(p: bytes, occurrences) -> str:
    cols = [render(p), str(len(occurrences))]
    for side in ("A", "B"):
        offs = [str(off) for sid, off in occurrences if sid == side]
        if offs:
            cols.append(f"{side}:" + ",".join(offs))
    return "\t".join(cols)


def cmd_query(args) -> int:
    a, b, al = _load(args)
    pats = _patterns(args)
    tree = build_generalized(a, b) if args.gst else build_aligned(al).tree
    for p in pats:
        res = find_pattern(tree, p)
        print(format_hits(p, res.occurrences))
    return EXIT_OK


def cmd_stats(args) -> int:
    a, b, al = _load(args)
    built = build_aligned(al)
    m = built.metrics
    gst = build_generalized(a, b)
    print(f"|A|={len(a)} |B|={len(b)} k={al.k}")
    print(m.summary())
    print(f"gst_leaves={gst.n_leaves} saved={gst.n_leaves - m.leaves}")
    counts = {}
    for leaf in built.tree.leaves():
        for ann in built.tree.leaf_annotations(leaf):
            counts[int(ann.cls)] = counts.get(int(ann.cls), 0) + 1
    print("classes: " + " ".join(f"c{c}={n}" for c, n in sorted(counts.items())))
    for c in built.analysis:
        extra = "" if c.alpha_star is None else \
            f" alpha_a={render(c.alpha_a)} alpha_star={render(c.alpha_star)}"
        hat = "" if c.alpha_hat is None else f" alpha_hat={render(c.alpha_hat)}"
        print(f"chunk {c.index}: len={len(c.alpha)}{extra}{hat}")
    for phase, w in m.work.items():
        print(f"work {phase}: {w}")
    if args.show_alignment:
        print(format_notation(al))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.paper_example:
        rep = check_running_example()
        for f in rep.failures:
            print(f"FAIL {f}")
        print("worked example ok" if rep.ok else "worked example FAILED")
        return EXIT_OK if rep.ok else EXIT_FAIL
    lo, hi = (args.rate, args.rate) if args.rate is not None else (args.min_rate, args.max_rate)
    outcomes = run_suite(args.seed, args.count, max_len=args.max_len, rate_lo=lo, rate_hi=hi,
                         workers=args.workers, shrink_failures=not args.no_shrink,
                         coalesce=args.coalesce)
    bad = [o for o in outcomes if o.failures]
    for o in bad:
        print(f"instance {o.index} (seed {args.seed}) failed:")
        for f in o.failures[:10]:
            print(f"  {f}")
        print("  minimal alignment record:")
        for line in o.record.splitlines():
            print(f"    {line}")
    print(f"{len(outcomes) - len(bad)}/{len(outcomes)} ok")
    return EXIT_OK if not bad else EXIT_FAIL


def cmd_gen(args) -> int:
    inst = generate(args.seed, args.index, max_len=args.max_len, rate=args.rate,
                    k_max=args.k_max, alphabet=args.alphabet.encode("latin-1"),
                    coalesce=args.coalesce)
    prefix = Path(args.out)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    Path(f"{prefix}.a").write_bytes(inst.a.data[:-1])
    Path(f"{prefix}.b").write_bytes(inst.b.data[:-1])
    Path(f"{prefix}.aln").write_text(dumps_alignment(inst.alignment), encoding="latin-1")
    print(f"wrote {prefix}.a {prefix}.b {prefix}.aln k={inst.alignment.k}")
    return EXIT_OK


# -------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aligntree",
        description="Suffix trees over two aligned, highly similar texts.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build the index and print its size")
    _texts_args(p)
    p.add_argument("--dump", action="store_true", help="print the canonical tree dump")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("query", help="report pattern occurrences in A and B")
    _texts_args(p)
    p.add_argument("patterns", nargs="*", help="patterns to look up")
    p.add_argument("--patterns-file", metavar="FILE", help="newline-delimited patterns")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("stats", help="metrics, per-chunk analysis and work counters")
    _texts_args(p, gst=False)
    p.add_argument("--show-alignment", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("verify", help="check the builder against brute-force oracles")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-len", type=int, default=60)
    p.add_argument("--rate", type=float, help="fixed mutation rate (default: spread over the range)")
    p.add_argument("--min-rate", type=float, default=0.01)
    p.add_argument("--max-rate", type=float, default=0.20)
    p.add_argument("--coalesce", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-shrink", action="store_true", help="report failures without shrinking")
    p.add_argument("--worked-example", "--paper-example", dest="paper_example", action="store_true",
                   help="check the running example aaabaa(abba/baabb)aba# only")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="write a random similar pair and its alignment")
    p.add_argument("out", help="output prefix; writes PREFIX.a, PREFIX.b, PREFIX.aln")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--max-len", type=int, default=200)
    p.add_argument("--rate", type=float, default=0.05)
    p.add_argument("--k-max", type=int, default=6)
    p.add_argument("--alphabet", default=DNA.decode())
    p.add_argument("--coalesce", action="store_true")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    # patterns may follow options, which argparse does not intermix for subcommands
    args, extra = parser.parse_known_args(argv)
    if extra:
        if args.command != "query" or any(x.startswith("-") for x in extra):
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
        args.patterns = list(args.patterns) + extra
    try:
        return args.func(args)
    except (MalformedTextError, InconsistentAlignmentError, InvalidPatternError, UsageError) as exc:
        print(f"aligntree: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InternalCorruptionError as exc:
        print(f"aligntree: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
