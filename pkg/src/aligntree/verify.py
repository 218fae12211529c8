"""Per-instance property suite comparing the builder against the oracles."""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Optional

from .aligned_index import build_aligned
from .corpus import Instance, corpus
from .oracle import (
    count_occurrences, naive_a_suffixes, naive_all_suffixes, naive_chunks, naive_search,
)
from .search import expand_all, find_pattern
from .suffix_tree import InternalCorruptionError, build_mccreight, has_two_chi_leaves
from .text_model import Alignment, compose, dumps_alignment, normalize, parse_notation


def sample_patterns(a: bytes, b: bytes, rng: random.Random, count: int = 50,
                    max_len: int = 10) -> List[bytes]:
    """Substrings of either text, sentinels excluded, plus a few random misses."""
    out = []
    bodies = [a[:-1], b[:-1]]
    for _ in range(count):
        t = rng.choice(bodies)
        if not t:
            continue
        n = rng.randint(1, min(max_len, len(t)))
        s = rng.randint(0, len(t) - n)
        out.append(t[s:s + n])
    out.append(b"zz")
    return out


def repeat_test_violations(al: Alignment, tree_prime, chunks) -> List[str]:
    """Check both biconditionals on the post-A2 tree for every long-enough suffix."""
    a = compose(al, "A").text.data
    b = compose(al, "B").text.data
    bad = []
    for i in range(al.k):
        alpha = al.commons[i]
        for length in range(len(chunks[i].alpha_a) + 1, len(alpha) + 1):
            x = alpha[len(alpha) - length:]
            two = has_two_chi_leaves(tree_prime, x)
            in_b = count_occurrences(b, x) >= 2
            either = in_b or count_occurrences(a, x) >= 2
            if two != in_b:
                bad.append(f"repeat-in-B: chunk {i + 1} suffix {x!r}: tree={two} B={in_b}")
            if two != either:
                bad.append(f"repeat-in-A-or-B: chunk {i + 1} suffix {x!r}: tree={two} AorB={either}")
    return bad


@dataclass
class Report:
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def expect(self, cond: bool, msg: str) -> None:
        if not cond:
            self.failures.append(msg)


def check_alignment(al: Alignment, pattern_seed: int = 0, n_patterns: int = 50) -> Report:
    rep = Report()
    try:
        _check(al, rep, pattern_seed, n_patterns)
    except InternalCorruptionError as exc:
        rep.failures.append(f"internal corruption: {exc}")
    return rep


def _check(al: Alignment, rep: Report, pattern_seed: int, n_patterns: int) -> None:
    a = compose(al, "A").text
    b = compose(al, "B").text
    rep.expect(al.is_valid(), f"alignment invalid: {al.violations()}")
    rep.expect(normalize(al) == al, "normalize is not idempotent")

    built = build_aligned(al, keep_tree_prime=True)
    tree, m = built.tree, built.metrics
    tree.check()

    chunks = naive_chunks(al)
    for i in range(al.k):
        got = built.analysis[i]
        rep.expect(got.alpha_a == chunks[i].alpha_a,
                   f"alpha^a_{i + 1}: tree {got.alpha_a!r} oracle {chunks[i].alpha_a!r}")
        rep.expect(got.alpha_star == chunks[i].alpha_star,
                   f"alpha*_{i + 1}: tree {got.alpha_star!r} oracle {chunks[i].alpha_star!r}")
    l2 = sum(len(c.alpha_hat) for c in chunks[1:])
    rep.expect(m.l_2 == l2, f"l_2: metrics {m.l_2} oracle {l2}")

    rep.failures.extend(repeat_test_violations(al, built.tree_prime, built.analysis))

    rep.expect(expand_all(tree) == naive_all_suffixes(a, b), "expanded suffixes differ from A and B suffixes")
    rng = random.Random(pattern_seed)
    for p in sample_patterns(a.data, b.data, rng, n_patterns):
        got = find_pattern(tree, p).occurrences
        want = naive_search(a, b, p).occurrences
        if got != want:
            rep.failures.append(f"search {p!r}: tree {got} oracle {want}")

    enum = naive_a_suffixes(al)
    formula = len(a) + m.l_d + m.l_1
    rep.expect(m.leaves == formula - m.collisions,
               f"leaves {m.leaves} != |A|+l_d+l_1-collisions = {formula - m.collisions}")
    rep.expect(m.leaves == enum.distinct, f"leaves {m.leaves} != distinct a-suffixes {enum.distinct}")
    rep.expect(m.collisions == enum.collisions, f"collisions {m.collisions} != oracle {enum.collisions}")

    dump = tree.dump()
    rep.expect(build_aligned(al).tree.dump() == dump, "dump is not deterministic")
    inc = build_aligned(al, tree_a=build_mccreight(a)).tree.dump()
    rep.expect(inc == dump, "incremental build differs from the full build")


# ---------------------------------------------------------------- shrinking

def _candidates(al: Alignment):
    commons, variants = list(al.commons), list(al.variants)
    for i in range(len(variants)):
        beta, _ = variants[i]
        segs = _segments(commons, variants)
        segs[2 * i + 1] = (beta, beta)
        yield segs
    for i, c in enumerate(commons):
        limit = len(c) - 1 if i == len(commons) - 1 else len(c)
        for j in range(limit):
            cc = list(commons)
            cc[i] = c[:j] + c[j + 1:]
            yield _segments(cc, variants)
    for i, (beta, delta) in enumerate(variants):
        for side, s in ((0, beta), (1, delta)):
            for j in range(len(s)):
                vv = list(variants)
                pair = [beta, delta]
                pair[side] = s[:j] + s[j + 1:]
                vv[i] = tuple(pair)
                yield _segments(commons, vv)


def _segments(commons, variants) -> list:
    segs: list = []
    for i, c in enumerate(commons):
        segs.append(c)
        if i < len(variants):
            segs.append(tuple(variants[i]))
    return segs


def shrink(al: Alignment, failing: Callable[[Alignment], bool]) -> Alignment:
    """Greedy one-symbol deletions while ``failing`` still holds."""
    progress = True
    while progress:
        progress = False
        for segs in _candidates(al):
            try:
                cand = normalize(segs)
            except ValueError:
                continue
            if cand != al and failing(cand):
                al = cand
                progress = True
                break
    return al


# ------------------------------------------------------------------ drivers

@dataclass
class InstanceOutcome:
    index: int
    failures: List[str]
    record: Optional[str] = None


def _run_one(args) -> InstanceOutcome:
    inst, do_shrink = args
    rep = check_alignment(inst.alignment, pattern_seed=inst.seed * 7919 + inst.index)
    if rep.ok:
        return InstanceOutcome(inst.index, [])
    al = inst.alignment
    if do_shrink:
        al = shrink(al, lambda x: not check_alignment(x, pattern_seed=inst.index).ok)
    return InstanceOutcome(inst.index, rep.failures, dumps_alignment(al))


def run_suite(seed: int, count: int, max_len: int = 60, rate_lo: float = 0.01,
              rate_hi: float = 0.20, workers: int = 1, shrink_failures: bool = True,
              coalesce: bool = False) -> List[InstanceOutcome]:
    insts = [(inst, shrink_failures) for inst in
             corpus(seed, count, max_len=max_len, rate_lo=rate_lo, rate_hi=rate_hi, coalesce=coalesce)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_one, insts, chunksize=8))
    return [_run_one(x) for x in insts]


RUNNING_EXAMPLE = "aaabaa(abba/baabb)aba#"


def check_running_example() -> Report:
    rep = Report()
    al = parse_notation(RUNNING_EXAMPLE)
    built = build_aligned(al)
    c = built.analysis[0]
    rep.expect(c.alpha_a == b"baa", f"alpha^a = {c.alpha_a!r}, expected b'baa'")
    rep.expect(c.alpha_star == b"aabaa", f"alpha* = {c.alpha_star!r}, expected b'aabaa'")
    rep.expect(built.metrics.leaves == 24, f"leaves = {built.metrics.leaves}, expected 24")
    tails = [built.tree.label_text(v) for v in built.tree.leaves()
             if "(" in built.tree.label_text(v)]
    rep.expect(tails == ["aa(abba/baabb)aba#"], f"relabelled arcs: {tails}")
    return rep


__all__ = ["check_alignment", "check_running_example", "run_suite", "shrink",
           "repeat_test_violations", "sample_patterns", "Instance", "Report"]
