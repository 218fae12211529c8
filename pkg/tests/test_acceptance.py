"""Acceptance gate: one test and one PASS/FAIL line per criterion.

Tolerances and constants are fixed here and were chosen before measuring:
C_WORK bounds post-T^A construction work, C_SEARCH bounds search work per
reported occurrence, LINEARITY bounds McCreight's doubling ratio.

Run ``python tests/test_acceptance.py`` for the summary alone.
"""
from __future__ import annotations

import random
import sys
import time

import pytest

from aligntree.aligned_index import build_aligned
from aligntree.corpus import corpus
from aligntree.oracle import naive_all_suffixes, naive_search
from aligntree.search import expand_all, find_pattern
from aligntree.suffix_tree import build_generalized, build_mccreight
from aligntree.cli import main as cli_main
from aligntree.text_model import Text
from aligntree.verify import check_running_example, repeat_test_violations, sample_patterns

SEED = 2026
N_ORACLE = 1000          # instances for criteria 2, 4, 5, 6, 7
MAX_LEN = 200
K_MAX = 6
RATE = (0.01, 0.20)
PATTERNS = 50            # per instance, lengths 1..10
N_REPEAT = 250            # per alphabet, |A|,|B| <= 60
C_WORK = 16
C_SEARCH = 16
LINEARITY = 2.5
MCCREIGHT_N = (1000, 2000, 4000, 8000)

RESULTS: dict = {}
TIMING: dict = {}


def report(name: str, ok: bool, detail: str) -> None:
    line = f"[acceptance] {name}: {'PASS' if ok else 'FAIL'} - {detail}"
    RESULTS[name] = line


def _corpus(coalesce=False):
    return list(corpus(SEED, N_ORACLE, max_len=MAX_LEN, rate_lo=RATE[0], rate_hi=RATE[1],
                       k_max=K_MAX, coalesce=coalesce))


@pytest.fixture(scope="module")
def builds():
    t0 = time.perf_counter()
    out = [(inst, build_aligned(inst.alignment)) for inst in _corpus()]
    TIMING["build"] = time.perf_counter() - t0
    return out


def test_criterion_1_running_example():
    t0 = time.perf_counter()
    rep = check_running_example()
    elapsed = time.perf_counter() - t0
    ok = rep.ok and elapsed < 1.0
    detail = f"alpha^a=baa alpha*=aabaa leaves=24=14+5+5, one aa(abba/baabb)aba# arc, {elapsed:.3f}s"
    report("criterion 1 (worked example)", ok, detail if rep.ok else "; ".join(rep.failures))
    assert ok, rep.failures


def test_criterion_2_oracle_equivalence(builds):
    t0 = time.perf_counter()
    bad = []
    n_patterns = 0
    for inst, built in builds:
        a, b = inst.a, inst.b
        if expand_all(built.tree) != naive_all_suffixes(a, b):
            bad.append(f"#{inst.index} expansion")
        rng = random.Random(SEED * 31 + inst.index)
        for p in sample_patterns(a.data, b.data, rng, PATTERNS, max_len=10)[:PATTERNS]:
            n_patterns += 1
            if find_pattern(built.tree, p).occurrences != naive_search(a, b, p).occurrences:
                bad.append(f"#{inst.index} pattern {p!r}")
    elapsed = time.perf_counter() - t0 + TIMING.get("build", 0.0)
    ok = not bad and elapsed < 300 and len(builds) >= 1000
    report("criterion 2 (oracle equivalence)", ok,
           f"{len(builds)} instances, {n_patterns} patterns, {len(bad)} mismatches, {elapsed:.1f}s")
    assert ok, bad[:10]


def test_criterion_3_repeat_biconditionals():
    n = 0
    checked = 0
    bad = []
    for alphabet in (b"acgt", b"ab"):
        for inst in corpus(SEED + 3, N_REPEAT, max_len=60, alphabet=alphabet):
            assert len(inst.a) <= 60 and len(inst.b) <= 60
            built = build_aligned(inst.alignment, keep_tree_prime=True)
            for c in built.analysis[:inst.alignment.k]:
                checked += len(c.alpha) - len(c.alpha_a)
            bad += repeat_test_violations(inst.alignment, built.tree_prime, built.analysis)
            n += 1
    ok = not bad and n >= 200
    report("criterion 3 (two-leaf test vs repeats after step A)", ok,
           f"{n} instances, {checked} suffixes checked twice, {len(bad)} violations")
    assert ok, bad[:10]


def test_criterion_4_leaf_formula_exact_with_coalescing():
    bad = []
    explained = 0
    insts = _corpus(coalesce=True)
    for inst in insts:
        m = build_aligned(inst.alignment).metrics
        formula = len(inst.a) + m.l_d + m.l_1
        if m.leaves != formula:
            bad.append((inst.index, m.collisions))
            explained += formula - m.leaves == m.collisions
    report("criterion 4a (leaves = |A|+l_d+l_1, coalesced)", not bad,
           f"{len(insts) - len(bad)}/{len(insts)} exact; {explained}/{len(bad)} misses "
           f"are exactly the shared-leaf collisions")
    assert not bad, f"{len(bad)} instances differ, e.g. {bad[:5]} (index, collisions)"


def test_criterion_4_leaf_formula_minus_collisions(builds):
    bad = [inst.index for inst, built in builds
           if built.metrics.leaves != len(inst.a) + built.metrics.l_d + built.metrics.l_1
           - built.metrics.collisions]
    report("criterion 4b (leaves = |A|+l_d+l_1-collisions)", not bad,
           f"{len(builds) - len(bad)}/{len(builds)} exact")
    assert not bad


def test_criterion_5_incremental_equals_scratch(builds):
    bad = []
    for inst, built in builds:
        tree_a = build_mccreight(inst.a)
        if build_aligned(inst.alignment, tree_a=tree_a).tree.dump() != built.tree.dump():
            bad.append(inst.index)
    report("criterion 5 (incremental = from scratch)", not bad,
           f"{len(builds) - len(bad)}/{len(builds)} byte-identical dumps")
    assert not bad


def test_criterion_6_work_counters(builds):
    worst_build = 0.0
    for inst, built in builds:
        m, an = built.metrics, built.analysis
        k = inst.alignment.k
        budget = sum(len(c.alpha_star) for c in an[:k]) + m.l_d \
            + sum(len(c.alpha_hat) for c in an[1:]) + k + 1
        worst_build = max(worst_build, m.post_tree_work.total / budget)

    rng = random.Random(SEED)
    ratios = []
    for n in MCCREIGHT_N:
        w = [build_mccreight(Text.from_raw("A", bytes(rng.choice(b"acgt") for _ in range(size))))
             .work.total for size in (n, 2 * n)]
        ratios.append(w[1] / w[0])

    worst_search = 0.0
    for inst, built in builds[:300]:
        prng = random.Random(inst.index)
        for p in sample_patterns(inst.a.data, inst.b.data, prng, PATTERNS):
            res = find_pattern(built.tree, p)
            worst_search = max(worst_search, (res.comparisons - len(p)) / (len(res) + 1))

    ok = worst_build <= C_WORK and max(ratios) <= LINEARITY and worst_search <= C_SEARCH
    report("criterion 6 (work counters)", ok,
           f"build max ratio {worst_build:.2f} <= {C_WORK}; McCreight doubling "
           f"{', '.join(f'{r:.2f}' for r in ratios)} <= {LINEARITY}; "
           f"search max {worst_search:.2f} <= {C_SEARCH}")
    assert ok


def test_criterion_7_generalized_baseline(builds, tmp_path, capsys):
    bad = []
    (tmp_path / "a").write_bytes(b"aaabaaabbaaba")
    (tmp_path / "b").write_bytes(b"aaabaabaabbaba")
    cli_main(["build", str(tmp_path / "a"), str(tmp_path / "b"), "--gst"])
    cli_line = capsys.readouterr().out.splitlines()[0]
    if not cli_line.startswith("leaves=29 "):
        bad.append(("cli", cli_line))
    for inst, built in builds:
        gst = build_generalized(inst.a, inst.b)
        m = built.metrics
        if gst.n_leaves != len(inst.a) + len(inst.b):
            bad.append((inst.index, "gst leaves"))
        if gst.n_leaves - m.leaves != len(inst.b) - m.l_d - m.l_1 + m.collisions:
            bad.append((inst.index, "saving"))
    report("criterion 7 (generalized baseline)", not bad,
           f"build --gst on the worked example: {cli_line.split()[0]}; "
           f"{len(builds) - len(bad)}/{len(builds)} instances: gst=|A|+|B| and saving=|B|-l_d-l_1+collisions")
    assert not bad


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
