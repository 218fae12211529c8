from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from aligntree.aligned_index import AlignedIndex, build_aligned
from aligntree.oracle import naive_all_suffixes, naive_search
from aligntree.search import InvalidPatternError, expand_all, find_pattern
from aligntree.suffix_tree import build_generalized, build_mccreight
from aligntree.text_model import Text, compose, parse_notation
from conftest import RUN_A, RUN_B, alignments


def occ(tree, p):
    return find_pattern(tree, p).occurrences


def test_running_examples(running_build):
    tree = running_build.tree
    assert occ(tree, b"aabb") == [("A", 5), ("B", 7)]
    assert occ(tree, b"aba") == [("A", 2), ("A", 10), ("B", 2), ("B", 5), ("B", 11)]
    assert occ(tree, b"zz") == []


def test_branching_inside_aligned_arc(running_build):
    tree = running_build.tree
    # both readings of the type-4 leaf share "aa"; the next symbol picks one
    assert occ(tree, b"aaabaaab") == [("A", 0)]
    assert occ(tree, b"aaabaab") == [("B", 0)]
    assert occ(tree, b"aaabaaa") == [("A", 0)]
    assert occ(tree, b"aaabaac") == []
    assert ("A", 0) in occ(tree, b"aaa") and ("B", 0) in occ(tree, b"aaa")


def test_empty_pattern_lists_every_position(running_build):
    got = occ(running_build.tree, b"")
    assert got == [("A", i) for i in range(13)] + [("B", i) for i in range(14)]


def test_reserved_bytes_rejected(running_build):
    for bad in (b"a\x00", b"\x01"):
        with pytest.raises(InvalidPatternError):
            find_pattern(running_build.tree, bad)


def test_str_patterns_accepted(running_build):
    assert find_pattern(running_build.tree, "aabb").occurrences == [("A", 5), ("B", 7)]


def test_counter_is_small(running_build):
    res = find_pattern(running_build.tree, b"aba")
    assert res.comparisons <= 3 + 16 * (len(res) + 1)


def test_expand_all_counts(running_build):
    assert len(expand_all(running_build.tree)) == 29
    assert len(expand_all(build_mccreight(Text.from_raw("A", b"a")))) == 2
    pair = parse_notation("aaat(c/g)aaa#")
    got = expand_all(build_aligned(pair).tree)
    assert got == naive_all_suffixes(compose(pair, "A").text, compose(pair, "B").text)
    assert len(got) == 18


def test_index_wrapper():
    idx = AlignedIndex.from_texts(b"aaabaaabbaaba", b"aaabaabaabbaba")
    assert idx.metrics.leaves == 24
    assert idx.search("aabb").occurrences == [("A", 5), ("B", 7)]


def test_exhaustive_small_patterns_all_tree_kinds():
    a, b = Text("A", RUN_A), Text("B", RUN_B)
    trees = {
        "aligned": build_aligned(parse_notation("aaabaa(abba/baabb)aba#")).tree,
        "generalized": build_generalized(a, b),
    }
    plain = build_mccreight(a)
    for n in range(0, 6):
        for p in map(bytes, itertools.product(b"ab", repeat=n)):
            want = naive_search(a, b, p).occurrences
            for tree in trees.values():
                assert occ(tree, p) == want, p
            assert occ(plain, p) == [x for x in want if x[0] == "A"], p


@given(alignments(max_chunk=10, max_var=4, max_k=4), st.data())
def test_aligned_equals_naive_and_generalized(al, data):
    a, b = compose(al, "A").text, compose(al, "B").text
    tree = build_aligned(al).tree
    gst = build_generalized(a, b)
    assert expand_all(tree) == naive_all_suffixes(a, b)
    body = data.draw(st.sampled_from([a.data[:-1], b.data[:-1]]))
    for _ in range(10):
        i = data.draw(st.integers(0, len(body)))
        j = data.draw(st.integers(i, min(len(body), i + 12)))
        p = body[i:j]
        want = naive_search(a, b, p).occurrences
        assert occ(tree, p) == want
        assert occ(gst, p) == want


@given(st.lists(st.sampled_from(b"ab"), max_size=40).map(bytes),
       st.lists(st.sampled_from(b"ab"), max_size=40).map(bytes),
       st.lists(st.sampled_from(b"ab"), max_size=12).map(bytes))
def test_generalized_equals_naive(x, y, p):
    a, b = Text.from_raw("A", x), Text.from_raw("B", y)
    assert occ(build_generalized(a, b), p) == naive_search(a, b, p).occurrences
