from __future__ import annotations

from aligntree.oracle import (
    count_occurrences, naive_a_suffixes, naive_chunks, naive_longest_repeated_suffix,
    naive_search,
)
from aligntree.text_model import Alignment, parse_notation
from conftest import RUN_A, RUN_B


def test_running_enumeration(running_alignment):
    enum = naive_a_suffixes(running_alignment)
    assert enum.distinct == 24 and enum.collisions == 0
    assert enum.by_class() == {1: 4, 2: 9, 3: 10, 4: 1}


def test_k0_enumeration():
    enum = naive_a_suffixes(Alignment((b"x\x00",), ()))
    assert enum.distinct == 2 and enum.by_class() == {1: 2}


def test_substitution_pair_enumeration():
    assert naive_a_suffixes(parse_notation("aaat(c/g)aaa#")).distinct == 10


def test_collision_reported():
    enum = naive_a_suffixes(parse_notation("a(/a)#"))
    assert len(enum.suffixes) == 4 and enum.distinct == 3 and enum.collisions == 1


def test_naive_search():
    assert naive_search(RUN_A, RUN_B, b"aabb").occurrences == [("A", 5), ("B", 7)]
    assert naive_search(RUN_A, RUN_B, b"baabb").occurrences == [("B", 6)]
    assert len(naive_search(RUN_A, RUN_B, b"").occurrences) == 13 + 14


def test_repeated_suffix():
    assert naive_longest_repeated_suffix(b"aaabaa", [RUN_A]) == b"baa"
    assert naive_longest_repeated_suffix(b"aaabaa", [RUN_A, RUN_B]) == b"aabaa"
    assert naive_longest_repeated_suffix(b"", [RUN_A]) == b""


def test_repeat_is_per_text_not_combined():
    # one occurrence in each text is not a repeat
    assert naive_longest_repeated_suffix(b"xy", [b"xy\x00", b"xy\x00"]) == b""


def test_chunks(running_alignment):
    c1, c2 = naive_chunks(running_alignment)
    assert (c1.alpha_a, c1.alpha_b, c1.alpha_star) == (b"baa", b"aabaa", b"aabaa")
    assert c2.d == ord("b") and c2.alpha_hat == b"a"


def test_count_overlapping():
    assert count_occurrences(b"aaaa", b"aa") == 3
