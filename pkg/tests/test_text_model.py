from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from aligntree.text_model import (
    Alignment, InconsistentAlignmentError, MalformedTextError, Text, align, compose,
    dumps_alignment, format_notation, from_notation, loads_alignment, normalize,
    parse_notation,
)
from conftest import RUN_A, RUN_B, RUNNING, alignments


def al(commons, variants):
    return normalize(([from_notation(c) for c in commons],
                      [(from_notation(b), from_notation(d)) for b, d in variants]))


def test_shared_first_symbol_moves_left():
    got = al(["a", "x#"], [("ab", "ac")])
    assert got.commons == (b"aa", from_notation("x#"))
    assert got.variants == ((b"b", b"c"),)


def test_empty_variant_merges():
    got = al(["aa", "x#"], [("", "")])
    assert got.commons == (from_notation("aax#"),)
    assert got.variants == ()


def test_running_example_unchanged(running_alignment):
    assert running_alignment.commons == (b"aaabaa", b"aba\x00")
    assert running_alignment.variants == ((b"abba", b"baabb"),)
    assert normalize(running_alignment) == running_alignment


def test_rotation_when_one_side_empty():
    # (""/"a") before "a#" shares 'a' with the chunk after it
    got = al(["", "a#"], [("", "a")])
    assert format_notation(got) == "a(/a)#"


def test_variants_merge_across_empty_chunk():
    got = normalize([b"x", (b"a", b"b"), b"", (b"c", b"d"), b"y\x00"])
    assert got.variants == ((b"ac", b"bd"),)


def test_coalesce_moves_trailing_symbol():
    raw = [b"x", (b"ac", b"bc"), b"y\x00"]
    assert normalize(raw).variants == ((b"ac", b"bc"),)
    got = normalize(raw, coalesce=True)
    assert got.variants == ((b"a", b"b"),)
    assert got.commons == (b"x", b"cy\x00")


def test_compose_running():
    a = compose(parse_notation(RUNNING), "A")
    b = compose(parse_notation(RUNNING), "B")
    assert a.text.data == RUN_A and len(a.text) == 14
    assert b.text.data == RUN_B and len(b.text) == 15
    assert a.chunk_offsets == (0, 10) and b.chunk_offsets == (0, 11)


def test_compose_k0():
    assert compose(Alignment((b"x\x00",), ()), "A").text.data == b"x\x00"


def test_errors():
    with pytest.raises(MalformedTextError):
        normalize([b"abc"])
    with pytest.raises(MalformedTextError):
        normalize([b"a\x00b", (b"a", b"c"), b"\x00"])
    with pytest.raises(InconsistentAlignmentError):
        normalize([("C", b"ab", b"ac"), (b"x", b"y"), b"\x00"])
    with pytest.raises(MalformedTextError):
        Text.from_raw("A", b"a\x01b")
    with pytest.raises(InconsistentAlignmentError):
        Alignment((b"a", b"b\x00"), ())


def test_violations_detected():
    bad = Alignment((b"a", b"a\x00"), ((b"a", b"ab"),))
    assert not bad.is_valid()
    assert any("same symbol" in v for v in bad.violations())


def test_align_single_substitution():
    got = align(Text.from_raw("A", b"aaatcaaa"), Text.from_raw("B", b"aaatgaaa"))
    assert got.commons == (b"aaat", b"aaa\x00")
    assert got.variants == ((b"c", b"g"),)


def test_align_identical():
    t = Text.from_raw("A", b"acgtacgt")
    got = align(t, Text("B", t.data))
    assert got.commons == (t.data,) and got.k == 0


def test_align_running_pair_recomposes():
    got = align(Text("A", RUN_A), Text("B", RUN_B))
    assert got.is_valid()
    assert compose(got, "A").text.data == RUN_A
    assert compose(got, "B").text.data == RUN_B


def test_file_format_round_trip():
    al0 = normalize([b"a\tb\\", (b"\x7f", b""), b"c d\x00"])
    text = dumps_alignment(al0)
    assert "\\x09" in text and "\\x5c" in text
    assert loads_alignment(text) == al0


def test_file_format_rejects_garbage():
    with pytest.raises(MalformedTextError):
        loads_alignment("X\tabc\n")


def test_notation_round_trip():
    assert format_notation(parse_notation(RUNNING)) == RUNNING


@given(alignments())
def test_normalize_idempotent_and_valid(al0):
    assert al0.is_valid()
    assert normalize(al0) == al0


@given(alignments(), st.booleans())
def test_normalize_preserves_texts(al0, coalesce):
    again = normalize(al0, coalesce=coalesce)
    for side in "AB":
        assert compose(again, side).text == compose(al0, side).text


texts = st.lists(st.sampled_from(b"acgt"), max_size=80).map(bytes)


@given(texts, st.lists(st.tuples(st.integers(0, 79), st.sampled_from(b"acgt")), max_size=5))
def test_align_round_trip(base, edits):
    other = bytearray(base)
    for pos, c in edits:
        if other:
            other[pos % len(other)] = c
        else:
            other.append(c)
    a, b = Text.from_raw("A", base), Text.from_raw("B", bytes(other))
    got = align(a, b)
    assert got.is_valid()
    assert compose(got, "A").text == a
    assert compose(got, "B").text.data == b.data


@given(texts, texts)
def test_align_unrelated_texts(x, y):
    got = align(Text.from_raw("A", x), Text.from_raw("B", y))
    assert compose(got, "A").text.data == x + b"\x00"
    assert compose(got, "B").text.data == y + b"\x00"
