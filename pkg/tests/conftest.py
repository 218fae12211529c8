from __future__ import annotations

import sys

import pytest
from hypothesis import settings, strategies as st

from aligntree import build_aligned, parse_notation
from aligntree.text_model import SENTINEL, normalize

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

RUNNING = "aaabaa(abba/baabb)aba#"
RUN_A = b"aaabaaabbaaba\x00"
RUN_B = b"aaabaabaabbaba\x00"


@pytest.fixture
def running_alignment():
    return parse_notation(RUNNING)


@pytest.fixture
def running_build(running_alignment):
    return build_aligned(running_alignment, keep_tree_prime=True)


small_text = st.binary(min_size=0, max_size=12).map(lambda b: bytes(x % 3 + 97 for x in b))


@st.composite
def alignments(draw, max_chunk=8, max_var=4, max_k=4, alphabet=b"ab"):
    """Random loose segment lists, normalized."""
    sym = st.sampled_from(list(alphabet))
    chunk = lambda lo, hi: st.lists(sym, min_size=lo, max_size=hi).map(bytes)
    k = draw(st.integers(0, max_k))
    segs = [draw(chunk(0, max_chunk))]
    for _ in range(k):
        segs.append((draw(chunk(0, max_var)), draw(chunk(0, max_var))))
        segs.append(draw(chunk(0, max_chunk)))
    segs[-1] = segs[-1] + bytes((SENTINEL,))
    return normalize(segs, coalesce=draw(st.booleans()))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for line in results.values():
            terminalreporter.write_line(line)
