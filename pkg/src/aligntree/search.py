"""Pattern search over plain, generalized and aligned suffix trees."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Tuple

from .suffix_tree import ROOT, AlignedTail, ASuffixClass, SuffixTree
from .text_model import RESERVED

Occurrence = Tuple[str, int]


class InvalidPatternError(ValueError):
    pass


@dataclass
class SearchResult:
    occurrences: List[Occurrence] = field(default_factory=list)
    comparisons: int = 0

    def __len__(self) -> int:
        return len(self.occurrences)

    def positions(self, side: str) -> List[int]:
        return [off for sid, off in self.occurrences if sid == side]


def _check_pattern(p: bytes) -> bytes:
    if isinstance(p, str):
        p = p.encode("latin-1")
    p = bytes(p)
    bad = [c for c in p if c in RESERVED]
    if bad:
        raise InvalidPatternError(f"pattern contains reserved byte 0x{bad[0]:02x}")
    return p


def _occurrences(tree: SuffixTree, leaf: int) -> List[Occurrence]:
    out = []
    for ann in tree.leaf_annotations(leaf):
        if ann.cls in (ASuffixClass.ONE, ASuffixClass.FOUR):
            out.append(("A", ann.pos_a))
            out.append(("B", ann.pos_b))
        elif ann.pos_a is not None:
            out.append(("A", ann.pos_a))
        else:
            out.append(("B", ann.pos_b))
    return out


def _collect(tree: SuffixTree, v: int, res: SearchResult) -> None:
    stack = [v]
    while stack:
        u = stack.pop()
        res.comparisons += 1
        kids = tree.children[u]
        if kids is None:
            res.occurrences.extend(_occurrences(tree, u))
        else:
            stack.extend(kids.values())


def _all_positions(tree: SuffixTree) -> SearchResult:
    res = SearchResult()
    for sid, text in zip(tree.ids, tree.texts):
        res.occurrences.extend((sid, i) for i in range(len(text) - 1))
    return res


def _match(p: bytes, i: int, text: bytes, lo: int, hi: int, res: SearchResult) -> int:
    """Match ``p[i:]`` against ``text[lo:hi]``; return the new ``i`` or -1 on mismatch."""
    n = min(hi - lo, len(p) - i)
    res.comparisons += n
    if p[i:i + n] != text[lo:lo + n]:
        return -1
    return i + n


def find_pattern(tree: SuffixTree, p) -> SearchResult:
    """All occurrences of ``p`` in the indexed texts, sorted by (text, offset).

    The empty pattern occurs at every non-sentinel position.
    """
    p = _check_pattern(p)
    if not p:
        res = _all_positions(tree)
        res.occurrences.sort()
        return res
    res = SearchResult()
    m = len(p)
    node, i = ROOT, 0
    while i < m:
        res.comparisons += 1
        child = tree.children[node].get(p[i]) if tree.children[node] else None
        if child is None:
            return res
        lab = tree.edge_label(child)
        if isinstance(lab, AlignedTail):
            # alpha' first, then exactly one of the two readings
            a = tree.texts[lab.span.text]
            i = _match(p, i, a, lab.span.start, lab.span.end, res)
            if i < 0:
                return res
            if i == m:
                node = child
                break
            (ann,) = [x for x in tree.leaf_annotations(child) if x.cls is ASuffixClass.FOUR]
            cut_a, cut_b = tree.layout.b_readings(child, tree)
            b = tree.texts[1]
            res.comparisons += 1
            if p[i] == a[cut_a]:
                hit, text, lo = ("A", ann.pos_a), a, cut_a
            elif p[i] == b[cut_b]:
                hit, text, lo = ("B", ann.pos_b), b, cut_b
            else:
                return res
            if _match(p, i, text, lo, len(text), res) < 0:
                return res
            res.occurrences.append(hit)
            if hit[0] == "A":
                # B suffixes equal to the A reading share this leaf
                res.occurrences.extend(("B", x.pos_b) for x in tree.shared.get(child, ()))
            res.occurrences.sort()
            return res
        i = _match(p, i, tree.texts[lab.text], lab.start, lab.end, res)
        if i < 0:
            return res
        node = child
    _collect(tree, node, res)
    res.occurrences.sort()
    return res


def expand_all(tree: SuffixTree) -> List[Tuple[str, int, bytes]]:
    """Every suffix the tree represents, type-4 leaves expanded to both readings."""
    texts = dict(zip(tree.ids, tree.texts))
    out = []
    for leaf in tree.leaves():
        for sid, off in _occurrences(tree, leaf):
            out.append((sid, off, texts[sid][off:]))
    out.sort()
    return out
