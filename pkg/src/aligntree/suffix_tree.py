"""Compacted suffix trees with suffix links.

One node table serves three kinds of tree: the suffix tree of a single text,
the generalized suffix tree of two texts and the suffix tree of an alignment.
Edge labels are spans ``(text index, start, end)`` into the stored texts.

Construction is McCreight's algorithm expressed as :meth:`SuffixTree.insert_suffix_chain`:
consecutive suffixes ``t[q:]`` are inserted longest first, each new head being
found from the previous one through a suffix link plus a skip/count rescan.
The same routine inserts suffixes of B into the tree of A, where the set of
represented strings is not always closed under taking suffixes. Every node
therefore carries a ``safe`` flag: it is set when some leaf below represents a
string whose one-symbol-shorter suffix is guaranteed to be in the tree. Rescans
below unsafe heads fall back to symbol-by-symbol scanning.
"""
from __future__ import annotations

import copy

from dataclasses import dataclass, field, fields
from enum import IntEnum
from typing import Callable, Iterator, List, NamedTuple, Optional

from .text_model import SENTINEL, SENTINEL_B, Text, render

ROOT = 0
NO_LINK = -1


class InternalCorruptionError(RuntimeError):
    """A structural invariant of the tree was found broken."""


class ASuffixClass(IntEnum):
    PLAIN = 0
    ONE = 1     # suffix of the last common chunk, shared by A and B
    TWO = 2     # A-only suffix starting in alpha*_i beta_i
    THREE = 3   # B-only suffix starting in alpha*_i delta_i
    FOUR = 4    # alpha_i' (beta_i/delta_i) ..., one leaf for two suffixes


@dataclass(frozen=True)
class LeafAnnotation:
    cls: ASuffixClass
    pos_a: Optional[int] = None
    pos_b: Optional[int] = None

    def __str__(self) -> str:
        parts = [] if self.cls is ASuffixClass.PLAIN else [f"c{int(self.cls)}"]
        if self.pos_a is not None:
            parts.append(f"A:{self.pos_a}")
        if self.pos_b is not None:
            parts.append(f"B:{self.pos_b}")
        return " ".join(parts)


@dataclass
class Work:
    comparisons: int = 0
    node_hops: int = 0
    link_hops: int = 0
    fallback_scans: int = 0

    def snapshot(self) -> "Work":
        return Work(**{f.name: getattr(self, f.name) for f in fields(self)})

    def __sub__(self, other: "Work") -> "Work":
        return Work(**{f.name: getattr(self, f.name) - getattr(other, f.name) for f in fields(self)})

    def __add__(self, other: "Work") -> "Work":
        return Work(**{f.name: getattr(self, f.name) + getattr(other, f.name) for f in fields(self)})

    @property
    def total(self) -> int:
        return self.comparisons + self.node_hops + self.link_hops


@dataclass
class ChainReport:
    new_leaves: int = 0
    new_internal: int = 0
    shared: int = 0
    work: Work = field(default_factory=Work)


class Locus(NamedTuple):
    """A point on the tree: ``off`` symbols down the edge into ``child``,
    or exactly at ``node`` when ``child`` is -1."""
    node: int
    child: int
    off: int
    depth: int


@dataclass(frozen=True)
class Span:
    text: int
    start: int
    end: int


@dataclass(frozen=True)
class AlignedTail:
    """Terminal label ``alpha'(beta_i/delta_i)alpha_{i+1}...`` of a type-4 leaf."""
    span: Span         # the common part alpha' inside A
    variant: int       # 1-based variant index i


class SuffixTree:
    """Node table of a compacted suffix trie over one or two texts."""

    def __init__(self, texts: List[bytes], ids: List[str], kind: str = "plain"):
        self.texts = list(texts)
        self.ids = list(ids)
        self.kind = kind
        self.parent = [ROOT]
        self.txt = [0]
        self.start = [0]
        self.end = [0]
        self.depth = [0]
        self.children: list = [{}]
        self.link = [NO_LINK]
        self.safe = [True]
        # explicit annotations of inserted leaves; McCreight leaves are implicit
        self.leaf_data: dict = {}
        self.shared: dict = {}
        self.layout = None   # set for aligned trees, see aligned_index
        self.work = Work()

    # ------------------------------------------------------------------ basics

    def __len__(self) -> int:
        return len(self.parent)

    def is_leaf(self, v: int) -> bool:
        return self.children[v] is None

    def leaves(self) -> Iterator[int]:
        return (v for v in range(len(self.parent)) if self.children[v] is None)

    @property
    def n_leaves(self) -> int:
        return sum(1 for c in self.children if c is None)

    @property
    def n_internal(self) -> int:
        return sum(1 for c in self.children if c is not None)

    def edge_len(self, v: int) -> int:
        return self.end[v] - self.start[v]

    def edge_bytes(self, v: int) -> bytes:
        return self.texts[self.txt[v]][self.start[v]:self.end[v]]

    def path_bytes(self, v: int) -> bytes:
        parts = []
        while v != ROOT:
            parts.append(self.edge_bytes(v))
            v = self.parent[v]
        return b"".join(reversed(parts))

    def leaf_suffix(self, v: int) -> tuple:
        """``(text index, offset)`` of the suffix spelled by leaf ``v``."""
        return self.txt[v], self.end[v] - self.depth[v]

    def copy(self) -> "SuffixTree":
        other = SuffixTree(self.texts, self.ids, self.kind)
        other.parent = list(self.parent)
        other.txt = list(self.txt)
        other.start = list(self.start)
        other.end = list(self.end)
        other.depth = list(self.depth)
        other.children = [None if c is None else dict(c) for c in self.children]
        other.link = list(self.link)
        other.safe = list(self.safe)
        other.leaf_data = {k: list(v) for k, v in self.leaf_data.items()}
        other.shared = {k: list(v) for k, v in self.shared.items()}
        other.layout = copy.copy(self.layout)
        other.work = self.work.snapshot()
        return other

    def _new_node(self, parent: int, t: int, start: int, end: int, depth: int,
                  leaf: bool, safe: bool) -> int:
        v = len(self.parent)
        self.parent.append(parent)
        self.txt.append(t)
        self.start.append(start)
        self.end.append(end)
        self.depth.append(depth)
        self.children.append(None if leaf else {})
        self.link.append(NO_LINK)
        self.safe.append(safe)
        return v

    def _split(self, node: int, child: int, off: int) -> int:
        """Insert a node ``off`` symbols down the edge into ``child``."""
        t, st = self.txt[child], self.start[child]
        mid = self._new_node(node, t, st, st + off, self.depth[node] + off,
                             leaf=False, safe=self.safe[child])
        self.children[mid][self.texts[t][st + off]] = child
        self.children[node][self.texts[t][st]] = mid
        self.parent[child] = mid
        self.start[child] = st + off
        return mid

    def _mark_safe(self, v: int) -> None:
        while not self.safe[v]:
            self.safe[v] = True
            if v == ROOT:
                break
            v = self.parent[v]

    # ------------------------------------------------------------- navigation

    def _scan(self, loc: Locus, s: bytes, i: int, n: int) -> tuple:
        """Match ``s[i:n]`` symbol by symbol from ``loc``; stop at the first mismatch."""
        w = self.work
        texts, start, end, children = self.texts, self.start, self.end, self.children
        node, child, off = loc.node, loc.child, loc.off
        while True:
            if child < 0:
                if i >= n:
                    return Locus(node, -1, 0, self.depth[node]), i
                kids = children[node]
                w.comparisons += 1
                if kids is None or s[i] not in kids:
                    return Locus(node, -1, 0, self.depth[node]), i
                child = kids[s[i]]
                off = 1
                i += 1
            ct = texts[self.txt[child]]
            st = start[child]
            ln = end[child] - st
            m = min(ln - off, n - i)
            if m > 0:
                if ct[st + off:st + off + m] == s[i:i + m]:
                    w.comparisons += m
                    off += m
                    i += m
                else:
                    while ct[st + off] == s[i]:
                        w.comparisons += 1
                        off += 1
                        i += 1
                    w.comparisons += 1
                    return Locus(node, child, off, self.depth[node] + off), i
            if off == ln:
                node, child, off = child, -1, 0
                continue
            return Locus(node, child, off, self.depth[node] + off), i

    def _rescan(self, node: int, s: bytes, i: int, n: int) -> Locus:
        """Skip/count descent along ``s[i:n]``, which must be spelled in the tree."""
        w = self.work
        children, start, end = self.children, self.start, self.end
        while i < n:
            w.node_hops += 1
            kids = children[node]
            child = kids.get(s[i]) if kids is not None else None
            if child is None:
                raise InternalCorruptionError(
                    f"rescan left the tree at depth {self.depth[node]} (suffix link invariant broken)"
                )
            ln = end[child] - start[child]
            if n - i < ln:
                return Locus(node, child, n - i, self.depth[node] + n - i)
            i += ln
            node = child
        return Locus(node, -1, 0, self.depth[node])

    def _linked_ancestor(self, v: int) -> int:
        while v != ROOT and (self.children[v] is None or self.link[v] == NO_LINK):
            v = self.parent[v]
        return v

    def locate(self, s: bytes, lo: int = 0, hi: Optional[int] = None) -> Optional[Locus]:
        """Locus of ``s[lo:hi]`` reached from the root, or ``None`` when absent."""
        if hi is None:
            hi = len(s)
        loc, i = self._scan(Locus(ROOT, -1, 0, 0), s, lo, hi)
        return loc if i == hi else None

    def drop_first(self, loc: Locus, s: bytes, lo: int, hi: int) -> Locus:
        """Given the locus of ``s[lo:hi]``, return the locus of ``s[lo+1:hi]``.

        The shorter string must be spelled in the tree.
        """
        w = self._linked_ancestor(loc.node)
        if w == ROOT:
            start_node, i = ROOT, lo + 1
        else:
            self.work.link_hops += 1
            start_node = self.link[w]
            i = lo + self.depth[w]
        return self._rescan(start_node, s, i, hi)

    # ------------------------------------------------------------ multiplicity

    def leaf_annotations(self, v: int) -> tuple:
        """Annotations of every suffix represented by leaf ``v``."""
        anns = self.leaf_data.get(v)
        if anns is None:
            t, pos = self.leaf_suffix(v)
            if self.layout is not None and self.ids[t] == "A":
                anns = [self.layout.classify_a(pos)]
            elif self.ids[t] == "A":
                anns = [LeafAnnotation(ASuffixClass.PLAIN, pos_a=pos)]
            else:
                anns = [LeafAnnotation(ASuffixClass.PLAIN, pos_b=pos)]
        else:
            anns = list(anns)
        for ann in self.shared.get(v, ()):
            anns.append(ann)
        return tuple(anns)

    def _weight(self, leaf: int, depth: int) -> int:
        """Number of represented suffixes having the length-``depth`` prefix of ``leaf``'s path."""
        total = 0
        for ann in self.leaf_annotations(leaf):
            if ann.cls is ASuffixClass.ONE:
                total += 2
            elif ann.cls is ASuffixClass.FOUR:
                total += 2 if depth <= self.layout.split_depth(leaf, self) else 1
            else:
                total += 1
        return total

    def multiplicity_at_least_two(self, loc: Optional[Locus]) -> bool:
        if loc is None:
            return False
        v = loc.node if loc.child < 0 else loc.child
        if v == ROOT and len(self.children[ROOT]) == 1:
            # text made of the sentinel alone
            (v,) = self.children[ROOT].values()
        if self.children[v] is not None:
            return True
        return self._weight(v, loc.depth) >= 2

    # ------------------------------------------------------------ construction

    def insert_suffix_chain(self, t: int, frm: int, to: int,
                            annotate: Optional[Callable[[int], LeafAnnotation]] = None,
                            safe_last: bool = True) -> ChainReport:
        """Insert ``texts[t][q:]`` for ``q = frm .. to`` (inclusive), longest first.

        A suffix that is already spelled by an existing leaf does not get a leaf
        of its own; its annotation is attached to that leaf instead.
        """
        report = ChainReport()
        if frm > to:
            return report
        before = self.work.snapshot()
        s = self.texts[t]
        n = len(s)
        depth, children, link = self.depth, self.children, self.link
        head = -1
        head_safe = True
        for q in range(frm, to + 1):
            if head <= ROOT:
                loc, i = self._scan(Locus(ROOT, -1, 0, 0), s, q, n)
            else:
                target = q + depth[head] - 1
                w = self._linked_ancestor(head if children[head] is not None else self.parent[head])
                if w == ROOT:
                    start_node = ROOT
                else:
                    self.work.link_hops += 1
                    start_node = link[w]
                i0 = q + depth[start_node]
                if head_safe:
                    loc = self._rescan(start_node, s, i0, target)
                    i = target
                else:
                    self.work.fallback_scans += 1
                    loc, i = self._scan(Locus(start_node, -1, 0, depth[start_node]), s, i0, target)
                if children[head] is not None and link[head] == NO_LINK and i == target:
                    if loc.child < 0:
                        link[head] = loc.node
                    else:
                        ct = self.texts[self.txt[loc.child]]
                        if i < n and ct[self.start[loc.child] + loc.off] != s[i]:
                            self.work.comparisons += 1
                            mid = self._split(loc.node, loc.child, loc.off)
                            report.new_internal += 1
                            link[head] = mid
                            loc = Locus(mid, -1, 0, depth[mid])
                if i == target:
                    loc, i = self._scan(loc, s, i, n)
            leaf_safe = safe_last or q != to
            if i == n:
                # the whole suffix is already spelled: share the leaf
                v = loc.node if loc.child < 0 else -1
                if v < 0 or children[v] is not None:
                    raise InternalCorruptionError("suffix ends inside the tree but not at a leaf")
                ann = annotate(q) if annotate else self._default_annotation(t, q)
                self.shared.setdefault(v, []).append(ann)
                report.shared += 1
                head = v
                head_safe = self.safe[v]
                continue
            if loc.child >= 0:
                node = self._split(loc.node, loc.child, loc.off)
                report.new_internal += 1
            else:
                node = loc.node
            # the new leaf cannot witness its own successor, which is not in yet
            head_safe = self.safe[node]
            leaf = self._new_node(node, t, i, n, n - q, leaf=True, safe=leaf_safe)
            children[node][s[i]] = leaf
            if annotate is not None:
                self.leaf_data[leaf] = [annotate(q)]
            if leaf_safe and not self.safe[node]:
                self._mark_safe(node)
            report.new_leaves += 1
            head = node
        report.work = self.work - before
        return report

    def _default_annotation(self, t: int, pos: int) -> LeafAnnotation:
        if self.ids[t] == "A":
            return LeafAnnotation(ASuffixClass.PLAIN, pos_a=pos)
        return LeafAnnotation(ASuffixClass.PLAIN, pos_b=pos)

    # ------------------------------------------------------------------ labels

    def edge_label(self, v: int):
        """``Span`` for ordinary arcs, ``AlignedTail`` for type-4 terminal arcs."""
        span = Span(self.txt[v], self.start[v], self.end[v])
        if self.layout is not None and self.children[v] is None:
            tail = self.layout.aligned_tail(v, self)
            if tail is not None:
                return tail
        return span

    def label_text(self, v: int) -> str:
        lab = self.edge_label(v)
        if isinstance(lab, AlignedTail):
            return self.layout.render_tail(lab, self)
        return render(self.texts[lab.text][lab.start:lab.end])

    # -------------------------------------------------------------------- dump

    def preorder(self) -> Iterator[tuple]:
        """``(node, level)`` pairs, children in ascending first-symbol order."""
        stack = [(ROOT, 0)]
        while stack:
            v, lvl = stack.pop()
            yield v, lvl
            kids = self.children[v]
            if kids:
                for c in sorted(kids, reverse=True):
                    stack.append((kids[c], lvl + 1))

    def dump(self) -> str:
        lines = []
        for v, lvl in self.preorder():
            label = "" if v == ROOT else self.label_text(v)
            ann = ""
            if self.children[v] is None:
                ann = " | ".join(str(a) for a in self.leaf_annotations(v))
            lines.append(f"{lvl}\t{label}\t{ann}".rstrip("\t"))
        return "\n".join(lines) + "\n"

    # ------------------------------------------------------------------ checks

    def check(self) -> None:
        """Raise :class:`InternalCorruptionError` on any structural violation."""
        for v in range(len(self.parent)):
            kids = self.children[v]
            if v != ROOT:
                if self.edge_len(v) <= 0:
                    raise InternalCorruptionError(f"node {v} has an empty arc")
                p = self.parent[v]
                if self.depth[v] != self.depth[p] + self.edge_len(v):
                    raise InternalCorruptionError(f"node {v} has a wrong depth")
                first = self.texts[self.txt[v]][self.start[v]]
                if self.children[p].get(first) != v:
                    raise InternalCorruptionError(f"node {v} is not registered under its first symbol")
            if kids is None:
                continue
            if v != ROOT and len(kids) < 2:
                raise InternalCorruptionError(f"internal node {v} has {len(kids)} children")
            if self.link[v] != NO_LINK and v != ROOT:
                target = self.link[v]
                if self.path_bytes(target) != self.path_bytes(v)[1:]:
                    raise InternalCorruptionError(f"suffix link of node {v} is wrong")


# ---------------------------------------------------------------- builders

def build_mccreight(t: Text) -> SuffixTree:
    """Suffix tree of one sentinel-terminated text."""
    tree = SuffixTree([t.data], [t.id], kind="plain")
    tree.insert_suffix_chain(0, 0, len(t.data) - 1)
    return tree


def build_generalized(a: Text, b: Text) -> SuffixTree:
    """Generalized suffix tree; B's terminator is remapped so the two differ."""
    b_data = b.data[:-1] + bytes((SENTINEL_B,))
    tree = SuffixTree([a.data], ["A"], kind="generalized")
    tree.insert_suffix_chain(0, 0, len(a.data) - 1)
    tree.texts.append(b_data)
    tree.ids.append("B")
    tree.insert_suffix_chain(1, 0, len(b_data) - 1)
    return tree


def locus(tree: SuffixTree, s: bytes) -> Optional[Locus]:
    return tree.locate(s)


def has_two_chi_leaves(tree: SuffixTree, chi: bytes) -> bool:
    """True when at least two represented suffixes start with ``chi``."""
    return tree.multiplicity_at_least_two(tree.locate(chi))


def dump(tree: SuffixTree) -> str:
    return tree.dump()


__all__ = [
    "SuffixTree", "Locus", "Span", "AlignedTail", "LeafAnnotation", "ASuffixClass",
    "Work", "ChainReport", "InternalCorruptionError", "build_mccreight",
    "build_generalized", "locus", "has_two_chi_leaves", "dump", "ROOT", "SENTINEL",
]
