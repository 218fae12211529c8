"""Suffix tree of an alignment, built incrementally from the suffix tree of A.

Pipeline for an alignment with ``k`` variants (all chunk indices 1-based in
the comments, 0-based in code):

* A1: for every ``i <= k`` find ``alpha^a_i``, the longest suffix of ``alpha_i``
  occurring twice in A, on the untouched tree of A.
* A2: insert the suffixes of ``alpha^a_i delta_i alpha_{i+1} ... alpha_{k+1}``
  (the B reading) longer than the B tail after ``delta_i``.
* B1: on that tree, find ``alpha*_i`` (twice in A or in B).
* B2: insert the suffixes of ``alpha*_i delta_i ...`` longer than the A2 ones.
* C: suffixes starting before ``alpha*_i`` are left implicit. Their A leaf
  already spells ``alpha_i' beta_i ...``; the layout object reinterprets it as
  ``alpha_i' (beta_i/delta_i) ...`` so no leaf is touched.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .suffix_tree import (
    AlignedTail, ASuffixClass, InternalCorruptionError, LeafAnnotation, Span,
    SuffixTree, Work, build_mccreight,
)
from .text_model import (
    Alignment, InconsistentAlignmentError, Text, compose, format_notation,
    render,
)


@dataclass
class ChunkAnalysis:
    index: int                    # 1-based chunk number
    alpha: bytes
    alpha_a: Optional[bytes] = None
    alpha_b: Optional[bytes] = None   # filled by the oracle only, never by the builder
    alpha_star: Optional[bytes] = None
    alpha_hat: Optional[bytes] = None
    d: Optional[int] = None       # symbol preceding alpha_i in B


@dataclass
class Metrics:
    l_d: int
    l_1: int
    l_2: int
    leaves: int
    internal_nodes: int
    collisions: int
    work: Dict[str, Work] = field(default_factory=dict)

    @property
    def post_tree_work(self) -> Work:
        """Work spent after the suffix tree of A was available."""
        total = Work()
        for phase, w in self.work.items():
            if phase != "T^A":
                total = total + w
        return total

    def summary(self) -> str:
        return (f"leaves={self.leaves} l_d={self.l_d} l_1={self.l_1} l_2={self.l_2} "
                f"internal={self.internal_nodes} collisions={self.collisions}")


class AlignedLayout:
    """Offsets of every chunk in A and B, and the per-chunk split lengths.

    Classifies A leaves lazily, which is what keeps step C free.
    """

    def __init__(self, al: Alignment):
        ca, cb = compose(al, "A"), compose(al, "B")
        self.al = al
        self.k = al.k
        self.off_a = ca.chunk_offsets
        self.off_b = cb.chunk_offsets
        self.var_a = ca.variant_offsets
        self.var_b = cb.variant_offsets
        self.len_a = len(ca.text)
        self.len_b = len(cb.text)
        self.alpha_a_len: Optional[List[int]] = None
        self.star_len: Optional[List[int]] = None
        self.implicit = False

    def chunk_of_a(self, pos: int) -> int:
        return bisect_right(self.off_a, pos) - 1

    def classify_a(self, pos: int) -> LeafAnnotation:
        if pos >= self.off_a[self.k]:
            return LeafAnnotation(ASuffixClass.ONE, pos, pos + self.len_b - self.len_a)
        if not self.implicit:
            return LeafAnnotation(ASuffixClass.PLAIN, pos_a=pos)
        i = self.chunk_of_a(pos)
        rel = pos - self.off_a[i]
        if rel < len(self.al.commons[i]) - self.star_len[i]:
            return LeafAnnotation(ASuffixClass.FOUR, pos, self.off_b[i] + rel)
        return LeafAnnotation(ASuffixClass.TWO, pos_a=pos)

    def _type4_variant(self, leaf: int, tree: SuffixTree) -> Optional[int]:
        if not self.implicit or leaf in tree.leaf_data:
            return None
        t, pos = tree.leaf_suffix(leaf)
        if tree.ids[t] != "A" or pos >= self.off_a[self.k]:
            return None
        i = self.chunk_of_a(pos)
        if pos - self.off_a[i] < len(self.al.commons[i]) - self.star_len[i]:
            return i
        return None

    def split_depth(self, leaf: int, tree: SuffixTree) -> int:
        """Depth along ``leaf``'s path where its A and B readings part."""
        i = self._type4_variant(leaf, tree)
        _, pos = tree.leaf_suffix(leaf)
        return self.var_a[i] - pos

    def aligned_tail(self, leaf: int, tree: SuffixTree) -> Optional[AlignedTail]:
        i = self._type4_variant(leaf, tree)
        if i is None:
            return None
        if tree.start[leaf] >= self.var_a[i]:
            raise InternalCorruptionError(f"type-4 leaf {leaf} branches below its variant")
        return AlignedTail(Span(tree.txt[leaf], tree.start[leaf], self.var_a[i]), i + 1)

    def render_tail(self, lab: AlignedTail, tree: SuffixTree) -> str:
        i = lab.variant - 1
        beta, delta = self.al.variants[i]
        common = tree.texts[lab.span.text][lab.span.start:lab.span.end]
        return f"{render(common)}({render(beta)}/{render(delta)})" + format_notation(self.al, i + 1)

    def b_readings(self, leaf: int, tree: SuffixTree) -> Optional[tuple]:
        """For a type-4 leaf: ``(A offset where readings part, B offset where they resume)``."""
        i = self._type4_variant(leaf, tree)
        if i is None:
            return None
        return self.var_a[i], self.var_b[i]

    def explicit_after_a2(self, pos_b: int) -> bool:
        """Whether the B suffix at ``pos_b`` is spelled in the tree once A2 ran."""
        if pos_b >= self.off_b[self.k]:
            return True
        j = bisect_right(self.off_b, pos_b) - 1
        start = self.off_b[j] + len(self.al.commons[j]) - self.alpha_a_len[j]
        return pos_b >= start


# ----------------------------------------------------------------- searches

def _longest_repeated_suffix(tree: SuffixTree, alpha: bytes, lower: int) -> bytes:
    """Longest suffix of ``alpha`` at least ``lower`` long with two represented suffixes below it."""
    n = len(alpha)
    if lower >= n:
        return alpha
    j = 1
    while j <= lower:
        j *= 2
    while True:
        probe = min(j, n)
        loc = tree.locate(alpha, n - probe, n)
        if not tree.multiplicity_at_least_two(loc):
            length = probe
            break
        if probe == n:
            return alpha
        j *= 2
    while length - 1 > lower:
        if loc is None:
            loc = tree.locate(alpha, n - length + 1, n)
        else:
            loc = tree.drop_first(loc, alpha, n - length, n)
        length -= 1
        if tree.multiplicity_at_least_two(loc):
            return alpha[n - length:]
    return alpha[n - lower:]


def find_alpha_a(tree_a: SuffixTree, alpha: bytes) -> bytes:
    """Longest suffix of ``alpha`` occurring twice in A, by doubling then suffix links."""
    return _longest_repeated_suffix(tree_a, alpha, 0)


def find_alpha_star(tree_prime: SuffixTree, alpha: bytes, alpha_a: bytes) -> bytes:
    """Longest suffix of ``alpha`` occurring twice in A or in B.

    Only valid on the tree left by step A, where a suffix longer than
    ``alpha_a`` has two leaves exactly when it repeats in B.
    """
    return _longest_repeated_suffix(tree_prime, alpha, len(alpha_a))


# -------------------------------------------------------------------- steps

def _class3(q: int) -> LeafAnnotation:
    return LeafAnnotation(ASuffixClass.THREE, pos_b=q)


def _prepare(tree: SuffixTree, al: Alignment) -> AlignedLayout:
    if tree.layout is None:
        b = compose(al, "B").text
        tree.texts.append(b.data)
        tree.ids.append("B")
        tree.kind = "aligned"
        tree.layout = AlignedLayout(al)
    return tree.layout


def step_A(tree: SuffixTree, al: Alignment, analysis: List[ChunkAnalysis]) -> int:
    """Insert, per variant, the B suffixes starting in ``alpha^a_i delta_i``. Returns new leaves."""
    lay = _prepare(tree, al)
    lay.alpha_a_len = [len(c.alpha_a) for c in analysis[:al.k]]
    added = 0
    for i in range(al.k):
        frm = lay.off_b[i] + len(al.commons[i]) - lay.alpha_a_len[i]
        to = lay.off_b[i + 1] - 1
        rep = tree.insert_suffix_chain(1, frm, to, annotate=_class3,
                                       safe_last=lay.explicit_after_a2(to + 1))
        added += rep.new_leaves
    return added


def step_B(tree: SuffixTree, al: Alignment, analysis: List[ChunkAnalysis]) -> int:
    """Insert the B suffixes starting in ``alpha*_i`` but before ``alpha^a_i``."""
    lay = tree.layout
    added = 0
    for i in range(al.k):
        end_alpha = lay.off_b[i] + len(al.commons[i])
        frm = end_alpha - len(analysis[i].alpha_star)
        to = end_alpha - len(analysis[i].alpha_a) - 1
        rep = tree.insert_suffix_chain(1, frm, to, annotate=_class3,
                                       safe_last=lay.explicit_after_a2(to + 1))
        added += rep.new_leaves
    return added


def step_C(tree: SuffixTree, al: Alignment, analysis: List[ChunkAnalysis]) -> SuffixTree:
    """Turn every A leaf starting before ``alpha*_i`` into a type-4 leaf, implicitly."""
    lay = tree.layout
    lay.star_len = [len(c.alpha_star) for c in analysis[:al.k]]
    lay.implicit = True
    tree.kind = "aligned"
    return tree


# ------------------------------------------------------------------ metrics

def _count_at_least(text: bytes, pat: bytes, need: int) -> int:
    count = 0
    pos = text.find(pat)
    while pos >= 0 and count < need:
        count += 1
        pos = text.find(pat, pos + 1)
    return count


def alpha_hat(a: bytes, b: bytes, d: int, alpha: bytes) -> bytes:
    """Longest prefix ``x`` of ``alpha`` with ``d x`` occurring twice in A and B together."""
    m = 0
    while m < len(alpha):
        pat = bytes((d,)) + alpha[:m + 1]
        c = _count_at_least(a, pat, 2)
        if c < 2:
            c += _count_at_least(b, pat, 2 - c)
        if c < 2:
            break
        m += 1
    return alpha[:m]


def compute_metrics(al: Alignment, analysis: List[ChunkAnalysis], tree: SuffixTree,
                    work: Optional[Dict[str, Work]] = None) -> Metrics:
    a = compose(al, "A").text.data
    comp_b = compose(al, "B")
    b = comp_b.text.data
    for c in analysis[1:]:
        off = comp_b.chunk_offsets[c.index - 1]
        c.d = b[off - 1]
        c.alpha_hat = alpha_hat(a, b, c.d, c.alpha)
    return Metrics(
        l_d=sum(len(d) for _, d in al.variants),
        l_1=sum(len(c.alpha_star) for c in analysis[:al.k]),
        l_2=sum(len(c.alpha_hat) for c in analysis[1:]),
        leaves=tree.n_leaves,
        internal_nodes=tree.n_internal,
        collisions=sum(len(v) for v in tree.shared.values()),
        work=dict(work or {}),
    )


# ----------------------------------------------------------------- pipeline

@dataclass
class AlignedBuild:
    tree: SuffixTree
    analysis: List[ChunkAnalysis]
    metrics: Metrics
    alignment: Alignment
    tree_prime: Optional[SuffixTree] = None


def build_aligned(al: Alignment, tree_a: Optional[SuffixTree] = None,
                  keep_tree_prime: bool = False) -> AlignedBuild:
    """Build the suffix tree of ``al``.

    With ``tree_a`` (the suffix tree of A) the tree is transformed in place and
    the cost of building it is skipped. ``keep_tree_prime`` stores a copy of
    the tree as it stands after step A, for inspection.
    """
    bad = al.violations()
    if bad:
        raise InconsistentAlignmentError("; ".join(bad))
    a = compose(al, "A").text
    work: Dict[str, Work] = {}
    if tree_a is None:
        tree = build_mccreight(a)
        work["T^A"] = tree.work.snapshot()
    else:
        if tree_a.texts[:1] != [a.data] or tree_a.layout is not None or len(tree_a.texts) != 1:
            raise InconsistentAlignmentError("prebuilt tree is not the suffix tree of A")
        tree = tree_a

    def phase(name, fn):
        before = tree.work.snapshot()
        out = fn()
        work[name] = tree.work - before
        return out

    analysis = [ChunkAnalysis(i + 1, al.commons[i]) for i in range(al.k + 1)]
    for c, alpha_a_i in zip(analysis, phase("A1", lambda: [find_alpha_a(tree, c.alpha) for c in analysis[:al.k]])):
        c.alpha_a = alpha_a_i
    phase("A2", lambda: step_A(tree, al, analysis))
    tree_prime = tree.copy() if keep_tree_prime else None
    stars = phase("B1", lambda: [find_alpha_star(tree, c.alpha, c.alpha_a) for c in analysis[:al.k]])
    for c, s in zip(analysis, stars):
        c.alpha_star = s
    phase("B2", lambda: step_B(tree, al, analysis))
    phase("C", lambda: step_C(tree, al, analysis))
    metrics = compute_metrics(al, analysis, tree, work)
    return AlignedBuild(tree, analysis, metrics, al, tree_prime)


class AlignedIndex:
    """Convenience wrapper: build once, search many times."""

    def __init__(self, alignment: Alignment, tree_a: Optional[SuffixTree] = None):
        self.build = build_aligned(alignment, tree_a)

    @classmethod
    def from_texts(cls, a, b, coalesce: bool = False) -> "AlignedIndex":
        from .text_model import align
        if not isinstance(a, Text):
            a = Text.from_raw("A", a)
        if not isinstance(b, Text):
            b = Text.from_raw("B", b)
        return cls(align(a, b, coalesce=coalesce))

    @property
    def tree(self) -> SuffixTree:
        return self.build.tree

    @property
    def metrics(self) -> Metrics:
        return self.build.metrics

    @property
    def analysis(self) -> List[ChunkAnalysis]:
        return self.build.analysis

    def search(self, pattern):
        from .search import find_pattern
        if isinstance(pattern, str):
            pattern = pattern.encode("latin-1")
        return find_pattern(self.tree, pattern)

    def dump(self) -> str:
        return self.tree.dump()
