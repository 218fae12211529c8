"""Brute-force reference implementations.

Deliberately independent of the tree code: offsets, repeated suffixes and
occurrences are all recomputed here by direct scanning.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .search import SearchResult
from .text_model import SENTINEL, Alignment, Text

BytesLike = Union[bytes, Text]


def _raw(t: BytesLike) -> bytes:
    return t.data if isinstance(t, Text) else bytes(t)


def count_occurrences(text: bytes, x: bytes) -> int:
    """Number of (possibly overlapping) occurrences of ``x`` in ``text``."""
    n = len(x)
    return sum(1 for j in range(len(text) - n + 1) if text[j:j + n] == x)


def naive_longest_repeated_suffix(alpha: bytes, texts: Sequence[BytesLike]) -> bytes:
    """Longest suffix of ``alpha`` occurring twice within one of ``texts``."""
    raws = [_raw(t) for t in texts]
    for length in range(len(alpha), 0, -1):
        x = alpha[len(alpha) - length:]
        if any(count_occurrences(t, x) >= 2 for t in raws):
            return x
    return b""


def naive_alpha_hat(a: bytes, b: bytes, d: int, alpha: bytes) -> bytes:
    best = b""
    for m in range(1, len(alpha) + 1):
        x = bytes((d,)) + alpha[:m]
        if count_occurrences(a, x) + count_occurrences(b, x) >= 2:
            best = alpha[:m]
        else:
            break
    return best


def _texts(al: Alignment) -> Tuple[bytes, bytes, List[int], List[int]]:
    a, b = b"", b""
    off_a, off_b = [], []
    for i, alpha in enumerate(al.commons):
        off_a.append(len(a))
        off_b.append(len(b))
        a += alpha
        b += alpha
        if i < len(al.variants):
            a += al.variants[i][0]
            b += al.variants[i][1]
    return a, b, off_a, off_b


@dataclass
class NaiveChunk:
    alpha: bytes
    alpha_a: bytes
    alpha_b: bytes
    alpha_star: bytes
    alpha_hat: Optional[bytes]
    d: Optional[int]


def naive_chunks(al: Alignment) -> List[NaiveChunk]:
    """Per-chunk derived strings, straight from their definitions."""
    a, b, _, off_b = _texts(al)
    out = []
    for i, alpha in enumerate(al.commons):
        d = b[off_b[i] - 1] if i > 0 else None
        out.append(NaiveChunk(
            alpha=alpha,
            alpha_a=naive_longest_repeated_suffix(alpha, [a]),
            alpha_b=naive_longest_repeated_suffix(alpha, [b]),
            alpha_star=naive_longest_repeated_suffix(alpha, [a, b]),
            alpha_hat=naive_alpha_hat(a, b, d, alpha) if d is not None else None,
            d=d,
        ))
    return out


@dataclass(frozen=True)
class NaiveASuffix:
    cls: int                    # 1..4
    pos_a: Optional[int]
    pos_b: Optional[int]
    a_string: Optional[bytes]
    b_string: Optional[bytes]

    @property
    def key(self) -> bytes:
        """The string a suffix-tree leaf for this a-suffix would spell."""
        return self.a_string if self.a_string is not None else self.b_string


@dataclass
class NaiveEnumeration:
    suffixes: List[NaiveASuffix]    # every a-suffix, duplicates included
    distinct: int
    collisions: int

    def by_class(self) -> Dict[int, int]:
        return dict(sorted(Counter(s.cls for s in self.suffixes).items()))


def naive_a_suffixes(al: Alignment) -> NaiveEnumeration:
    """All a-suffixes by class; identical strings are counted once as distinct."""
    a, b, off_a, off_b = _texts(al)
    k = len(al.variants)
    chunks = naive_chunks(al)
    out: List[NaiveASuffix] = []
    for p in range(off_a[k], len(a)):
        q = p + len(b) - len(a)
        out.append(NaiveASuffix(1, p, q, a[p:], b[q:]))
    for i in range(k):
        alpha = al.commons[i]
        beta, delta = al.variants[i]
        cut = len(alpha) - len(chunks[i].alpha_star)
        for r in range(cut):
            p, q = off_a[i] + r, off_b[i] + r
            out.append(NaiveASuffix(4, p, q, a[p:], b[q:]))
        for p in range(off_a[i] + cut, off_a[i] + len(alpha) + len(beta)):
            out.append(NaiveASuffix(2, p, None, a[p:], None))
        for q in range(off_b[i] + cut, off_b[i] + len(alpha) + len(delta)):
            out.append(NaiveASuffix(3, None, q, None, b[q:]))
    distinct = len({s.key for s in out})
    return NaiveEnumeration(out, distinct, len(out) - distinct)


def naive_search(a: BytesLike, b: BytesLike, p: bytes) -> SearchResult:
    """Every (text, offset) where ``p`` starts, by direct comparison."""
    res = SearchResult()
    for sid, t in (("A", _raw(a)), ("B", _raw(b))):
        for j in range(len(t)):
            if t[j] == SENTINEL:
                continue
            if t[j:j + len(p)] == p:
                res.occurrences.append((sid, j))
    res.occurrences.sort()
    return res


def naive_all_suffixes(a: BytesLike, b: BytesLike) -> List[Tuple[str, int, bytes]]:
    a, b = _raw(a), _raw(b)
    out = [("A", j, a[j:]) for j in range(len(a))] + [("B", j, b[j:]) for j in range(len(b))]
    return sorted(out)
