"""Texts, pairwise alignments, normalization and a simple anchor aligner.

Texts are raw bytes terminated by a sentinel byte (0x00). An alignment of
two texts ``A`` and ``B`` is a list of common chunks ``alpha_1..alpha_{k+1}``
interleaved with ``k`` variant pairs ``(beta_i, delta_i)``::

    A = alpha_1 beta_1  ... alpha_k beta_k  alpha_{k+1}
    B = alpha_1 delta_1 ... alpha_k delta_k alpha_{k+1}
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

SENTINEL = 0x00
#: Terminator used for B when both texts live in one generalized tree.
SENTINEL_B = 0x01
RESERVED = frozenset((SENTINEL, SENTINEL_B))

MIN_ANCHOR = 8


class MalformedTextError(ValueError):
    """Input bytes violate the sentinel rules."""


class InconsistentAlignmentError(ValueError):
    """An alignment record does not describe a consistent pair of texts."""


@dataclass(frozen=True)
class Text:
    id: str
    data: bytes

    def __post_init__(self):
        if self.id not in ("A", "B"):
            raise ValueError(f"text id must be 'A' or 'B', got {self.id!r}")
        if not self.data or self.data[-1] != SENTINEL:
            raise MalformedTextError("text must end with the sentinel byte 0x00")
        body = self.data[:-1]
        if SENTINEL in body or SENTINEL_B in body:
            raise MalformedTextError("text body contains a reserved byte (0x00 or 0x01)")

    @classmethod
    def from_raw(cls, id: str, raw: Union[bytes, str]) -> "Text":
        """Build a text, appending the sentinel when absent."""
        if isinstance(raw, str):
            raw = raw.encode("latin-1")
        raw = bytes(raw)
        if not raw or raw[-1] != SENTINEL:
            raw += bytes((SENTINEL,))
        return cls(id, raw)

    def __len__(self) -> int:
        return len(self.data)


@dataclass(frozen=True)
class Alignment:
    commons: tuple
    variants: tuple

    def __post_init__(self):
        object.__setattr__(self, "commons", tuple(bytes(c) for c in self.commons))
        object.__setattr__(self, "variants", tuple((bytes(b), bytes(d)) for b, d in self.variants))
        if len(self.commons) != len(self.variants) + 1:
            raise InconsistentAlignmentError(
                f"{len(self.commons)} common chunks for {len(self.variants)} variants"
            )

    @property
    def k(self) -> int:
        return len(self.variants)

    def violations(self) -> list:
        """Return human-readable descriptions of every broken condition."""
        out = []
        last = self.commons[-1]
        if not last or last[-1] != SENTINEL:
            out.append("last common chunk does not end with the sentinel")
        for side, idx in (("A", 0), ("B", 1)):
            body = b"".join(self.commons)[:-1] + b"".join(v[idx] for v in self.variants)
            if SENTINEL in body or SENTINEL_B in body:
                out.append(f"reserved byte inside side {side}")
        for i, (beta, delta) in enumerate(self.variants, start=1):
            nxt = self.commons[i]
            if not nxt:
                out.append(f"alpha_{i + 1} is empty")
                continue
            if not beta and not delta:
                out.append(f"variant {i} has both sides empty")
                continue
            if (beta + nxt)[0] == (delta + nxt)[0]:
                out.append(f"variant {i} sides start with the same symbol")
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def shared_trailing(self) -> list:
        """Indices of variants whose two sides end with the same symbol."""
        return [i for i, (b, d) in enumerate(self.variants, start=1)
                if b and d and b[-1] == d[-1]]


@dataclass(frozen=True)
class Composition:
    text: Text
    #: start offset of each common chunk alpha_i in the composed text
    chunk_offsets: tuple
    #: start offset of each variant side v_i in the composed text
    variant_offsets: tuple


def compose(al: Alignment, side: str) -> Composition:
    idx = {"A": 0, "B": 1}[side]
    parts = []
    chunk_offsets = []
    variant_offsets = []
    pos = 0
    for i, alpha in enumerate(al.commons):
        chunk_offsets.append(pos)
        parts.append(alpha)
        pos += len(alpha)
        if i < al.k:
            v = al.variants[i][idx]
            variant_offsets.append(pos)
            parts.append(v)
            pos += len(v)
    return Composition(Text(side, b"".join(parts)), tuple(chunk_offsets), tuple(variant_offsets))


# --------------------------------------------------------------------------
# normalization

Segment = Union[bytes, str, tuple]


def _as_segments(raw) -> list:
    if isinstance(raw, Alignment):
        raw = (raw.commons, raw.variants)
    if isinstance(raw, tuple) and len(raw) == 2 and isinstance(raw[0], (list, tuple)) \
            and isinstance(raw[1], (list, tuple)):
        commons, variants = raw
        if len(commons) != len(variants) + 1:
            raise InconsistentAlignmentError(
                f"{len(commons)} common chunks for {len(variants)} variants"
            )
        segs = []
        for i, c in enumerate(commons):
            segs.append(c)
            if i < len(variants):
                segs.append(tuple(variants[i]))
        raw = segs
    out = []
    for seg in raw:
        if isinstance(seg, (bytes, bytearray, str)):
            out.append(["C", _b(seg)])
        elif isinstance(seg, (tuple, list)) and len(seg) == 2:
            out.append(["V", _b(seg[0]), _b(seg[1])])
        elif isinstance(seg, (tuple, list)) and len(seg) == 3 and seg[0] == "C":
            # a common chunk given once per side
            a, b = _b(seg[1]), _b(seg[2])
            if a != b:
                raise InconsistentAlignmentError(f"common chunk differs between sides: {a!r} vs {b!r}")
            out.append(["C", a])
        else:
            raise InconsistentAlignmentError(f"cannot interpret alignment segment {seg!r}")
    return out


def _b(x) -> bytes:
    return x.encode("latin-1") if isinstance(x, str) else bytes(x)


def _canonical(segs: list) -> tuple:
    """Collapse a segment list into alternating commons/variants."""
    commons = [b""]
    variants = []
    for seg in segs:
        if seg[0] == "C":
            commons[-1] += seg[1]
        elif not seg[1] and not seg[2]:
            continue
        elif not commons[-1] and variants:
            # empty alpha between two variants: merge them
            commons.pop()
            b, d = variants.pop()
            variants.append((b + seg[1], d + seg[2]))
            commons.append(b"")
        else:
            variants.append((seg[1], seg[2]))
            commons.append(b"")
    # variants with empty trailing alpha cannot occur except at the very end
    return commons, variants


def _check_texts(commons, variants):
    for idx, side in ((0, "A"), (1, "B")):
        text = b"".join(commons[:-1]) + b"".join(v[idx] for v in variants) + commons[-1]
        if not text or text[-1] != SENTINEL:
            raise MalformedTextError(f"side {side} does not end with the sentinel")
        body = b"".join(commons)[:-1] + b"".join(v[idx] for v in variants)
        if SENTINEL in body or SENTINEL_B in body:
            raise MalformedTextError(f"side {side} contains a reserved byte before its end")


def normalize(raw, coalesce: bool = False) -> Alignment:
    """Rewrite an alignment record until every well-formedness condition holds.

    ``raw`` may be an :class:`Alignment`, a ``(commons, variants)`` pair, or a
    list of segments where a bytes object is a common chunk and a 2-tuple is a
    variant pair. With ``coalesce`` set, symbols shared by the ends of both
    variant sides are pushed into the following common chunk.
    """
    segs = _as_segments(raw)
    if not segs or segs[-1][0] != "C" or not segs[-1][1].endswith(bytes((SENTINEL,))):
        raise MalformedTextError("alignment must end with a common chunk holding the sentinel")
    commons, variants = _canonical(segs)
    _check_texts(commons, variants)

    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(variants):
            beta, delta = variants[i]
            nxt = commons[i + 1]
            if not beta and not delta:
                commons[i] += commons.pop(i + 1)
                variants.pop(i)
                changed = True
                continue
            if not nxt:
                # only possible after a rotation emptied alpha_{i+1}
                b2, d2 = variants.pop(i + 1)
                commons.pop(i + 1)
                variants[i] = (beta + b2, delta + d2)
                changed = True
                continue
            fb = (beta or nxt)[0]
            fd = (delta or nxt)[0]
            if fb == fd:
                c = bytes((fb,))
                commons[i] += c
                if beta and delta:
                    variants[i] = (beta[1:], delta[1:])
                elif beta:
                    variants[i] = (beta[1:] + c, delta)
                    commons[i + 1] = nxt[1:]
                else:
                    variants[i] = (beta, delta[1:] + c)
                    commons[i + 1] = nxt[1:]
                changed = True
                continue
            if coalesce and beta and delta and beta[-1] == delta[-1]:
                commons[i + 1] = beta[-1:] + nxt
                variants[i] = (beta[:-1], delta[:-1])
                changed = True
                continue
            i += 1
    al = Alignment(tuple(commons), tuple(variants))
    bad = al.violations()
    if bad:
        raise InconsistentAlignmentError("; ".join(bad))
    return al


# --------------------------------------------------------------------------
# anchor aligner

def _common_prefix(a: bytes, b: bytes, limit: int) -> int:
    n = 0
    while n < limit and a[n] == b[n]:
        n += 1
    return n


def _common_suffix(a: bytes, b: bytes, limit: int) -> int:
    n = 0
    while n < limit and a[-1 - n] == b[-1 - n]:
        n += 1
    return n


def _unique_kmers(s: bytes, w: int) -> dict:
    seen = {}
    for i in range(len(s) - w + 1):
        kmer = s[i:i + w]
        seen[kmer] = -1 if kmer in seen else i
    return {km: i for km, i in seen.items() if i >= 0}


def _align_middle(a: bytes, b: bytes, out: list):
    """Append segments aligning ``a`` with ``b`` (no sentinels inside)."""
    p = _common_prefix(a, b, min(len(a), len(b)))
    s = _common_suffix(a, b, min(len(a), len(b)) - p)
    if p:
        out.append(a[:p])
    ma, mb = a[p:len(a) - s], b[p:len(b) - s]
    if ma or mb:
        anchor = None
        if len(ma) >= MIN_ANCHOR and len(mb) >= MIN_ANCHOR:
            ua = _unique_kmers(ma, MIN_ANCHOR)
            ub = _unique_kmers(mb, MIN_ANCHOR)
            shared = [(i, ub[km]) for km, i in ua.items() if km in ub]
            if shared:
                # prefer the anchor closest to the diagonal, leftmost on ties
                anchor = min(shared, key=lambda ij: (abs(ij[0] - ij[1]), ij[0]))
        if anchor is None:
            out.append((ma, mb))
        else:
            i, j = anchor
            _align_middle(ma[:i], mb[:j], out)
            _align_middle(ma[i:], mb[j:], out)
    if s:
        out.append(a[len(a) - s:])


def align(a: Text, b: Text, coalesce: bool = False) -> Alignment:
    """Greedy unique-anchor alignment of two sentinel-terminated texts."""
    segs: list = []
    _align_middle(a.data[:-1], b.data[:-1], segs)
    segs.append(bytes((SENTINEL,)))
    return normalize(segs, coalesce=coalesce)


# --------------------------------------------------------------------------
# alignment text file format

def _escape(chunk: bytes) -> str:
    out = []
    for c in chunk:
        if 0x21 <= c <= 0x7E and c != 0x5C:
            out.append(chr(c))
        elif c == 0x20:
            out.append(" ")
        else:
            out.append(f"\\x{c:02x}")
    return "".join(out)


def _unescape(field: str) -> bytes:
    out = bytearray()
    i = 0
    while i < len(field):
        ch = field[i]
        if ch == "\\":
            if field[i + 1:i + 2] == "x" and len(field) >= i + 4:
                out.append(int(field[i + 2:i + 4], 16))
                i += 4
                continue
            if field[i + 1:i + 2] == "\\":
                out.append(0x5C)
                i += 2
                continue
            raise MalformedTextError(f"bad escape at column {i}: {field!r}")
        out.extend(ch.encode("latin-1"))
        i += 1
    return bytes(out)


def dumps_alignment(al: Alignment) -> str:
    lines = []
    for i, alpha in enumerate(al.commons):
        if i == al.k:
            alpha = alpha[:-1]
        lines.append("C\t" + _escape(alpha))
        if i < al.k:
            beta, delta = al.variants[i]
            lines.append("V\t" + _escape(beta) + "\t" + _escape(delta))
    return "\n".join(lines) + "\n"


def loads_alignment(text: str, coalesce: bool = False) -> Alignment:
    segs: list = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        fields = line.split("\t")
        tag = fields[0]
        if tag == "C" and len(fields) == 2:
            segs.append(_unescape(fields[1]))
        elif tag == "V" and len(fields) == 3:
            segs.append((_unescape(fields[1]), _unescape(fields[2])))
        else:
            raise MalformedTextError(f"line {lineno}: expected 'C<TAB>chunk' or 'V<TAB>beta<TAB>delta'")
    segs.append(bytes((SENTINEL,)))
    return normalize(segs, coalesce=coalesce)


def from_notation(s: str) -> bytes:
    """Translate the ``#``-terminated notation into sentinel-terminated bytes."""
    return s.replace("#", "\x00").encode("latin-1")


def render(data: Iterable[int]) -> str:
    """Readable form of a byte string; sentinels print as ``#`` and ``$``."""
    out = []
    for c in data:
        if c == SENTINEL:
            out.append("#")
        elif c == SENTINEL_B:
            out.append("$")
        elif 0x20 <= c <= 0x7E:
            out.append(chr(c))
        else:
            out.append(f"\\x{c:02x}")
    return "".join(out)


def parse_notation(s: str) -> Alignment:
    """Parse the ``alpha(beta/delta)gamma`` notation, e.g. ``aaabaa(abba/baabb)aba#``."""
    segs: list = []
    i = 0
    while i < len(s):
        j = s.find("(", i)
        if j < 0:
            segs.append(from_notation(s[i:]))
            break
        segs.append(from_notation(s[i:j]))
        close = s.index(")", j)
        beta, delta = s[j + 1:close].split("/")
        segs.append((from_notation(beta), from_notation(delta)))
        i = close + 1
    return normalize(segs)


def format_notation(al: Alignment, start: int = 0) -> str:
    """Inverse of :func:`parse_notation` from chunk ``start`` (0-based)."""
    parts = []
    for i in range(start, len(al.commons)):
        parts.append(render(al.commons[i]))
        if i < al.k:
            b, d = al.variants[i]
            parts.append(f"({render(b)}/{render(d)})")
    return "".join(parts)


def texts(al: Alignment) -> tuple:
    return compose(al, "A").text, compose(al, "B").text


__all__: Sequence[str] = [
    "SENTINEL", "SENTINEL_B", "Text", "Alignment", "Composition", "compose",
    "normalize", "align", "MalformedTextError", "InconsistentAlignmentError",
    "dumps_alignment", "loads_alignment", "from_notation", "render",
    "parse_notation", "format_notation", "texts",
]
