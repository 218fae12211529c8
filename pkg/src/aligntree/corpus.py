"""Synthetic pairs of similar strings with a known alignment."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .text_model import SENTINEL, Alignment, Text, compose, normalize

DNA = b"acgt"


@dataclass(frozen=True)
class Instance:
    seed: int
    index: int
    alignment: Alignment

    @property
    def a(self) -> Text:
        return compose(self.alignment, "A").text

    @property
    def b(self) -> Text:
        return compose(self.alignment, "B").text


def _random_block(rng: random.Random, n: int, alphabet: bytes) -> bytes:
    return bytes(rng.choice(alphabet) for _ in range(n))


def mutate(rng: random.Random, base: bytes, rate: float, k_max: int = 6,
           alphabet: bytes = DNA, max_block: int = 3) -> list:
    """Raw segment list turning ``base`` (sentinel-free) into a mutated copy."""
    n = len(base)
    hits = sum(1 for _ in range(n) if rng.random() < rate)
    n_events = min(k_max, hits)
    starts = sorted(rng.sample(range(n), min(n_events, n))) if n else []
    segs: list = []
    pos = 0
    for s in starts:
        if s < pos:
            continue
        segs.append(base[pos:s])
        kind = rng.choice(("sub", "ins", "del"))
        width = rng.randint(1, max_block)
        if kind == "ins":
            segs.append((b"", _random_block(rng, width, alphabet)))
            pos = s
        else:
            width = min(width, n - s)
            old = base[s:s + width]
            new = _random_block(rng, width, alphabet) if kind == "sub" else b""
            segs.append((old, new))
            pos = s + width
    segs.append(base[pos:] + bytes((SENTINEL,)))
    return segs


def generate(seed: int, index: int = 0, max_len: int = 200, rate: float = 0.05,
             k_max: int = 6, alphabet: bytes = DNA, coalesce: bool = False) -> Instance:
    """One reproducible instance; both texts (sentinel included) fit in ``max_len``."""
    rng = random.Random(seed * 1_000_003 + index)
    while True:
        length = rng.randint(1, max(1, max_len - 1))
        base = _random_block(rng, length, alphabet)
        al = normalize(mutate(rng, base, rate, k_max, alphabet), coalesce=coalesce)
        if len(compose(al, "B").text) <= max_len:
            return Instance(seed, index, al)


def corpus(seed: int, count: int, max_len: int = 200, rate_lo: float = 0.01,
           rate_hi: float = 0.20, **kw):
    """``count`` instances with mutation rates spread over ``[rate_lo, rate_hi]``."""
    rng = random.Random(seed)
    for i in range(count):
        yield generate(seed, i, max_len=max_len, rate=rng.uniform(rate_lo, rate_hi), **kw)
