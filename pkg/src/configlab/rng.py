"""Counter-based random streams and an order-preserving parallel map.

Every random draw in configlab comes from ``stream(seed, tag, *ids)``: a
Philox generator whose key is (seed, tag) and whose counter starts at the
block addressed by ``ids``.  A chunk of work therefore owns its stream
outright, and the result of a computation depends only on the seed, never on
how chunks were spread over workers.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

import numpy as np

T = TypeVar("T")
R = TypeVar("R")

_MASK64 = (1 << 64) - 1


def _tag_word(tag: str) -> int:
    digest = hashlib.blake2b(tag.encode(), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def stream(seed: int, tag: str, *ids: int) -> np.random.Generator:
    """Independent generator for block ``ids`` of the (seed, tag) stream family.

    At most two ids are supported; they occupy the high counter words, so a
    block can consume up to 2**128 draws before touching its neighbour.
    """
    if len(ids) > 2:
        raise ValueError("at most two block ids")
    if seed < 0:
        raise ValueError("seed must be non-negative")
    words = [0, 0, 0, 0]
    for slot, value in zip((2, 3), ids):
        words[slot] = int(value) & _MASK64
    key = (int(seed) & _MASK64) | (_tag_word(tag) << 64)
    bitgen = np.random.Philox(key=key, counter=np.array(words, dtype=np.uint64))
    return np.random.Generator(bitgen)


def ordered_map(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> list[R]:
    """``[fn(i) for i in items]``, optionally on a thread pool, results in input order."""
    items = list(items)
    if workers is None or workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def chunk_bounds(total: int, chunk: int) -> Sequence[tuple[int, int]]:
    return [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
