"""Small helpers for subsets encoded as integer bitmasks."""

from __future__ import annotations

from typing import Iterable, Iterator


def members(mask: int) -> Iterator[int]:
    """Yield the indices set in ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def popcount(mask: int) -> int:
    return mask.bit_count()


def submasks(mask: int, proper: bool = False) -> Iterator[int]:
    """All submasks of ``mask``, from ``mask`` downwards to 0."""
    sub = mask
    while True:
        if not (proper and sub == mask):
            yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def masks_by_size(n: int, max_size: int | None = None) -> Iterator[int]:
    """Every subset of ``range(n)``, ordered by cardinality then lexicographically.

    Lexicographic here means by the sorted tuple of members, which is the
    deterministic witness order used by all the searches.
    """
    from itertools import combinations

    top = n if max_size is None else min(n, max_size)
    for k in range(top + 1):
        for combo in combinations(range(n), k):
            yield to_mask(combo)


def bipartitions(mask: int) -> Iterator[tuple[int, int]]:
    """Ordered splits (S1, S2) of ``mask`` into two nonempty disjoint parts.

    Both orientations are produced; the MSP condition is not symmetric.
    """
    for sub in submasks(mask, proper=True):
        if sub and sub != mask:
            yield sub, mask ^ sub
