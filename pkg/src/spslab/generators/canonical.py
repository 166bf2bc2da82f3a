"""Relabeling-invariant keys for instances.

An instance is determined up to isomorphism by the family of Cartan images
kappa(a) over the states (the lattice is recovered as that family under
inclusion), together with which images are testable, the measurement
values, and any explicit state orthogonality.  The key is the least encoding
over state permutations; permutations only act inside cells of states that
share a cheap invariant, which keeps the Fano plane at 7! candidates.
"""

from __future__ import annotations

import hashlib
from itertools import permutations, product
from math import factorial, prod

from ..bits import members
from ..config import DEFAULT, Limits
from ..system import StatePropertySystem


def _invariant(system: StatePropertySystem, p: int) -> tuple:
    kappa = system.kappa_masks
    sizes = sorted(kappa[a].bit_count() for a in members(system.actual[p]))
    perp = () if system.orthogonality is None else (system.orthogonality[p].bit_count(), system.orthogonality[p] >> p & 1)
    return (len(sizes), tuple(sizes), perp)


def _cells(system: StatePropertySystem) -> list[list[int]]:
    groups: dict[tuple, list[int]] = {}
    for p in range(system.n):
        groups.setdefault(_invariant(system, p), []).append(p)
    return [groups[k] for k in sorted(groups)]


def _encode(system: StatePropertySystem, pos: list[int]) -> tuple:
    """Encoding after sending state p to position pos[p]."""
    kappa = system.kappa_masks
    measured = system.has_measurements
    table = system.mu_table if measured else {}
    rows = []
    for a in range(system.m):
        mask = 0
        for p in members(kappa[a]):
            mask |= 1 << pos[p]
        if measured and system.testable_mask >> a & 1:
            values = [None] * system.n
            for p in range(system.n):
                values[pos[p]] = table[p, a]
            rows.append((mask, 1, tuple((v.numerator, v.denominator) for v in values)))
        else:
            rows.append((mask, 0, ()))
    rows.sort()
    perp: tuple = ()
    if system.orthogonality is not None:
        edges = []
        for p in range(system.n):
            for q in members(system.orthogonality[p]):
                edges.append((pos[p], pos[q]))
        perp = tuple(sorted(edges))
    return (system.n, tuple(rows), perp)


def canonical_key(system: StatePropertySystem, limits: Limits = DEFAULT) -> tuple:
    cells = _cells(system)
    limits.require("canonical form search", prod(factorial(len(c)) for c in cells))
    slots = []
    start = 0
    for c in cells:
        slots.append(list(range(start, start + len(c))))
        start += len(c)
    best = None
    for choice in product(*(permutations(s) for s in slots)):
        pos = [0] * system.n
        for cell, targets in zip(cells, choice):
            for p, t in zip(cell, targets):
                pos[p] = t
        enc = _encode(system, pos)
        if best is None or enc < best:
            best = enc
    return best  # type: ignore[return-value]


def canonical_digest(system: StatePropertySystem, limits: Limits = DEFAULT) -> str:
    return hashlib.sha256(repr(canonical_key(system, limits)).encode()).hexdigest()
