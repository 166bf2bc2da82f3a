"""Exhaustive small-instance corpus.

Up to isomorphism a finite state property system is the same thing as a
family of subsets of the states that is closed under intersection and
contains both the empty set and the whole set: the family is the Cartan
image, and the property lattice is that family under inclusion.  The corpus
is therefore every such family on n <= max_states states with at most
max_props members, one per orbit of the symmetric group on the states.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterator

from ..bits import members
from ..config import DEFAULT, Limits
from ..lattice import PropertyLattice, orthocomplementations
from ..system import StatePropertySystem


def _moore_families(n: int, max_props: int) -> Iterator[tuple[int, ...]]:
    full = (1 << n) - 1
    middle = [m for m in range(1, full)]
    room = max_props - 2 if n > 0 else 0
    # grow families of middle sets in a fixed order, pruning on the size bound
    for k in range(0, min(room, len(middle)) + 1):
        for combo in combinations(middle, k):
            fam = set(combo)
            if all((x & y) in fam or (x & y) in (0, full) for x in combo for y in combo):
                yield (0,) + tuple(sorted(combo)) + (full,)


def _orbit_key(family: tuple[int, ...], n: int) -> tuple[int, ...]:
    best = None
    for perm in permutations(range(n)):
        image = []
        for m in family:
            out = 0
            for i in members(m):
                out |= 1 << perm[i]
            image.append(out)
        key = tuple(sorted(image))
        if best is None or key < best:
            best = key
    return best  # type: ignore[return-value]


def _set_name(mask: int, n: int) -> str:
    if mask == 0:
        return "0"
    if mask == (1 << n) - 1:
        return "I"
    return "k" + "".join(str(i) for i in members(mask))


def from_family(family: tuple[int, ...], n: int, name: str = "") -> StatePropertySystem:
    """The system whose Cartan image is ``family`` (which must contain 0 and the full set)."""
    family = tuple(sorted(set(family), key=lambda m: (m.bit_count(), m)))
    names = tuple(_set_name(m, n) for m in family)
    lattice = PropertyLattice.from_leq(
        names, lambda i, j: family[i] & ~family[j] == 0, family.index(0), family.index((1 << n) - 1)
    )
    actual = tuple(sum(1 << a for a, m in enumerate(family) if m >> p & 1) for p in range(n))
    states = tuple(f"s{i}" for i in range(n))
    return StatePropertySystem(states, lattice, actual, name=name)


def enumerate_instances(
    max_states: int = 4, max_props: int = 8, limits: Limits = DEFAULT
) -> Iterator[StatePropertySystem]:
    """Every instance up to relabeling, ordered by state count then canonical family."""
    for n in range(1, max_states + 1):
        limits.require(f"corpus with {n} states", 1 << ((1 << n) - 2))
        keys = sorted({_orbit_key(f, n) for f in _moore_families(n, max_props)})
        for i, key in enumerate(keys):
            system = from_family(key, n, name=f"n{n}-{i}")
            system.require_valid()
            yield system


def three_valued_mu(system: StatePropertySystem, comp: tuple[int, ...]) -> dict[tuple[int, int], Fraction]:
    """1 where a is actual, 0 where its complement is actual, 1/2 otherwise."""
    kappa = system.kappa_masks
    table = {}
    for p in range(system.n):
        for a in range(system.m):
            if kappa[a] >> p & 1:
                table[p, a] = Fraction(1)
            elif kappa[comp[a]] >> p & 1:
                table[p, a] = Fraction(0)
            else:
                table[p, a] = Fraction(1, 2)
    return table


def measured_variants(system: StatePropertySystem) -> Iterator[StatePropertySystem]:
    """One measured copy per orthocomplementation of the lattice, every property testable.

    Candidates are not filtered here; callers keep the ones whose table
    passes the measurement axioms.
    """
    full = (1 << system.m) - 1
    for k, comp in enumerate(orthocomplementations(system.lattice)):
        yield system.replace(testable=full, mu=three_valued_mu(system, comp), name=f"{system.name}/mu{k}")


def measured_corpus(max_states: int = 4, max_props: int = 8, limits: Limits = DEFAULT) -> Iterator[StatePropertySystem]:
    """Corpus instances carrying a measurement table that satisfies (Oi)-(Oiii)."""
    from ..probability import validate_mu

    for system in enumerate_instances(max_states, max_props, limits):
        for variant in measured_variants(system):
            if validate_mu(variant, limits).ok:
                yield variant
