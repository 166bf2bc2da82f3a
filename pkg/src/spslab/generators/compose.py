"""Disjoint unions of state property systems over the product lattice."""

from __future__ import annotations

from itertools import product

from ..bits import members
from ..lattice import PropertyLattice
from ..system import StatePropertySystem


def disjoint_union(*systems: StatePropertySystem, name: str = "") -> StatePropertySystem:
    """States are tagged ``state@i``; properties are tuples over the factor lattices.

    A tuple is actual in (i, p) when its i-th coordinate is actual in p, so
    the indicator tuple (I in block i, 0 elsewhere) is a classical property
    whose Cartan image is block i.  Measurements are carried over coordinatewise
    when every factor has them; explicit orthogonality relations are not
    carried over.
    """
    if not systems:
        raise ValueError("disjoint_union needs at least one system")
    for s in systems:
        s.require_valid()
    if len(systems) == 1:
        return systems[0]
    lats = [s.lattice for s in systems]
    tuples = list(product(*(range(L.size) for L in lats)))
    index = {t: i for i, t in enumerate(tuples)}
    names = tuple("(" + ",".join(L.names[a] for L, a in zip(lats, t)) + ")" for t in tuples)
    up = []
    for t in tuples:
        mask = 0
        for u in product(*(members(L.up[a]) for L, a in zip(lats, t))):
            mask |= 1 << index[u]
        up.append(mask)
    lattice = PropertyLattice(
        names, tuple(up), index[tuple(L.bottom for L in lats)], index[tuple(L.top for L in lats)]
    )
    states: list[str] = []
    actual: list[int] = []
    owner: list[tuple[int, int]] = []
    for i, s in enumerate(systems):
        for p in range(s.n):
            states.append(f"{s.states[p]}@{i}")
            owner.append((i, p))
            xi = s.actual[p]
            actual.append(sum(1 << k for k, t in enumerate(tuples) if xi >> t[i] & 1))
    testable = mu = None
    if all(s.has_measurements for s in systems):
        testable = 0
        for k, t in enumerate(tuples):
            if all(s.testable_mask >> a & 1 for s, a in zip(systems, t)):
                testable |= 1 << k
        mu = {}
        for q, (i, p) in enumerate(owner):
            table = systems[i].mu_table
            for k in members(testable):
                mu[q, k] = table[p, tuples[k][i]]
    label = name or " + ".join(s.name or "?" for s in systems)
    return StatePropertySystem(tuple(states), lattice, tuple(actual), testable, mu, label)
