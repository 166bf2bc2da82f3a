"""Finite bounded lattices given extensionally by their order relation.

Elements are the integers ``0..n-1`` with display names; the order is stored
as one up-set bitmask per element (``up[a]`` has bit ``b`` set iff a <= b).
The same class serves the property lattice of a state property system and
the subset lattices derived from it (closed subsets ordered by inclusion).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .bits import members
from .verdict import Verdict, fails, from_bool, holds


class LatticeError(ValueError):
    """A requested meet/join does not exist."""


@dataclass(frozen=True, eq=False)
class PropertyLattice:
    names: tuple[str, ...]
    up: tuple[int, ...]
    bottom: int
    top: int

    # ------------------------------------------------------------------ build
    @classmethod
    def from_pairs(
        cls,
        names: Sequence[str],
        pairs: Iterable[tuple[str, str]],
        bottom: str,
        top: str,
    ) -> "PropertyLattice":
        """Reflexive-transitive closure of ``pairs`` over ``names``."""
        index = {name: i for i, name in enumerate(names)}
        up = [1 << i for i in range(len(names))]
        for a, b in pairs:
            up[index[a]] |= 1 << index[b]
        return cls(tuple(names), _transitive_closure(up), index[bottom], index[top])

    @classmethod
    def from_leq(cls, names: Sequence[str], leq, bottom: int, top: int) -> "PropertyLattice":
        """Build from a predicate ``leq(i, j)`` already known to be an order."""
        n = len(names)
        up = []
        for i in range(n):
            mask = 0
            for j in range(n):
                if i == j or leq(i, j):
                    mask |= 1 << j
            up.append(mask)
        return cls(tuple(names), tuple(up), bottom, top)

    @classmethod
    def of_subsets(cls, masks: Sequence[int], name) -> "PropertyLattice":
        """Inclusion order on a family of bitmask subsets containing a least and greatest member."""
        masks = list(masks)
        n = len(masks)
        bottom = min(range(n), key=lambda i: (masks[i].bit_count(), masks[i]))
        top = max(range(n), key=lambda i: (masks[i].bit_count(), masks[i]))
        return cls.from_leq(
            [name(m) for m in masks],
            lambda i, j: masks[i] & ~masks[j] == 0,
            bottom,
            top,
        )

    # --------------------------------------------------------------- queries
    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def elements(self) -> range:
        return range(len(self.names))

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown property {name!r}") from None

    def leq(self, a: int, b: int) -> bool:
        return bool(self.up[a] >> b & 1)

    @cached_property
    def down(self) -> tuple[int, ...]:
        down = [0] * self.size
        for a in self.elements:
            for b in members(self.up[a]):
                down[b] |= 1 << a
        return tuple(down)

    def _greatest(self, mask: int) -> int | None:
        for g in members(mask):
            if self.down[g] & mask == mask:
                return g
        return None

    def _least(self, mask: int) -> int | None:
        for g in members(mask):
            if self.up[g] & mask == mask:
                return g
        return None

    @cached_property
    def meet_table(self) -> tuple[tuple[int | None, ...], ...]:
        return tuple(
            tuple(self._greatest(self.down[a] & self.down[b]) for b in self.elements)
            for a in self.elements
        )

    @cached_property
    def join_table(self) -> tuple[tuple[int | None, ...], ...]:
        return tuple(
            tuple(self._least(self.up[a] & self.up[b]) for b in self.elements)
            for a in self.elements
        )

    def meet(self, a: int, b: int) -> int:
        m = self.meet_table[a][b]
        if m is None:
            raise LatticeError(f"no meet of {self.names[a]} and {self.names[b]}")
        return m

    def join(self, a: int, b: int) -> int:
        j = self.join_table[a][b]
        if j is None:
            raise LatticeError(f"no join of {self.names[a]} and {self.names[b]}")
        return j

    def meet_all(self, items: Iterable[int]) -> int:
        """Meet of a family; the empty meet is the top."""
        acc = self.top
        for a in items:
            acc = self.meet(acc, a)
        return acc

    def join_all(self, items: Iterable[int]) -> int:
        """Join of a family; the empty join is the bottom."""
        acc = self.bottom
        for a in items:
            acc = self.join(acc, a)
        return acc

    def meet_of_mask(self, mask: int) -> int:
        """Greatest lower bound of the elements in ``mask`` computed from the order."""
        lower = self.down[self.top]
        for a in members(mask):
            lower &= self.down[a]
        g = self._greatest(lower)
        if g is None:
            raise LatticeError("meet does not exist")
        return g

    def join_of_mask(self, mask: int) -> int:
        upper = self.up[self.bottom]
        for a in members(mask):
            upper &= self.up[a]
        g = self._least(upper)
        if g is None:
            raise LatticeError("join does not exist")
        return g

    def covers(self, a: int, b: int) -> bool:
        """True iff b covers a (a < b with nothing strictly between)."""
        if a == b or not self.leq(a, b):
            return False
        between = self.up[a] & self.down[b] & ~(1 << a) & ~(1 << b)
        return between == 0

    @cached_property
    def hasse_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((a, b) for a in self.elements for b in self.elements if self.covers(a, b))

    @cached_property
    def atoms(self) -> tuple[int, ...]:
        return tuple(a for a in self.elements if self.covers(self.bottom, a))

    @cached_property
    def coatoms(self) -> tuple[int, ...]:
        return tuple(a for a in self.elements if self.covers(a, self.top))

    def atoms_below(self, b: int) -> list[int]:
        return [a for a in self.atoms if self.leq(a, b)]

    def name_of(self, items: Iterable[int]) -> list[str]:
        return [self.names[i] for i in items]


def _transitive_closure(up: list[int]) -> tuple[int, ...]:
    n = len(up)
    for k in range(n):
        bit = 1 << k
        for i in range(n):
            if up[i] & bit:
                up[i] |= up[k]
    return tuple(up)


# ---------------------------------------------------------------------------
# order-theoretic checks; every one returns a Verdict with a named witness


def check_partial_order(L: PropertyLattice) -> Verdict:
    for a in L.elements:
        if not L.leq(a, a):
            return fails("partial-order", "not reflexive", element=L.names[a])
        for b in members(L.up[a]):
            if b != a and L.leq(b, a):
                return fails("partial-order", "not antisymmetric", pair=[L.names[a], L.names[b]])
            for c in members(L.up[b]):
                if not L.leq(a, c):
                    return fails("partial-order", "not transitive", chain=L.name_of((a, b, c)))
    return holds("partial-order")


def check_bounded_lattice(L: PropertyLattice) -> Verdict:
    """Every pair has a meet and a join, and bottom/top bound everything.

    For a finite poset this is the same as completeness.
    """
    for a in L.elements:
        if not (L.leq(L.bottom, a) and L.leq(a, L.top)):
            return fails("lattice", "bounds", element=L.names[a])
    for a in L.elements:
        for b in L.elements:
            if L.meet_table[a][b] is None:
                return fails("lattice", "missing meet", pair=L.name_of((a, b)))
            if L.join_table[a][b] is None:
                return fails("lattice", "missing join", pair=L.name_of((a, b)))
    return holds("lattice")


def check_atomistic(L: PropertyLattice, name: str = "atomistic") -> Verdict:
    for b in L.elements:
        if L.join_all(L.atoms_below(b)) != b:
            return fails(name, element=L.names[b])
    return holds(name)


def check_modular(L: PropertyLattice) -> Verdict:
    """x <= z implies x v (y ^ z) = (x v y) ^ z."""
    for x in L.elements:
        for z in members(L.up[x]):
            for y in L.elements:
                if L.join(x, L.meet(y, z)) != L.meet(L.join(x, y), z):
                    return fails("modular", x=L.names[x], y=L.names[y], z=L.names[z])
    return holds("modular")


def check_distributive(L: PropertyLattice) -> Verdict:
    for x in L.elements:
        for y in L.elements:
            for z in L.elements:
                if L.meet(x, L.join(y, z)) != L.join(L.meet(x, y), L.meet(x, z)):
                    return fails("distributive", x=L.names[x], y=L.names[y], z=L.names[z])
    return holds("distributive")


def check_upper_semimodular(L: PropertyLattice) -> Verdict:
    for u in L.elements:
        for v in L.elements:
            if L.covers(L.meet(u, v), v) and not L.covers(u, L.join(u, v)):
                return fails("upper-semimodular", u=L.names[u], v=L.names[v])
    return holds("upper-semimodular")


def check_lower_semimodular(L: PropertyLattice) -> Verdict:
    for u in L.elements:
        for v in L.elements:
            if L.covers(u, L.join(u, v)) and not L.covers(L.meet(u, v), v):
                return fails("lower-semimodular", u=L.names[u], v=L.names[v])
    return holds("lower-semimodular")


def check_covering(L: PropertyLattice) -> Verdict:
    """For each x and atom a with a ^ x = 0, x is covered by a v x."""
    for x in L.elements:
        for a in L.atoms:
            if L.meet(a, x) == L.bottom and not L.covers(x, L.join(a, x)):
                return fails("covering", x=L.names[x], atom=L.names[a])
    return holds("covering")


def check_intersection_property(L: PropertyLattice) -> Verdict:
    """a != b atoms, a <= b v x  implies some atom c <= (a v b) ^ x."""
    for a in L.atoms:
        for b in L.atoms:
            if a == b:
                continue
            for x in L.elements:
                if L.leq(a, L.join(b, x)):
                    target = L.meet(L.join(a, b), x)
                    if not any(L.leq(c, target) for c in L.atoms):
                        return fails("intersection-property", a=L.names[a], b=L.names[b], x=L.names[x])
    return holds("intersection-property")


def check_orthocomplementation(L: PropertyLattice, comp: Sequence[int], prefix: str = "") -> list[Verdict]:
    """Order reversal, involution and complementarity of ``comp`` on all of L."""
    out = []
    bad = next(
        ((a, b) for a in L.elements for b in members(L.up[a]) if not L.leq(comp[b], comp[a])),
        None,
    )
    out.append(from_bool(prefix + "order-reversing", bad is None, bad and {"pair": L.name_of(bad)}))
    bad = next((a for a in L.elements if comp[comp[a]] != a), None)
    out.append(from_bool(prefix + "involution", bad is None, None if bad is None else {"element": L.names[bad]}))
    bad = next((a for a in L.elements if L.meet(a, comp[a]) != L.bottom), None)
    out.append(from_bool(prefix + "meet-zero", bad is None, None if bad is None else {"element": L.names[bad]}))
    bad = next((a for a in L.elements if L.join(a, comp[a]) != L.top), None)
    out.append(from_bool(prefix + "join-top", bad is None, None if bad is None else {"element": L.names[bad]}))
    return out


def orthocomplementations(L: PropertyLattice) -> Iterator[tuple[int, ...]]:
    """All orthocomplementations of a finite lattice, in lexicographic order."""
    n = L.size
    comp: list[int | None] = [None] * n

    def consistent(a: int, c: int) -> bool:
        if L.meet(a, c) != L.bottom or L.join(a, c) != L.top:
            return False
        for b in L.elements:
            cb = comp[b]
            if cb is None:
                continue
            if L.leq(a, b) and not L.leq(cb, c):
                return False
            if L.leq(b, a) and not L.leq(c, cb):
                return False
        return True

    def extend(i: int) -> Iterator[tuple[int, ...]]:
        while i < n and comp[i] is not None:
            i += 1
        if i == n:
            full = tuple(comp)  # type: ignore[arg-type]
            if all(v.holds for v in check_orthocomplementation(L, full)):
                yield full
            return
        for c in L.elements:
            if comp[c] is not None and c != i:
                continue
            if c == i and n > 1:
                continue
            if not consistent(i, c):
                continue
            comp[i], comp[c] = c, i
            if c == i or consistent(c, i):
                yield from extend(i + 1)
            comp[i] = None
            comp[c] = None

    yield from extend(0)
