"""State property systems (states, property lattice, actuality map) and their defining axioms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .bits import members, to_mask
from .lattice import PropertyLattice, check_bounded_lattice, check_partial_order
from .verdict import UNMET, AxiomReport, Verdict, fails, holds, unmet


class StructureError(ValueError):
    """Malformed instance: duplicate or unknown identifiers, missing entries."""


class InvalidSystemError(ValueError):
    """The instance is well formed but is not a state property system."""

    def __init__(self, report: AxiomReport):
        self.report = report
        names = ", ".join(v.name for v in report.failures)
        super().__init__(f"not a state property system: {names}")


@dataclass(frozen=True, eq=False)
class StatePropertySystem:
    """A finite (Sigma, L, xi) triple.

    ``actual[p]`` is the bitmask over property indices of xi(p).  ``testable``
    is the bitmask of the designated sub-poset L0 and ``mu`` maps
    ``(state, property)`` index pairs to exact fractions.  ``orthogonality``
    optionally fixes a state orthogonality directly (one bitmask per state),
    as vector-space models with a form do.
    """

    states: tuple[str, ...]
    lattice: PropertyLattice
    actual: tuple[int, ...]
    testable: int | None = None
    mu: Mapping[tuple[int, int], Fraction] | None = None
    name: str = ""
    orthogonality: tuple[int, ...] | None = None

    # ---------------------------------------------------------- construction
    @classmethod
    def build(
        cls,
        states: Sequence[str],
        properties: Sequence[str],
        leq: Iterable[tuple[str, str]],
        bottom: str,
        top: str,
        actual: Mapping[str, Iterable[str]],
        testable: Iterable[str] | None = None,
        mu: Mapping[tuple[str, str], Fraction | int | str] | None = None,
        name: str = "",
        orthogonality: Iterable[tuple[str, str]] | None = None,
    ) -> "StatePropertySystem":
        _distinct(states, "state")
        _distinct(properties, "property")
        props = set(properties)
        leq = list(leq)
        for a, b in leq:
            for x in (a, b):
                if x not in props:
                    raise StructureError(f"leq references unknown property {x!r}")
        for x, what in ((bottom, "bottom"), (top, "top")):
            if x not in props:
                raise StructureError(f"{what} {x!r} is not a property")
        lattice = PropertyLattice.from_pairs(properties, leq, bottom, top)
        state_set = set(states)
        for s in actual:
            if s not in state_set:
                raise StructureError(f"actual references unknown state {s!r}")
        xi = []
        for s in states:
            if s not in actual:
                raise StructureError(f"actual has no entry for state {s!r}")
            try:
                xi.append(to_mask(lattice.index(a) for a in actual[s]))
            except KeyError as err:
                raise StructureError(f"actual[{s!r}]: {err.args[0]}") from None
        tmask = None
        if testable is not None:
            try:
                tmask = to_mask(lattice.index(a) for a in testable)
            except KeyError as err:
                raise StructureError(f"testable: {err.args[0]}") from None
        table = None
        if mu is not None:
            sindex = {s: i for i, s in enumerate(states)}
            table = {}
            for (s, a), v in mu.items():
                if s not in sindex:
                    raise StructureError(f"mu references unknown state {s!r}")
                try:
                    ai = lattice.index(a)
                except KeyError as err:
                    raise StructureError(f"mu: {err.args[0]}") from None
                table[sindex[s], ai] = Fraction(v)
        perp = None
        if orthogonality is not None:
            sindex = {s: i for i, s in enumerate(states)}
            rows = [0] * len(states)
            for s, t in orthogonality:
                if s not in sindex or t not in sindex:
                    raise StructureError(f"orthogonality references unknown state {s if s not in sindex else t!r}")
                rows[sindex[s]] |= 1 << sindex[t]
            perp = tuple(rows)
        return cls(tuple(states), lattice, tuple(xi), tmask, table, name, perp)

    def replace(self, **changes) -> "StatePropertySystem":
        fields = dict(
            states=self.states,
            lattice=self.lattice,
            actual=self.actual,
            testable=self.testable,
            mu=self.mu,
            name=self.name,
            orthogonality=self.orthogonality,
        )
        fields.update(changes)
        return StatePropertySystem(**fields)

    # ----------------------------------------------------------------- sizes
    @property
    def n(self) -> int:
        return len(self.states)

    @property
    def m(self) -> int:
        return self.lattice.size

    @property
    def all_states(self) -> int:
        return (1 << self.n) - 1

    @property
    def all_properties(self) -> int:
        return (1 << self.m) - 1

    @cached_property
    def _sindex(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.states)}

    def state_index(self, s: str | int) -> int:
        if isinstance(s, int):
            if not 0 <= s < self.n:
                raise KeyError(f"unknown state index {s}")
            return s
        try:
            return self._sindex[s]
        except KeyError:
            raise KeyError(f"unknown state {s!r}") from None

    def states_mask(self, items: Iterable[str | int]) -> int:
        return to_mask(self.state_index(s) for s in items)

    def state_names(self, mask: int) -> list[str]:
        return [self.states[i] for i in members(mask)]

    def prop(self, a: str | int) -> int:
        return a if isinstance(a, int) else self.lattice.index(a)

    def prop_name(self, a: int) -> str:
        return self.lattice.names[a]

    # ----------------------------------------------------------- derived maps
    @cached_property
    def kappa_masks(self) -> tuple[int, ...]:
        """Cartan map as bitmasks: kappa[a] = states in which a is actual."""
        kappa = [0] * self.m
        for p, xi in enumerate(self.actual):
            for a in members(xi):
                kappa[a] |= 1 << p
        return tuple(kappa)

    @cached_property
    def supports(self) -> tuple[int, ...]:
        """a_p, the meet of xi(p), for every state."""
        return tuple(self.lattice.meet_of_mask(xi) for xi in self.actual)

    def common_actual(self, S: int) -> int:
        """Intersection of xi(s) over s in S; all of L for S empty."""
        acc = self.all_properties
        for s in members(S):
            acc &= self.actual[s]
        return acc

    def states_with(self, props: int) -> int:
        """{p : props is a subset of xi(p)}."""
        out = 0
        for p, xi in enumerate(self.actual):
            if props & ~xi == 0:
                out |= 1 << p
        return out

    # ------------------------------------------------------- L0 and mu views
    @property
    def has_measurements(self) -> bool:
        return self.testable is not None and self.mu is not None

    @cached_property
    def testable_mask(self) -> int:
        if self.testable is None:
            return (1 << self.lattice.bottom) | (1 << self.lattice.top)
        return self.testable

    @cached_property
    def mu_table(self) -> dict[tuple[int, int], Fraction]:
        """mu with the forced two-valued table on {0, I} when none was given."""
        if self.mu is not None and self.testable is not None:
            return dict(self.mu)
        table = {}
        for p in range(self.n):
            for a in members(self.testable_mask):
                table[p, a] = Fraction(1 if self.actual[p] >> a & 1 else 0)
        return table

    # ------------------------------------------------------------ validation
    @cached_property
    def report(self) -> AxiomReport:
        return validate(self)

    @property
    def is_valid(self) -> bool:
        return self.report.ok

    def require_valid(self) -> "StatePropertySystem":
        if not self.report.ok:
            raise InvalidSystemError(self.report)
        return self


def _distinct(ids: Sequence[str], what: str) -> None:
    seen = set()
    for x in ids:
        if not isinstance(x, str):
            raise StructureError(f"{what} id {x!r} is not a string")
        if x in seen:
            raise StructureError(f"duplicate {what} id {x!r}")
        seen.add(x)


# ---------------------------------------------------------------------------


def validate(system: StatePropertySystem) -> AxiomReport:
    """All six defining conditions, with the derived state pre-order attached."""
    L = system.lattice
    report = AxiomReport()
    po = report.add(check_partial_order(L))
    if not po.holds:
        report.add(unmet("lattice", "order relation is not a partial order"))
        return report
    lat = report.add(check_bounded_lattice(L))
    if not lat.holds:
        return report
    if system.n == 0:
        report.add(fails("states-nonempty", state_count=0))
        return report

    bad = next((p for p in range(system.n) if not system.actual[p] >> L.top & 1), None)
    report.add(_state_verdict(system, "top-actual", bad))
    bad = next((p for p in range(system.n) if system.actual[p] >> L.bottom & 1), None)
    report.add(_state_verdict(system, "bottom-not-actual", bad))
    report.add(_check_meet_closed(system))
    report.add(holds("state-preorder"))
    report.extras["state-preorder"] = [
        [system.states[p], system.states[q]] for p, q in state_preorder(system) if p != q
    ]
    report.add(_check_order_determining(system))
    return report


def _state_verdict(system: StatePropertySystem, name: str, p: int | None) -> Verdict:
    if p is None:
        return holds(name)
    return fails(name, state=system.states[p])


def _check_meet_closed(system: StatePropertySystem) -> Verdict:
    """Finite form of the meet condition: xi(p) is an up-set containing its own meet."""
    L = system.lattice
    for p, xi in enumerate(system.actual):
        for a in members(xi):
            escaped = L.up[a] & ~xi
            if escaped:
                b = next(members(escaped))
                return fails(
                    "meet-closed",
                    "not an up-set",
                    state=system.states[p],
                    member=L.names[a],
                    above=L.names[b],
                )
        lower = L.down[L.top]
        for a in members(xi):
            lower &= L.down[a]
        g = L._greatest(lower)
        if g is None or not xi >> g & 1:
            return fails(
                "meet-closed",
                "meet of xi(p) is not actual",
                state=system.states[p],
                meet=None if g is None else L.names[g],
            )
    return holds("meet-closed")


def _check_order_determining(system: StatePropertySystem) -> Verdict:
    """a <= b iff every state in which a is actual also has b actual."""
    L = system.lattice
    kappa = system.kappa_masks
    for a in L.elements:
        for b in L.elements:
            by_order = L.leq(a, b)
            by_states = kappa[a] & ~kappa[b] == 0
            if by_order != by_states:
                return fails(
                    "order-determining",
                    "order and actuality disagree",
                    a=L.names[a],
                    b=L.names[b],
                    a_leq_b=by_order,
                )
    return holds("order-determining")


def state_preorder(system: StatePropertySystem) -> list[tuple[int, int]]:
    """Pairs (p, q) with p < q, meaning xi(q) is contained in xi(p)."""
    xi = system.actual
    return [
        (p, q)
        for p in range(system.n)
        for q in range(system.n)
        if xi[q] & ~xi[p] == 0
    ]


def check_axiom_A(system: StatePropertySystem) -> Verdict:
    """At least two states, and xi(p) contained in xi(q) forces p = q."""
    system.require_valid()
    if system.n < 2:
        return fails("A", "at least two distinct states required", state_count=system.n)
    xi = system.actual
    for p in range(system.n):
        for q in range(system.n):
            if p != q and xi[p] & ~xi[q] == 0:
                return fails("A", "xi(p) is contained in xi(q)", p=system.states[p], q=system.states[q])
    return holds("A")


def state_support(system: StatePropertySystem, p: str | int) -> int:
    """The support a_p (index into the property lattice)."""
    system.require_valid()
    return system.supports[system.state_index(p)]


def check_atoms_and_atomisticity(system: StatePropertySystem) -> AxiomReport:
    report = AxiomReport()
    if not check_axiom_A(system).holds:
        report.add(unmet("supports-are-atoms", "axiom A fails"))
        report.add(unmet("atomistic", "axiom A fails"))
        return report
    L = system.lattice
    supports = set(system.supports)
    atoms = set(L.atoms)
    extra = sorted(supports - atoms)
    missing = sorted(atoms - supports)
    if extra or missing:
        report.add(
            fails(
                "supports-are-atoms",
                supports_not_atoms=L.name_of(extra),
                atoms_not_supports=L.name_of(missing),
            )
        )
    else:
        report.add(holds("supports-are-atoms"))
    report.extras["atoms"] = L.name_of(sorted(atoms))
    kappa = system.kappa_masks
    for b in L.elements:
        c = L.join_all(system.supports[s] for s in members(kappa[b]))
        if c != b:
            report.add(fails("atomistic", element=L.names[b], join_of_supports=L.names[c]))
            break
    else:
        report.add(holds("atomistic"))
    return report


def axiom_A_holds(system: StatePropertySystem) -> bool:
    return check_axiom_A(system).status == "holds"


__all__ = [
    "StatePropertySystem",
    "StructureError",
    "InvalidSystemError",
    "validate",
    "state_preorder",
    "check_axiom_A",
    "state_support",
    "check_atoms_and_atomisticity",
    "axiom_A_holds",
    "UNMET",
]
