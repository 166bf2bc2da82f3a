"""Measurement tables on the testable properties and the orthostructures they induce.

Everything here is exact: values are :class:`fractions.Fraction` and all
comparisons are identities, never tolerances.  Without a designated set of
testable properties the system is read with L0 = {0, I} and the two-valued
table forced by (Oi).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator
from weakref import WeakKeyDictionary

from .bits import members
from .closure import SUPERPOSITION, SUPERPOSITION0, enumerate_family, sup_close0
from .config import DEFAULT, BudgetExceeded, Limits
from .lattice import PropertyLattice, check_atomistic, check_orthocomplementation
from .system import StatePropertySystem, axiom_A_holds
from .verdict import PARTIAL, AxiomReport, Verdict, fails, holds, unmet

ONE = Fraction(1)
ZERO = Fraction(0)


class ProbabilityError(ValueError):
    """The measurement table does not provide a required complement."""

    def __init__(self, verdict: Verdict):
        self.verdict = verdict
        super().__init__(f"{verdict.name}: {verdict.note or verdict.witness}")


@dataclass(frozen=True, eq=False)
class ProbabilityTable:
    """mu as one column vector per testable property (values indexed by state)."""

    system: StatePropertySystem

    @cached_property
    def testable(self) -> tuple[int, ...]:
        return tuple(members(self.system.testable_mask))

    @cached_property
    def vectors(self) -> dict[int, tuple[Fraction, ...]]:
        table = self.system.mu_table
        return {a: tuple(table[p, a] for p in range(self.system.n)) for a in self.testable}

    @cached_property
    def by_vector(self) -> dict[tuple[Fraction, ...], list[int]]:
        out: dict[tuple[Fraction, ...], list[int]] = {}
        for a in self.testable:
            out.setdefault(self.vectors[a], []).append(a)
        return out

    def orthogonal(self, a: int, b: int) -> bool:
        return all(x + y <= 1 for x, y in zip(self.vectors[a], self.vectors[b]))

    @cached_property
    def perp(self) -> dict[int, int]:
        """Bitmask (over property indices) of testable elements orthogonal to each testable a."""
        return {a: sum(1 << b for b in self.testable if self.orthogonal(a, b)) for a in self.testable}


_tables: "WeakKeyDictionary[StatePropertySystem, ProbabilityTable]" = WeakKeyDictionary()


def table_of(system: StatePropertySystem) -> ProbabilityTable:
    t = _tables.get(system)
    if t is None:
        t = _tables[system] = ProbabilityTable(system)
    return t


# ------------------------------------------------------------------ (Oi)-(Oiii)


def _orthogonal_families(P: ProbabilityTable, limits: Limits) -> Iterator[tuple[int, ...]]:
    """Sets of distinct, pairwise orthogonal testable elements (cliques), smallest first."""
    items = P.testable
    steps = 0

    def grow(clique: tuple[int, ...], allowed: int) -> Iterator[tuple[int, ...]]:
        nonlocal steps
        steps += 1
        limits.require("orthogonal family search", steps)
        yield clique
        for b in members(allowed):
            yield from grow(clique + (b,), allowed & P.perp[b] & ~((1 << (b + 1)) - 1))

    everything = sum(1 << a for a in items)
    yield from grow((), everything)


def validate_mu(system: StatePropertySystem, limits: Limits = DEFAULT) -> AxiomReport:
    system.require_valid()
    L = system.lattice
    report = AxiomReport()
    tmask = system.testable_mask
    defined = holds("mu-defined")
    if not (tmask >> L.bottom & 1 and tmask >> L.top & 1):
        defined = fails("mu-defined", "L0 must contain 0 and I", testable=L.name_of(members(tmask)))
    else:
        table = system.mu_table
        for p in range(system.n):
            for a in members(tmask):
                v = table.get((p, a))
                if v is None:
                    defined = fails("mu-defined", "missing entry", state=system.states[p], property=L.names[a])
                    break
                if not ZERO <= v <= ONE:
                    defined = fails("mu-defined", "probability out of range", state=system.states[p],
                                    property=L.names[a], value=str(v))
                    break
            if defined.fails:
                break
    report.add(defined)
    if defined.fails:
        for name in ("Oi", "Oii", "Oiii"):
            report.add(unmet(name, "measurement table is incomplete or out of range"))
        return report
    P = table_of(system)
    names = system.states

    bad = next(((p, a) for p in range(system.n) for a in P.testable
                if (P.vectors[a][p] == 1) != bool(system.actual[p] >> a & 1)), None)
    report.add(holds("Oi") if bad is None else fails(
        "Oi", state=names[bad[0]], property=L.names[bad[1]], value=str(P.vectors[bad[1]][bad[0]]),
        actual=bool(system.actual[bad[0]] >> bad[1] & 1)))

    bad = None
    for a in P.testable:
        for b in P.testable:
            if a != b and L.leq(a, b):
                p = next((p for p in range(system.n) if P.vectors[a][p] > P.vectors[b][p]), None)
                if p is not None:
                    bad = (a, b, p)
                    break
        if bad:
            break
    report.add(holds("Oii") if bad is None else fails(
        "Oii", a=L.names[bad[0]], b=L.names[bad[1]], state=names[bad[2]]))

    try:
        report.add(_check_oiii(system, P, limits))
    except BudgetExceeded as err:
        report.add(Verdict("Oiii", PARTIAL, note=str(err), explored=err.budget))
    return report


def _check_oiii(system: StatePropertySystem, P: ProbabilityTable, limits: Limits) -> Verdict:
    n = system.n
    count = 0
    for family in _orthogonal_families(P, limits):
        count += 1
        total = [ZERO] * n
        for a in family:
            for p, v in enumerate(P.vectors[a]):
                total[p] += v
        need = tuple(ONE - t for t in total)
        if need not in P.by_vector:
            return fails("Oiii", "no complement for an orthogonal family",
                         family=system.lattice.name_of(family))
    return holds("Oiii", explored=count)


def orthogonal(system: StatePropertySystem, a: str | int, b: str | int) -> bool:
    P = table_of(system)
    return P.orthogonal(system.prop(a), system.prop(b))


# ------------------------------------------------------------ orthocomplement


def ortho_complement0(system: StatePropertySystem, a: str | int) -> int:
    """The testable b with mu_p(b) = 1 - mu_p(a) for every state, asserted unique."""
    system.require_valid()
    P = table_of(system)
    a = system.prop(a)
    if a not in P.vectors:
        raise KeyError(f"{system.prop_name(a)!r} is not testable")
    need = tuple(ONE - v for v in P.vectors[a])
    found = P.by_vector.get(need, [])
    if not found:
        raise ProbabilityError(fails("Oiii", "no complement in L0", element=system.prop_name(a)))
    if len(found) > 1:
        raise ProbabilityError(fails("comp0-unique", "two testable elements share a column",
                                     elements=system.lattice.name_of(found)))
    return found[0]


def comp0_table(system: StatePropertySystem) -> dict[int, int]:
    return {a: ortho_complement0(system, a) for a in table_of(system).testable}


def _poset_join(L: PropertyLattice, within: int, a: int, b: int) -> int | None:
    """Least upper bound of a and b inside the sub-poset ``within``; None if absent."""
    ub = L.up[a] & L.up[b] & within
    for c in members(ub):
        if L.down[c] & ub == 1 << c:
            return c
    return None


def _poset_meet(L: PropertyLattice, within: int, a: int, b: int) -> int | None:
    lb = L.down[a] & L.down[b] & within
    for c in members(lb):
        if L.up[c] & lb == 1 << c:
            return c
    return None


def _poset_join_all(L: PropertyLattice, within: int, items: tuple[int, ...]) -> int | None:
    ub = within
    for a in items:
        ub &= L.up[a]
    for c in members(ub):
        if L.down[c] & ub == 1 << c:
            return c
    return None


def check_omp(system: StatePropertySystem, limits: Limits = DEFAULT) -> AxiomReport:
    """Orthomodular-poset certificate for L0 (orthocomplement, orthomodular law, joins, order)."""
    report = AxiomReport()
    names = ("comp0-unique", "comp0-orthocomplementation", "orthomodular",
             "orthogonal-joins", "order-determining", "nonzero-actual")
    mu = validate_mu(system, limits)
    if not mu.ok:
        for n in names:
            report.add(unmet(n, "measurement axioms fail"))
        return report
    L = system.lattice
    P = table_of(system)
    within = system.testable_mask

    dup = next((group for group in P.by_vector.values() if len(group) > 1), None)
    report.add(holds("comp0-unique") if dup is None else fails("comp0-unique", elements=L.name_of(dup)))
    if dup is not None:
        for n in names[1:]:
            report.add(unmet(n, "complement is not unique"))
        return report
    comp = comp0_table(system)
    report.extras["comp0"] = {L.names[a]: L.names[c] for a, c in comp.items()}

    bad = None
    for a in P.testable:
        c = comp[a]
        if comp[c] != a:
            bad = {"element": L.names[a], "law": "involution"}
        elif _poset_join(L, within, a, c) != L.top:
            bad = {"element": L.names[a], "law": "join-top"}
        elif _poset_meet(L, within, a, c) != L.bottom:
            bad = {"element": L.names[a], "law": "meet-zero"}
        else:
            b = next((b for b in P.testable if L.leq(a, b) and not L.leq(comp[b], c)), None)
            if b is not None:
                bad = {"a": L.names[a], "b": L.names[b], "law": "order-reversing"}
        if bad:
            break
    report.add(holds("comp0-orthocomplementation") if bad is None else fails("comp0-orthocomplementation", **bad))

    bad = None
    for a in P.testable:
        for b in P.testable:
            if not L.leq(a, b):
                continue
            m = _poset_meet(L, within, comp[a], b)
            j = None if m is None else _poset_join(L, within, a, m)
            if j != b:
                bad = {"a": L.names[a], "b": L.names[b], "got": None if j is None else L.names[j]}
                break
        if bad:
            break
    report.add(holds("orthomodular") if bad is None else fails("orthomodular", **bad))

    bad = None
    try:
        for family in _orthogonal_families(P, limits):
            if len(family) < 2:
                continue
            j0 = _poset_join_all(L, within, family)
            j = L.join_all(family)
            if j0 != j:
                bad = {"family": L.name_of(family), "join_in_L0": None if j0 is None else L.names[j0],
                       "join_in_L": L.names[j]}
                break
        report.add(holds("orthogonal-joins") if bad is None else fails("orthogonal-joins", **bad))
    except BudgetExceeded as err:
        report.add(Verdict("orthogonal-joins", PARTIAL, note=str(err)))

    bad = next(((a, b) for a in P.testable for b in P.testable
                if all(x <= y for x, y in zip(P.vectors[a], P.vectors[b])) and not L.leq(a, b)), None)
    report.add(holds("order-determining") if bad is None else fails(
        "order-determining", a=L.names[bad[0]], b=L.names[bad[1]]))

    bad = next((a for a in P.testable if a != L.bottom and ONE not in P.vectors[a]), None)
    report.add(holds("nonzero-actual") if bad is None else fails("nonzero-actual", element=L.names[bad]))
    return report


# ------------------------------------------------------------------ (B), (C)


def check_axiom_B(system: StatePropertySystem) -> Verdict:
    system.require_valid()
    if not axiom_A_holds(system):
        return unmet("B", "axiom A fails")
    bad = next((p for p in range(system.n) if not system.testable_mask >> system.supports[p] & 1), None)
    if bad is None:
        return holds("B")
    return fails("B", "support is not testable", state=system.states[bad],
                 support=system.prop_name(system.supports[bad]))


def _support_complements(system: StatePropertySystem) -> list[int] | Verdict:
    try:
        return [ortho_complement0(system, a) for a in system.supports]
    except ProbabilityError as err:
        return err.verdict


def check_axiom_C(system: StatePropertySystem) -> Verdict:
    """b is the meet of the complemented supports above it (empty meet is I)."""
    system.require_valid()
    if not axiom_A_holds(system):
        return unmet("C", "axiom A fails")
    if not check_axiom_B(system).holds:
        return unmet("C", "axiom B fails")
    if not validate_mu(system).ok:
        return unmet("C", "measurement axioms fail")
    L = system.lattice
    cs = _support_complements(system)
    if isinstance(cs, Verdict):
        return unmet("C", f"support complement missing: {cs.note}")
    for b in L.elements:
        m = L.meet_all(c for c in cs if L.leq(b, c))
        if m != b:
            return fails("C", element=L.names[b], meet=L.names[m])
    return holds("C")


def abc_hold(system: StatePropertySystem) -> bool:
    return axiom_A_holds(system) and check_axiom_B(system).holds and check_axiom_C(system).holds


def extend_orthocomplement(system: StatePropertySystem) -> tuple[tuple[int, ...] | None, AxiomReport]:
    """b' = join of the supports a_s with b below a_s', on the whole lattice."""
    report = AxiomReport()
    names = ["compL-order-reversing", "compL-involution", "compL-meet-zero", "compL-join-top",
             "compL-atomistic", "compL-agrees-with-comp0"]
    for axiom, verdict in (("A", None), ("B", check_axiom_B), ("C", check_axiom_C)):
        ok = axiom_A_holds(system) if verdict is None else verdict(system).holds
        if not ok:
            for n in names:
                report.add(unmet(n, f"axiom {axiom} fails"))
            return None, report
    L = system.lattice
    cs = _support_complements(system)
    assert not isinstance(cs, Verdict)
    sup = system.supports
    comp = tuple(L.join_all(sup[s] for s in range(system.n) if L.leq(b, cs[s])) for b in L.elements)
    report.extend(check_orthocomplementation(L, comp, "compL-"))
    report.add(check_atomistic(L, "compL-atomistic"))
    c0 = comp0_table(system)
    bad = next((a for a, c in c0.items() if comp[a] != c), None)
    report.add(holds("compL-agrees-with-comp0") if bad is None else fails(
        "compL-agrees-with-comp0", element=L.names[bad], compL=L.names[comp[bad]], comp0=L.names[c0[bad]]))
    report.extras["compL"] = {L.names[a]: L.names[comp[a]] for a in L.elements}
    return comp, report


# ------------------------------------------------------------ state orthogonality


def perp_masks(system: StatePropertySystem) -> tuple[int, ...]:
    """Per state, the bitmask of states orthogonal to it.

    An explicit relation on the instance takes precedence; otherwise p is
    orthogonal to q when some testable a has mu_p(a) = 1 and mu_q(a) = 0.
    """
    if system.orthogonality is not None:
        return system.orthogonality
    P = table_of(system)
    rows = []
    for p in range(system.n):
        row = 0
        for q in range(system.n):
            if any(v[p] == 1 and v[q] == 0 for v in P.vectors.values()):
                row |= 1 << q
        rows.append(row)
    return tuple(rows)


def state_perp(system: StatePropertySystem, p: str | int, q: str | int) -> bool:
    return bool(perp_masks(system)[system.state_index(p)] >> system.state_index(q) & 1)


def T_prime(system: StatePropertySystem, T: int) -> int:
    """States orthogonal to every member of T (all states when T is empty)."""
    rows = perp_masks(system)
    out = system.all_states
    for t in members(T):
        out &= rows[t]
    return out


def check_state_perp(system: StatePropertySystem) -> AxiomReport:
    """Symmetry and anti-reflexivity of the measurement-derived relation."""
    report = AxiomReport()
    rows = perp_masks(system)
    n = system.n
    bad = next(((p, q) for p in range(n) for q in range(n) if (rows[p] >> q & 1) != (rows[q] >> p & 1)), None)
    report.add(holds("perp-symmetric") if bad is None else fails(
        "perp-symmetric", p=system.states[bad[0]], q=system.states[bad[1]]))
    null = [system.states[p] for p in range(n) if rows[p] >> p & 1]
    report.add(holds("perp-irreflexive") if not null else fails("perp-irreflexive", null_states=null))
    report.extras["perp"] = [[system.states[p], system.states[q]] for p in range(n) for q in members(rows[p]) if p < q]
    return report


def verify_bicommutant(system: StatePropertySystem, limits: Limits = DEFAULT) -> AxiomReport:
    """T-bar = T-bar0, T'' = T-bar0 and T-bar = T'' over every T."""
    report = AxiomReport()
    a = axiom_A_holds(system)
    b = a and check_axiom_B(system).holds
    c = b and check_axiom_C(system).holds
    n = system.n
    if not limits.allows(1 << n):
        for name in ("prop-T", "prop-Guz", "cor-F"):
            report.add(Verdict(name, PARTIAL, note="power set exceeds budget", explored=0))
        return report
    # common actual sets and T' built up from T minus its lowest state
    perp = perp_masks(system)
    common = [system.all_properties] * (1 << n)
    prime = [system.all_states] * (1 << n)
    for T in range(1, 1 << n):
        low = (T & -T).bit_length() - 1
        rest = T & (T - 1)
        common[T] = common[rest] & system.actual[low]
        prime[T] = prime[rest] & perp[low]
    testable = system.testable_mask
    rows = [(T, system.states_with(common[T]), system.states_with(common[T] & testable), prime[prime[T]])
            for T in range(1 << n)]
    names = system.state_names

    def run(name: str, ok: bool, why: str, i: int, j: int) -> None:
        if not ok:
            report.add(unmet(name, why))
            return
        bad = next((r for r in rows if r[i] != r[j]), None)
        if bad is None:
            report.add(holds(name, explored=len(rows)))
        else:
            report.add(fails(name, T=names(bad[0]), left=names(bad[i]), right=names(bad[j])))

    run("prop-T", c, "needs A, B and C", 1, 2)
    run("prop-Guz", b, "needs A and B", 3, 2)
    run("cor-F", c, "needs A, B and C", 1, 3)
    return report


def build_F0(system: StatePropertySystem, limits: Limits = DEFAULT):
    """The L0-superposition-closed family with S -> S' certified as an orthocomplementation."""
    report = AxiomReport()
    family = enumerate_family(system, SUPERPOSITION0, limits)
    if not (axiom_A_holds(system) and check_axiom_B(system).holds):
        report.add(unmet("F0-orthocomplemented", "needs A and B"))
        report.add(unmet("F-orthocomplemented", "needs A, B and C"))
        return family, report
    report.add(_family_ortho(system, family, "F0-orthocomplemented"))
    if check_axiom_C(system).holds:
        report.add(_family_ortho(system, enumerate_family(system, SUPERPOSITION, limits), "F-orthocomplemented"))
    else:
        report.add(unmet("F-orthocomplemented", "axiom C fails"))
    report.extras["F0"] = family.as_names()
    return family, report


def _family_ortho(system: StatePropertySystem, family, name: str) -> Verdict:
    L = family.lattice
    index = {m: i for i, m in enumerate(family.members)}
    comp = []
    for S in family.members:
        Sp = T_prime(system, S)
        if Sp not in index:
            return fails(name, "S' is not in the family", S=family.name(S), S_prime=family.name(Sp))
        comp.append(index[Sp])
    for v in check_orthocomplementation(L, comp):
        if v.fails:
            return fails(name, v.name, **(v.witness or {}))
    return holds(name)


__all__ = [
    "ProbabilityError",
    "ProbabilityTable",
    "validate_mu",
    "orthogonal",
    "ortho_complement0",
    "comp0_table",
    "check_omp",
    "check_axiom_B",
    "check_axiom_C",
    "abc_hold",
    "extend_orthocomplement",
    "perp_masks",
    "state_perp",
    "T_prime",
    "sup_close0",
    "check_state_perp",
    "verify_bicommutant",
    "build_F0",
]
