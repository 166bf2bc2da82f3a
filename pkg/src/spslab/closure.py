"""The pairwise closure lambda, the superposition closure S -> S-bar, and their closed-set families."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterator
from weakref import WeakKeyDictionary

from .bits import members, popcount
from .config import DEFAULT, Limits
from .lattice import PropertyLattice, check_atomistic
from .system import StatePropertySystem, axiom_A_holds
from .verdict import PARTIAL, AxiomReport, Verdict, fails, holds

LAMBDA = "lambda"
SUPERPOSITION = "superposition"
SUPERPOSITION0 = "superposition0"
KINDS = (LAMBDA, SUPERPOSITION, SUPERPOSITION0)

_pair_tables: "WeakKeyDictionary[StatePropertySystem, tuple[tuple[int, ...], ...]]" = WeakKeyDictionary()


def pair_table(system: StatePropertySystem) -> tuple[tuple[int, ...], ...]:
    """Memoized lambda{p, q} for every ordered pair; read-only once built."""
    table = _pair_tables.get(system)
    if table is None:
        system.require_valid()
        xi = system.actual
        table = tuple(
            tuple(system.states_with(xi[p] & xi[q]) for q in range(system.n)) for p in range(system.n)
        )
        _pair_tables[system] = table
    return table


def lambda_pair(system: StatePropertySystem, p: str | int, q: str | int) -> int:
    """{s : xi(p) and xi(q) together are contained in xi(s)}."""
    return pair_table(system)[system.state_index(p)][system.state_index(q)]


def lambda_close(system: StatePropertySystem, P: int) -> int:
    """Least lambda-closed superset of P, by worklist over newly adjoined states."""
    table = pair_table(system)
    closed = P
    pending = list(members(P))
    while pending:
        x = pending.pop()
        row = table[x]
        for y in members(closed):
            new = row[y] & ~closed
            if new:
                closed |= new
                pending.extend(members(new))
    return closed


def is_lambda_closed(system: StatePropertySystem, S: int) -> bool:
    table = pair_table(system)
    for p in members(S):
        row = table[p]
        for q in members(S):
            if row[q] & ~S:
                return False
    return True


def sup_close(system: StatePropertySystem, S: int) -> int:
    """All superpositions of S; the empty set closes to the empty set."""
    system.require_valid()
    return system.states_with(system.common_actual(S))


def sup_close0(system: StatePropertySystem, T: int) -> int:
    """Superpositions of T with respect to the testable properties only."""
    system.require_valid()
    return system.states_with(system.common_actual(T) & system.testable_mask)


def closure_for(system: StatePropertySystem, kind: str) -> Callable[[int], int]:
    if kind == LAMBDA:
        return lambda S: lambda_close(system, S)
    if kind == SUPERPOSITION:
        return lambda S: sup_close(system, S)
    if kind == SUPERPOSITION0:
        return lambda S: sup_close0(system, S)
    raise ValueError(f"unknown closure kind {kind!r}")


def subset_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Deterministic order: by size, then by sorted members."""
    return popcount(mask), tuple(members(mask))


@dataclass(frozen=True, eq=False)
class SubsetFamily:
    """The closed subsets of one closure operator, ordered by inclusion."""

    system: StatePropertySystem
    members: tuple[int, ...]
    kind: str
    checks: tuple[Verdict, ...] = field(default=())

    @cached_property
    def closure(self) -> Callable[[int], int]:
        return closure_for(self.system, self.kind)

    @cached_property
    def _set(self) -> frozenset[int]:
        return frozenset(self.members)

    def __contains__(self, S: int) -> bool:
        return S in self._set

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def meet(self, x: int, y: int) -> int:
        return x & y

    def join(self, x: int, y: int) -> int:
        return self.closure(x | y)

    def name(self, mask: int) -> str:
        return "{" + ",".join(self.system.state_names(mask)) + "}"

    @cached_property
    def lattice(self) -> PropertyLattice:
        return PropertyLattice.of_subsets(self.members, self.name)

    def index(self, mask: int) -> int:
        return self.members.index(mask)

    def as_names(self) -> list[list[str]]:
        return [self.system.state_names(S) for S in self.members]

    def is_intersection_system(self) -> Verdict:
        for x in self.members:
            for y in self.members:
                if x & y not in self._set:
                    return fails("intersection-system", a=self.name(x), b=self.name(y))
        if self.system.all_states not in self._set:
            return fails("intersection-system", "empty intersection (whole set) missing")
        return holds("intersection-system")


def enumerate_family(
    system: StatePropertySystem, kind: str = LAMBDA, limits: Limits = DEFAULT
) -> SubsetFamily:
    """Every closed subset for the chosen closure, grown one state at a time.

    Each closed set C is reached from the closure of the empty set by
    repeatedly closing X + {s} with s in C \\ X, so the search is complete.
    """
    system.require_valid()
    limits.require(f"enumerate {kind}-closed family", 1 << system.n)
    close = closure_for(system, kind)
    start = close(0)
    seen = {start}
    frontier = [start]
    while frontier:
        X = frontier.pop()
        for s in range(system.n):
            if not X >> s & 1:
                Y = close(X | 1 << s)
                if Y not in seen:
                    seen.add(Y)
                    frontier.append(Y)
    ordered = tuple(sorted(seen, key=subset_key))
    checks: list[Verdict] = []
    if axiom_A_holds(system):
        fam = SubsetFamily(system, ordered, kind)
        checks.append(check_atomistic(fam.lattice))
    return SubsetFamily(system, ordered, kind, tuple(checks))


# ---------------------------------------------------------------------------


def _bounded_pairs(n: int, budget: int) -> tuple[Iterator[tuple[int, int]], int]:
    total = 1 << (2 * n)

    def gen():
        count = 0
        for A in range(1 << n):
            for B in range(1 << n):
                if count >= budget:
                    return
                count += 1
                yield A, B

    return gen(), total


def _closed_or_partial(name: str, explored: int, total: int) -> Verdict:
    if explored < total:
        return Verdict(name, PARTIAL, note=f"explored {explored} of {total}", explored=explored)
    return holds(name, explored=explored)


def check_closure_laws(system: StatePropertySystem, limits: Limits = DEFAULT) -> AxiomReport:
    """Closure-operator laws for lambda and for S-bar, exhaustive up to the budget."""
    system.require_valid()
    n = system.n
    names = system.state_names
    lam = [lambda_close(system, S) for S in range(1 << n)] if limits.allows(1 << n) else None
    report = AxiomReport()
    if lam is None:
        for law in ("C1", "C2", "law-1", "law-2", "law-3-4", "C5-simple", "lemma-3", "lemma-4"):
            report.add(Verdict(law, PARTIAL, note="power set exceeds budget", explored=0))
        return report
    bar = [sup_close(system, S) for S in range(1 << n)]

    bad = next((P for P in range(1 << n) if P & ~lam[P]), None)
    report.add(holds("C1") if bad is None else fails("C1", P=names(bad)))

    def run(name: str, test) -> None:
        pairs, total = _bounded_pairs(n, limits.budget)
        explored = 0
        for A, B in pairs:
            explored += 1
            witness = test(A, B)
            if witness is not None:
                report.add(fails(name, **witness))
                return
        report.add(_closed_or_partial(name, explored, total))

    def c2(P1, P2):
        if P1 & ~lam[P2] == 0 and lam[P1] & ~lam[P2]:
            return {"P1": names(P1), "P2": names(P2)}
        return None

    def law1(A, B):
        u = lam[A | B]
        if u != lam[lam[A] | B] or u != lam[lam[A] | lam[B]]:
            return {"A": names(A), "B": names(B)}
        return None

    strict = []

    def law2(A, B):
        x, y, z = lam[A & B], lam[lam[A] & B], lam[A] & lam[B]
        if x & ~y or y & ~z:
            return {"A": names(A), "B": names(B)}
        if not strict and x != z:
            strict.append({"A": names(A), "B": names(B), "lambda(A&B)": names(x), "lambda(A)&lambda(B)": names(z)})
        return None

    run("C2", c2)
    run("law-1", law1)
    run("law-2", law2)
    if strict:
        report.extras["law-2-strict"] = strict[0]
    report.add(_family_laws(system, lam, limits))

    simple_bad = 0 if lam[0] else None
    if simple_bad is None:
        simple_bad = next((1 << x for x in range(n) if lam[1 << x] != 1 << x), None)
    if simple_bad is None:
        report.add(holds("C5-simple"))
    else:
        report.add(fails("C5-simple", subset=names(simple_bad), closure=names(lam[simple_bad])))
    if n >= 2:
        a_holds = axiom_A_holds(system)
        ok = a_holds == (simple_bad is None)
        report.add(holds("lemma-3") if ok else fails("lemma-3", A=a_holds, simple=simple_bad is None))
    else:
        report.add(Verdict("lemma-3", "not-applicable", note="fewer than two states"))

    def lemma4(A, B):
        if A & ~bar[A]:
            return {"clause": "i", "A": names(A)}
        if A & ~bar[B] == 0 and bar[A] & ~bar[B]:
            return {"clause": "ii", "A": names(A), "B": names(B)}
        if lam[bar[A]] != bar[A]:
            return {"clause": "iii", "A": names(A)}
        return None

    run("lemma-4", lemma4)
    return report


def _family_laws(system: StatePropertySystem, lam: list[int], limits: Limits) -> Verdict:
    """Laws (3) and (4) over families of three subsets, within the budget."""
    from itertools import combinations

    n = system.n
    total = _comb(1 << n, 3)
    explored = 0
    for A, B, C in combinations(range(1 << n), 3):
        if explored >= limits.budget:
            break
        explored += 1
        union = A | B | C
        if lam[union] != lam[lam[A] | lam[B] | lam[C]]:
            return fails("law-3-4", law="3", family=[system.state_names(X) for X in (A, B, C)])
        if lam[A & B & C] & ~(lam[A] & lam[B] & lam[C]):
            return fails("law-3-4", law="4", family=[system.state_names(X) for X in (A, B, C)])
    return _closed_or_partial("law-3-4", explored, total)


def _comb(n: int, k: int) -> int:
    from math import comb

    return comb(n, k)
