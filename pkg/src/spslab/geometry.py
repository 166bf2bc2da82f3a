"""The operator p*q = lambda{p,q} and the projective-geometry certificates built on it."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .bits import members, to_mask
from .closure import LAMBDA, enumerate_family, lambda_close, pair_table
from .config import DEFAULT, Limits
from .lattice import check_atomistic, check_modular
from .superposition import check_msp, check_sp
from .system import StatePropertySystem, axiom_A_holds
from .verdict import NOT_APPLICABLE, PARTIAL, AxiomReport, Verdict, fails, holds, unmet


@dataclass(frozen=True, eq=False)
class ProjectiveGeometry:
    system: StatePropertySystem

    @cached_property
    def star(self) -> tuple[tuple[int, ...], ...]:
        return pair_table(self.system)

    @property
    def points(self) -> tuple[str, ...]:
        return self.system.states

    @cached_property
    def lines(self) -> tuple[int, ...]:
        """Distinct p*q over p != q, in first-appearance order."""
        seen: dict[int, None] = {}
        n = self.system.n
        for p in range(n):
            for q in range(p + 1, n):
                seen.setdefault(self.star[p][q], None)
        return tuple(seen)

    def line_sizes(self) -> list[int]:
        return sorted({L.bit_count() for L in self.lines})


def build_geometry(system: StatePropertySystem) -> tuple[ProjectiveGeometry, AxiomReport]:
    system.require_valid()
    G = ProjectiveGeometry(system)
    star = G.star
    n = system.n
    names = system.states
    report = AxiomReport()
    bad = next((p for p in range(n) if star[p][p] != 1 << p), None)
    report.add(holds("P1") if bad is None else fails("P1", p=names[bad], closure=system.state_names(star[bad][bad])))
    bad2 = next(((p, q) for p in range(n) for q in range(n) if not star[p][q] >> p & 1), None)
    report.add(holds("P2") if bad2 is None else fails("P2", p=names[bad2[0]], q=names[bad2[1]]))
    report.add(_check_p3(system, star))
    report.add(holds("star-symmetric") if all(star[p][q] == star[q][p] for p in range(n) for q in range(n))
               else fails("star-symmetric", note="asymmetric pair closure"))
    report.extras["points"] = n
    report.extras["lines"] = [system.state_names(L) for L in G.lines]
    return G, report


def _check_p3(system: StatePropertySystem, star) -> Verdict:
    """p in q*r, r in s*t and p != s imply (p*s) meets (q*t)."""
    n = system.n
    for s in range(n):
        for t in range(n):
            for r in members(star[s][t]):
                for q in range(n):
                    qt = star[q][t]
                    for p in members(star[q][r]):
                        if p != s and star[p][s] & qt == 0:
                            return fails("P3", **{k: system.states[v] for k, v in zip("pqrst", (p, q, r, s, t))})
    return holds("P3")


def _pairs(items: list[int], limits: Limits):
    """All ordered pairs, or a seeded sample of ``budget`` pairs."""
    total = len(items) ** 2
    if limits.allows(total):
        return ((x, y) for x in items for y in items), total, False
    if limits.seed is None:
        return None, total, False
    rng = random.Random(limits.seed)
    return ((rng.choice(items), rng.choice(items)) for _ in range(limits.budget)), total, True


def check_c_laws(system: StatePropertySystem, limits: Limits = DEFAULT) -> AxiomReport:
    """(C3)-(C7) for lambda, with the two implications linking them to P1-P3.

    Both sides of (C4), (C6) and (C7) depend on A only through lambda(A), so the
    quantifiers run over closed subsets; the brute-force oracle re-checks this
    over raw subsets on small instances.
    """
    system.require_valid()
    n = system.n
    star = pair_table(system)
    report = AxiomReport()
    report.add(holds("C3", note="finitary trivially: every subset of a finite set is finite"))
    family = list(enumerate_family(system, LAMBDA, limits))
    names = system.state_names

    c4 = None
    for X in family:
        grown = [lambda_close(system, X | 1 << z) for z in range(n)]
        for x in range(n):
            if X >> x & 1:
                continue
            y = next((y for y in range(n) if grown[y] >> x & 1 and not grown[x] >> y & 1), None)
            if y is not None:
                c4 = {"A": names(X), "x": system.states[x], "y": system.states[y]}
                break
        if c4:
            break
    report.add(holds("C4") if c4 is None else fails("C4", **c4))

    simple = lambda_close(system, 0) == 0 and all(lambda_close(system, 1 << x) == 1 << x for x in range(n))
    report.add(holds("C5") if simple else fails("C5", note="lambda is not simple", states=list(system.states)))

    nonempty = [X for X in family if X]
    pairs, total, sampled = _pairs(nonempty, limits)
    if pairs is None:
        report.add(Verdict("C6", PARTIAL, note=f"{total} pairs of subspaces exceed budget; pass a seed to sample", explored=0))
    else:
        bad = None
        explored = 0
        for X, Y in pairs:
            explored += 1
            rhs = 0
            for x in members(X):
                for y in members(Y):
                    rhs |= star[x][y]
            if lambda_close(system, X | Y) != rhs:
                bad = {"A": names(X), "B": names(Y)}
                break
        if bad:
            report.add(fails("C6", **bad))
        elif sampled:
            report.add(Verdict("C6", PARTIAL, note=f"sampled {explored} of {total} pairs", explored=explored))
        else:
            report.add(holds("C6", explored=explored))

    bad = None
    for X in nonempty:
        for b in range(n):
            rhs = 0
            for x in members(X):
                rhs |= star[x][b]
            if lambda_close(system, X | 1 << b) != rhs:
                bad = {"A": names(X), "b": system.states[b]}
                break
        if bad:
            break
    report.add(holds("C7") if bad is None else fails("C7", **bad))

    _, geo = build_geometry(system)
    p_all = all(geo[k].holds for k in ("P1", "P2", "P3"))
    c_all = all(report[k].holds for k in ("C3", "C4", "C5", "C6"))
    if p_all:
        report.add(holds("theorem-3") if c_all else fails("theorem-3", note="P1-P3 hold but a C-law fails",
                                                          failing=[k for k in ("C3", "C4", "C5", "C6") if not report[k].holds]))
    else:
        report.add(Verdict("theorem-3", NOT_APPLICABLE, note="(Sigma, *) is not a projective geometry"))
    if all(report[k].holds for k in ("C4", "C5", "C7")):
        report.add(holds("prop-proj") if p_all else fails("prop-proj", failing=[k for k in ("P1", "P2", "P3") if not geo[k].holds]))
    else:
        report.add(Verdict("prop-proj", NOT_APPLICABLE, note="C4, C5, C7 do not all hold"))
    return report


def check_projective_lattice(system: StatePropertySystem, limits: Limits = DEFAULT) -> AxiomReport:
    """Atomistic and modular subspace lattice; meet-continuity is automatic when finite."""
    system.require_valid()
    report = AxiomReport()
    family = enumerate_family(system, LAMBDA, limits)
    L = family.lattice
    report.add(check_atomistic(L))
    if limits.allows(L.size ** 3):
        report.add(check_modular(L))
    elif limits.seed is not None:
        rng = random.Random(limits.seed)
        bad = None
        for _ in range(limits.budget):
            x, y, z = (rng.randrange(L.size) for _ in range(3))
            z = L.join(x, z)
            if L.join(x, L.meet(y, z)) != L.meet(L.join(x, y), z):
                bad = (x, y, z)
                break
        if bad:
            report.add(fails("modular", **dict(zip("xyz", L.name_of(bad)))))
        else:
            report.add(Verdict("modular", PARTIAL, note=f"sampled {limits.budget} triples", explored=limits.budget))
    else:
        report.add(Verdict("modular", PARTIAL, note="triples exceed budget; pass a seed to sample", explored=0))
    report.add(holds("meet-continuous", note="finite lattice"))
    report.extras["size"] = L.size
    return report


def independent(system: StatePropertySystem, S: Iterable[str | int]) -> bool:
    idx = [system.state_index(s) for s in S]
    mask = to_mask(idx)
    if len(set(idx)) != len(idx):
        return False
    return all(not lambda_close(system, mask & ~(1 << i)) >> i & 1 for i in idx)


def max_independent(system: StatePropertySystem, limits: Limits = DEFAULT) -> tuple[int, list[str]]:
    """Size of a largest independent family and the first one found in index order.

    Independence is inherited by subsets, so a depth-first search that only
    extends independent families is exact.
    """
    system.require_valid()
    n = system.n
    best: list[int] = []
    steps = 0

    def extend(current: list[int], start: int) -> None:
        nonlocal best, steps
        if len(current) > len(best):
            best = list(current)
        if len(current) + (n - start) <= len(best):
            return
        for i in range(start, n):
            steps += 1
            limits.require("max_independent search", steps)
            trial = current + [i]
            if independent(system, trial):
                extend(trial, i + 1)

    extend([], 0)
    return len(best), [system.states[i] for i in best]


def check_irreducible(system: StatePropertySystem, limits: Limits = DEFAULT) -> Verdict:
    system.require_valid()
    if not axiom_A_holds(system):
        return unmet("irreducible", "axiom A fails")
    if not check_msp(system, 3, limits).holds:
        return unmet("irreducible", "3-MSP does not hold")
    sp = check_sp(system)
    if sp.holds:
        return holds("irreducible")
    return fails("irreducible", "SP fails", **(sp.witness or {}))
