"""Minimal superpositions, the MSP family of axioms, SP, and the lambda = S-bar equalities."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .bits import members, submasks
from .closure import lambda_close, pair_table, subset_key, sup_close
from .config import DEFAULT, Limits
from .system import StatePropertySystem, axiom_A_holds
from .verdict import FAILS, HOLDS, NOT_APPLICABLE, PARTIAL, AxiomReport, Verdict, fails, holds, unmet

FINITE = "finite"


@dataclass(frozen=True)
class MspVerdict(Verdict):
    level: str = ""


def _level_name(level: int | str) -> tuple[str, int | None]:
    if isinstance(level, int):
        return f"{level}-MSP", level
    if level in (FINITE, "f-MSP", "f", "MSP"):
        return ("MSP" if level == "MSP" else "f-MSP"), None
    if isinstance(level, str) and level.isdigit():
        return f"{level}-MSP", int(level)
    raise ValueError(f"unknown MSP level {level!r}")


def minimal_superpositions(system: StatePropertySystem, S: int) -> int:
    """States in S-bar that are not superpositions of any proper subset of S.

    The bar closure is monotone, so only the maximal proper subsets S - {x}
    need to be excluded.
    """
    out = sup_close(system, S)
    for x in members(S):
        out &= ~sup_close(system, S & ~(1 << x))
    return out


def is_minimal_superposition(system: StatePropertySystem, p: str | int, S: int) -> bool:
    return bool(minimal_superpositions(system, S) >> system.state_index(p) & 1)


def _split_order(S: int) -> list[int]:
    parts = [sub for sub in submasks(S, proper=True) if sub]
    parts.sort(key=subset_key)
    return parts


def check_msp(system: StatePropertySystem, level: int | str = FINITE, limits: Limits = DEFAULT) -> MspVerdict:
    """First counterexample (S, p, S1, S2) in the fixed order, or holds.

    Subsets are visited by cardinality then lexicographically; for each, the
    minimal superpositions in increasing index and the splits S1 in the same
    order.  On a finite system MSP and f-MSP are the same check.
    """
    system.require_valid()
    name, bound = _level_name(level)
    n = system.n
    top = n if bound is None else min(bound, n)
    explored = 0
    cap = limits.budget
    for k in range(top + 1):
        if explored + comb(n, k) > cap:
            return MspVerdict(
                name,
                PARTIAL,
                note=f"all subsets of size < {k} explored; budget {cap} reached",
                explored=k - 1,
                level=name,
            )
        for combo in combinations(range(n), k):
            explored += 1
            S = sum(1 << i for i in combo)
            mins = minimal_superpositions(system, S)
            if not mins or k < 2:
                continue
            bars = {}
            for p in members(mins):
                for S1 in _split_order(S):
                    S2 = S ^ S1
                    left = sup_close(system, S1 | 1 << p)
                    right = bars.get(S2)
                    if right is None:
                        right = bars[S2] = sup_close(system, S2)
                    if left & right == 0:
                        return MspVerdict(
                            name,
                            FAILS,
                            witness={
                                "S": system.state_names(S),
                                "p": system.states[p],
                                "S1": system.state_names(S1),
                                "S2": system.state_names(S2),
                            },
                            level=name,
                        )
    return MspVerdict(name, HOLDS, explored=top, level=name)


def check_2msp_exchange(system: StatePropertySystem) -> Verdict:
    """r in {p,q}-bar with r distinct from p, q forces p in {r,q}-bar."""
    system.require_valid()
    if not axiom_A_holds(system):
        return unmet("2-MSP-exchange", "axiom A fails")
    table = pair_table(system)
    n = system.n
    for p in range(n):
        for q in range(n):
            for r in members(table[p][q]):
                if r in (p, q):
                    continue
                if not table[r][q] >> p & 1:
                    return fails("2-MSP-exchange", p=system.states[p], q=system.states[q], r=system.states[r])
    return holds("2-MSP-exchange")


def check_sp(system: StatePropertySystem, S: int | None = None, name: str = "SP") -> Verdict:
    """Every distinct pair in S has a third state in its pair closure."""
    system.require_valid()
    if S is None:
        S = system.all_states
    table = pair_table(system)
    for p in members(S):
        for q in members(S):
            if q <= p:
                continue
            if table[p][q] & ~(1 << p | 1 << q) == 0:
                return fails(name, p=system.states[p], q=system.states[q])
    return holds(name)


def verify_theorem4(system: StatePropertySystem, limits: Limits = DEFAULT) -> AxiomReport:
    report = AxiomReport()
    if not axiom_A_holds(system):
        report.add(unmet("theorem-4-i", "axiom A fails"))
        report.add(unmet("theorem-4-ii", "axiom A fails"))
        return report
    n = system.n
    if check_msp(system, 3, limits).holds:
        for combo in combinations(range(n), 3):
            T = sum(1 << i for i in combo)
            if lambda_close(system, T) != sup_close(system, T):
                report.add(fails("theorem-4-i", triple=system.state_names(T)))
                break
        else:
            report.add(holds("theorem-4-i"))
    else:
        report.add(Verdict("theorem-4-i", NOT_APPLICABLE, note="3-MSP does not hold"))
    fmsp = check_msp(system, FINITE, limits)
    if fmsp.holds:
        if not limits.allows(1 << n):
            report.add(Verdict("theorem-4-ii", PARTIAL, note="power set exceeds budget", explored=0))
        else:
            bad = next((A for A in range(1 << n) if lambda_close(system, A) != sup_close(system, A)), None)
            if bad is None:
                report.add(holds("theorem-4-ii"))
            else:
                report.add(fails("theorem-4-ii", A=system.state_names(bad)))
    else:
        report.add(Verdict("theorem-4-ii", NOT_APPLICABLE, note=f"f-MSP is {fmsp.status}"))
    return report
