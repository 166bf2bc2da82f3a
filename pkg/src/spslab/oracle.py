"""Definitional brute-force evaluator.

Every quantity is recomputed from the raw data of an instance, namely the
states, the order relation and the actuality sets, using Python sets and
straight quantifier loops.  Nothing here shares code with the optimized
modules (no pair tables, no bitmask helpers, no caches), so agreement
between the two is meaningful evidence.  Subsets are frozensets of state
indices; properties are lattice indices.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import chain, combinations

from .system import StatePropertySystem

def _xi(system: StatePropertySystem) -> list[frozenset[int]]:
    return [frozenset(a for a in range(system.m) if system.actual[p] >> a & 1) for p in range(system.n)]


def _leq(system: StatePropertySystem, a: int, b: int) -> bool:
    return bool(system.lattice.up[a] >> b & 1)


def all_subsets(n: int):
    items = range(n)
    return (frozenset(c) for c in chain.from_iterable(combinations(items, k) for k in range(n + 1)))


def to_frozen(mask: int) -> frozenset[int]:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


# ------------------------------------------------------------------- closures


def pair(system: StatePropertySystem, p: int, q: int) -> frozenset[int]:
    xi = _xi(system)
    common = xi[p] & xi[q]
    return frozenset(s for s in range(system.n) if common <= xi[s])


def is_lambda_closed(system: StatePropertySystem, S: frozenset[int]) -> bool:
    return all(pair(system, p, q) <= S for p in S for q in S)


def lambda_closure(system: StatePropertySystem, P: frozenset[int]) -> frozenset[int]:
    """Intersection of every lambda-closed superset."""
    out = frozenset(range(system.n))
    for S in all_subsets(system.n):
        if P <= S and is_lambda_closed(system, S):
            out &= S
    return out


def bar(system: StatePropertySystem, S: frozenset[int], testable_only: bool = False) -> frozenset[int]:
    xi = _xi(system)
    common = frozenset(range(system.m))
    for s in S:
        common &= xi[s]
    if testable_only:
        common &= frozenset(testable(system))
    return frozenset(p for p in range(system.n) if common <= xi[p])


def family(system: StatePropertySystem, kind: str) -> set[frozenset[int]]:
    if kind == "lambda":
        return {S for S in all_subsets(system.n) if is_lambda_closed(system, S)}
    zero = kind == "superposition0"
    return {S for S in all_subsets(system.n) if bar(system, S, zero) == S}


def minimal_superpositions(system: StatePropertySystem, S: frozenset[int]) -> frozenset[int]:
    proper = [frozenset(c) for k in range(len(S)) for c in combinations(sorted(S), k)]
    return frozenset(p for p in bar(system, S) if not any(p in bar(system, Q) for Q in proper))


def msp_holds(system: StatePropertySystem, bound: int | None = None) -> bool:
    """For |S| <= bound, every minimal superposition p of S and every split
    S = S1 + S2 into nonempty parts: bar(S1 + p) meets bar(S2)."""
    n = system.n
    top = n if bound is None else min(bound, n)
    for k in range(2, top + 1):
        for combo in combinations(range(n), k):
            S = frozenset(combo)
            for p in minimal_superpositions(system, S):
                for j in range(1, k):
                    for left in combinations(combo, j):
                        S1 = frozenset(left)
                        if not bar(system, S1 | {p}) & bar(system, S - S1):
                            return False
    return True


def sp_holds(system: StatePropertySystem, S: frozenset[int]) -> bool:
    return all(pair(system, p, q) - {p, q} for p in S for q in S if p != q)


# ------------------------------------------------------------------- geometry


def axiom_A(system: StatePropertySystem) -> bool:
    """At least two states, and no actuality set inside another's."""
    xi = _xi(system)
    n = system.n
    return n >= 2 and all(not (xi[p] <= xi[q]) for p in range(n) for q in range(n) if p != q)


def projective_axioms(system: StatePropertySystem) -> dict[str, bool]:
    n = system.n
    star = {(p, q): pair(system, p, q) for p in range(n) for q in range(n)}
    p1 = all(star[p, p] == {p} for p in range(n))
    p2 = all(p in star[p, q] for p in range(n) for q in range(n))
    p3 = all(
        bool(star[p, s] & star[q, t])
        for s in range(n) for t in range(n) for r in star[s, t]
        for q in range(n) for p in star[q, r] if p != s
    )
    return {"P1": p1, "P2": p2, "P3": p3}


def max_independent(system: StatePropertySystem) -> int:
    best = 0
    for S in all_subsets(system.n):
        if len(S) > best and all(p not in lambda_closure(system, S - {p}) for p in S):
            best = len(S)
    return best


# ------------------------------------------------------------------- sectors


def sectors(system: StatePropertySystem) -> set[frozenset[int]]:
    """Nonempty blocks that are lambda-closed, satisfy SP inside, and have trivial
    pair closures across their boundary."""
    n = system.n
    out = set()
    for S in all_subsets(n):
        if not S or not is_lambda_closed(system, S) or not sp_holds(system, S):
            continue
        outside = frozenset(range(n)) - S
        if all(pair(system, p, q) == {p, q} for p in S for q in outside):
            out.add(S)
    return out


def kappa(system: StatePropertySystem, a: int) -> frozenset[int]:
    return frozenset(p for p, x in enumerate(_xi(system)) if a in x)


def classical(system: StatePropertySystem) -> set[int]:
    xi = _xi(system)
    return {a for a in range(system.m)
            if any(all((a in xi[s]) != (b in xi[s]) for s in range(system.n)) for b in range(system.m))}


def _glb(system: StatePropertySystem, a: int, b: int) -> int:
    lower = [c for c in range(system.m) if _leq(system, c, a) and _leq(system, c, b)]
    return next(c for c in lower if all(_leq(system, d, c) for d in lower))


def _lub(system: StatePropertySystem, a: int, b: int) -> int:
    upper = [c for c in range(system.m) if _leq(system, a, c) and _leq(system, b, c)]
    return next(c for c in upper if all(_leq(system, c, d) for d in upper))


def central(system: StatePropertySystem) -> set[int]:
    m = system.m
    out = set()
    for z in range(m):
        for w in range(m):
            if all(_lub(system, _glb(system, a, z), _glb(system, a, w)) == a
                   and _glb(system, _lub(system, a, z), _lub(system, a, w)) == a for a in range(m)):
                out.add(z)
                break
    return out


# --------------------------------------------------------------- probability


def testable(system: StatePropertySystem) -> list[int]:
    L = system.lattice
    if system.testable is None:
        return sorted({L.bottom, L.top})
    return [a for a in range(system.m) if system.testable >> a & 1]


def _mu(system: StatePropertySystem) -> dict[tuple[int, int], Fraction]:
    if system.has_measurements:
        return {k: Fraction(v) for k, v in system.mu.items()}
    xi = _xi(system)
    return {(p, a): Fraction(int(a in xi[p])) for p in range(system.n) for a in testable(system)}


def comp0(system: StatePropertySystem) -> dict[int, list[int]]:
    """For each testable a, every testable b with mu_p(b) = 1 - mu_p(a) for all p."""
    mu = _mu(system)
    T = testable(system)
    return {a: [b for b in T if all(mu[p, b] == 1 - mu[p, a] for p in range(system.n))] for a in T}


def perp(system: StatePropertySystem) -> set[tuple[int, int]]:
    if system.orthogonality is not None:
        return {(p, q) for p in range(system.n) for q in range(system.n) if system.orthogonality[p] >> q & 1}
    mu = _mu(system)
    T = testable(system)
    return {(p, q) for p in range(system.n) for q in range(system.n)
            if any(mu[p, a] == 1 and mu[q, a] == 0 for a in T)}


def prime(system: StatePropertySystem, T: frozenset[int]) -> frozenset[int]:
    rel = perp(system)
    return frozenset(p for p in range(system.n) if all((p, t) in rel for t in T))


def kappa_order_embedding(system: StatePropertySystem) -> bool:
    m = system.m
    return all(_leq(system, a, b) == (kappa(system, a) <= kappa(system, b)) for a in range(m) for b in range(m))
