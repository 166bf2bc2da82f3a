"""The Cartan map, sector decomposition, and classical versus central properties."""

from __future__ import annotations

from dataclasses import dataclass, field

from .bits import members
from .closure import LAMBDA, SUPERPOSITION, enumerate_family, is_lambda_closed, pair_table, sup_close
from .config import DEFAULT, Limits
from .superposition import check_msp, check_sp
from .system import StatePropertySystem, axiom_A_holds
from .verdict import HOLDS, NOT_APPLICABLE, UNMET, AxiomReport, Verdict, fails, holds, unmet

# ------------------------------------------------------------------- Cartan map


def kappa(system: StatePropertySystem, a: str | int) -> int:
    """States in which ``a`` is actual."""
    system.require_valid()
    return system.kappa_masks[system.prop(a)]


def check_kappa(system: StatePropertySystem, limits: Limits = DEFAULT) -> AxiomReport:
    system.require_valid()
    L = system.lattice
    k = system.kappa_masks
    report = AxiomReport()
    report.add(holds("kappa-top") if k[L.top] == system.all_states else fails("kappa-top", image=system.state_names(k[L.top])))
    report.add(holds("kappa-bottom") if k[L.bottom] == 0 else fails("kappa-bottom", image=system.state_names(k[L.bottom])))
    bad = next(((a, b) for a in L.elements for b in L.elements
                if L.leq(a, b) != (k[a] & ~k[b] == 0)), None)
    report.add(holds("kappa-order") if bad is None else fails("kappa-order", a=L.names[bad[0]], b=L.names[bad[1]]))
    bad = next(((a, b) for a in L.elements for b in L.elements if k[L.meet(a, b)] != k[a] & k[b]), None)
    report.add(holds("kappa-meet") if bad is None else fails("kappa-meet", a=L.names[bad[0]], b=L.names[bad[1]]))
    bad = next((a for a in L.elements if sup_close(system, k[a]) != k[a]), None)
    report.add(holds("kappa-in-F") if bad is None else fails("kappa-in-F", element=L.names[bad]))

    if axiom_A_holds(system):
        bad = next((a for a in L.atoms if k[a].bit_count() != 1), None)
        if bad is None and limits.allows(1 << system.n):
            F = set(enumerate_family(system, SUPERPOSITION, limits).members)
            image = set(k)
            if image != F:
                diff = sorted(F ^ image)[0]
                report.add(fails("kappa-onto-F", subset=system.state_names(diff), in_image=diff in image))
            else:
                report.add(holds("kappa-onto-F"))
        elif bad is not None:
            report.add(fails("kappa-onto-F", "an atom's image is not a singleton", atom=L.names[bad],
                             image=system.state_names(k[bad])))
        else:
            report.add(Verdict("kappa-onto-F", "partial", note="power set exceeds budget", explored=0))
    else:
        report.add(unmet("kappa-onto-F", "axiom A fails"))

    report.add(_check_kappa_ortho(system))
    return report


def _check_kappa_ortho(system: StatePropertySystem) -> Verdict:
    """kappa(a') = kappa(a)' on L0, and kappa of existing L0-meets."""
    from .probability import check_axiom_B, comp0_table, ProbabilityError, T_prime, validate_mu

    if not axiom_A_holds(system):
        return unmet("kappa-ortho", "axiom A fails")
    if not validate_mu(system).ok:
        return unmet("kappa-ortho", "measurement axioms fail")
    if not check_axiom_B(system).holds:
        return unmet("kappa-ortho", "axiom B fails")
    try:
        comp = comp0_table(system)
    except ProbabilityError as err:
        return unmet("kappa-ortho", str(err))
    k = system.kappa_masks
    L = system.lattice
    for a, c in comp.items():
        if k[c] != T_prime(system, k[a]):
            return fails("kappa-ortho", element=L.names[a], kappa_comp=system.state_names(k[c]),
                         comp_kappa=system.state_names(T_prime(system, k[a])))
    return holds("kappa-ortho")


# --------------------------------------------------------------------- sectors


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


@dataclass(frozen=True)
class SectorDecomposition:
    blocks: tuple[int, ...]
    per_block_sp: tuple[Verdict, ...]
    report: AxiomReport = field(default_factory=AxiomReport)
    status: str = HOLDS

    def as_names(self, system: StatePropertySystem) -> list[list[str]]:
        return [system.state_names(b) for b in self.blocks]

    def __len__(self) -> int:
        return len(self.blocks)


def related(system: StatePropertySystem) -> list[int]:
    """Per state, the mask of states it is directly related to (itself included)."""
    table = pair_table(system)
    rows = []
    for s in range(system.n):
        row = 1 << s
        for t in range(system.n):
            if t != s and table[s][t] & ~(1 << s | 1 << t):
                row |= 1 << t
        rows.append(row)
    return rows


def sectors(system: StatePropertySystem, limits: Limits = DEFAULT) -> SectorDecomposition:
    report = AxiomReport()
    system.require_valid()
    why = None
    if not axiom_A_holds(system):
        why = "axiom A fails"
    elif not check_msp(system, 3, limits).holds:
        why = "3-MSP does not hold"
    if why:
        report.add(unmet("sectors", why))
        return SectorDecomposition((), (), report, UNMET)
    n = system.n
    rows = related(system)
    uf = _UnionFind(n)
    for s in range(n):
        for t in members(rows[s]):
            uf.union(s, t)
    groups: dict[int, int] = {}
    for s in range(n):
        groups[uf.find(s)] = groups.get(uf.find(s), 0) | 1 << s
    blocks = tuple(sorted(groups.values(), key=lambda m: (m & -m)))

    # transitivity of the raw relation: closure must add nothing
    bad = next(((s, t) for s in range(n) for t in members(blocks_of(blocks, s)) if not rows[s] >> t & 1), None)
    report.add(holds("relation-transitive") if bad is None else fails(
        "relation-transitive", s=system.states[bad[0]], t=system.states[bad[1]]))
    union = 0
    overlap = False
    for b in blocks:
        overlap |= bool(union & b)
        union |= b
    report.add(holds("partition") if union == system.all_states and not overlap else fails("partition", blocks=[system.state_names(b) for b in blocks]))
    sp = tuple(check_sp(system, b, name=f"SP[{i}]") for i, b in enumerate(blocks))
    for i, b in enumerate(blocks):
        report.add(check_sector_definition(system, b, f"sector[{i}]"))
    report.extras["blocks"] = [system.state_names(b) for b in blocks]
    return SectorDecomposition(blocks, sp, report, HOLDS if report.ok and all(v.holds for v in sp) else "fails")


def blocks_of(blocks: tuple[int, ...], s: int) -> int:
    return next(b for b in blocks if b >> s & 1)


def check_sector_definition(system: StatePropertySystem, S: int, name: str = "sector") -> Verdict:
    """Nonempty, lambda-closed, SP inside, and trivial pair closures across the boundary."""
    table = pair_table(system)
    if not S:
        return fails(name, "empty block", block=[])
    if not is_lambda_closed(system, S):
        return fails(name, "block is not lambda-closed", clause="i", block=system.state_names(S))
    sp = check_sp(system, S)
    if sp.fails:
        return fails(name, "SP fails inside the block", clause="ii", block=system.state_names(S), **(sp.witness or {}))
    for p in members(S):
        for q in members(system.all_states & ~S):
            if table[p][q] != 1 << p | 1 << q:
                return fails(name, "nontrivial pair closure across the boundary", clause="iii",
                             p=system.states[p], q=system.states[q])
    return holds(name)


def check_sector_clopen(system: StatePropertySystem, limits: Limits = DEFAULT) -> AxiomReport:
    """Sectors are exactly the lambda-clopen blocks on which SP holds."""
    report = AxiomReport()
    dec = sectors(system, limits)
    if dec.status == UNMET:
        report.add(unmet("sectors-clopen", dec.report.entries[0].note))
        report.add(unmet("clopen-sp-are-sectors", dec.report.entries[0].note))
        return report
    full = system.all_states
    bad = next((b for b in dec.blocks if not is_lambda_closed(system, full & ~b)), None)
    report.add(holds("sectors-clopen") if bad is None else fails("sectors-clopen", block=system.state_names(bad)))
    if not limits.allows(1 << system.n):
        report.add(Verdict("clopen-sp-are-sectors", "partial", note="power set exceeds budget", explored=0))
        return report
    family = enumerate_family(system, LAMBDA, limits)
    found = []
    for S in family.members:
        if S and (full & ~S) in family and check_sp(system, S).holds:
            found.append(S)
    bad = next((S for S in found if not check_sector_definition(system, S).holds), None)
    if bad is not None:
        report.add(fails("clopen-sp-are-sectors", block=system.state_names(bad)))
    elif sorted(dec.blocks) != sorted(found):
        report.add(fails("clopen-sp-are-sectors", "clopen SP blocks differ from the sectors",
                         clopen=[system.state_names(S) for S in found]))
    else:
        report.add(holds("clopen-sp-are-sectors"))
    report.extras["clopen_sp_blocks"] = [system.state_names(S) for S in found]
    return report


# ------------------------------------------------------ classical and central


def classical_elements(system: StatePropertySystem) -> tuple[int, ...]:
    """a with a partner a' such that exactly one of a, a' is actual in each state."""
    system.require_valid()
    k = system.kappa_masks
    full = system.all_states
    images = set(k)
    return tuple(a for a in system.lattice.elements if full & ~k[a] in images)


def classical_partner(system: StatePropertySystem, a: int) -> int | None:
    k = system.kappa_masks
    want = system.all_states & ~k[a]
    return next((b for b in system.lattice.elements if k[b] == want), None)


def central_elements(system: StatePropertySystem) -> tuple[int, ...]:
    """z admitting some z' with a = (a ^ z) v (a ^ z') = (a v z) ^ (a v z') for every a."""
    system.require_valid()
    L = system.lattice
    out = []
    for z in L.elements:
        for w in L.elements:
            if all(L.join(L.meet(a, z), L.meet(a, w)) == a == L.meet(L.join(a, z), L.join(a, w))
                   for a in L.elements):
                out.append(z)
                break
    return tuple(out)


def check_classical(system: StatePropertySystem) -> AxiomReport:
    """Classical and central sets, the clopen images of classical elements, and their agreement."""
    from .probability import abc_hold

    system.require_valid()
    L = system.lattice
    k = system.kappa_masks
    report = AxiomReport()
    cl = classical_elements(system)
    ce = central_elements(system)
    bad = next((a for a in cl if sup_close(system, k[a]) != k[a]
                or sup_close(system, system.all_states & ~k[a]) != system.all_states & ~k[a]), None)
    report.add(holds("classical-clopen") if bad is None else fails("classical-clopen", element=L.names[bad]))
    if abc_hold(system):
        if set(cl) == set(ce):
            report.add(holds("central-equals-classical"))
        else:
            report.add(fails("central-equals-classical", classical=L.name_of(cl), central=L.name_of(ce)))
    else:
        report.add(Verdict("central-equals-classical", NOT_APPLICABLE, note="A, B and C do not all hold"))
    report.extras["classical"] = L.name_of(cl)
    report.extras["central"] = L.name_of(ce)
    report.extras["kappa"] = {L.names[a]: system.state_names(k[a]) for a in cl}
    return report
