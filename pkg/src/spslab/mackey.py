"""Certificates for Mackey lattices and geometries, intersection lattices,
regularity, orthogeometries, ortholattices and orthosystems.

Throughout, L(Sigma) is the family of lambda-closed sets (join = lambda of
the union) and F(Sigma) the superposition-closed sets (join = bar of the
union).  Hypothesis-gated "must hold" entries turn a theorem into a check:
when the hypotheses hold and the structure check fails, the certificate
carries a failing theorem entry.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bits import members
from .closure import LAMBDA, SUPERPOSITION, SubsetFamily, enumerate_family, lambda_close, pair_table, sup_close
from .config import DEFAULT, Limits
from .geometry import build_geometry
from .lattice import (
    PropertyLattice,
    check_atomistic,
    check_covering,
    check_intersection_property,
    check_lower_semimodular,
    check_modular,
    check_upper_semimodular,
)
from .superposition import check_msp
from .system import StatePropertySystem, axiom_A_holds
from .verdict import HOLDS, NOT_APPLICABLE, UNMET, AxiomReport, Verdict, fails, holds, unmet


@dataclass
class StructureCertificate:
    structure: str
    checks: AxiomReport = field(default_factory=AxiomReport)
    extras: dict = field(default_factory=dict)

    @property
    def failures(self) -> list[Verdict]:
        return self.checks.failures

    @property
    def verdict(self) -> str:
        statuses = {v.status for v in self.checks}
        if "fails" in statuses:
            return "fails"
        if statuses <= {HOLDS, NOT_APPLICABLE} and HOLDS in statuses:
            return HOLDS
        if UNMET in statuses:
            return UNMET
        return "partial" if "partial" in statuses else NOT_APPLICABLE

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_json(self) -> dict:
        out = {"structure": self.structure, "verdict": self.verdict,
               "failures": [{"axiom": v.name, "witness": v.witness} for v in self.failures]}
        out.update(self.checks.to_json())
        out.update(self.extras)
        return out


def _unmet_cert(structure: str, why: str) -> StructureCertificate:
    cert = StructureCertificate(structure)
    cert.checks.add(unmet(structure, why))
    return cert


def hypotheses(system: StatePropertySystem, limits: Limits = DEFAULT) -> dict[str, bool]:
    from .probability import check_axiom_B, check_axiom_C

    a = axiom_A_holds(system)
    b = a and check_axiom_B(system).holds
    c = b and check_axiom_C(system).holds
    msp3 = check_msp(system, 3, limits).holds
    return {"A": a, "B": b, "C": c, "3-MSP": msp3}


def _theorem(cert: StructureCertificate, name: str, required: bool, why: str) -> None:
    """Record whether a theorem's conclusion was obtained when its hypotheses hold."""
    body = [v for v in cert.checks if v.name != name]
    if not required:
        cert.checks.add(Verdict(name, NOT_APPLICABLE, note=why))
        return
    failing = [v.name for v in body if v.fails]
    if failing:
        cert.checks.add(fails(name, "hypotheses hold but the structure check fails", failing=failing))
    elif all(v.status in (HOLDS, NOT_APPLICABLE) for v in body):
        cert.checks.add(holds(name))
    else:
        cert.checks.add(Verdict(name, "partial", note="structure check incomplete"))


def _names(system: StatePropertySystem, S: int) -> list[str]:
    return system.state_names(S)


def _atoms_of(family: SubsetFamily) -> list[int]:
    L = family.lattice
    return [family.members[a] for a in L.atoms]


# ------------------------------------------------------------ Mackey lattice


def check_mackey_lattice(system: StatePropertySystem, limits: Limits = DEFAULT) -> StructureCertificate:
    """L(Sigma) as a projective lattice with c(A) = A-bar."""
    cert = StructureCertificate("mackey-lattice")
    system.require_valid()
    fam = enumerate_family(system, LAMBDA, limits)
    L = fam.lattice
    c = {X: sup_close(system, X) for X in fam.members}
    r = cert.checks
    r.add(check_atomistic(L))
    r.add(check_modular(L) if limits.allows(L.size ** 3) else Verdict("modular", "partial", note="triples exceed budget"))
    bad = next((X for X in fam.members if X & ~c[X]), None)
    r.add(holds("ML-i") if bad is None else fails("ML-i", x=_names(system, bad)))
    bad = next(((X, Y) for X in fam.members for Y in fam.members if X & ~c[Y] == 0 and c[X] & ~c[Y]), None)
    r.add(holds("ML-ii") if bad is None else fails("ML-ii", x=_names(system, bad[0]), y=_names(system, bad[1])))
    r.add(holds("ML-iii") if c[0] == 0 or 0 not in c else fails("ML-iii", c0=_names(system, c[0])))
    bad = None
    closed = [X for X in fam.members if c[X] == X]
    for X in closed:
        for a in _atoms_of(fam):
            j = lambda_close(system, X | a)
            if sup_close(system, j) != j:
                bad = {"x": _names(system, X), "atom": _names(system, a), "join": _names(system, j)}
                break
        if bad:
            break
    r.add(holds("ML-iv") if bad is None else fails("ML-iv", **bad))
    cert.extras["closed"] = [_names(system, X) for X in closed]
    h = hypotheses(system, limits)
    _theorem(cert, "theorem-Mackey", all(h.values()), "A, B, C and 3-MSP do not all hold")
    return cert


def check_mackey_geometry(system: StatePropertySystem, limits: Limits = DEFAULT) -> StructureCertificate:
    """Sigma with F(Sigma) as the closed subspaces."""
    system.require_valid()
    _, geo = build_geometry(system)
    if not all(geo[k].holds for k in ("P1", "P2", "P3")):
        return _unmet_cert("mackey-geometry", "(Sigma, *) is not a projective geometry")
    cert = StructureCertificate("mackey-geometry")
    fam = enumerate_family(system, SUPERPOSITION, limits)
    r = cert.checks
    bad = next((S for S in fam.members if lambda_close(system, S) != S), None)
    r.add(holds("MG-subspaces") if bad is None else fails("MG-subspaces", S=_names(system, bad)))
    v = fam.is_intersection_system()
    r.add(Verdict("MG-i", v.status, v.witness, v.note))
    r.add(holds("MG-ii") if 0 in fam else fails("MG-ii", empty_closure=_names(system, sup_close(system, 0))))
    bad = None
    for E in fam.members:
        for a in range(system.n):
            j = lambda_close(system, E | 1 << a)
            if j not in fam:
                bad = {"a": system.states[a], "E": _names(system, E), "join": _names(system, j)}
                break
        if bad:
            break
    r.add(holds("MG-iii") if bad is None else fails("MG-iii", **bad))
    h = hypotheses(system, limits)
    _theorem(cert, "theorem-Mackey", all(h.values()), "A, B, C and 3-MSP do not all hold")
    return cert


# ------------------------------------------------------- intersection lattice


def check_intersection_lattice(L: PropertyLattice, structure: str = "intersection-lattice") -> StructureCertificate:
    """Atomistic plus the intersection property; covering and semimodularity cross-checked."""
    cert = StructureCertificate(structure)
    r = cert.checks
    atomistic = r.add(check_atomistic(L))
    ip = r.add(check_intersection_property(L))
    cov = check_covering(L)
    usm = check_upper_semimodular(L)
    lsm = check_lower_semimodular(L)
    cert.extras["covering"] = cov.to_json()
    cert.extras["upper-semimodular"] = usm.to_json()
    cert.extras["lower-semimodular"] = lsm.to_json()
    one, two, three = usm.holds and lsm.holds, cov.holds, ip.holds
    if atomistic.holds:
        ok = one == two == three
        why = "semimodular, covering and intersection-property verdicts disagree"
    else:
        ok = (not one or two) and (not two or three)
        why = "an implication semimodular => covering => intersection property is broken"
    r.add(holds("equivalence-chain") if ok else fails(
        "equivalence-chain", why, semimodular=one, covering=two, intersection_property=three))
    return cert


def check_intersection_lattice_of(system: StatePropertySystem, limits: Limits = DEFAULT) -> StructureCertificate:
    fam = enumerate_family(system, SUPERPOSITION, limits)
    cert = check_intersection_lattice(fam.lattice)
    h = hypotheses(system, limits)
    _theorem(cert, "F-is-intersection-lattice", all(h.values()), "A, B, C and 3-MSP do not all hold")
    return cert


# ------------------------------------------------------------------ regularity


def check_regular(system: StatePropertySystem, limits: Limits = DEFAULT) -> StructureCertificate:
    """For closed x and atom a outside x, a closed coatom above x avoiding a."""
    system.require_valid()
    mackey = check_mackey_lattice(system, limits)
    if mackey.verdict == "fails" or any(v.fails for v in mackey.checks):
        return _unmet_cert("regular", "Mackey lattice certificate fails")
    cert = StructureCertificate("regular")
    F = enumerate_family(system, SUPERPOSITION, limits)
    Lam = enumerate_family(system, LAMBDA, limits)
    FL = F.lattice
    coatoms = [F.members[i] for i in FL.coatoms]
    bad = None
    for x in F.members:
        for a in _atoms_of(Lam):
            if a & ~x == 0:
                continue
            if not any(x & ~h == 0 and a & ~h for h in coatoms):
                bad = {"x": _names(system, x), "atom": _names(system, a)}
                break
        if bad:
            break
    cert.checks.add(holds("regular") if bad is None else fails("regular", **bad))
    cert.extras["closed_coatoms"] = [_names(system, h) for h in coatoms]
    h = hypotheses(system, limits)
    _theorem(cert, "remark-regular", all(h.values()), "A, B, C and 3-MSP do not all hold")
    return cert


# -------------------------------------------------------------- orthostructures


def _perp(system: StatePropertySystem) -> tuple[int, ...]:
    from .probability import perp_masks

    return perp_masks(system)


def _perp_of(rows: tuple[int, ...], full: int, A: int) -> int:
    out = full
    for a in members(A):
        out &= rows[a]
    return out


def check_orthogeometry(system: StatePropertySystem, limits: Limits = DEFAULT) -> StructureCertificate:
    system.require_valid()
    _, geo = build_geometry(system)
    if not all(geo[k].holds for k in ("P1", "P2", "P3")):
        return _unmet_cert("orthogeometry", "(Sigma, *) is not a projective geometry")
    rows = _perp(system)
    if not any(rows):
        return _unmet_cert("orthogeometry", "no ⊥ relation: the state orthogonality is empty")
    cert = StructureCertificate("orthogeometry")
    star = pair_table(system)
    n = system.n
    st = system.states
    r = cert.checks
    bad = next(((a, b) for a in range(n) for b in members(rows[a]) if not rows[b] >> a & 1), None)
    r.add(holds("O1") if bad is None else fails("O1", a=st[bad[0]], b=st[bad[1]]))
    bad = None
    for p in range(n):
        orth = [x for x in range(n) if rows[x] >> p & 1]
        for a in orth:
            for b in orth:
                c = next((c for c in members(star[a][b]) if not rows[c] >> p & 1), None)
                if c is not None:
                    bad = {"a": st[a], "b": st[b], "c": st[c], "p": st[p]}
                    break
            if bad:
                break
        if bad:
            break
    r.add(holds("O2") if bad is None else fails("O2", **bad))
    bad = next(((a, b, c) for a in range(n) for b in range(n) for c in range(n)
                if b != c and not star[b][c] & rows[a]), None)
    r.add(holds("O3") if bad is None else fails("O3", a=st[bad[0]], b=st[bad[1]], c=st[bad[2]]))
    full = system.all_states
    bad = next((a for a in range(n) if rows[a] == full), None)
    r.add(holds("O4") if bad is None else fails("O4", a=st[bad]))
    null = [st[p] for p in range(n) if rows[p] >> p & 1]
    cert.extras["null_points"] = null
    cert.extras["pure"] = not null
    cert.extras["classification"] = "pure" if not null else ("non-null" if len(null) < n else "null")
    return cert


def check_ortholattice(system: StatePropertySystem, limits: Limits = DEFAULT) -> StructureCertificate:
    """L(Sigma) with E -> E-perp; also x-perp-perp against the bar closure."""
    system.require_valid()
    rows = _perp(system)
    if not any(rows):
        return _unmet_cert("ortholattice", "no ⊥ relation: the state orthogonality is empty")
    cert = StructureCertificate("ortholattice")
    fam = enumerate_family(system, LAMBDA, limits)
    L = fam.lattice
    full = system.all_states
    perp = {X: _perp_of(rows, full, X) for X in fam.members}
    bi = {X: _perp_of(rows, full, perp[X]) for X in fam.members}
    r = cert.checks
    r.add(check_atomistic(L))
    r.add(check_modular(L) if limits.allows(L.size ** 3) else Verdict("modular", "partial", note="triples exceed budget"))
    bad = next((X for X in fam.members if perp[X] not in fam), None)
    r.add(holds("perp-is-subspace") if bad is None else fails("perp-is-subspace", x=_names(system, bad)))
    bad = next((X for X in fam.members if X & ~bi[X]), None)
    r.add(holds("OL-1") if bad is None else fails("OL-1", x=_names(system, bad)))
    bad = next(((X, Y) for X in fam.members for Y in fam.members if X & ~Y == 0 and perp[Y] & ~perp[X]), None)
    r.add(holds("OL-2") if bad is None else fails("OL-2", x=_names(system, bad[0]), y=_names(system, bad[1])))
    r.add(holds("OL-3") if bi[0] == 0 else fails("OL-3", zero_biperp=_names(system, bi[0])))
    bad = None
    for X in fam.members:
        if bi[X] != X:
            continue
        for a in _atoms_of(fam):
            j = lambda_close(system, X | a)
            if _perp_of(rows, full, _perp_of(rows, full, j)) != j:
                bad = {"x": _names(system, X), "atom": _names(system, a)}
                break
        if bad:
            break
    r.add(holds("OL-4") if bad is None else fails("OL-4", **bad))
    h = hypotheses(system, limits)
    bad = next((X for X in fam.members if bi[X] != sup_close(system, X)), None)
    if h["C"]:
        r.add(holds("biperp-equals-bar") if bad is None else fails(
            "biperp-equals-bar", x=_names(system, bad), biperp=_names(system, bi[bad]),
            bar=_names(system, sup_close(system, bad))))
    else:
        cert.extras["biperp-equals-bar"] = bad is None
        r.add(Verdict("biperp-equals-bar", NOT_APPLICABLE, note="A, B and C do not all hold"))
    _theorem(cert, "remark-ortholattice", all(h.values()), "A, B, C and 3-MSP do not all hold")
    return cert


def check_orthosystem(system: StatePropertySystem, limits: Limits = DEFAULT) -> StructureCertificate:
    """F(Sigma) with S -> S' as an orthosystem."""
    system.require_valid()
    rows = _perp(system)
    if not any(rows):
        return _unmet_cert("orthosystem", "no ⊥ relation: the state orthogonality is empty")
    fam = enumerate_family(system, SUPERPOSITION, limits)
    cert = check_intersection_lattice(fam.lattice, "orthosystem")
    full = system.all_states
    prime = {S: _perp_of(rows, full, S) for S in fam.members}
    r = cert.checks
    bad = next((S for S in fam.members if prime[S] not in fam), None)
    r.add(holds("prime-in-F") if bad is None else fails("prime-in-F", S=_names(system, bad),
                                                        S_prime=_names(system, prime[bad])))
    bad = next((S for S in fam.members if _perp_of(rows, full, prime[S]) != S), None)
    r.add(holds("OS-1") if bad is None else fails("OS-1", S=_names(system, bad)))
    bad = next(((S, T) for S in fam.members for T in fam.members if S & ~T == 0 and prime[T] & ~prime[S]), None)
    r.add(holds("OS-2") if bad is None else fails("OS-2", S=_names(system, bad[0]), T=_names(system, bad[1])))
    h = hypotheses(system, limits)
    _theorem(cert, "theorem-orthosystem", all(h.values()), "A, B, C and 3-MSP do not all hold")
    return cert


# --------------------------------------------------------------- corollary 3-f


def check_corollary_3f(system: StatePropertySystem, limits: Limits = DEFAULT) -> StructureCertificate:
    """For S in F(Sigma) and P the bar of a finite set: S v P equals lambda(S u P).

    On a finite system every member of F(Sigma) is the bar of a finite set,
    so P ranges over all of F(Sigma).
    """
    system.require_valid()
    h = hypotheses(system, limits)
    if not (h["A"] and h["B"] and h["C"]):
        return _unmet_cert("corollary-3f", "A, B and C do not all hold")
    cert = StructureCertificate("corollary-3f")
    fam = enumerate_family(system, SUPERPOSITION, limits)
    limits.require("corollary 3-f pairs", len(fam) ** 2)
    bad = None
    for S in fam.members:
        for P in fam.members:
            if sup_close(system, S | P) != lambda_close(system, S | P):
                bad = {"S": _names(system, S), "P": _names(system, P),
                       "bar_join": _names(system, sup_close(system, S | P)),
                       "lambda_join": _names(system, lambda_close(system, S | P))}
                break
        if bad:
            break
    cert.checks.add(holds("corollary-3f") if bad is None else fails("corollary-3f", **bad))
    cert.extras["3-MSP"] = h["3-MSP"]
    return cert


# ------------------------------------------------------------------ round trips


def check_round_trips(system: StatePropertySystem, limits: Limits = DEFAULT) -> StructureCertificate:
    """Geometry -> Mackey lattice -> intersection lattice -> geometry, compared pointwise.

    G is (Sigma, *) with F(Sigma) as closed subspaces; its lattice is L(Sigma)
    with c = bar; the closed elements form F(Sigma); the geometry of F(Sigma)
    has the atoms of F(Sigma) as points and a * b = atoms below a v b.
    """
    system.require_valid()
    h = hypotheses(system, limits)
    if not all(h.values()):
        return _unmet_cert("round-trip", "A, B, C and 3-MSP do not all hold")
    cert = StructureCertificate("round-trip")
    r = cert.checks
    n = system.n
    star = pair_table(system)
    Lam = enumerate_family(system, LAMBDA, limits)
    F = enumerate_family(system, SUPERPOSITION, limits)
    closed = tuple(X for X in Lam.members if sup_close(system, X) == X)
    r.add(holds("C(L(G))=F") if set(closed) == set(F.members) else fails(
        "C(L(G))=F", closed=[_names(system, X) for X in closed]))
    FL = F.lattice
    atoms = [F.members[i] for i in FL.atoms]
    singletons = [1 << p for p in range(n)]
    r.add(holds("points") if sorted(atoms) == sorted(singletons) else fails(
        "points", atoms=[_names(system, a) for a in atoms]))
    bad = None
    for p in range(n):
        for q in range(n):
            j = sup_close(system, 1 << p | 1 << q)
            line = sum(1 << s for s in range(n) if j >> s & 1)
            if line != star[p][q]:
                bad = {"p": system.states[p], "q": system.states[q]}
                break
        if bad:
            break
    r.add(holds("G(C(L(G)))=G") if bad is None else fails("G(C(L(G)))=G", **bad))
    # subspaces of the recovered geometry are exactly L(Sigma) again
    bad = next((X for X in range(1 << n) if limits.allows(1 << n)
                and (all(star[p][q] & ~X == 0 for p in members(X) for q in members(X)) != (X in Lam))), None)
    r.add(holds("L(G(C(L)))=L") if bad is None else fails("L(G(C(L)))=L", X=_names(system, bad)))
    return cert


CHECKS = {
    "mackey-lattice": check_mackey_lattice,
    "mackey-geometry": check_mackey_geometry,
    "intersection-lattice": check_intersection_lattice_of,
    "regular": check_regular,
    "orthogeometry": check_orthogeometry,
    "ortholattice": check_ortholattice,
    "orthosystem": check_orthosystem,
    "corollary-3f": check_corollary_3f,
    "round-trip": check_round_trips,
}


def certify(system: StatePropertySystem, structure: str, limits: Limits = DEFAULT) -> StructureCertificate:
    try:
        fn = CHECKS[structure]
    except KeyError:
        raise KeyError(f"unknown structure {structure!r}; choose from {', '.join(CHECKS)}") from None
    return fn(system, limits)
