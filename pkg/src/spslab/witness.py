"""Re-evaluating a pasted failing verdict against an instance.

Common witness shapes are checked directly from the definitions (through
the brute-force oracle); anything else is reproduced by rerunning every
report section and looking for the same failing entry.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable

from . import oracle as O
from .config import BudgetExceeded, Limits
from .system import StatePropertySystem


def _s(system: StatePropertySystem, name: str) -> int:
    return system.state_index(name)


def _set(system: StatePropertySystem, names: list[str]) -> frozenset[int]:
    return frozenset(system.state_index(x) for x in names)


def _axiom_a(system, w):
    if "state_count" in w:
        return system.n < 2
    p, q = _s(system, w["p"]), _s(system, w["q"])
    xi = system.actual
    return p != q and xi[p] & ~xi[q] == 0


def _sp(system, w):
    p, q = _s(system, w["p"]), _s(system, w["q"])
    return p != q and O.pair(system, p, q) <= {p, q}


def _p1(system, w):
    p = _s(system, w["p"])
    return O.pair(system, p, p) != {p}


def _p2(system, w):
    p, q = _s(system, w["p"]), _s(system, w["q"])
    return p not in O.pair(system, p, q)


def _p3(system, w):
    p, q, r, s, t = (_s(system, w[k]) for k in "pqrst")
    return (p in O.pair(system, q, r) and r in O.pair(system, s, t) and p != s
            and not O.pair(system, p, s) & O.pair(system, q, t))


def _msp(system, w):
    S, S1, S2 = _set(system, w["S"]), _set(system, w["S1"]), _set(system, w["S2"])
    p = _s(system, w["p"])
    return (S1 and S2 and not S1 & S2 and S1 | S2 == S
            and p in O.minimal_superpositions(system, S)
            and not O.bar(system, S1 | {p}) & O.bar(system, S2))


def _exchange(system, w):
    p, q, r = (_s(system, w[k]) for k in "pqr")
    return r in O.pair(system, p, q) and r not in (p, q) and p not in O.pair(system, r, q)


def _oi(system, w):
    p, a = _s(system, w["state"]), system.prop(w["property"])
    mu = system.mu_table
    return (mu.get((p, a)) == 1) != bool(system.actual[p] >> a & 1)


def _oii(system, w):
    a, b, p = system.prop(w["a"]), system.prop(w["b"]), _s(system, w["state"])
    mu = system.mu_table
    return system.lattice.leq(a, b) and Fraction(mu[p, a]) > Fraction(mu[p, b])


DIRECT: dict[str, Callable[[StatePropertySystem, dict], bool]] = {
    "A": _axiom_a,
    "SP": _sp,
    "P1": _p1,
    "P2": _p2,
    "P3": _p3,
    "2-MSP-exchange": _exchange,
    "Oi": _oi,
    "Oii": _oii,
}


def _direct(name: str):
    if name in DIRECT:
        return DIRECT[name]
    if name.startswith("SP["):
        return _sp
    if name.endswith("MSP"):
        return _msp
    return None


def _rerun(system: StatePropertySystem, entry: dict, limits: Limits) -> bool:
    from .report import SECTIONS, failing_entries

    for fn in SECTIONS.values():
        try:
            doc = fn(system, limits)
        except BudgetExceeded:
            continue
        for _, found in failing_entries(doc):
            if found["name"] == entry["name"] and found.get("witness") == entry.get("witness"):
                return True
    return False


def recheck(system: StatePropertySystem, entry: dict, limits: Limits) -> dict[str, Any]:
    name = entry["name"]
    witness = entry.get("witness") or {}
    fn = _direct(name)
    if fn is not None:
        try:
            ok = bool(fn(system, witness))
            return {"axiom": name, "witness": witness, "method": "direct", "reproduced": ok}
        except (KeyError, ValueError, IndexError):
            pass  # witness shape differs from the direct reader; fall back to a rerun
    return {"axiom": name, "witness": witness, "method": "rerun", "reproduced": _rerun(system, entry, limits)}
