"""Named reference instances.

FANO is built from its seven lines directly, independently of the
vector-space generator, so the two constructions can be compared.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from ..system import StatePropertySystem
from .vector import from_vector_space

HALF = Fraction(1, 2)


def _boolean(atoms: list[str], states: list[str], name: str, measured: bool) -> StatePropertySystem:
    """Power set of ``atoms`` with one state per atom; element names are atom concatenations."""
    k = len(atoms)
    subsets = [c for r in range(k + 1) for c in combinations(range(k), r)]

    def label(c):
        if not c:
            return "0"
        if len(c) == k:
            return "I"
        return "".join(atoms[i] for i in c)

    names = [label(c) for c in subsets]
    leq = [(label(a), label(b)) for a in subsets for b in subsets if a != b and set(a) <= set(b)]
    actual = {s: [label(c) for c in subsets if i in c] for i, s in enumerate(states)}
    mu = None
    testable = None
    if measured:
        testable = names
        mu = {(s, label(c)): int(i in c) for i, s in enumerate(states) for c in subsets}
    return StatePropertySystem.build(states, names, leq, "0", "I", actual, testable, mu, name)


def cbit() -> StatePropertySystem:
    names = ["0", "a", "a'", "I"]
    leq = [("0", "a"), ("0", "a'"), ("a", "I"), ("a'", "I")]
    actual = {"p": ["a", "I"], "q": ["a'", "I"]}
    mu = {}
    for s, own in (("p", "a"), ("q", "a'")):
        for x in names:
            mu[s, x] = int(x in (own, "I"))
    return StatePropertySystem.build(["p", "q"], names, leq, "0", "I", actual, names, mu, "CBIT")


def ctrit() -> StatePropertySystem:
    return _boolean(["a", "b", "c"], ["p", "q", "r"], "CTRIT", measured=True)


def mo2() -> StatePropertySystem:
    atoms = {"p": "a", "p'": "a'", "q": "b", "q'": "b'"}
    partner = {"a": "a'", "a'": "a", "b": "b'", "b'": "b"}
    names = ["0", "a", "a'", "b", "b'", "I"]
    leq = [("0", x) for x in partner] + [(x, "I") for x in partner]
    actual = {s: [a, "I"] for s, a in atoms.items()}
    mu = {}
    for s, own in atoms.items():
        mu[s, "0"] = 0
        mu[s, "I"] = 1
        for x in partner:
            mu[s, x] = 1 if x == own else 0 if x == partner[own] else HALF
    return StatePropertySystem.build(list(atoms), names, leq, "0", "I", actual, names, mu, "MO2")


FANO_LINES = ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6))


def fano() -> StatePropertySystem:
    points = [f"P{i}" for i in range(1, 8)]
    lines = ["L" + "".join(map(str, line)) for line in FANO_LINES]
    names = ["0"] + points + lines + ["I"]
    leq = [("0", x) for x in points] + [(x, "I") for x in lines]
    for line, lname in zip(FANO_LINES, lines):
        leq += [(f"P{i}", lname) for i in line]
    actual = {
        f"P{i}": [f"P{i}", "I"] + [ln for line, ln in zip(FANO_LINES, lines) if i in line]
        for i in range(1, 8)
    }
    return StatePropertySystem.build(points, names, leq, "0", "I", actual, name="FANO")


def line3() -> StatePropertySystem:
    return from_vector_space(3, 2, "identity", name="LINE3")


def pg32() -> StatePropertySystem:
    return from_vector_space(2, 4, name="PG(3,2)")


FIXTURES = {
    "CBIT": cbit,
    "CTRIT": ctrit,
    "MO2": mo2,
    "FANO": fano,
    "LINE3": line3,
    "PG32": pg32,
}


def fixture(name: str) -> StatePropertySystem:
    try:
        build = FIXTURES[name.upper()]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}") from None
    return build()
