"""JSON interchange format for instances.

Fields: ``states``, ``properties``, ``leq`` (pairs; the reflexive-transitive
closure is implied), ``bottom``, ``top``, ``actual`` (state -> properties),
optional ``testable``, optional ``mu`` (a list of ``{state, property, value}``
with exact fraction strings such as ``"1/2"`` or decimals, converted exactly),
optional ``orthogonality`` (ordered pairs of states, taken exactly as listed) and
optional ``name``.

Parse errors carry a location; unknown identifiers are structural errors
and surface as :class:`spslab.system.StructureError`.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .bits import members
from .system import StatePropertySystem

FORMAT = "spslab-instance/1"


class ParseError(ValueError):
    def __init__(self, message: str, location: str = "$"):
        self.location = location
        super().__init__(f"{location}: {message}")


def parse_fraction(value: Any, location: str) -> Fraction:
    """Exact rational from an int, a decimal string or an ``n/d`` string."""
    if isinstance(value, bool):
        raise ParseError("expected a number, got a boolean", location)
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        raise ParseError("binary floats are not exact; quote the value as a string", location)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not an exact number: {value!r}", location) from None
    raise ParseError(f"expected a number, got {type(value).__name__}", location)


def format_fraction(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _need(doc: dict, key: str, kind: type, where: str = "$"):
    if key not in doc:
        raise ParseError(f"missing field {key!r}", where)
    value = doc[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise ParseError(f"field {key!r} must be {kind.__name__}", f"{where}.{key}")
    return value


def _strings(items: list, where: str) -> list[str]:
    for i, x in enumerate(items):
        if not isinstance(x, str):
            raise ParseError("expected a string", f"{where}[{i}]")
    return list(items)


def _pairs(items: list, where: str) -> list[tuple[str, str]]:
    out = []
    for i, x in enumerate(items):
        if not (isinstance(x, list) and len(x) == 2 and all(isinstance(y, str) for y in x)):
            raise ParseError("expected a pair of strings", f"{where}[{i}]")
        out.append((x[0], x[1]))
    return out


def instance_from_json(doc: Any) -> StatePropertySystem:
    if not isinstance(doc, dict):
        raise ParseError("instance must be a JSON object")
    states = _strings(_need(doc, "states", list), "$.states")
    properties = _strings(_need(doc, "properties", list), "$.properties")
    leq = _pairs(_need(doc, "leq", list), "$.leq")
    bottom = _need(doc, "bottom", str)
    top = _need(doc, "top", str)
    actual_doc = _need(doc, "actual", dict)
    actual = {}
    for s, v in actual_doc.items():
        if not isinstance(v, list):
            raise ParseError("expected an array of property names", f"$.actual.{s}")
        actual[s] = _strings(v, f"$.actual.{s}")
    testable = None
    if doc.get("testable") is not None:
        testable = _strings(_need(doc, "testable", list), "$.testable")
    mu = None
    if doc.get("mu") is not None:
        mu = {}
        for i, row in enumerate(_need(doc, "mu", list)):
            where = f"$.mu[{i}]"
            if not isinstance(row, dict):
                raise ParseError("expected an object", where)
            s = _need(row, "state", str, where)
            a = _need(row, "property", str, where)
            if "value" not in row:
                raise ParseError("missing field 'value'", where)
            v = parse_fraction(row["value"], f"{where}.value")
            if not 0 <= v <= 1:
                raise ParseError(f"probability out of range: {row['value']}", f"{where}.value")
            if (s, a) in mu:
                raise ParseError(f"duplicate entry for ({s}, {a})", where)
            mu[s, a] = v
    orth = None
    if doc.get("orthogonality") is not None:
        orth = _pairs(_need(doc, "orthogonality", list), "$.orthogonality")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise ParseError("name must be a string", "$.name")
    return StatePropertySystem.build(states, properties, leq, bottom, top, actual,
                                     testable=testable, mu=mu, name=name, orthogonality=orth)


def loads(text: str) -> StatePropertySystem:
    try:
        # decimals are read as exact rationals, never as binary floats
        doc = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as err:
        raise ParseError(err.msg, f"line {err.lineno} column {err.colno}") from None
    return instance_from_json(doc)


def load(path: str | Path) -> StatePropertySystem:
    return loads(Path(path).read_text())


def dump_instance(system: StatePropertySystem) -> dict[str, Any]:
    """Deterministic JSON document; ``leq`` lists the covering pairs only."""
    L = system.lattice
    names = L.names
    doc: dict[str, Any] = {"format": FORMAT}
    if system.name:
        doc["name"] = system.name
    doc["states"] = list(system.states)
    doc["properties"] = list(names)
    doc["leq"] = [[names[a], names[b]] for a, b in L.hasse_edges]
    doc["bottom"] = names[L.bottom]
    doc["top"] = names[L.top]
    doc["actual"] = {s: L.name_of(members(system.actual[i])) for i, s in enumerate(system.states)}
    if system.testable is not None:
        doc["testable"] = L.name_of(members(system.testable))
    if system.mu is not None:
        doc["mu"] = [
            {"state": system.states[p], "property": names[a], "value": format_fraction(Fraction(system.mu[p, a]))}
            for p, a in sorted(system.mu)
        ]
    if system.orthogonality is not None:
        doc["orthogonality"] = [[system.states[p], system.states[q]]
                                for p in range(system.n) for q in members(system.orthogonality[p])]
    return doc


def dumps(system: StatePropertySystem) -> str:
    return json.dumps(dump_instance(system), indent=2, ensure_ascii=False) + "\n"


def dump(system: StatePropertySystem, path: str | Path) -> None:
    Path(path).write_text(dumps(system))
