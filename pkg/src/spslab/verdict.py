"""Verdict records shared by every checker.

A :class:`Verdict` is one named condition with a status and, when it fails,
a witness: a JSON-ready dict naming the states/properties/subsets that
falsify it.  :class:`AxiomReport` is an ordered collection of verdicts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator

HOLDS = "holds"
FAILS = "fails"
UNMET = "precondition-unmet"
NOT_APPLICABLE = "not-applicable"
PARTIAL = "partial"

STATUSES = (HOLDS, FAILS, UNMET, NOT_APPLICABLE, PARTIAL)


@dataclass(frozen=True)
class Verdict:
    name: str
    status: str
    witness: dict[str, Any] | None = None
    note: str = ""
    explored: int | None = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == FAILS and self.witness is None:
            raise ValueError(f"failing verdict {self.name!r} needs a witness")

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    @property
    def fails(self) -> bool:
        return self.status == FAILS

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note:
            out["note"] = self.note
        if self.explored is not None:
            out["explored"] = self.explored
        return out


def holds(name: str, note: str = "", explored: int | None = None) -> Verdict:
    return Verdict(name, HOLDS, note=note, explored=explored)


def fails(name: str, note: str = "", **witness: Any) -> Verdict:
    return Verdict(name, FAILS, witness=witness, note=note)


def unmet(name: str, note: str) -> Verdict:
    return Verdict(name, UNMET, note=note)


def from_bool(name: str, ok: bool, witness: dict[str, Any] | None = None, note: str = "") -> Verdict:
    if ok:
        return Verdict(name, HOLDS, note=note)
    return Verdict(name, FAILS, witness=witness or {}, note=note)


@dataclass
class AxiomReport:
    """Ordered verdicts, addressable by name."""

    entries: list[Verdict] = field(default_factory=list)
    extras: dict[str, Any] = field(default_factory=dict)

    def add(self, verdict: Verdict) -> Verdict:
        self.entries.append(verdict)
        return verdict

    def extend(self, verdicts: Iterable[Verdict]) -> None:
        for v in verdicts:
            self.add(v)

    def __getitem__(self, name: str) -> Verdict:
        for v in self.entries:
            if v.name == name:
                return v
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(v.name == name for v in self.entries)

    def __iter__(self) -> Iterator[Verdict]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def failures(self) -> list[Verdict]:
        return [v for v in self.entries if v.fails]

    @property
    def ok(self) -> bool:
        """No entry fails and none was left unchecked."""
        return all(v.status in (HOLDS, NOT_APPLICABLE) for v in self.entries)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"entries": [v.to_json() for v in self.entries]}
        if self.extras:
            out.update(self.extras)
        return out
