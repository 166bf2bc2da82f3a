"""Run reports: one JSON document per (instance, command, flags).

Every section is built independently.  A section that runs out of budget
is recorded as ``budget-exceeded`` with the reason instead of being dropped.
Wall-clock timings are only included on request, since they would break
byte-identical reruns.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from typing import Any, Callable

from . import __version__
from .config import BudgetExceeded, Limits
from .system import StatePropertySystem

SCHEMA = "spslab-report/1"
BUDGET_EXCEEDED = "budget-exceeded"


def _rep(report) -> dict:
    return report.to_json()


# ------------------------------------------------------------------ sections


def section_core(s: StatePropertySystem, lim: Limits) -> dict:
    from .system import check_atoms_and_atomisticity, check_axiom_A, state_preorder

    out = {"definition": _rep(s.report)}
    if not s.is_valid:
        return out
    out["A"] = check_axiom_A(s).to_json()
    out["atoms"] = _rep(check_atoms_and_atomisticity(s))
    out["supports"] = {s.states[p]: s.lattice.names[a] for p, a in enumerate(s.supports)}
    out["preorder"] = [[s.states[p], s.states[q]] for p, q in state_preorder(s) if p != q]
    return out


def section_closure(s: StatePropertySystem, lim: Limits) -> dict:
    from .closure import LAMBDA, SUPERPOSITION, SUPERPOSITION0, check_closure_laws, enumerate_family

    out = {}
    for kind in (LAMBDA, SUPERPOSITION, SUPERPOSITION0):
        out[kind] = enumerate_family(s, kind, lim).as_names()
    out["laws"] = _rep(check_closure_laws(s, lim))
    return out


def section_superposition(s: StatePropertySystem, lim: Limits, levels=(2, 3, "finite")) -> dict:
    from .superposition import check_2msp_exchange, check_msp, check_sp, verify_theorem4

    out = {"msp": [check_msp(s, lv, lim).to_json() for lv in levels]}
    out["SP"] = check_sp(s).to_json()
    out["exchange"] = check_2msp_exchange(s).to_json()
    out["theorem-4"] = _rep(verify_theorem4(s, lim))
    return out


def section_geometry(s: StatePropertySystem, lim: Limits) -> dict:
    from .geometry import build_geometry, check_c_laws, check_irreducible, check_projective_lattice, max_independent

    G, rep = build_geometry(s)
    k, frame = max_independent(s, lim)
    return {
        "projective": _rep(rep),
        "line_sizes": G.line_sizes(),
        "c_laws": _rep(check_c_laws(s, lim)),
        "lattice": _rep(check_projective_lattice(s, lim)),
        "max_independent": {"size": k, "frame": frame, "four_independent": k >= 4},
        "irreducible": check_irreducible(s, lim).to_json(),
    }


def section_probability(s: StatePropertySystem, lim: Limits) -> dict:
    from .probability import (
        build_F0,
        check_axiom_B,
        check_axiom_C,
        check_omp,
        check_state_perp,
        extend_orthocomplement,
        validate_mu,
        verify_bicommutant,
    )

    L = s.lattice
    out = {"testable": L.name_of(i for i in L.elements if s.testable_mask >> i & 1),
           "measurements": _rep(validate_mu(s, lim)),
           "omp": _rep(check_omp(s, lim)),
           "B": check_axiom_B(s).to_json(),
           "C": check_axiom_C(s).to_json()}
    out["orthocomplement"] = _rep(extend_orthocomplement(s)[1])
    out["state_perp"] = _rep(check_state_perp(s))
    out["bicommutant"] = _rep(verify_bicommutant(s, lim))
    out["F0"] = _rep(build_F0(s, lim)[1])
    return out


def section_sectors(s: StatePropertySystem, lim: Limits) -> dict:
    from .sectors import check_kappa, check_sector_clopen, sectors

    dec = sectors(s, lim)
    return {
        "status": dec.status,
        "count": len(dec.blocks),
        "blocks": dec.as_names(s),
        "per_block_sp": [v.to_json() for v in dec.per_block_sp],
        "checks": _rep(dec.report),
        "clopen": _rep(check_sector_clopen(s, lim)),
        "kappa": _rep(check_kappa(s, lim)),
    }


def section_classical(s: StatePropertySystem, lim: Limits) -> dict:
    from .sectors import check_classical

    return _rep(check_classical(s))


def section_certificates(s: StatePropertySystem, lim: Limits, structures=None) -> dict:
    from .mackey import CHECKS, certify

    return {name: certify(s, name, lim).to_json() for name in (structures or CHECKS)}


SECTIONS: dict[str, Callable[[StatePropertySystem, Limits], dict]] = {
    "core": section_core,
    "closure": section_closure,
    "superposition": section_superposition,
    "geometry": section_geometry,
    "probability": section_probability,
    "sectors": section_sectors,
    "classical": section_classical,
    "certificates": section_certificates,
}


# -------------------------------------------------------------------- report


def instance_digest(s: StatePropertySystem, lim: Limits) -> tuple[str, str]:
    """Canonical-form hash when the relabeling search fits the budget, else a content hash."""
    from .generators.canonical import canonical_digest
    from .io import dump_instance

    try:
        return canonical_digest(s, lim), "canonical"
    except BudgetExceeded:
        doc = dump_instance(s)
        doc.pop("name", None)
        text = json.dumps(doc, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest(), "content"


@dataclass
class RunReport:
    command: str
    instance: str
    digest: str
    digest_kind: str
    flags: dict[str, Any] = field(default_factory=dict)
    sections: dict[str, Any] = field(default_factory=dict)
    timing: dict[str, float] | None = None
    budget_exceeded: list[str] = field(default_factory=list)

    @classmethod
    def start(cls, command: str, s: StatePropertySystem, lim: Limits, flags: dict | None = None,
              timing: bool = False) -> "RunReport":
        digest, kind = instance_digest(s, lim)
        return cls(command, s.name, digest, kind, dict(flags or {}), timing={} if timing else None)

    def run(self, name: str, fn: Callable[[], Any]) -> Any:
        t0 = time.perf_counter()
        try:
            value = fn()
        except BudgetExceeded as err:
            value = {"status": BUDGET_EXCEEDED, "note": str(err)}
            self.budget_exceeded.append(name)
        self.sections[name] = value
        if self.timing is not None:
            self.timing[name] = round(time.perf_counter() - t0, 6)
        return value

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "schema": SCHEMA,
            "tool": {"name": "spslab", "version": __version__},
            "command": self.command,
            "instance": {"name": self.instance, "digest": self.digest, "digest_kind": self.digest_kind},
            "flags": self.flags,
            "sections": self.sections,
        }
        if self.budget_exceeded:
            out["budget_exceeded"] = self.budget_exceeded
        if self.timing is not None:
            out["timing"] = self.timing
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False, sort_keys=False) + "\n"


# ---------------------------------------------------------------- rendering


def _entries_text(obj: Any, indent: str, lines: list[str]) -> None:
    if isinstance(obj, dict) and "name" in obj and "status" in obj:
        tail = ""
        if obj.get("witness") is not None:
            tail = "  " + json.dumps(obj["witness"], ensure_ascii=False)
        elif obj.get("note"):
            tail = f"  ({obj['note']})"
        lines.append(f"{indent}{obj['name']}: {obj['status']}{tail}")
        return
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and (isinstance(v, dict) or isinstance(v[0], dict)):
                lines.append(f"{indent}{k}:")
                _entries_text(v, indent + "  ", lines)
            else:
                lines.append(f"{indent}{k}: {json.dumps(v, ensure_ascii=False)}")
        return
    if isinstance(obj, list):
        for item in obj:
            _entries_text(item, indent, lines)
        return
    lines.append(f"{indent}{json.dumps(obj, ensure_ascii=False)}")


def render_text(doc: dict[str, Any]) -> str:
    lines = [f"{doc['command']} {doc['instance']['name'] or '(unnamed)'}  [{doc['instance']['digest_kind']} "
             f"digest {doc['instance']['digest'][:16]}]"]
    for name, body in doc["sections"].items():
        lines.append(f"[{name}]")
        _entries_text(body, "  ", lines)
    if doc.get("budget_exceeded"):
        lines.append("budget exceeded in: " + ", ".join(doc["budget_exceeded"]))
    if doc.get("timing"):
        lines.append("timing: " + ", ".join(f"{k}={v}s" for k, v in doc["timing"].items()))
    return "\n".join(lines) + "\n"


def failing_entries(obj: Any, path: str = "") -> list[tuple[str, dict]]:
    """Every failing verdict in a report document, with its location."""
    found: list[tuple[str, dict]] = []
    if isinstance(obj, dict):
        if obj.get("status") == "fails" and "name" in obj:
            found.append((path, obj))
        for k, v in obj.items():
            found.extend(failing_entries(v, f"{path}.{k}" if path else k))
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            found.extend(failing_entries(v, f"{path}[{i}]"))
    return found
