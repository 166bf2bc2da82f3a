"""Forward checks on finite vector-space models: geometry, MSP, sectors, orthogeometry.

    python3 scripts/vector_models.py
"""

from __future__ import annotations

import argparse
import json
from dataclasses import dataclass, field

from spslab.config import Limits
from spslab.geometry import build_geometry, max_independent
from spslab.mackey import check_orthogeometry
from spslab.generators import from_vector_space
from spslab.sectors import sectors
from spslab.superposition import check_msp, check_sp
from spslab.system import axiom_A_holds


@dataclass(frozen=True)
class ModelConfig:
    models: tuple[tuple[int, int, str | None], ...] = field(default_factory=lambda: (
        (2, 3, None), (2, 3, "identity"), (3, 2, "identity"), (4, 2, None), (5, 2, "identity"),
        (3, 3, "identity"), (2, 4, None),
    ))
    budget: int | None = None


def check_model(q: int, n: int, form: str | None, limits: Limits) -> dict:
    s = from_vector_space(q, n, form)
    _, geo = build_geometry(s)
    row = {
        "model": s.name, "form": form, "rays": s.n, "properties": s.m,
        "expected_rays": (q ** n - 1) // (q - 1),
        "A": axiom_A_holds(s),
        "projective": all(geo[k].holds for k in ("P1", "P2", "P3")),
        "SP": check_sp(s).holds,
        "MSP": check_msp(s, "finite", limits).status,
        "sectors": len(sectors(s, limits).blocks),
        "max_independent": max_independent(s, limits)[0],
    }
    if form is not None:
        cert = check_orthogeometry(s, limits)
        row["orthogeometry"] = cert.verdict
        row["null_points"] = cert.extras.get("null_points")
        row["measured"] = s.has_measurements
    return row


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--budget", type=int)
    ap.add_argument("--json", action="store_true")
    a = ap.parse_args()
    cfg = ModelConfig(budget=a.budget)
    limits = Limits.from_env(budget=cfg.budget)
    rows = [check_model(q, n, f, limits) for q, n, f in cfg.models]
    if a.json:
        print(json.dumps(rows, indent=2))
        return
    for r in rows:
        print(json.dumps(r))


if __name__ == "__main__":
    main()
