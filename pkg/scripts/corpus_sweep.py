"""Run every registered conjecture over the exhaustive corpus and the fixtures.

    python3 scripts/corpus_sweep.py --max-states 4 --max-props 8 --out sweep.json
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass

from spslab.config import Limits
from spslab.search import CONJECTURES, default_corpus, search_counterexample


@dataclass(frozen=True)
class SweepConfig:
    max_states: int = 4
    max_props: int = 8
    fixtures: bool = True
    budget: int | None = None
    out: str | None = None


def run(cfg: SweepConfig) -> dict:
    limits = Limits.from_env(budget=cfg.budget)
    corpus = list(default_corpus(limits, cfg.max_states, cfg.max_props, cfg.fixtures))
    rows = []
    for name, conj in CONJECTURES.items():
        t0 = time.perf_counter()
        res = search_counterexample(conj, corpus, limits)
        rows.append({
            "conjecture": name,
            "statement": conj.statement,
            "qualifying": res.qualifying,
            "witness_expected": conj.expect_witness,
            "witness_found": res.found,
            "as_expected": res.found == conj.expect_witness,
            "instance": res.instance.name if res.found else None,
            "witness": res.witness,
            "skipped": res.skipped,
            "seconds": round(time.perf_counter() - t0, 3),
        })
    return {"config": asdict(cfg), "instances": len(corpus), "results": rows}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-states", type=int, default=4)
    ap.add_argument("--max-props", type=int, default=8)
    ap.add_argument("--no-fixtures", action="store_true")
    ap.add_argument("--budget", type=int)
    ap.add_argument("--out")
    a = ap.parse_args()
    cfg = SweepConfig(a.max_states, a.max_props, not a.no_fixtures, a.budget, a.out)
    doc = run(cfg)
    print(f"{doc['instances']} instances")
    for r in doc["results"]:
        flag = "ok " if r["as_expected"] else "BAD"
        found = f"witness in {r['instance']}" if r["witness_found"] else "no witness"
        print(f"{flag} {r['conjecture']:<18} qualifying={r['qualifying']:<4} {found:<22} {r['seconds']}s")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump(doc, fh, indent=2)


if __name__ == "__main__":
    main()
