from __future__ import annotations

import json
import random

import pytest
from hypothesis import strategies as st

from spslab.generators import FIXTURES, disjoint_union, enumerate_instances, fixture, from_family, measured_corpus
from spslab.io import dump_instance, instance_from_json


@pytest.fixture(scope="session")
def corpus():
    return list(enumerate_instances())


@pytest.fixture(scope="session")
def measured():
    return list(measured_corpus())


@pytest.fixture(scope="session")
def fixtures():
    return {name: fixture(name) for name in FIXTURES}


@pytest.fixture(scope="session")
def unions(fixtures):
    return {
        "CBIT+CBIT": disjoint_union(fixtures["CBIT"], fixtures["CBIT"]),
        "MO2+CBIT": disjoint_union(fixtures["MO2"], fixtures["CBIT"]),
    }


@pytest.fixture(scope="session")
def everything(corpus, measured, fixtures, unions):
    """Corpus, measured variants, fixtures (without the 15-state model) and unions."""
    small = [s for name, s in sorted(fixtures.items()) if s.n <= 10]
    return corpus + measured + small + list(unions.values())


def by_name(instances, name):
    return next(s for s in instances if s.name == name)


def relabel(system, seed: int):
    """Rename and reorder states and properties; the result is isomorphic to ``system``."""
    rng = random.Random(seed)
    doc = dump_instance(system)
    smap = {s: f"x{i}" for i, s in enumerate(rng.sample(doc["states"], len(doc["states"])))}
    pmap = {a: f"y{i}" for i, a in enumerate(rng.sample(doc["properties"], len(doc["properties"])))}
    out = {
        "states": sorted(smap.values(), key=lambda _: rng.random()),
        "properties": sorted(pmap.values(), key=lambda _: rng.random()),
        "leq": [[pmap[a], pmap[b]] for a, b in doc["leq"]],
        "bottom": pmap[doc["bottom"]],
        "top": pmap[doc["top"]],
        "actual": {smap[s]: [pmap[a] for a in v] for s, v in doc["actual"].items()},
    }
    if "testable" in doc:
        out["testable"] = [pmap[a] for a in doc["testable"]]
    if "mu" in doc:
        out["mu"] = [{"state": smap[r["state"]], "property": pmap[r["property"]], "value": r["value"]}
                     for r in doc["mu"]]
    if "orthogonality" in doc:
        out["orthogonality"] = [[smap[p], smap[q]] for p, q in doc["orthogonality"]]
    return instance_from_json(json.loads(json.dumps(out)))


@st.composite
def moore_systems(draw, max_states: int = 5, max_sets: int = 6):
    """Random instances: close a random family of subsets under intersection."""
    n = draw(st.integers(1, max_states))
    full = (1 << n) - 1
    seeds = draw(st.lists(st.integers(1, max(1, full - 1)), max_size=max_sets)) if n > 1 else []
    family = {0, full}
    for s in seeds:
        family.add(s & full)
    changed = True
    while changed:
        changed = False
        for x in list(family):
            for y in list(family):
                if x & y not in family:
                    family.add(x & y)
                    changed = True
    return from_family(tuple(family), n, name="random")
