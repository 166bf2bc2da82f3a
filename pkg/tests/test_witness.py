from spslab.config import Limits
from spslab.superposition import check_msp
from spslab.system import check_axiom_A
from spslab.witness import recheck

from conftest import by_name


def test_direct_recheck_of_an_msp_witness(corpus, fixtures):
    s = by_name(corpus, "n3-1")
    entry = check_msp(s, 2).to_json()
    assert recheck(s, entry, Limits())["reproduced"]
    assert recheck(s, entry, Limits())["method"] == "direct"
    moved = {**entry, "witness": {**entry["witness"], "p": "s2"}}
    assert not recheck(s, moved, Limits())["reproduced"]


def test_axiom_A_witness(corpus, fixtures):
    s = by_name(corpus, "n4-0")
    entry = check_axiom_A(s).to_json()
    assert recheck(s, entry, Limits())["reproduced"]
    cbit = fixtures["CBIT"]
    fake = {"name": "A", "status": "fails", "witness": {"p": "p", "q": "q"}}
    assert not recheck(cbit, fake, Limits())["reproduced"]


def test_rerun_fallback(fixtures):
    s = fixtures["CBIT"]
    from spslab.geometry import check_irreducible

    entry = check_irreducible(s).to_json()
    out = recheck(s, entry, Limits())
    assert out["method"] == "rerun" and out["reproduced"]
    assert not recheck(fixtures["MO2"], entry, Limits())["reproduced"]
