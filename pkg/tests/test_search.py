from spslab.config import Limits
from spslab.search import CONJECTURES, default_corpus, search_counterexample


def test_expected_witness_is_found():
    corpus = default_corpus(max_states=3, fixtures=False)
    res = search_counterexample("A-implies-2-MSP", corpus, Limits())
    assert res.found and res.instance.name == "n3-1"
    assert res.to_json()["instance_data"]["format"] == "spslab-instance/1"


def test_small_corpus_has_no_counterexamples():
    corpus = list(default_corpus(max_states=3))
    for name, c in CONJECTURES.items():
        if c.expect_witness or name == "theorem-4":
            continue
        res = search_counterexample(name, corpus, Limits())
        assert not res.found, name
        assert res.checked == len(corpus)


def test_conjecture_catalogue():
    assert {"theorem-1", "theorem-2", "theorem-4", "bicommutant", "sectors"} <= set(CONJECTURES)
    assert [c.name for c in CONJECTURES.values() if c.expect_witness] == ["A-implies-2-MSP"]
