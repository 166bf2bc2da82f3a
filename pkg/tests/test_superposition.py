import pytest

from spslab import oracle as O
from spslab.closure import lambda_close, sup_close
from spslab.superposition import (
    check_2msp_exchange,
    check_msp,
    check_sp,
    is_minimal_superposition,
    minimal_superpositions,
    verify_theorem4,
)
from spslab.system import axiom_A_holds

from conftest import by_name


def test_minimal_superpositions_in_mo2(fixtures):
    s = fixtures["MO2"]
    S = s.states_mask(["p", "q"])
    assert minimal_superpositions(s, S) == s.states_mask(["p'", "q'"])
    assert is_minimal_superposition(s, "q'", S)
    assert not is_minimal_superposition(s, "p", S)


def test_a_single_state_is_its_own_minimal_superposition(fixtures):
    s = fixtures["FANO"]
    for p in range(s.n):
        assert minimal_superpositions(s, 1 << p) == 1 << p
    assert minimal_superpositions(s, 0) == 0


@pytest.mark.parametrize("key", ["CBIT", "CTRIT", "MO2", "FANO", "LINE3"])
def test_msp_levels_hold_on_fixtures(fixtures, key):
    s = fixtures[key]
    for level in (2, 3, "finite"):
        assert check_msp(s, level).holds


def test_sp_separates_classical_from_coherent(fixtures):
    assert check_sp(fixtures["CBIT"]).fails
    assert check_sp(fixtures["CTRIT"]).fails
    assert check_sp(fixtures["MO2"]).holds
    assert check_sp(fixtures["LINE3"]).holds


def test_axiom_A_alone_does_not_give_2msp(corpus):
    s = by_name(corpus, "n3-1")
    assert axiom_A_holds(s)
    v = check_msp(s, 2)
    assert v.fails
    w = v.witness
    assert w["S"] == ["s1", "s2"] and w["p"] == "s0"
    S1, S2 = s.states_mask(w["S1"]), s.states_mask(w["S2"])
    p = s.state_index(w["p"])
    assert sup_close(s, S1 | 1 << p) & sup_close(s, S2) == 0


def test_msp_witness_is_the_first_in_order(everything):
    """The reported witness set has minimal size among all counterexamples."""
    for s in everything:
        v = check_msp(s, "finite")
        if not v.fails:
            continue
        k = len(v.witness["S"])
        for size in range(2, k):
            assert O.msp_holds(s, size) or size >= k


def test_exchange_holds_under_2msp(everything):
    for s in everything:
        if check_msp(s, 2).holds and axiom_A_holds(s):
            assert not check_2msp_exchange(s).fails, s.name


def test_lambda_bar_report_entries(fixtures, corpus):
    for v in verify_theorem4(fixtures["FANO"]):
        assert v.holds
    without_A = by_name(corpus, "n4-0")
    assert all(v.status == "precondition-unmet" for v in verify_theorem4(without_A))


def test_finite_msp_without_A_can_separate_lambda_and_bar(corpus):
    s = by_name(corpus, "n4-0")
    assert not axiom_A_holds(s)
    assert check_msp(s, "finite").holds
    T = s.states_mask(["s0", "s1", "s2"])
    assert lambda_close(s, T) != sup_close(s, T)
