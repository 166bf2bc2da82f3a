from spslab import oracle as O
from spslab.closure import (
    LAMBDA,
    SUPERPOSITION,
    check_closure_laws,
    enumerate_family,
    is_lambda_closed,
    lambda_close,
    lambda_pair,
    sup_close,
    sup_close0,
)
from spslab.config import Limits


def names(s, mask):
    return sorted(s.state_names(mask))


def test_pair_closures(fixtures):
    cbit, mo2 = fixtures["CBIT"], fixtures["MO2"]
    assert names(cbit, lambda_pair(cbit, "p", "q")) == ["p", "q"]
    assert lambda_pair(mo2, "p", "q") == mo2.all_states
    assert names(cbit, lambda_pair(cbit, "p", "p")) == ["p"]


def test_fano_lines_and_planes(fixtures):
    f = fixtures["FANO"]
    assert names(f, lambda_close(f, f.states_mask(["P1", "P2"]))) == ["P1", "P2", "P3"]
    assert lambda_close(f, f.states_mask(["P1", "P2", "P4"])) == f.all_states


def test_superposition_closures(fixtures):
    mo2, ctrit, f = fixtures["MO2"], fixtures["CTRIT"], fixtures["FANO"]
    assert sup_close(mo2, mo2.states_mask(["p", "q"])) == mo2.all_states
    assert names(ctrit, sup_close(ctrit, ctrit.states_mask(["p", "q"]))) == ["p", "q"]
    assert sup_close(f, 0) == 0
    assert names(f, sup_close(f, f.states_mask(["P1", "P2"]))) == ["P1", "P2", "P3"]


def test_restricted_closure_on_fano_without_measurements(fixtures):
    f = fixtures["FANO"]
    # only 0 and I are testable, so any nonempty set closes to everything
    assert sup_close0(f, f.states_mask(["P1"])) == f.all_states


def test_families(fixtures):
    cbit, mo2, f = fixtures["CBIT"], fixtures["MO2"], fixtures["FANO"]
    assert sorted(map(sorted, enumerate_family(cbit, LAMBDA).as_names())) == [[], ["p"], ["p", "q"], ["q"]]
    fam = enumerate_family(mo2, SUPERPOSITION)
    assert len(fam) == 6 and 0 in fam and mo2.all_states in fam
    assert len(enumerate_family(f, LAMBDA)) == 16


def test_family_joins_and_meets_match_recomputation(fixtures):
    for key in ("MO2", "FANO", "CTRIT"):
        s = fixtures[key]
        for kind, close in ((LAMBDA, lambda X: lambda_close(s, X)), (SUPERPOSITION, lambda X: sup_close(s, X))):
            fam = enumerate_family(s, kind)
            for x in fam:
                for y in fam:
                    assert fam.meet(x, y) == x & y
                    assert fam.join(x, y) == close(x | y)
            assert fam.is_intersection_system().holds


def test_closure_laws_on_small_fixtures(fixtures):
    for key in ("CBIT", "MO2", "CTRIT", "LINE3"):
        rep = check_closure_laws(fixtures[key])
        assert not rep.failures, key


def test_fano_law_two_is_strict(fixtures):
    rep = check_closure_laws(fixtures["FANO"])
    assert rep["law-2"].holds
    strict = rep.extras["law-2-strict"]
    A, B = (fixtures["FANO"].states_mask(strict[k]) for k in ("A", "B"))
    f = fixtures["FANO"]
    assert lambda_close(f, A & B) != lambda_close(f, A) & lambda_close(f, B)


def test_budget_turns_exhaustive_checks_partial(fixtures):
    rep = check_closure_laws(fixtures["FANO"], Limits(budget=50))
    assert any(v.status == "partial" for v in rep)
    assert not rep.failures


def test_lambda_is_the_least_closed_superset(everything):
    for s in everything[:140]:
        if s.n > 7:
            continue
        for T in range(1 << s.n):
            X = lambda_close(s, T)
            assert is_lambda_closed(s, X) and T & ~X == 0
            assert O.to_frozen(X) == O.lambda_closure(s, O.to_frozen(T))
