from hypothesis import given, settings
from hypothesis import strategies as st

from spslab import oracle as O
from spslab.closure import lambda_close, sup_close
from spslab.generators import canonical_digest
from spslab.sectors import sectors
from spslab.superposition import check_msp, minimal_superpositions
from spslab.system import axiom_A_holds

from conftest import moore_systems, relabel

SETTINGS = settings(max_examples=60, deadline=None)


@SETTINGS
@given(moore_systems(), st.data())
def test_closure_laws(s, data):
    full = s.all_states
    A = data.draw(st.integers(0, full))
    B = data.draw(st.integers(0, full))
    for close in (lambda X: lambda_close(s, X), lambda X: sup_close(s, X)):
        cA = close(A)
        assert A & ~cA == 0
        assert close(cA) == cA
        assert close(A & B) & ~(close(A) & close(B)) == 0


@SETTINGS
@given(moore_systems(), st.data())
def test_lambda_is_inside_bar(s, data):
    T = data.draw(st.integers(0, s.all_states))
    assert lambda_close(s, T) & ~sup_close(s, T) == 0


@SETTINGS
@given(moore_systems(), st.integers(0, 1000))
def test_canonical_digest_ignores_labels(s, seed):
    assert canonical_digest(relabel(s, seed)) == canonical_digest(s)


@SETTINGS
@given(moore_systems())
def test_msp_levels_are_nested(s):
    levels = [check_msp(s, lv).holds for lv in (2, 3, "finite")]
    # f-MSP implies 3-MSP implies 2-MSP
    assert levels[2] <= levels[1] <= levels[0]


@SETTINGS
@given(moore_systems(), st.data())
def test_agreement_with_oracle(s, data):
    T = data.draw(st.integers(0, s.all_states))
    f = O.to_frozen(T)
    assert O.to_frozen(lambda_close(s, T)) == O.lambda_closure(s, f)
    assert O.to_frozen(sup_close(s, T)) == O.bar(s, f)
    assert O.to_frozen(minimal_superpositions(s, T)) == O.minimal_superpositions(s, f)
    assert axiom_A_holds(s) == O.axiom_A(s)
    d = sectors(s)
    if d.status != "precondition-unmet":
        assert {O.to_frozen(b) for b in d.blocks} == O.sectors(s)


@SETTINGS
@given(moore_systems())
def test_pair_closures_agree_under_A_and_2msp(s):
    """Under (A) and 2-MSP, pair closures coincide."""
    if not (axiom_A_holds(s) and check_msp(s, 2).holds):
        return
    for p in range(s.n):
        for q in range(s.n):
            T = 1 << p | 1 << q
            assert lambda_close(s, T) == sup_close(s, T)
