from fractions import Fraction

import pytest

from spslab import oracle as O
from spslab.probability import (
    ProbabilityError,
    T_prime,
    check_axiom_B,
    check_axiom_C,
    check_omp,
    check_state_perp,
    comp0_table,
    extend_orthocomplement,
    ortho_complement0,
    orthogonal,
    perp_masks,
    state_perp,
    table_of,
    validate_mu,
    verify_bicommutant,
)


def test_mo2_measurements(fixtures):
    s = fixtures["MO2"]
    assert validate_mu(s).ok
    t = table_of(s)
    a, a2 = s.prop("a"), s.prop("a'")
    assert t.orthogonal(a, a2)
    assert s.mu_table[s.state_index("q"), a] == Fraction(1, 2)
    assert orthogonal(s, "a", "a'") and not orthogonal(s, "a", "b")
    assert s.prop_name(ortho_complement0(s, "b")) == "b'"


def test_orthocomplement_extension(fixtures):
    for key in ("CBIT", "MO2", "LINE3", "CTRIT"):
        comp, rep = extend_orthocomplement(fixtures[key])
        assert comp is not None and rep.ok, key
    comp, rep = extend_orthocomplement(fixtures["FANO"])
    assert comp is None


def test_axioms_B_and_C(fixtures):
    assert check_axiom_B(fixtures["MO2"]).holds and check_axiom_C(fixtures["MO2"]).holds
    assert check_axiom_B(fixtures["FANO"]).fails


def test_state_orthogonality(fixtures):
    s = fixtures["MO2"]
    assert state_perp(s, "p", "p'") and not state_perp(s, "p", "q")
    assert check_state_perp(s).ok
    assert T_prime(s, s.states_mask(["p"])) == s.states_mask(["p'"])
    assert T_prime(s, 0) == s.all_states


def test_omp_on_measured_instances(fixtures, measured):
    for s in [fixtures[k] for k in ("CBIT", "MO2", "LINE3", "CTRIT")] + measured:
        assert not check_omp(s).failures, s.name


def test_bicommutant_on_fixtures(fixtures):
    for key in ("CBIT", "MO2", "LINE3", "CTRIT"):
        assert verify_bicommutant(fixtures[key]).ok


def test_out_of_range_and_nonmonotone_mu_are_caught(fixtures):
    s = fixtures["CBIT"]
    mu = dict(s.mu)
    key = (s.state_index("p"), s.prop("a"))
    mu[key] = Fraction(0)
    bad = s.replace(mu=mu)
    assert validate_mu(bad).failures


def test_comp0_table_matches_oracle(everything):
    for s in everything:
        oc = O.comp0(s)
        try:
            table = comp0_table(s)
        except ProbabilityError:
            assert any(len(v) != 1 for v in oc.values()), s.name
            continue
        assert {a: [b] for a, b in table.items()} == oc, s.name


def test_perp_masks_match_oracle(everything):
    for s in everything:
        got = {(p, q) for p in range(s.n) for q in range(s.n) if perp_masks(s)[p] >> q & 1}
        assert got == O.perp(s), s.name


@pytest.mark.parametrize("key", ["MO2", "LINE3"])
def test_prime_of_prime_is_bar_on_coherent_fixtures(fixtures, key):
    from spslab.closure import sup_close

    s = fixtures[key]
    for T in range(1 << s.n):
        assert T_prime(s, T_prime(s, T)) == sup_close(s, T)
