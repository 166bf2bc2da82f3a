from spslab import oracle as O
from spslab.sectors import (
    central_elements,
    check_classical,
    check_kappa,
    check_sector_clopen,
    check_sector_definition,
    classical_elements,
    kappa,
    sectors,
)


def test_sector_counts(fixtures, unions):
    counts = {"CBIT": 2, "CTRIT": 3, "MO2": 1, "FANO": 1, "LINE3": 1}
    for key, k in counts.items():
        assert len(sectors(fixtures[key]).blocks) == k, key
    assert len(sectors(unions["CBIT+CBIT"]).blocks) == 4
    assert len(sectors(unions["MO2+CBIT"]).blocks) == 3


def test_each_block_is_a_sector(fixtures, unions):
    for s in list(fixtures.values()) + list(unions.values()):
        if s.n > 10:
            continue
        for B in sectors(s).blocks:
            assert check_sector_definition(s, B).holds, s.name


def test_sectors_agree_with_oracle(everything):
    for s in everything:
        d = sectors(s)
        if d.status != "precondition-unmet":
            assert {O.to_frozen(b) for b in d.blocks} == O.sectors(s), s.name


def test_kappa(fixtures):
    s = fixtures["CBIT"]
    assert s.state_names(kappa(s, "a")) == ["p"]
    assert kappa(s, "0") == 0 and kappa(s, "I") == s.all_states
    assert check_kappa(s).ok


def test_classical_and_central(fixtures, unions):
    cbit, mo2 = fixtures["CBIT"], fixtures["MO2"]
    assert len(classical_elements(cbit)) == 4
    assert [mo2.prop_name(a) for a in classical_elements(mo2)] == ["0", "I"]
    assert set(central_elements(mo2)) == set(classical_elements(mo2))
    u = unions["MO2+CBIT"]
    assert len(classical_elements(u)) == 8
    assert not check_classical(u).failures


def test_clopen_blocks(fixtures, unions):
    for s in (fixtures["CBIT"], fixtures["MO2"], unions["CBIT+CBIT"]):
        assert not check_sector_clopen(s).failures


def test_classical_and_central_match_oracle(everything):
    for s in everything:
        assert set(classical_elements(s)) == O.classical(s), s.name
        assert set(central_elements(s)) == O.central(s), s.name
