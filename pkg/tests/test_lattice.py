from spslab.lattice import (
    PropertyLattice,
    check_atomistic,
    check_bounded_lattice,
    check_covering,
    check_distributive,
    check_intersection_property,
    check_lower_semimodular,
    check_modular,
    check_orthocomplementation,
    check_partial_order,
    check_upper_semimodular,
    orthocomplementations,
)


def square():
    return PropertyLattice.from_pairs(["0", "a", "b", "I"], [("0", "a"), ("0", "b"), ("a", "I"), ("b", "I")], "0", "I")


def pentagon():
    # 0 < a < c < I and 0 < b < I
    return PropertyLattice.from_pairs(["0", "a", "b", "c", "I"],
                                      [("0", "a"), ("a", "c"), ("c", "I"), ("0", "b"), ("b", "I")], "0", "I")


def non_semimodular():
    # atoms a, b, c; d covers b and c; a only below I
    return PropertyLattice.from_pairs(
        ["0", "a", "b", "c", "d", "I"],
        [("0", "a"), ("0", "b"), ("0", "c"), ("b", "d"), ("c", "d"), ("a", "I"), ("d", "I")], "0", "I")


def test_meets_and_joins():
    L = square()
    i = L.index
    assert L.meet(i("a"), i("b")) == i("0")
    assert L.join(i("a"), i("b")) == i("I")
    assert L.meet_all([]) == L.top and L.join_all([]) == L.bottom
    assert L.atoms == (i("a"), i("b")) and L.coatoms == (i("a"), i("b"))


def test_order_and_lattice_checks():
    for L in (square(), pentagon(), non_semimodular()):
        assert check_partial_order(L).holds
        assert check_bounded_lattice(L).holds


def test_pentagon_is_not_modular():
    L = pentagon()
    assert check_modular(L).fails
    assert check_distributive(L).fails
    assert check_modular(square()).holds and check_distributive(square()).holds


def test_non_semimodular_lattice_fails_covering_with_witness():
    L = non_semimodular()
    assert check_atomistic(L).holds
    v = check_covering(L)
    assert v.fails and v.witness == {"x": "b", "atom": "a"}
    assert check_upper_semimodular(L).fails
    assert check_intersection_property(L).fails


def test_lower_semimodular_on_boolean():
    assert check_lower_semimodular(square()).holds
    assert check_upper_semimodular(square()).holds


def test_orthocomplementations_of_square_and_mo2(fixtures):
    comps = list(orthocomplementations(square()))
    assert len(comps) == 1
    for v in check_orthocomplementation(square(), comps[0]):
        assert v.holds
    L = fixtures["MO2"].lattice
    # six elements, four atoms: three ways to pair the atoms
    assert len(list(orthocomplementations(L))) == 3
    assert list(orthocomplementations(pentagon())) == []


def test_identity_is_not_an_orthocomplementation():
    L = square()
    names = [v.name for v in check_orthocomplementation(L, list(L.elements)) if v.fails]
    assert "order-reversing" in names and "meet-zero" in names
