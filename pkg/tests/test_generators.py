import pytest

from spslab.generators import (
    canonical_digest,
    canonical_key,
    disjoint_union,
    enumerate_instances,
    fixture,
    from_family,
    from_vector_space,
)
from spslab.generators.fields import field, rref
from spslab.generators.vector import NonReflexiveFormError, SingularFormError

from conftest import relabel


def test_corpus_sizes(corpus, measured):
    by_n = {}
    for s in corpus:
        by_n[s.n] = by_n.get(s.n, 0) + 1
    assert by_n == {1: 1, 2: 3, 3: 14, 4: 94}
    assert len(measured) == 17
    assert all(s.is_valid for s in corpus + measured)


def test_corpus_has_no_isomorphic_duplicates(corpus):
    keys = [canonical_key(s) for s in corpus]
    assert len(set(keys)) == len(keys)


@pytest.mark.parametrize("seed", range(4))
def test_canonical_key_is_relabel_invariant(fixtures, seed):
    for key in ("CBIT", "MO2", "FANO", "LINE3", "CTRIT"):
        s = fixtures[key]
        assert canonical_digest(relabel(s, seed)) == canonical_digest(s)


def test_digest_distinguishes_measurements(fixtures):
    s = fixtures["MO2"]
    assert canonical_digest(s) != canonical_digest(s.replace(mu=None, testable=None))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_field_axioms(q):
    F = field(q)
    for a in range(q):
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for b in range(q):
            for c in range(q):
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_unsupported_field_sizes():
    for q in (1, 6, 10, 16):
        with pytest.raises(ValueError):
            field(q)


def test_rref_rank():
    F = field(3)
    assert len(rref(F, [(1, 2, 0), (2, 1, 0), (0, 0, 1)])) == 2


@pytest.mark.parametrize("q, n", [(2, 2), (2, 3), (3, 2), (4, 2), (3, 3), (2, 4)])
def test_projective_space_counts(q, n):
    s = from_vector_space(q, n)
    assert s.n == (q ** n - 1) // (q - 1)
    assert s.is_valid


def test_pg22_is_the_fano_plane(fixtures):
    assert canonical_digest(from_vector_space(2, 3)) == canonical_digest(fixtures["FANO"])


def test_bad_forms():
    with pytest.raises(SingularFormError):
        from_vector_space(3, 2, [[1, 0], [0, 0]])
    with pytest.raises(NonReflexiveFormError):
        from_vector_space(3, 2, [[1, 1], [0, 1]])
    with pytest.raises(ValueError):
        from_vector_space(3, 2, "hermitian-ish")


def test_disjoint_union_shapes(fixtures):
    u = disjoint_union(fixtures["CBIT"], fixtures["MO2"])
    assert u.n == 6 and u.m == 4 * 6
    assert u.is_valid


def test_from_family_requires_moore_family():
    s = from_family((0, 0b01, 0b10, 0b11), 2)
    assert s.is_valid and s.n == 2
    assert len(list(enumerate_instances(max_states=2))) == 4


def test_fixture_lookup():
    assert fixture("CBIT").name == "CBIT"
    with pytest.raises(KeyError):
        fixture("NOPE")
