from spslab.geometry import (
    build_geometry,
    check_c_laws,
    check_irreducible,
    check_projective_lattice,
    independent,
    max_independent,
)


def test_fano_is_a_projective_plane(fixtures):
    s = fixtures["FANO"]
    G, rep = build_geometry(s)
    assert all(rep[k].holds for k in ("P1", "P2", "P3"))
    assert len(G.points) == 7 and len(G.lines) == 7
    assert G.line_sizes() == [3]
    assert max_independent(s) == (3, ["P1", "P2", "P4"])
    assert check_irreducible(s).holds


def test_line_sizes_of_small_geometries(fixtures):
    assert build_geometry(fixtures["MO2"])[0].line_sizes() == [4]
    assert build_geometry(fixtures["LINE3"])[0].line_sizes() == [4]
    assert build_geometry(fixtures["CBIT"])[0].line_sizes() == [2]


def test_classical_geometry_is_reducible(fixtures):
    v = check_irreducible(fixtures["CBIT"])
    assert v.fails
    assert check_irreducible(fixtures["CTRIT"]).fails


def test_independence(fixtures):
    s = fixtures["FANO"]
    assert independent(s, ["P1", "P2", "P4"])
    assert not independent(s, ["P1", "P2", "P3"])
    assert max_independent(fixtures["CTRIT"])[0] == 3


def test_c_laws_and_projective_lattice(fixtures):
    for key in ("MO2", "FANO", "LINE3"):
        s = fixtures[key]
        assert not check_c_laws(s).failures, key
        assert not check_projective_lattice(s).failures, key
