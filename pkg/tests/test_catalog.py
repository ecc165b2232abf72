import pytest

from degenlab import (
    QQ, QQI, CMClass, Matrix, PolyRing, build_poset, catalog_matrix, dim1_ring,
    iterated_knoerrer_module, oracle_degenerates, prop56_image, thm31_witness,
    validate_mr, verify_witness,
)
from degenlab.catalog import PosetGraph, catalog_ideal, identify_dim1_ideal
from degenlab.ideal import Submodule


def test_class_labels_and_parsing():
    assert CMClass.parse("(x, y^3)") == CMClass(1, "idealA", 3)
    assert CMClass.parse("(x,y)") == CMClass(1, "idealA", 1)
    assert CMClass.parse("R/(x)") == CMClass(1, "rmodx")
    assert CMClass.parse("(y,z^2)", 2) == CMClass(2, "idealB", 2)
    assert CMClass(2, "idealB", 2).label == "(x-y,z^2)"
    assert CMClass(2, "idealB", 2).alias == "(y,z^2)"
    with pytest.raises(ValueError):
        CMClass(1, "idealA", 0)
    with pytest.raises(ValueError):
        CMClass.parse("(x,w)")


@pytest.mark.parametrize("cls", [CMClass(1, "free"), CMClass(1, "rmodx"), CMClass(1, "idealA", 4),
                                 CMClass(2, "free"), CMClass(2, "idealA", 2), CMClass(2, "idealB", 1)])
def test_catalog_matrices_are_valid(cls):
    assert validate_mr(catalog_matrix(cls)).valid


@pytest.mark.parametrize("n", [1, 2, 5])
def test_catalog_ideal_identification(n):
    assert identify_dim1_ideal(catalog_ideal(CMClass(1, "idealA", n))) == CMClass(1, "idealA", n)


def test_oracle_table():
    A = lambda n: CMClass(1, "idealA", n)  # noqa: E731
    free = CMClass(1, "free")
    assert oracle_degenerates(free, A(2)) == "yes"
    assert oracle_degenerates(free, A(1)) == "no"
    assert oracle_degenerates(A(3), A(1)) == "no"
    assert oracle_degenerates(A(1), CMClass(1, "rmodx")) == "unknown"
    assert oracle_degenerates(CMClass(2, "idealA", 1), CMClass(2, "idealB", 3)) == "no"
    assert oracle_degenerates(CMClass(2, "idealA", 3), CMClass(2, "idealB", 1)) == "unknown"
    with pytest.raises(ValueError):
        oracle_degenerates(free, CMClass(2, "free"))


def test_witness_certificates_are_explicit():
    w = thm31_witness(2, 6)
    S = w.s_ring
    for c, P in w.certificates.items():
        assert P.det() == S.one
        assert w.fiber(c) @ P == P @ w.mu
    with pytest.raises(ValueError):
        thm31_witness(3, 2)
    with pytest.raises(ValueError):
        thm31_witness(1, 2)


def test_dim1_poset():
    g = build_poset(1, 4)
    hasse = {(s.label, d.label) for s, d in g.hasse}
    assert hasse == {("R", "(x,y^2)"), ("(x,y^1)", "(x,y^3)"), ("(x,y^2)", "(x,y^4)")}
    assert all(p == "witness" for _, _, p in g.edges)
    assert "R/(x)" in g.to_json()["nodes"]
    dot = g.to_dot()
    assert dot.startswith("digraph") and dot.count("->") == 3


def test_poset_parallel_matches_serial():
    assert build_poset(1, 3, jobs=2).to_json() == build_poset(1, 3).to_json()


def test_dim2_poset_has_no_ideal_edges():
    g = build_poset(2, 3)
    ideal = ("idealA", "idealB")
    assert not [e for e in g.edges if e[0].kind in ideal and e[1].kind in ideal]


def test_poset_rejects_contradicting_edge():
    g = PosetGraph(1, [CMClass(1, "free"), CMClass(1, "idealA", 1)])
    with pytest.raises(ValueError):
        g.add_edge(CMClass(1, "free"), CMClass(1, "idealA", 1), "user")
    with pytest.raises(ValueError):
        build_poset(1, 0)


@pytest.mark.parametrize("dim,size", [(1, 2), (3, 4), (5, 8)])
def test_iterated_knoerrer(dim, size):
    mr = iterated_knoerrer_module(2, dim, QQI)
    assert mr.size == size
    assert validate_mr(mr).valid
    assert len(mr.ring.base.vars) == dim + 1


def test_iterated_knoerrer_argument_checks():
    with pytest.raises(ValueError):
        iterated_knoerrer_module(1, 2, QQI)
    with pytest.raises(ValueError):
        iterated_knoerrer_module(1, 3, QQ)


@pytest.mark.parametrize("h", [0, 1, 2])
def test_block_identity_after_swaps(h):
    S = PolyRing(("x0", "z"), field=QQI)
    d = prop56_image(Matrix(S, [[S.gen("x0")]]), S.gen("x0") ** 2, S.gen("z"), h)
    assert d.matches
    assert d.knoerrer_image.shape == (2, 4)


def test_image_presentation_gives_known_pair():
    # Im(alpha z^1) and Im(alpha z^3) over k[x0, z]/(x0^2) are (x,y) and (x,y^3)
    S = PolyRing(("x0", "z"), field=QQI)
    R = dim1_ring(QQ, "x0", "z")
    ims = {}
    for h in (1, 3):
        d = prop56_image(Matrix(S, [[S.gen("x0")]]), S.gen("x0") ** 2, S.gen("z"), h)
        gens = [tuple(_to_qq(a, R.base) for a in g) for g in d.image.gens]
        ims[h] = Submodule(R, 1, gens)
    w = thm31_witness(1, 3, x="x0", y="z")
    assert identify_dim1_ideal(ims[1]).label == w.source
    assert identify_dim1_ideal(ims[3]).label == w.target
    assert verify_witness(w).ok


def _to_qq(p, ring):
    from degenlab import parse_poly, render
    return parse_poly(render(p), ring)
