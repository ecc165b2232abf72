import random

import pytest
import sympy

from degenlab import (
    Ideal, Matrix, PolyRing, QuotientRing, ResourceLimitError, Submodule,
    buchberger, fitting_ideal, ideal_contains, ideal_equal, ideal_membership,
    kernel_of_map, minors_ideal, parse_poly, saturation_bounded_contains,
    submodule_equal, submodule_membership, syzygies,
)
from helpers import homogeneous_member_bruteforce, random_poly, to_sympy

P = PolyRing(("x", "y", "z"))


def polys(*texts, ring=P):
    return [parse_poly(t, ring) for t in texts]


def test_reduced_basis_matches_sympy():
    rng = random.Random(5)
    syms = sympy.symbols("x y z")
    for _ in range(15):
        gens = [g for g in (random_poly(P, rng, terms=3, max_deg=2, coeff=3) for _ in range(3)) if not g.is_zero()]
        if not gens:
            continue
        ours = buchberger(Ideal(P, gens)).gb
        ref = sympy.groebner([to_sympy(g, syms) for g in gens], *syms, order="grevlex")
        mine = {str(sympy.expand(to_sympy(g, syms))) for g in ours}
        theirs = {str(sympy.expand(g / sympy.Poly(g, *syms).LC(order="grevlex"))) for g in ref.exprs}
        assert mine == theirs, gens


def test_membership_certificate_reconstructs():
    I = Ideal(P, polys("x^2 - y", "x*y - z"))
    g1, g2 = I.gens
    f = parse_poly("x*y + z^2", P) * g1 + parse_poly("x^3 - 1", P) * g2
    ok, cof = ideal_membership(f, I)
    assert ok
    assert sum((c * g for c, g in zip(cof, I.lifted_gens())), P.zero) == f
    assert not ideal_membership(P.gen("x"), I)[0]


def test_membership_agrees_with_linear_algebra():
    rng = random.Random(17)
    for _ in range(10):
        gens = polys(*rng.sample(["x^2", "x*y - z^2", "y^2 - x*z", "x*z", "y*z + x^2"], 2))
        I = buchberger(Ideal(P, gens))
        for f in polys("x^3", "x^2*y - y*z^2", "y^3 - x*y*z", "z^3"):
            assert ideal_membership(f, I, certificate=False)[0] == homogeneous_member_bruteforce(f, gens, P, 3)


def test_quotient_ring_membership_uses_relation():
    R = QuotientRing(PolyRing(("x", "y")), "x^2", "x")
    I = Ideal(R, polys("x*y", ring=R.base))
    assert ideal_membership(parse_poly("x^2 + x*y^2", R.base), I)[0]


def test_containment_and_equality():
    I = Ideal(P, polys("x", "y"))
    J = Ideal(P, polys("x + y", "x - y"))
    K = Ideal(P, polys("x^2", "y"))
    assert ideal_equal(I, J)
    assert ideal_contains(I, K) and not ideal_contains(K, I)


def test_minors_and_fitting_chain():
    M = Matrix(P, [[P.gen("x"), P.gen("y")], [P.gen("z"), 0]])
    assert ideal_equal(minors_ideal(M, 1), Ideal(P, polys("x", "y", "z")))
    assert ideal_equal(minors_ideal(M, 2), Ideal(P, polys("y*z")))
    fits = [fitting_ideal(M, i) for i in range(4)]
    for a, b in zip(fits, fits[1:]):
        assert ideal_contains(b, a)
    assert ideal_equal(fits[2], Ideal(P, [P.one]))
    assert fitting_ideal(Matrix(P, [[P.gen("x")], [P.gen("y")]]), 0).gens == ()


def test_syzygies_annihilate():
    vs = [(g,) for g in polys("x*y", "y*z", "x*z")]
    syz = syzygies(vs, 1, P)
    assert syz
    for s in syz:
        assert sum((c * v[0] for c, v in zip(s, vs)), P.zero).is_zero()
    # Koszul-type relations generate: z*e1 - x*e2 must be a combination
    S = Submodule(P, 3, syz)
    assert submodule_membership(tuple(polys("z", "-x", "0")), S)[0]


def test_kernel_over_quotient():
    R = QuotientRing(PolyRing(("x", "y")), "x^2", "x")
    B = R.base
    K = kernel_of_map(Matrix(B, [[B.gen("x")]]), R)
    assert submodule_equal(K, Submodule(R, 1, [(B.gen("x"),)]))


def test_submodule_certificate():
    S = Submodule(P, 2, [tuple(polys("x", "y")), tuple(polys("0", "z"))])
    v = tuple(polys("x*z", "y*z + z^2"))
    ok, cof = submodule_membership(v, S)
    assert ok
    g = S.lifted_gens()
    assert tuple(sum((c * gk[i] for c, gk in zip(cof, g)), P.zero) for i in range(2)) == v
    with pytest.raises(ValueError):
        submodule_membership((P.one,), S)


def test_bounded_saturation():
    Q = PolyRing(("t", "y"))
    I = Ideal(Q, polys("t^2*y", ring=Q))
    assert saturation_bounded_contains(I, Ideal(Q, polys("y", ring=Q)), "t") == (True, 2)
    assert saturation_bounded_contains(I, Ideal(Q, polys("1", ring=Q)), "t", l_max=5) == (False, None)


def test_budget_exhaustion_raises():
    gens = polys("x^3 - y*z^2 + 1", "y^3 - x*z + 2", "z^3 - x^2*y + 3")
    with pytest.raises(ResourceLimitError):
        buchberger(Ideal(P, gens), budget=2)
