"""Random instances and independent oracles shared by the tests."""
import random
from fractions import Fraction

import sympy

from degenlab import Matrix, PolyRing, QQ

PRIME = 18446744073709551557  # largest prime below 2^64


def random_poly(ring, rng, terms=4, max_deg=3, coeff=5):
    p = ring.zero
    for _ in range(rng.randint(0, terms)):
        e = tuple(rng.randint(0, max_deg) for _ in ring.vars)
        c = Fraction(rng.randint(-coeff, coeff), rng.choice([1, 1, 2, 3]))
        p = p + ring.monomial(e, c)
    return p


def eval_mod(p, point, prime=PRIME):
    """Evaluate a rational polynomial at an integer point modulo ``prime``."""
    acc = 0
    for e, c in p.term_dict().items():
        c = Fraction(int(c.numerator), int(c.denominator))
        v = c.numerator * pow(c.denominator, -1, prime) % prime
        for x, k in zip(point, e):
            v = v * pow(x, k, prime) % prime
        acc = (acc + v) % prime
    return acc


def random_point(ring, rng, prime=PRIME):
    return [rng.randrange(prime) for _ in ring.vars]


def to_sympy(p, syms):
    expr = sympy.Integer(0)
    for e, c in p.term_dict().items():
        term = sympy.Rational(int(c.numerator), int(c.denominator))
        for s, k in zip(syms, e):
            term *= s ** k
        expr += term
    return expr


def homogeneous_member_bruteforce(f, gens, ring, degree):
    """f (homogeneous of ``degree``) in the ideal generated by homogeneous
    ``gens`` iff f is a linear combination of monomial multiples m*g of that
    degree: a rank computation done by sympy."""
    import itertools
    syms = sympy.symbols(ring.vars)
    spans = []
    for g in gens:
        d = g.total_degree()
        if d > degree:
            continue
        for e in itertools.product(range(degree - d + 1), repeat=len(syms)):
            if sum(e) == degree - d:
                spans.append(sympy.Poly(to_sympy(g.mul_term(e, QQ.one), syms), *syms))
    target = sympy.Poly(to_sympy(f, syms), *syms)
    mons = sorted({m for p in spans + [target] for m in p.as_dict()})
    if not spans:
        return target.is_zero
    A = sympy.Matrix([[p.as_dict().get(m, 0) for m in mons] for p in spans]).T
    Ab = A.row_join(sympy.Matrix([target.as_dict().get(m, 0) for m in mons]))
    return A.rank() == Ab.rank()


def random_unimodular(ring, n, rng, steps=3, var_pool=None):
    """Product of elementary matrices I + c*m*E_ij with m a monomial of degree <= 1."""
    U = Matrix.identity(ring, n)
    pool = var_pool or list(ring.vars)
    for _ in range(steps):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        m = rng.choice([ring.one] + [ring.gen(v) for v in pool]) * rng.choice([1, -1, 2])
        E = [[ring.one if a == b else ring.zero for b in range(n)] for a in range(n)]
        E[i][j] = m
        U = U @ Matrix(ring, E)
    return U


def zwara_instance(rng, kind):
    """(R, alpha, beta, x_reg, M_gens) for the randomized exactness suite.

    kind 'x2': k[x,y]/(x^2), alpha = beta a sum of (x) and (0 1; 0 0)
    blocks; kind 'xy': k[x,y,z]/(xy) with blocks (0 x; y 0), (0 1; 0 0), or a
    deliberately failing pair (x 0; 0 y), (y 0; 0 x).
    """
    from degenlab import QuotientRing
    if kind == "x2":
        B = PolyRing(("x", "y"))
        R = QuotientRing(B, "x^2", "x")
        x, y = B.gens()
        blocks, size = [], 0
        target = rng.randint(1, 3)
        while size < target:
            if target - size >= 2 and rng.random() < 0.4:
                blocks.append(Matrix(B, [[0, 1], [0, 0]]))
                size += 2
            else:
                blocks.append(Matrix(B, [[x]]))
                size += 1
        alpha = beta = Matrix.diag_blocks(blocks)
        xr = y
    else:
        B = PolyRing(("x", "y", "z"))
        R = QuotientRing(B, "x*y")
        x, y, z = B.gens()
        r = rng.random()
        if r < 0.6:
            alpha = beta = Matrix(B, [[0, x], [y, 0]])
        elif r < 0.85:
            alpha = beta = Matrix(B, [[0, 1], [0, 0]])
        else:
            alpha, beta = Matrix(B, [[x, 0], [0, y]]), Matrix(B, [[y, 0], [0, x]])
        xr = z
    n = alpha.nrows
    U = random_unimodular(B, n, rng)
    Ui = U.inverse_unimodular()
    alpha = (U @ alpha @ Ui).normal_form(R)
    beta = (U @ beta @ Ui).normal_form(R)
    Zg = [alpha.col(j) for j in range(n)] + [tuple(xr if k == i else B.zero for k in range(n)) for i in range(n)]
    extra = []
    for _ in range(rng.randint(0, 2)):
        extra.append(tuple(random_poly(B, rng, terms=2, max_deg=1, coeff=2) for _ in range(n)))
    return R, alpha, beta, xr, Zg + extra
