"""Acceptance gate: the nine end-to-end criteria.

Each test prints one ``criterion N: PASS|FAIL`` line (visible even under
pytest's output capture) and enforces the stated time limit.  Running this
file directly prints the same lines without pytest.
"""
import json
import random
import sys
import time
from pathlib import Path

import pytest
import sympy

sys.path.insert(0, str(Path(__file__).parent))

from helpers import (  # noqa: E402
    eval_mod, homogeneous_member_bruteforce, random_point, random_poly, zwara_instance,
)
from degenlab import (  # noqa: E402
    QQ, QQI, CMClass, Ideal, Matrix, PolyRing, PreconditionError, QuotientRing,
    Submodule, buchberger, catalog_matrix, corollary45_family, double_sharp,
    extension_degeneration, fitting_screen, ideal_membership, lift_witness_doublesharp,
    oracle_degenerates, parse_poly, prop56_image, quotient_transfer, render,
    screen_necessary, sharp, smith_normal_form, thm31_witness, verify_exactness,
    verify_witness, zwara_construct,
)
from degenlab.catalog import catalog_ideal, dim1_ring, identify_dim1_ideal  # noqa: E402
from degenlab.degeneration import presentation_of, sequence_nilpotency  # noqa: E402

DATA = Path(__file__).parent / "data"
PAIRS = [(a, b) for a in range(13) for b in range(a, 13, 2)]


def _say(line, capsys=None):
    if capsys is not None:
        with capsys.disabled():
            print(line)
    else:
        print(line)


class Gate:
    """Times a criterion and prints its verdict line."""

    def __init__(self, number, title, limit, capsys=None):
        self.number, self.title, self.limit, self.capsys = number, title, limit, capsys

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        dt = time.perf_counter() - self.t0
        ok = exc_type is None and dt < self.limit
        why = "" if exc_type is None else f" ({exc_type.__name__}: {exc})"
        _say(f"criterion {self.number}: {'PASS' if ok else 'FAIL'}  {self.title}  "
             f"[{dt:.2f}s / limit {self.limit}s]{why}", self.capsys)
        if exc_type is None:
            assert dt < self.limit, f"criterion {self.number} took {dt:.2f}s"
        return False


def _strip(w):
    w2 = thm31_witness(w.metadata["a"], w.metadata["b"], samples=())
    assert not w2.certificates
    return w2


def test_criterion_1_witness_suite(capsys):
    with Gate(1, "one-parameter witnesses for 0 <= a <= b <= 12, a = b mod 2", 10, capsys):
        for a, b in PAIRS:
            w = thm31_witness(a, b)
            assert (w.xi @ w.xi).is_zero()
            assert w.fiber(0) == w.nu
            for witness in (w, _strip(w)):  # explicit certificates, then SNF-built ones
                rep = verify_witness(witness)
                assert rep.verdict == "valid", (a, b, rep.checks)
                fibers = [c for c in rep.checks if c["check"].startswith("generic_fiber")]
                assert len(fibers) == 3
                assert all("exact conjugation certificate" in c["detail"] for c in fibers)
            label = "R" if a == 0 else f"(x,y^{a})"
            assert any(label in c["detail"] for c in rep.checks if c["check"] == "generic_fiber_1")


def _cls(n):
    return CMClass(1, "free") if n == 0 else CMClass(1, "idealA", n)


def test_criterion_2_oracle_parity(capsys):
    with Gate(2, "oracle vs (a <= b and a = b mod 2); sequence-family outputs obey it", 1, capsys):
        cases = 0
        for a in range(13):
            for b in range(13):
                expect = "yes" if a <= b and (b - a) % 2 == 0 else "no"
                assert oracle_degenerates(_cls(a), _cls(b)) == expect, (a, b)
                cases += 1
        assert cases == 169
        R = dim1_ring()
        P = R.base
        alpha = Matrix(P, [[P.gen("x")]])
        for i in range(0, 7):
            for j in range(0, i + 1):
                res = corollary45_family(R, alpha, P.gen("y"), i, j)
                src, tgt = identify_dim1_ideal(res.M), identify_dim1_ideal(res.N)
                assert (src.exponent, tgt.exponent) == (j, 2 * i - j)
                assert oracle_degenerates(src, tgt) == "yes"


def test_criterion_3_screen(capsys):
    with Gate(3, "trace/det residuals vanish and j=1 gives l <= 2, l' = 0", 5, capsys):
        for a, b in PAIRS:
            w = thm31_witness(a, b)
            rep = screen_necessary(w.xi, w.mu, "t", j_max=1)
            assert rep.trace_residual == "0" and rep.det_residual == "0"
            (m,) = rep.minors
            assert m["found"] and m["l"] <= 2 and m["l_prime"] == 0, (a, b, m)
            assert rep.verdict == "consistent"


def test_criterion_4_exactness_suite(capsys):
    with Gate(4, "50 randomized short exact sequences are exact with nilpotent eta", 60, capsys):
        rng = random.Random(20240611)
        usable = 0
        for k in range(50):
            inst = zwara_instance(rng, "x2" if k % 2 == 0 else "xy")
            try:
                seq = zwara_construct(*inst)
            except PreconditionError:
                continue
            usable += 1
            rep = verify_exactness(seq)
            assert rep.verdict == "exact", (k, rep.checks)
            nil, idx = sequence_nilpotency(seq)
            assert nil, k
        assert usable >= 40


def test_criterion_5_knoerrer(capsys):
    with Gate(5, "sharp / double sharp identities and the witness lift-transfer chain", 20, capsys):
        classes = [CMClass(1, "free"), CMClass(1, "rmodx")] + [CMClass(1, "idealA", n) for n in range(1, 9)]
        for c in classes:
            mr = catalog_matrix(c, QQI)
            s, d = sharp(mr), double_sharp(mr)
            n = s.size
            u = s.s_ring.gen("u")
            U, V = d.s_ring.gen("u"), d.s_ring.gen("v")
            assert s.mu @ s.mu == Matrix.scalar(s.s_ring, n, -(u * u))
            assert d.mu @ d.mu == Matrix.scalar(d.s_ring, n, -(U * U + V * V))
            assert d.mu.subs("v", 0) == s.mu
        for a, b in PAIRS:
            w = thm31_witness(a, b, QQI)
            W = lift_witness_doublesharp(w)
            rep = verify_witness(W)
            assert rep.verdict == "valid", (a, b, rep.checks)
            for c, P in W.certificates.items():
                assert P == Matrix.diag_blocks([w.certificates[c]] * 2).lift(W.s_ring)
                assert W.fiber(c) @ P == P @ W.mu
            Wv = quotient_transfer(W, "v")
            assert Wv.mu == sharp(catalog_like(w.mu, w.ring)).mu
            assert Wv.nu == sharp(catalog_like(w.nu, w.ring)).mu
            assert verify_witness(Wv).verdict == "valid"
            Wu = quotient_transfer(Wv, "u")
            assert Wu.mu == Matrix.diag_blocks([w.mu, -w.mu])
            assert Wu.nu == Matrix.diag_blocks([w.nu, -w.nu])
            assert verify_witness(Wu).verdict == "valid"


def catalog_like(mu, R):
    from degenlab import MatrixRepresentation
    return MatrixRepresentation(R, mu)


def test_criterion_6_prop56(capsys):
    with Gate(6, "Knoerrer image of (alpha -z^h; 0 alpha) equals the block form after swaps", 5, capsys):
        S = PolyRing(("x0", "z"), "grevlex", QQI)
        alpha = Matrix(S, [[S.gen("x0")]])
        for h in (1, 2, 3):
            d = prop56_image(alpha, S.gen("x0") ** 2, S.gen("z"), h)
            assert d.ops, "no recorded operations"
            assert d.transformed == d.target
            assert d.knoerrer_presentation != d.target


def test_criterion_7_fitting(capsys):
    with Gate(7, "Fitting screen (x,y) vs (x,y^3) over k[x,y]/(x^2)", 5, capsys):
        R = dim1_ring()
        p1 = presentation_of(catalog_ideal(CMClass(1, "idealA", 1), R))
        p3 = presentation_of(catalog_ideal(CMClass(1, "idealA", 3), R))
        fwd = fitting_screen(p1, p3, R)
        back = fitting_screen(p3, p1, R)
        assert fwd.verdict == "consistent"
        assert back.verdict == "obstructed"
        assert all(e["contained"] for e in fwd.fitting)
        assert any(e["certificates"] for e in fwd.fitting)
        P = R.base
        # re-multiply one certificate: generators of Fitt_1((x,y^3)) from those of Fitt_1((x,y))
        from degenlab import fitting_ideal
        FM, FN = fitting_ideal(p1, 1, R), fitting_ideal(p3, 1, R)
        for g in FN.gens:
            ok, cof = ideal_membership(g, FM)
            assert ok
            assert sum((c * h for c, h in zip(cof, FM.lifted_gens())), P.zero) == g


def test_criterion_8_extension(capsys):
    with Gate(8, "0 -> q -> p+r -> q -> 0 over k[x,y,z]/(x^3+y^2+z^2) is exact", 30, capsys):
        d = json.loads((DATA / "extension_maps.json").read_text())
        R = QuotientRing.from_descriptor(d["ring"])
        B = R.base

        def sub(gs):
            return [tuple(parse_poly(a, B) for a in g) for g in gs]
        p, q, r = sub(d["p"]), sub(d["q"]), sub(d["r"])
        z = B.zero
        pr = Submodule(R, 2, [(g[0], z) for g in p] + [(z, g[0]) for g in r])
        qq = Submodule(R, 1, q)
        incl = Matrix.from_json(d["inclusion"], B)
        proj = Matrix.from_json(d["projection"], B)
        rec = extension_degeneration(R, qq, pr, qq, incl, proj, ("q", "p+r", "q"))
        assert rec.exact, rec.checks
        assert (rec.source, rec.target, rec.provenance) == ("p+r", "q+q", "extension")


def test_criterion_9_properties(capsys):
    with Gate(9, "canonical forms, GB membership vs brute force, SNF identities", 60, capsys):
        rng = random.Random(99)
        ring = PolyRing(("x", "y", "z"))
        for _ in range(1000):
            p = random_poly(ring, rng, terms=5, max_deg=4, coeff=9)
            q = parse_poly(render(p), ring)
            assert q == p
            for _ in range(5):
                pt = random_point(ring, rng)
                assert eval_mod(q, pt) == eval_mod(p, pt)

        for k in range(50):
            gens = []
            for _ in range(rng.randint(1, 3)):
                d = rng.randint(1, 2)
                g = ring.zero
                while g.is_zero():
                    g = _random_homogeneous(ring, rng, d)
                gens.append(g)
            I = buchberger(Ideal(ring, gens))
            for deg in (3, 4):
                member = ring.zero
                for g in gens:
                    member = member + _random_homogeneous(ring, rng, deg - g.total_degree()) * g
                other = _random_homogeneous(ring, rng, deg)
                for f in (member, other):
                    got = ideal_membership(f, I, certificate=False)[0]
                    assert got == homogeneous_member_bruteforce(f, gens, ring, deg), (gens, f)

        Y = PolyRing(("y",))
        y = sympy.Symbol("y")
        for k in range(200):
            n, m = rng.choice([(2, 2), (3, 3)])
            M = Matrix(Y, [[random_poly(Y, rng, terms=2, max_deg=3, coeff=4) for _ in range(m)] for _ in range(n)])
            D, P, Q = smith_normal_form(M)
            assert P @ M @ Q == D
            for T in (P, Q):
                dt = T.det()
                assert dt.is_constant() and not dt.is_zero()
            diag = [D[i, i] for i in range(min(n, m))]
            assert all(D[i, j].is_zero() for i in range(n) for j in range(m) if i != j)
            for a, b in zip(diag, diag[1:]):
                if not b.is_zero():
                    assert not a.is_zero() and sympy.rem(_sp(b, y), _sp(a, y), y) == 0
            entries = [_sp(e, y) for r in M.rows for e in r]
            g = sympy.gcd_list(entries) if any(entries) else sympy.Integer(0)
            if g != 0:
                assert sympy.simplify(_sp(diag[0], y) - sympy.Poly(g, y).monic().as_expr()) == 0


def _sp(p, y):
    from helpers import to_sympy
    return sympy.expand(to_sympy(p, [y]))


def _random_homogeneous(ring, rng, d):
    import itertools
    p = ring.zero
    mons = [e for e in itertools.product(range(d + 1), repeat=ring.nvars) if sum(e) == d]
    for e in rng.sample(mons, min(len(mons), rng.randint(1, 3))):
        p = p + ring.monomial(e, rng.randint(-3, 3))
    return p


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn(None)
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
