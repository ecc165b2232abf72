"""Gröbner bases for ideals and submodules of free modules.

Everything runs through one Buchberger implementation on vectors in a free
module P^n over a polynomial ring P, with a position-over-term order in which
position 0 is the largest.  Ideals are the rank-1 case.  Computations over a
quotient ring R = P/(f) are lifted to P by adjoining f (or f*e_i).

Cofactor certificates and syzygies both come from the same trick: append
unit vectors in extra low positions, compute a basis, and read off the
low-position parts.
"""
from __future__ import annotations

import heapq

from .matrix import Matrix
from .poly import Poly, PolyRing, QuotientRing, RingMismatchError

__all__ = [
    "ResourceLimitError", "DEFAULT_SPAIR_BUDGET",
    "Ideal", "Submodule", "buchberger", "ideal_membership", "ideal_contains",
    "ideal_equal", "minors_ideal", "fitting_ideal", "saturation_bounded_contains",
    "module_gb", "submodule_membership", "submodule_contains", "submodule_equal",
    "kernel_of_map", "image_of_map", "syzygies",
]

DEFAULT_SPAIR_BUDGET = 50_000


class ResourceLimitError(RuntimeError):
    """Raised when a Gröbner computation exceeds its S-pair budget."""


def _poly_ring(ring):
    return ring.base if isinstance(ring, QuotientRing) else ring


# ---------------------------------------------------------------------------
# the engine: vectors are dicts {(position, exponents): coefficient}

def _vec(polys):
    v = {}
    for i, p in enumerate(polys):
        for e, c in p._t.items():
            v[(i, e)] = c
    return v


def _unvec(v, rank, ring, lo=0):
    parts = [dict() for _ in range(rank)]
    for (i, e), c in v.items():
        if lo <= i < lo + rank:
            parts[i - lo][e] = c
    return tuple(Poly(ring, t) for t in parts)


class _Engine:
    def __init__(self, ring, budget=None):
        self.ring = ring
        self.key = ring.sort_key
        self.budget = DEFAULT_SPAIR_BUDGET if budget is None else budget

    def lead(self, v):
        key = self.key
        return max(v, key=lambda pe: (-pe[0], key(pe[1])))

    def reduce(self, v, basis, full=True):
        """Remainder of v modulo basis (a dict pos -> list of (lm, lc, vec))."""
        work = dict(v)
        rem = {}
        key = self.key
        while work:
            pos, e = max(work, key=lambda pe: (-pe[0], key(pe[1])))
            c = work[(pos, e)]
            for lm, lc, g in basis.get(pos, ()):
                if all(a <= b for a, b in zip(lm, e)):
                    q = tuple(a - b for a, b in zip(e, lm))
                    m = c / lc
                    for (gp, ge), gc in g.items():
                        k = (gp, tuple(a + b for a, b in zip(ge, q)))
                        nv = work.get(k)
                        nv = -m * gc if nv is None else nv - m * gc
                        if nv:
                            work[k] = nv
                        else:
                            work.pop(k, None)
                    break
            else:
                if not full:
                    rem.update(work)
                    return rem
                rem[(pos, e)] = c
                del work[(pos, e)]
        return rem

    def groebner(self, vecs, rank1=False):
        key = self.key
        elems = []  # (pos, lm, lc, vec)
        basis = {}
        pending = {}
        heap = []
        counter = 0
        spairs = 0

        def add(v):
            nonlocal counter
            pos, lm = self.lead(v)
            lc = v[(pos, lm)]
            k = len(elems)
            # chain criterion on pending pairs
            for (i, j), lcm in list(pending.items()):
                if elems[i][0] != pos or not all(a <= b for a, b in zip(lm, lcm)):
                    continue
                lik = tuple(map(max, elems[i][1], lm))
                ljk = tuple(map(max, elems[j][1], lm))
                if lik != lcm and ljk != lcm:
                    del pending[(i, j)]
            elems.append((pos, lm, lc, v))
            basis.setdefault(pos, []).append((lm, lc, v))
            for i, (p2, lm2, _, _) in enumerate(elems[:-1]):
                if p2 != pos:
                    continue
                if rank1 and all(a == 0 or b == 0 for a, b in zip(lm, lm2)):
                    continue
                lcm = tuple(map(max, lm, lm2))
                pending[(i, k)] = lcm
                counter += 1
                heapq.heappush(heap, (sum(lcm), counter, i, k))

        for v in vecs:
            if not v:
                continue
            r = self.reduce(v, basis)
            if r:
                add(r)
        while heap:
            _, _, i, j = heapq.heappop(heap)
            lcm = pending.pop((i, j), None)
            if lcm is None:
                continue
            spairs += 1
            if spairs > self.budget:
                raise ResourceLimitError(f"S-pair budget of {self.budget} exceeded")
            pos, lm1, lc1, v1 = elems[i]
            _, lm2, lc2, v2 = elems[j]
            q1 = tuple(a - b for a, b in zip(lcm, lm1))
            q2 = tuple(a - b for a, b in zip(lcm, lm2))
            s = {}
            for (gp, ge), gc in v1.items():
                s[(gp, tuple(a + b for a, b in zip(ge, q1)))] = gc / lc1
            for (gp, ge), gc in v2.items():
                k = (gp, tuple(a + b for a, b in zip(ge, q2)))
                nv = s.get(k)
                nv = -gc / lc2 if nv is None else nv - gc / lc2
                if nv:
                    s[k] = nv
                else:
                    s.pop(k, None)
            if not s:
                continue
            r = self.reduce(s, basis)
            if r:
                add(r)
        return self._reduced([(p, lm, lc, v) for p, lm, lc, v in elems])

    def _reduced(self, elems):
        # drop elements whose leading term is divisible by another one
        keep = []
        for k, (pos, lm, lc, v) in enumerate(elems):
            redundant = False
            for k2, (p2, lm2, _, _) in enumerate(elems):
                if k2 == k or p2 != pos:
                    continue
                if all(a <= b for a, b in zip(lm2, lm)) and (lm2 != lm or k2 < k):
                    redundant = True
                    break
            if not redundant:
                keep.append((pos, lm, lc, v))
        out = []
        for k, (pos, lm, lc, v) in enumerate(keep):
            others = {}
            for k2, (p2, lm2, lc2, v2) in enumerate(keep):
                if k2 != k:
                    others.setdefault(p2, []).append((lm2, lc2, v2))
            r = self.reduce(v, others)
            inv = self.ring.field.one / r[(pos, lm)]
            out.append({t: c * inv for t, c in r.items()})
        key = self.key
        out.sort(key=lambda v: (lambda pe: (-pe[0], key(pe[1])))(self.lead(v)), reverse=True)
        return out

    @staticmethod
    def index(vecs, lead):
        basis = {}
        for v in vecs:
            pos, lm = lead(v)
            basis.setdefault(pos, []).append((lm, v[(pos, lm)], v))
        return basis


# ---------------------------------------------------------------------------
# ideals

class Ideal:
    """Ideal of a PolyRing or QuotientRing given by generators.

    Generators are stored as polynomials of the underlying polynomial ring;
    over a quotient ring they are normal-formed and zeros are dropped.
    ``gb``, when set, is a reduced Gröbner basis of the lifted ideal.
    """

    def __init__(self, ring, gens, gb=None):
        self.ring = ring
        P = _poly_ring(ring)
        out = []
        for g in gens:
            g = P(g)
            if isinstance(ring, QuotientRing):
                g = ring.normal_form(g)
            if not g.is_zero():
                out.append(g)
        self.gens = tuple(out)
        self.gb = None if gb is None else tuple(gb)

    @property
    def poly_ring(self):
        return _poly_ring(self.ring)

    def lifted_gens(self):
        if isinstance(self.ring, QuotientRing):
            return self.gens + (self.ring.f,)
        return self.gens

    def groebner_basis(self, budget=None):
        return self.gb if self.gb is not None else buchberger(self, budget).gb

    def is_zero(self):
        return not self.gens

    def is_unit(self):
        return any(g.is_constant() and not g.is_zero() for g in self.groebner_basis())

    def __contains__(self, p):
        return ideal_membership(p, self, certificate=False)[0]

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.gens]})"


def buchberger(I, budget=None):
    """Return a copy of ``I`` carrying its reduced Gröbner basis."""
    P = I.poly_ring
    eng = _Engine(P, budget)
    vecs = eng.groebner([_vec([g]) for g in I.lifted_gens()], rank1=True)
    gb = [_unvec(v, 1, P)[0] for v in vecs]
    return Ideal(I.ring, I.gens, gb=gb)


def _ideal_basis(I, eng):
    gb = I.groebner_basis(eng.budget)
    return eng.index([_vec([g]) for g in gb], eng.lead)


def ideal_membership(p, I, certificate=True, budget=None):
    """(member?, cofactors).  Cofactors c satisfy p = sum c_k * lifted_gens[k]."""
    P = I.poly_ring
    p = P(p)
    eng = _Engine(P, budget)
    if eng.reduce(_vec([p]), _ideal_basis(I, eng)):
        return False, None
    if not certificate:
        return True, None
    gens = I.lifted_gens()
    return True, _certificate([(g,) for g in gens], (p,), P, eng)


def _certificate(gens, v, P, eng):
    n, K = len(v), len(gens)
    zero = P._zero_exp
    one = P.field.one
    aug = []
    for k, g in enumerate(gens):
        d = _vec(g)
        d[(n + k, zero)] = one
        aug.append(d)
    basis = eng.index(eng.groebner(aug), eng.lead)
    r = eng.reduce(_vec(v), basis)
    if any(pos < n for pos, _ in r):
        raise AssertionError("membership certificate failed to reconstruct")
    return tuple(-c for c in _unvec(r, K, P, lo=n))


def ideal_contains(I, J, budget=None):
    """True iff every generator of J lies in I."""
    if _poly_ring(I.ring) != _poly_ring(J.ring):
        raise RingMismatchError("ideals live in different rings")
    eng = _Engine(I.poly_ring, budget)
    basis = _ideal_basis(I, eng)
    return all(not eng.reduce(_vec([g]), basis) for g in J.lifted_gens())


def ideal_equal(I, J, budget=None):
    return ideal_contains(I, J, budget) and ideal_contains(J, I, budget)


def minors_ideal(M, j, ring=None):
    """Ideal generated by the j x j minors of M (j = 0 gives the unit ideal)."""
    ring = ring or M.ring
    if j < 0 or j > min(M.shape):
        if j > 0 and min(M.shape) == 0:
            return Ideal(ring, [])
        raise ValueError(f"minor size {j} out of range for a {M.shape} matrix")
    uniq = []
    seen = set()
    for m in M.minors(j):
        if m.is_zero():
            continue
        mm = m.monic()
        if mm not in seen:
            seen.add(mm)
            uniq.append(mm)
    return Ideal(ring, uniq)


def fitting_ideal(P, i, R=None):
    """Fitt_i of the module with presentation P (rows = generators, columns =
    relations): the ideal of (n-i)-minors, unit for i >= n, zero when n-i
    exceeds the number of relations."""
    R = R or P.ring
    if i < 0:
        raise ValueError("Fitting index must be non-negative")
    n, m = P.shape
    if i >= n:
        return Ideal(R, [_poly_ring(R).one])
    if n - i > m:
        return Ideal(R, [])
    return minors_ideal(P, n - i, R)


def saturation_bounded_contains(I, J, t="t", l_max=8, budget=None):
    """Smallest 0 <= l <= l_max with t^l * J contained in I, as (found, l)."""
    P = I.poly_ring
    tv = P.gen(t)
    eng = _Engine(P, budget)
    basis = _ideal_basis(I, eng)
    gens = [P(g) for g in J.lifted_gens()]
    for l in range(l_max + 1):
        tl = tv ** l
        if all(not eng.reduce(_vec([tl * g]), basis) for g in gens):
            return True, l
    return False, None


# ---------------------------------------------------------------------------
# submodules of free modules

class Submodule:
    """Submodule of ring^rank generated by column vectors (tuples of polys)."""

    def __init__(self, ring, rank, gens, gb=None):
        self.ring = ring
        self.rank = rank
        P = _poly_ring(ring)
        out = []
        for g in gens:
            g = tuple(P(a) for a in g)
            if len(g) != rank:
                raise ValueError(f"generator of length {len(g)} in a rank-{rank} module")
            if isinstance(ring, QuotientRing):
                g = tuple(ring.normal_form(a) for a in g)
            if any(not a.is_zero() for a in g):
                out.append(g)
        self.gens = tuple(out)
        self.gb = None if gb is None else tuple(gb)

    @property
    def poly_ring(self):
        return _poly_ring(self.ring)

    def lifted_gens(self):
        if isinstance(self.ring, QuotientRing):
            P, f = self.poly_ring, self.ring.f
            extra = tuple(tuple(f if k == i else P.zero for k in range(self.rank)) for i in range(self.rank))
            return self.gens + extra
        return self.gens

    def groebner_basis(self, budget=None):
        return self.gb if self.gb is not None else module_gb(self, budget).gb

    def is_zero(self):
        return not self.gens

    def matrix(self):
        """Generators as the columns of a rank x ngens matrix."""
        return Matrix.from_columns(self.poly_ring, self.gens, self.rank)

    def __contains__(self, v):
        return submodule_membership(v, self, certificate=False)[0]

    def __repr__(self):
        return f"Submodule(rank={self.rank}, gens={[[str(a) for a in g] for g in self.gens]})"


def module_gb(S, budget=None):
    P = S.poly_ring
    eng = _Engine(P, budget)
    vecs = eng.groebner([_vec(g) for g in S.lifted_gens()], rank1=S.rank == 1)
    return Submodule(S.ring, S.rank, S.gens, gb=[_unvec(v, S.rank, P) for v in vecs])


def _module_basis(S, eng):
    return eng.index([_vec(g) for g in S.groebner_basis(eng.budget)], eng.lead)


def submodule_membership(v, S, certificate=True, budget=None):
    """(member?, cofactors) with v = sum c_k * lifted_gens[k]."""
    P = S.poly_ring
    v = tuple(P(a) for a in v)
    if len(v) != S.rank:
        raise ValueError("vector length does not match the ambient rank")
    eng = _Engine(P, budget)
    if eng.reduce(_vec(v), _module_basis(S, eng)):
        return False, None
    if not certificate:
        return True, None
    return True, _certificate(S.lifted_gens(), v, P, eng)


def submodule_contains(A, B, budget=None):
    """True iff B is contained in A."""
    if A.rank != B.rank:
        raise ValueError("ambient ranks differ")
    eng = _Engine(A.poly_ring, budget)
    basis = _module_basis(A, eng)
    return all(not eng.reduce(_vec(g), basis) for g in B.lifted_gens())


def submodule_equal(A, B, budget=None):
    return submodule_contains(A, B, budget) and submodule_contains(B, A, budget)


def syzygies(vectors, rank, P, budget=None):
    """Generators of {c : sum c_j v_j = 0} over the polynomial ring P."""
    eng = _Engine(P, budget)
    m = len(vectors)
    zero = P._zero_exp
    one = P.field.one
    aug = []
    for j, v in enumerate(vectors):
        d = _vec(v)
        d[(rank + j, zero)] = one
        aug.append(d)
    out = []
    for g in eng.groebner(aug):
        pos, _ = eng.lead(g)
        if pos >= rank:
            out.append(_unvec(g, m, P, lo=rank))
    return out


def kernel_of_map(Mx, R=None, budget=None):
    """Kernel of the map R^cols -> R^rows given by Mx, as a Submodule."""
    R = R or Mx.ring
    P = _poly_ring(R)
    if Mx.ring != P:
        Mx = Mx.lift(P)
    n, m = Mx.shape
    cols = [c for c in Mx.columns()]
    if isinstance(R, QuotientRing):
        cols = [tuple(R.normal_form(a) for a in c) for c in cols]
        f = R.f
        cols += [tuple(f if k == i else P.zero for k in range(n)) for i in range(n)]
    syz = syzygies(cols, n, P, budget)
    return Submodule(R, m, [s[:m] for s in syz])


def image_of_map(Mx, R=None):
    R = R or Mx.ring
    return Submodule(R, Mx.nrows, Mx.columns())
