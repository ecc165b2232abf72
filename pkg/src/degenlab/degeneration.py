"""Degeneration witnesses, necessary-condition screens and exact-sequence
constructions.

A witness is a matrix ``xi`` over S[t] satisfying the defining relation of R;
its fiber at t = 0 must be the target ``nu`` and its fibers at nonzero
scalars must be conjugate to the source ``mu``.  Modules in the sequence
constructions are submodules of a free module L = R^n given by generators.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .ideal import (
    Ideal, ResourceLimitError, Submodule, fitting_ideal, ideal_contains,
    ideal_membership, image_of_map, kernel_of_map, minors_ideal,
    saturation_bounded_contains, submodule_contains, submodule_equal,
    submodule_membership, syzygies,
)
from .matfac import (
    mr_residual, recognize_dim1, recognize_dim2, validate_mr, zeta_eta,
)
from .matrix import Matrix
from .poly import PolyRing, QuotientRing, substitute

__all__ = [
    "PreconditionError", "DegenerationWitness", "WitnessReport", "verify_witness",
    "ScreenReport", "screen_necessary", "fitting_screen", "ZwaraSequence",
    "ExactnessReport", "zwara_construct", "verify_exactness", "nilpotency_check",
    "ExtensionRecord", "extension_degeneration", "search_extension_maps",
    "corollary44_pair", "corollary45_family", "quotient_transfer",
    "lift_witness_doublesharp", "attach_certificates", "presentation_of",
    "sequence_nilpotency", "Cor45Result", "DEFAULT_SAMPLES",
]

DEFAULT_SAMPLES = (1, 2, 3)


class PreconditionError(ValueError):
    """A construction precondition failed; ``vector`` is a counterexample."""

    def __init__(self, message, vector=None):
        super().__init__(message)
        self.vector = vector


def _fmt_vec(v):
    return None if v is None else [str(a) for a in v]


# ---------------------------------------------------------------------------
# witnesses

@dataclass
class DegenerationWitness:
    """xi over S[t] with F(xi) = 0, xi(0) = nu and xi(c) conjugate to mu.

    ``certificates`` maps a sample c to P over S with xi(c) @ P == P @ mu;
    ``special_conjugation`` optionally gives P0 with xi(0) @ P0 == P0 @ nu.
    """
    ring: QuotientRing
    t_var: str
    xi: Matrix
    mu: Matrix
    nu: Matrix
    provenance: str = "user"
    certificates: dict = field(default_factory=dict)
    special_conjugation: Matrix | None = None
    source: str | None = None
    target: str | None = None
    metadata: dict = field(default_factory=dict)

    @property
    def s_ring(self):
        return self.ring.s_ring

    @property
    def t_ring(self):
        return self.xi.ring

    def fiber(self, c):
        return self.xi.subs(self.t_var, c).lift(self.s_ring)

    def to_json(self):
        d = {"ring": self.ring.descriptor(), "t_var": self.t_var,
             "xi": self.xi.to_json(), "mu": self.mu.to_json(), "nu": self.nu.to_json(),
             "provenance": self.provenance}
        if self.certificates:
            d["certificates"] = {str(c): P.to_json() for c, P in sorted(self.certificates.items())}
        if self.special_conjugation is not None:
            d["special_conjugation"] = self.special_conjugation.to_json()
        if self.source:
            d["source"] = self.source
        if self.target:
            d["target"] = self.target
        if self.metadata:
            d["metadata"] = dict(self.metadata)
        return d

    @classmethod
    def from_json(cls, d):
        R = QuotientRing.from_descriptor(d["ring"])
        S = R.s_ring
        t = d.get("t_var", "t")
        T = S.extend(t)
        xi = Matrix.from_json(d["xi"], T)
        mu = Matrix.from_json(d["mu"], S)
        nu = Matrix.from_json(d["nu"], S)
        certs = {int(c): Matrix.from_json(m, S) for c, m in d.get("certificates", {}).items()}
        sc = d.get("special_conjugation")
        return cls(R, t, xi, mu, nu, d.get("provenance", "user"), certs,
                   None if sc is None else Matrix.from_json(sc, S),
                   d.get("source"), d.get("target"), dict(d.get("metadata", {})))


@dataclass
class WitnessReport:
    verdict: str  # valid | invalid | inconclusive
    checks: list

    @property
    def ok(self):
        return self.verdict == "valid"

    def to_json(self):
        return {"verdict": self.verdict, "checks": self.checks}


def _is_unit_det(P):
    d = P.det()
    return d.is_constant() and not d.is_zero()


def _conjugation_check(A, B, P):
    # A @ P == P @ B with P invertible over the polynomial ring
    if P.shape != (A.nrows, A.nrows):
        return False, "certificate has the wrong shape"
    if not _is_unit_det(P):
        return False, "certificate determinant is not a nonzero constant"
    res = A @ P - P @ B
    if not res.is_zero():
        return False, f"intertwining residual {res!r}"
    return True, "exact conjugation certificate"


def _recognize_pair(A, B):
    """Try to exhibit P with A @ P == P @ B by catalog recognition.

    Returns (status, detail, P) with status in {ok, fail, unknown}.
    """
    S = A.ring
    if S.nvars == 1 and (A @ A).is_zero() and (B @ B).is_zero():
        ra, rb = recognize_dim1(A), recognize_dim1(B)
        la = sorted(c.label for c in ra.classes)
        lb = sorted(c.label for c in rb.classes)
        if la != lb:
            return "fail", f"fiber classes {la} differ from source classes {lb}", None
        if ra.exact and rb.exact and ra.model == rb.model:
            P = ra.transform @ rb.transform.inverse_unimodular()
            return "ok", f"classes {la}; conjugation built from recognition", P
        return "unknown", f"classes {la} agree but no exact certificate", None
    if A.shape in ((1, 1), (2, 2)) and S.nvars == 2:
        try:
            ca, cb = recognize_dim2(A), recognize_dim2(B)
        except ValueError as exc:
            return "unknown", f"outside the recognizable families: {exc}", None
        if ca != cb:
            return "fail", f"fiber class {ca.label} differs from source class {cb.label}", None
        return "ok", f"class {ca.label} (invariants agree)", None
    return "unknown", "no recognition procedure for this ring", None


def verify_witness(w, samples=DEFAULT_SAMPLES):
    """Check the relation, the special fiber and the sampled generic fibers."""
    checks = []
    R = w.ring
    status = "valid"

    def record(name, ok, detail):
        nonlocal status
        checks.append({"check": name, "ok": ok, "detail": detail})
        if ok is False:
            status = "invalid"
        elif ok is None and status == "valid":
            status = "inconclusive"

    for name, m in (("source_relation", w.mu), ("target_relation", w.nu)):
        rep = validate_mr(m, R)
        record(name, rep.valid, "F(matrix) = 0" if rep.valid else f"residual {rep.residual!r}")
    res = mr_residual(w.xi, R)
    record("xi_relation", res.is_zero(), "F(xi) = 0 over S[t]" if res.is_zero() else f"residual {res!r}")
    if not res.is_zero():
        return WitnessReport("invalid", checks)

    x0 = w.fiber(0)
    if w.special_conjugation is not None:
        ok, detail = _conjugation_check(x0, w.nu, w.special_conjugation)
        record("special_fiber", ok, detail)
    else:
        record("special_fiber", x0 == w.nu,
               "xi(0) equals nu entrywise" if x0 == w.nu else f"xi(0) = {x0!r} differs from nu")

    field_ = R.field
    for c in samples:
        if not field_(c):
            checks.append({"check": f"generic_fiber_{c}", "ok": True,
                           "detail": "skipped: sample is zero in the coefficient field"})
            continue
        xc = w.fiber(c)
        name = f"generic_fiber_{c}"
        if c in w.certificates:
            ok, detail = _conjugation_check(xc, w.mu, w.certificates[c])
            record(name, ok, detail)
            continue
        state, detail, P = _recognize_pair(xc, w.mu)
        if state == "ok" and P is not None:
            ok, d2 = _conjugation_check(xc, w.mu, P)
            record(name, ok, f"{detail}; {d2}")
        else:
            record(name, {"ok": True, "fail": False, "unknown": None}[state], detail)
    return WitnessReport(status, checks)


# ---------------------------------------------------------------------------
# necessary-condition screens

@dataclass
class ScreenReport:
    verdict: str  # consistent | obstructed | inconclusive
    trace_residual: str | None = None
    det_residual: str | None = None
    minors: list = field(default_factory=list)
    fitting: list = field(default_factory=list)
    obstructions: list = field(default_factory=list)

    def to_json(self):
        return {"verdict": self.verdict, "trace_residual": self.trace_residual,
                "det_residual": self.det_residual, "minors": self.minors,
                "fitting": self.fitting, "obstructions": self.obstructions}


def screen_necessary(xi, mu, t="t", j_max=None, l_max=8, budget=None):
    """Trace, determinant and minor-ideal conditions for xi to degenerate
    from mu; mu is lifted to S[t] as a constant family.

    For each j the report gives the least l with t^l I_j(mu) in I_j(xi) and
    the least l' with t^l' I_j(xi) in I_j(mu).
    """
    if isinstance(mu, Matrix) is False:
        mu = mu.mu
    if xi.shape != mu.shape:
        raise ValueError(f"sizes differ: {xi.shape} vs {mu.shape}")
    T = xi.ring
    m = mu.lift(T)
    rep = ScreenReport("consistent")
    tr = xi.trace() - m.trace()
    dt = xi.det() - m.det()
    rep.trace_residual, rep.det_residual = str(tr), str(dt)
    if not tr.is_zero():
        rep.obstructions.append(f"trace differs by {tr}")
    if not dt.is_zero():
        rep.obstructions.append(f"determinant differs by {dt}")
    j_max = xi.nrows if j_max is None else min(j_max, xi.nrows)
    try:
        for j in range(1, j_max + 1):
            Ix, Im = minors_ideal(xi, j), minors_ideal(m, j)
            f1, l = saturation_bounded_contains(Ix, Im, t, l_max, budget)
            f2, l2 = saturation_bounded_contains(Im, Ix, t, l_max, budget)
            rep.minors.append({"j": j, "l": l, "l_prime": l2, "found": f1 and f2})
            if not f1:
                rep.obstructions.append(f"no t^l I_{j}(mu) inside I_{j}(xi) for l <= {l_max}")
            if not f2:
                rep.obstructions.append(f"no t^l' I_{j}(xi) inside I_{j}(mu) for l' <= {l_max}")
    except ResourceLimitError as exc:
        rep.verdict = "inconclusive"
        rep.obstructions.append(f"resource limit: {exc}")
        return rep
    if rep.obstructions:
        rep.verdict = "obstructed"
    return rep


def presentation_of(sub):
    """Presentation matrix (rows = generators, columns = relations) of the
    module generated by ``sub.gens`` over its ring."""
    R = sub.ring
    G = sub.matrix()
    K = kernel_of_map(G, R)
    P = G.ring
    if not K.gens:
        return Matrix.zeros(P, len(sub.gens), 0)
    return Matrix.from_columns(P, K.gens, len(sub.gens))


def fitting_screen(M_pres, N_pres, R, i_max=4, budget=None):
    """Fitt_i(M) must contain Fitt_i(N) for every i; certificates are the
    membership cofactors of the generators of Fitt_i(N)."""
    rep = ScreenReport("consistent")
    try:
        for i in range(i_max + 1):
            FM, FN = fitting_ideal(M_pres, i, R), fitting_ideal(N_pres, i, R)
            entry = {"i": i, "fitt_M": [str(g) for g in FM.gens], "fitt_N": [str(g) for g in FN.gens],
                     "contained": True, "certificates": []}
            for g in FN.gens:
                ok, cof = ideal_membership(g, FM, certificate=True, budget=budget)
                if not ok:
                    entry["contained"] = False
                    entry["witness"] = str(g)
                    rep.obstructions.append(f"Fitt_{i}: {g} is not in Fitt_{i} of the source")
                    break
                entry["certificates"].append([str(c) for c in cof])
            rep.fitting.append(entry)
    except ResourceLimitError as exc:
        rep.verdict = "inconclusive"
        rep.obstructions.append(f"resource limit: {exc}")
        return rep
    if rep.obstructions:
        rep.verdict = "obstructed"
    return rep


# ---------------------------------------------------------------------------
# the sequence 0 -> Z -> M + Z -> N -> 0

def _nf_vec(R, v):
    P = R.base
    return tuple(R.normal_form(P(a)) for a in v)


def _nf_mat(R, M):
    return M.lift(R.base).normal_form(R)


def _unit(P, n, i):
    return tuple(P.one if k == i else P.zero for k in range(n))


def _first_missing(A, B):
    """A generator of B outside A, or None."""
    for g in B.gens:
        if not submodule_membership(g, A, certificate=False)[0]:
            return g
    return None


def _check_two_periodic(R, alpha, beta):
    for a, b, name in ((alpha, beta, "Im alpha = Ker beta"), (beta, alpha, "Im beta = Ker alpha")):
        im, ker = image_of_map(a, R), kernel_of_map(b, R)
        v = _first_missing(ker, im)
        if v is not None:
            raise PreconditionError(f"{name} fails: image vector outside the kernel", v)
        v = _first_missing(im, ker)
        if v is not None:
            raise PreconditionError(f"{name} fails: kernel vector outside the image", v)


def _check_regular(R, x, n):
    K = kernel_of_map(Matrix.scalar(R.base, n, x), R)
    if K.gens:
        raise PreconditionError("x is not regular on L", K.gens[0])


@dataclass
class ZwaraSequence:
    """0 -> Z -> M + Z -> N -> 0 inside L + L with L = R^n.

    ``decompositions[l] = (s, t)`` writes the l-th generator of Z as
    alpha(s) + x*t; eta sends it to beta(t).
    """
    ring: QuotientRing
    rank: int
    alpha: Matrix
    beta: Matrix
    x: object
    Z: Submodule
    M: Submodule
    N: Submodule
    decompositions: list
    eta_images: list

    @property
    def pi(self):
        P = self.ring.base
        return Matrix.block([[self.beta, Matrix.scalar(P, self.rank, -self.x)]])

    def theta_eta(self):
        """Columns (z_l ; eta(z_l)) in L + L."""
        cols = [tuple(z) + tuple(e) for z, e in zip(self.Z.gens, self.eta_images)]
        return Matrix.from_columns(self.ring.base, cols, 2 * self.rank)

    def eta_matrix(self):
        """E with Zmat @ E == eta(Zmat) modulo f (from membership certificates)."""
        k = len(self.Z.gens)
        cols = []
        for e in self.eta_images:
            ok, cof = submodule_membership(e, self.Z)
            if not ok:
                raise PreconditionError("eta leaves Z", e)
            cols.append(cof[:k])
        return Matrix.from_columns(self.ring.base, cols, k)

    def to_json(self):
        def sub(s):
            return {"ambient_rank": s.rank, "gens": [[str(a) for a in g] for g in s.gens]}
        return {"ring": self.ring.descriptor(), "rank": self.rank,
                "alpha": self.alpha.to_json(), "beta": self.beta.to_json(), "x": str(self.x),
                "Z": sub(self.Z), "M": sub(self.M), "N": sub(self.N),
                "decompositions": [[_fmt_vec(s), _fmt_vec(t)] for s, t in self.decompositions],
                "eta_images": [_fmt_vec(e) for e in self.eta_images]}

    @classmethod
    def from_json(cls, d):
        R = QuotientRing.from_descriptor(d["ring"])
        P = R.base
        n = d["rank"]

        def sub(s):
            return Submodule(R, s["ambient_rank"], [[P(a) for a in g] for g in s["gens"]])
        Z = sub(d["Z"])
        return cls(R, n, Matrix.from_json(d["alpha"], P), Matrix.from_json(d["beta"], P), P(d["x"]),
                   Z, sub(d["M"]), sub(d["N"]),
                   [(tuple(P(a) for a in s), tuple(P(a) for a in t)) for s, t in d["decompositions"]],
                   [tuple(P(a) for a in e) for e in d["eta_images"]])


def zwara_construct(R, alpha, beta, x, M_gens, check=True):
    """Build 0 -> Z -> M + Z -> N -> 0 with Z = alpha(L) + xL and
    N = beta(M) + xZ, after checking the preconditions."""
    P = R.base
    alpha, beta = _nf_mat(R, alpha), _nf_mat(R, beta)
    x = R.normal_form(P(x))
    n = alpha.nrows
    if alpha.shape != (n, n) or beta.shape != (n, n):
        raise ValueError("alpha and beta must be square of the same size")
    M = M_gens if isinstance(M_gens, Submodule) else Submodule(R, n, M_gens)
    zero = tuple(P.zero for _ in range(n))
    zgens, decomp = [], []
    for j in range(n):
        zgens.append(alpha.col(j))
        decomp.append((_unit(P, n, j), zero))
    for i in range(n):
        zgens.append(tuple(x if k == i else P.zero for k in range(n)))
        decomp.append((zero, _unit(P, n, i)))
    keep = [k for k, g in enumerate(zgens) if any(not R.normal_form(a).is_zero() for a in g)]
    zgens = [zgens[k] for k in keep]
    decomp = [decomp[k] for k in keep]
    Z = Submodule(R, n, zgens)
    if check:
        _check_two_periodic(R, alpha, beta)
        _check_regular(R, x, n)
        for j in range(n):
            if not submodule_membership(beta.col(j), Z, certificate=False)[0]:
                raise PreconditionError("beta(L) is not contained in Z", beta.col(j))
        for g in Z.gens:
            if not submodule_membership(g, M, certificate=False)[0]:
                raise PreconditionError("Z is not contained in M", g)
    eta = [_nf_vec(R, beta.apply(t)) for _, t in decomp]
    ngens = [_nf_vec(R, beta.apply(m)) for m in M.gens] + [_nf_vec(R, tuple(x * a for a in z)) for z in Z.gens]
    N = Submodule(R, n, ngens)
    return ZwaraSequence(R, n, alpha, beta, x, Z, M, N, decomp, eta)


@dataclass
class ExactnessReport:
    verdict: str  # exact | not_exact | inconclusive
    checks: dict

    @property
    def ok(self):
        return self.verdict == "exact"

    def to_json(self):
        return {"verdict": self.verdict, "checks": self.checks}


def verify_exactness(seq, pi=None, budget=None):
    """Well-definedness of eta, injectivity, pi o (theta; eta) = 0,
    surjectivity onto N and Ker pi|_(M+Z) inside Im (theta; eta)."""
    R = seq.ring
    P = R.base
    n = seq.rank
    pi = seq.pi if pi is None else pi
    checks = {}
    try:
        Zmat = seq.Z.matrix()
        TE = seq.theta_eta()
        E = Matrix.from_columns(P, seq.eta_images, n)
        rel = kernel_of_map(Zmat, R, budget)
        checks["eta_well_defined"] = all(
            all(R.normal_form(a).is_zero() for a in E.apply(c)) for c in rel.gens)
        kte = kernel_of_map(TE, R, budget)
        checks["injective"] = all(all(R.normal_form(a).is_zero() for a in Zmat.apply(c)) for c in kte.gens)
        checks["composition_zero"] = _nf_mat(R, pi @ TE).is_zero()
        G = Matrix.diag_blocks([seq.M.matrix(), Zmat]) if seq.M.gens else Matrix.block([[Matrix.zeros(P, n, 0)], [Zmat]])
        img = Submodule(R, n, (pi @ G).columns())
        checks["surjective"] = submodule_equal(img, seq.N, budget)
        K = kernel_of_map(pi @ G, R, budget)
        target = Submodule(R, 2 * n, TE.columns())
        checks["kernel_in_image"] = all(
            submodule_membership(G.apply(k), target, certificate=False, budget=budget)[0] for k in K.gens)
    except ResourceLimitError as exc:
        checks["resource_limit"] = str(exc)
        return ExactnessReport("inconclusive", checks)
    return ExactnessReport("exact" if all(checks.values()) else "not_exact", checks)


def _nilpotency_degree(R, beta, cap=16):
    B = beta
    for k in range(1, cap + 1):
        if _nf_mat(R, B).is_zero():
            return k
        B = _nf_mat(R, B @ beta)
    return None


def nilpotency_check(eta, Z, bound=None):
    """Least m <= bound with Zmat @ eta^m == 0 in R^n, i.e. eta^m(Z) = 0.

    ``eta`` is the square matrix of eta on the generators of Z.
    """
    R = Z.ring
    Zmat = Z.matrix()
    k = len(Z.gens)
    if eta.shape != (k, k):
        raise ValueError("eta must be square on the generators of Z")
    bound = bound if bound is not None else max(1, k) * 2
    cur = Zmat
    for m in range(1, bound + 1):
        cur = _nf_mat(R, cur @ eta)
        if cur.is_zero():
            return True, m
    return False, None


def sequence_nilpotency(seq):
    deg = _nilpotency_degree(seq.ring, seq.beta) or 2
    return nilpotency_check(seq.eta_matrix(), seq.Z, max(1, len(seq.Z.gens)) * deg)


# ---------------------------------------------------------------------------
# degenerations from given short exact sequences

@dataclass
class ExtensionRecord:
    exact: bool
    checks: dict
    source: str
    target: str
    provenance: str = "extension"

    def to_json(self):
        return {"exact": self.exact, "checks": self.checks, "source": self.source,
                "target": self.target, "provenance": self.provenance}


def extension_degeneration(R, L, M, N, incl, proj, labels=("L", "M", "N")):
    """Verify 0 -> L -> M -> N -> 0 for submodules of free modules with maps
    given by matrices between the ambient free modules; on success M
    degenerates to L + N."""
    P = R.base
    incl, proj = _nf_mat(R, incl), _nf_mat(R, proj)
    checks = {}
    GL, GM = L.matrix(), M.matrix()
    checks["incl_lands_in_M"] = all(submodule_membership(incl.apply(g), M, certificate=False)[0] for g in L.gens)
    checks["proj_lands_in_N"] = all(submodule_membership(proj.apply(g), N, certificate=False)[0] for g in M.gens)
    checks["composition_zero"] = _nf_mat(R, proj @ incl).is_zero()
    ker_i = kernel_of_map(incl @ GL, R)
    checks["injective"] = all(all(R.normal_form(a).is_zero() for a in GL.apply(k)) for k in ker_i.gens)
    checks["surjective"] = submodule_equal(Submodule(R, N.rank, (proj @ GM).columns()), N)
    ker_p = kernel_of_map(proj @ GM, R)
    image = Submodule(R, M.rank, (incl @ GL).columns())
    checks["kernel_in_image"] = all(
        submodule_membership(GM.apply(k), image, certificate=False)[0] for k in ker_p.gens)
    lL, lM, lN = labels
    return ExtensionRecord(all(checks.values()), checks, lM, f"{lL}+{lN}")


def _candidate_entries(P, degree):
    mons = [P.one]
    for d in range(1, degree + 1):
        for e in itertools.product(range(d + 1), repeat=P.nvars):
            if sum(e) == d:
                mons.append(P.monomial(e))
    out = [P.zero]
    for m in mons:
        out += [m, -m]
    return out


def search_extension_maps(R, L, M, N, degree=1, limit=1):
    """Search maps incl: ambient(L) -> ambient(M) and proj: ambient(M) ->
    ambient(N) whose entries are +-monomials of degree <= ``degree`` (or 0)
    and which make 0 -> L -> M -> N -> 0 exact.

    Candidates are filtered by cheap tests (nonzero maps, proj o incl = 0,
    maps landing in the right submodules) before the exactness check.
    """
    P = R.base
    cands = _candidate_entries(P, degree)
    found = []
    ishape = (M.rank, L.rank)
    pshape = (N.rank, M.rank)
    incls = []
    for entries in itertools.product(cands, repeat=ishape[0] * ishape[1]):
        if all(e.is_zero() for e in entries):
            continue
        A = Matrix(P, [entries[r * ishape[1]:(r + 1) * ishape[1]] for r in range(ishape[0])])
        if all(submodule_membership(A.apply(g), M, certificate=False)[0] for g in L.gens):
            incls.append(A)
    projs = []
    for entries in itertools.product(cands, repeat=pshape[0] * pshape[1]):
        if all(e.is_zero() for e in entries):
            continue
        B = Matrix(P, [entries[r * pshape[1]:(r + 1) * pshape[1]] for r in range(pshape[0])])
        if all(submodule_membership(B.apply(g), N, certificate=False)[0] for g in M.gens):
            projs.append(B)
    for A in incls:
        for B in projs:
            if not _nf_mat(R, B @ A).is_zero():
                continue
            rec = extension_degeneration(R, L, M, N, A, B)
            if rec.exact:
                found.append((A, B))
                if len(found) >= limit:
                    return found
    return found


# ---------------------------------------------------------------------------
# corollaries of the sequence construction

def corollary44_pair(R, alpha, beta, x, M_gens, N_gens):
    """M + N degenerates to (alpha(N) + x^2 L) + (beta(M) + x^2 L), through
    gamma = (0 alpha; beta 0) on L + L with Im gamma = Ker gamma."""
    P = R.base
    alpha, beta = _nf_mat(R, alpha), _nf_mat(R, beta)
    n = alpha.nrows
    Zr = Matrix.zeros(P, n, n)
    gamma = Matrix.block([[Zr, alpha], [beta, Zr]])
    _check_two_periodic(R, gamma, gamma)
    M = M_gens if isinstance(M_gens, Submodule) else Submodule(R, n, M_gens)
    N = N_gens if isinstance(N_gens, Submodule) else Submodule(R, n, N_gens)
    zero = (P.zero,) * n
    X = Submodule(R, 2 * n, [tuple(m) + zero for m in M.gens] + [zero + tuple(v) for v in N.gens])
    seq = zwara_construct(R, gamma, gamma, x, X)
    x = R.normal_form(P(x))
    x2 = x * x
    K1 = Submodule(R, n, [_nf_vec(R, alpha.apply(v)) for v in N.gens] +
                   [tuple(x2 if k == i else P.zero for k in range(n)) for i in range(n)])
    K2 = Submodule(R, n, [_nf_vec(R, beta.apply(m)) for m in M.gens] +
                   [tuple(x2 if k == i else P.zero for k in range(n)) for i in range(n)])
    K = Submodule(R, 2 * n, [tuple(a) + zero for a in K1.gens] + [zero + tuple(b) for b in K2.gens])
    if not submodule_equal(K, seq.N):
        raise AssertionError("target of the doubled sequence differs from K")
    return {"source": (M, N), "target": (K1, K2), "gamma": gamma, "sequence": seq}


@dataclass
class Cor45Result:
    i: int
    j: int
    M: Submodule
    N_raw: Submodule
    N: Submodule
    sequence: ZwaraSequence
    division_certificate: list


def corollary45_family(R, alpha, x, i, j):
    """alpha(L) + x^j L degenerates to alpha(L) + x^(2i-j) L for i >= j >= 0.

    The sequence is the one for x^i; its target x^j alpha(L) + x^(2i) L is
    identified with alpha(L) + x^(2i-j) L by dividing generators by x^j
    (``division_certificate`` lists the pairs (normalized, raw)).
    """
    if not (i >= j >= 0):
        raise ValueError(f"need i >= j >= 0, got i={i}, j={j}")
    P = R.base
    alpha = _nf_mat(R, alpha)
    x = R.normal_form(P(x))
    n = alpha.nrows
    _check_two_periodic(R, alpha, alpha)
    _check_regular(R, x, n)

    def gens(h, scale=None):
        xh = R.normal_form(x ** h)
        cols = [alpha.col(k) for k in range(n)]
        if scale is not None:
            cols = [tuple(scale * a for a in c) for c in cols]
        return [_nf_vec(R, c) for c in cols] + [tuple(xh if k == m else P.zero for k in range(n)) for m in range(n)]

    M = Submodule(R, n, gens(j))
    seq = zwara_construct(R, alpha, alpha, x ** i, M)
    xj = R.normal_form(x ** j)
    raw = gens(2 * i, scale=xj)
    N_raw = Submodule(R, n, raw)
    if not submodule_equal(N_raw, seq.N):
        raise AssertionError("sequence target differs from x^j alpha(L) + x^(2i) L")
    norm = gens(2 * i - j)
    cert = []
    for a, b in zip(norm, raw):
        if _nf_vec(R, tuple(xj * c for c in a)) != _nf_vec(R, b):
            raise AssertionError("division by x^j does not reproduce the generator")
        cert.append((a, b))
    return Cor45Result(i, j, M, N_raw, Submodule(R, n, norm), seq, cert)


# ---------------------------------------------------------------------------
# transfers between rings

def _regular_on_cokernel(R, nu, var):
    """var is regular on N = cok(x*I - nu) over the polynomial ring."""
    B = R.base
    n = nu.nrows
    A = Matrix.scalar(B, n, B.gen(R.var)) - nu.lift(B)
    cols = [tuple(B.gen(var) if k == i else B.zero for k in range(n)) for i in range(n)] + A.columns()
    colon = [s[:n] for s in syzygies(cols, n, B)]
    im = Submodule(B, n, A.columns())
    for v in colon:
        if not submodule_membership(v, im, certificate=False)[0]:
            return False, v
    return True, None


def quotient_transfer(w, var):
    """Set ``var`` to 0 everywhere; M/var*M degenerates to N/var*N when var
    is regular on N."""
    R = w.ring
    if var == R.var or var == w.t_var:
        raise ValueError("can only transfer along a variable of S")
    ok, v = _regular_on_cokernel(R, w.nu, var)
    if not ok:
        raise PreconditionError(f"{var} is not regular on the target", v)
    base = R.base.drop(var)
    R2 = QuotientRing(base, substitute(R.f, var, 0), R.var)
    S2 = R2.s_ring
    T2 = S2.extend(w.t_var)
    xi = w.xi.subs(var, 0).lift(T2)
    mu = w.mu.subs(var, 0).lift(S2)
    nu = w.nu.subs(var, 0).lift(S2)
    certs = {c: P.subs(var, 0).lift(S2) for c, P in w.certificates.items()}
    sc = None if w.special_conjugation is None else w.special_conjugation.subs(var, 0).lift(S2)
    meta = dict(w.metadata)
    meta.setdefault("transfers", [])
    meta["transfers"] = list(meta["transfers"]) + [var]
    return DegenerationWitness(R2, w.t_var, xi, mu, nu, f"{w.provenance}/{var}=0", certs, sc,
                               w.source and f"{w.source}/({var})", w.target and f"{w.target}/({var})", meta)


def _ds(m, ring, u, v):
    m = m.lift(ring)
    n = m.nrows
    z, e = zeta_eta(ring, u, v)
    return Matrix.block([[m, Matrix.scalar(ring, n, z)], [-Matrix.scalar(ring, n, e), -m]])


def attach_certificates(w, samples=DEFAULT_SAMPLES):
    """Fill missing generic-fiber certificates from catalog recognition."""
    certs = dict(w.certificates)
    for c in samples:
        if c in certs or not w.ring.field(c):
            continue
        state, _, P = _recognize_pair(w.fiber(c), w.mu)
        if state == "ok" and P is not None:
            certs[c] = P
    w.certificates = certs
    return w


def lift_witness_doublesharp(w, u="u", v="v", samples=DEFAULT_SAMPLES):
    """(xi zeta; -eta_bar -xi) with source and target lifted the same way;
    certificates P become diag(P, P)."""
    w = attach_certificates(w, samples)
    R = w.ring
    if not R.field.has_sqrt_minus_one:
        raise ValueError(f"{R.field} has no square root of -1")
    if not R.x_coefficients()[1].is_zero():
        raise ValueError("the double sharp lift needs F = x^2 + f")
    for name in (u, v):
        if name in R.base.vars or name == w.t_var:
            raise ValueError(f"variable {name!r} already in use")
    base = R.base.extend(u, v)
    f = R.f.lift(base) + base.gen(u) ** 2 + base.gen(v) ** 2
    R2 = QuotientRing(base, f, R.var)
    S2 = R2.s_ring
    T2 = S2.extend(w.t_var)
    certs = {c: Matrix.diag_blocks([P, P]).lift(S2) for c, P in w.certificates.items()}
    sc = None if w.special_conjugation is None else Matrix.diag_blocks([w.special_conjugation] * 2).lift(S2)
    return DegenerationWitness(R2, w.t_var, _ds(w.xi, T2, u, v), _ds(w.mu, S2, u, v), _ds(w.nu, S2, u, v),
                               f"{w.provenance}/double_sharp", certs, sc,
                               w.source and f"{w.source}##", w.target and f"{w.target}##", dict(w.metadata))
