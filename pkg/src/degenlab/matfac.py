"""Matrix representations and matrix factorizations of hypersurfaces.

A Cohen-Macaulay module M over R = S[x]/(F), F monic of degree 2 in x, is an
S-free module with x acting by a square matrix ``mu`` over S; the only
condition is F(mu) = 0.  For F = x^2 + f this reads mu^2 = -f*I.  Matrix
factorizations (phi, psi) with phi*psi = psi*phi = f*I are a separate type so
the two sign conventions never mix.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .ideal import Ideal, ideal_equal, kernel_of_map, minors_ideal, buchberger
from .matrix import Matrix
from .poly import PolyRing, QuotientRing, divide

__all__ = [
    "BlockTag", "MatrixRepresentation", "MatrixFactorization", "MRReport",
    "mr_residual", "validate_mr", "syzygy_mr", "sharp", "double_sharp",
    "knoerrer_image", "knoerrer_presentation", "knoerrer_presentation_ops",
    "apply_elementary_ops", "lemma41_blocks", "cokernel_presentation",
    "smith_normal_form", "Recognition", "recognize_dim1", "recognize_dim2",
]


@dataclass(frozen=True)
class BlockTag:
    construction: str  # sharp | double_sharp | knoerrer_image | lemma41_block | catalog | syzygy
    parent: str | None = None

    def to_json(self):
        return {"construction": self.construction, "parent": self.parent}


@dataclass(frozen=True)
class MatrixRepresentation:
    ring: QuotientRing
    mu: Matrix
    tag: BlockTag | None = None

    def __post_init__(self):
        if self.ring.var is None or self.ring.degree != 2:
            raise ValueError("matrix representations need R = S[x]/(F) with F monic quadratic in x")
        if not self.mu.is_square():
            raise ValueError("matrix representation must be square")

    @property
    def size(self):
        return self.mu.nrows

    @property
    def s_ring(self):
        return self.ring.s_ring

    def to_json(self):
        d = {"ring": self.ring.descriptor(), "mu": self.mu.to_json()}
        if self.tag:
            d["construction"] = self.tag.to_json()
        return d

    @classmethod
    def from_json(cls, d):
        R = QuotientRing.from_descriptor(d["ring"])
        mu = Matrix.from_json(d["mu"]).lift(R.s_ring)
        return cls(R, mu)


@dataclass(frozen=True)
class MatrixFactorization:
    phi: Matrix
    psi: Matrix
    f: object

    def residuals(self):
        n = self.phi.nrows
        fI = Matrix.scalar(self.phi.ring, n, self.f)
        return self.phi @ self.psi - fI, self.psi @ self.phi - fI

    def is_valid(self):
        a, b = self.residuals()
        return a.is_zero() and b.is_zero()


@dataclass
class MRReport:
    valid: bool
    residual: Matrix | None
    construction: BlockTag | None = None
    notes: list = field(default_factory=list)

    @property
    def verdict(self):
        return "valid" if self.valid else "invalid"

    def to_json(self):
        return {"valid": self.valid,
                "residual": None if self.residual is None else self.residual.to_json(),
                "construction": None if self.construction is None else self.construction.to_json(),
                "notes": list(self.notes)}


def mr_residual(mu, R):
    """F(mu) with the x-coefficients of F acting as scalars; works for mu over
    any ring containing S (e.g. S[t])."""
    coeffs = R.x_coefficients()
    n = mu.nrows
    acc = Matrix.zeros(mu.ring, n, n)
    power = Matrix.identity(mu.ring, n)
    for k, c in enumerate(coeffs):
        if k:
            power = power @ mu
        c = c.lift(mu.ring)
        if not c.is_zero():
            acc = acc + power * c
    return acc


def validate_mr(mu, R=None, construction=None):
    if isinstance(mu, MatrixRepresentation):
        mu, R, construction = mu.mu, mu.ring, construction or mu.tag
    if R is None:
        raise ValueError("a bare matrix needs its ring")
    if not mu.is_square():
        raise ValueError(f"matrix representation must be square, got {mu.shape}")
    res = mr_residual(mu, R)
    ok = res.is_zero()
    notes = [] if ok else ["F(mu) is nonzero"]
    return MRReport(ok, None if ok else res, construction, notes)


def _require_valid(mr):
    rep = validate_mr(mr.mu, mr.ring)
    if not rep.valid:
        raise ValueError(f"invalid matrix representation; residual {rep.residual!r}")


def syzygy_mr(mr):
    """Matrix representation of the first syzygy: -mu (minus the linear
    coefficient of F, which is zero for F = x^2 + f)."""
    _require_valid(mr)
    a1 = mr.ring.x_coefficients()[1].lift(mr.mu.ring)
    n = mr.size
    return MatrixRepresentation(mr.ring, -mr.mu - Matrix.scalar(mr.mu.ring, n, a1),
                                BlockTag("syzygy", "mu"))


def _plain_f(R):
    cs = R.x_coefficients()
    if not cs[1].is_zero():
        raise ValueError("Knörrer constructions need F = x^2 + f (no linear term)")
    return cs[0]


def _extended_ring(R, names):
    for n in names:
        if n in R.base.vars:
            raise ValueError(f"variable {n!r} already used in {R.base.vars}")
    base = R.base.extend(*names)
    f = R.f.lift(base)
    for n in names:
        f = f + base.gen(n) ** 2
    return QuotientRing(base, f, R.var)


def sharp(mr, u="u"):
    """(mu u; -u -mu) over S[u], a representation for F + u^2."""
    _require_valid(mr)
    _plain_f(mr.ring)
    R2 = _extended_ring(mr.ring, [u])
    S2 = R2.s_ring
    m = mr.mu.lift(S2)
    n = mr.size
    U = Matrix.scalar(S2, n, S2.gen(u))
    mu2 = Matrix.block([[m, U], [-U, -m]])
    return MatrixRepresentation(R2, mu2, BlockTag("sharp", "mu"))


def zeta_eta(ring, u="u", v="v"):
    """zeta = u + i*v and eta_bar = u - i*v."""
    i = ring.field.i
    return ring.gen(u) + ring.gen(v) * i, ring.gen(u) - ring.gen(v) * i


def double_sharp(mr, u="u", v="v"):
    """(mu zeta; -eta_bar -mu) over S[u, v], a representation for F + u^2 + v^2."""
    if not mr.ring.field.has_sqrt_minus_one:
        raise ValueError(f"{mr.ring.field} has no square root of -1; double sharp needs one")
    _require_valid(mr)
    _plain_f(mr.ring)
    R2 = _extended_ring(mr.ring, [u, v])
    S2 = R2.s_ring
    m = mr.mu.lift(S2)
    n = mr.size
    z, e = zeta_eta(S2, u, v)
    mu2 = Matrix.block([[m, Matrix.scalar(S2, n, z)], [-Matrix.scalar(S2, n, e), -m]])
    return MatrixRepresentation(R2, mu2, BlockTag("double_sharp", "mu"))


def _check_mf(alpha, f):
    n = alpha.nrows
    res = alpha @ alpha - Matrix.scalar(alpha.ring, n, f)
    if not res.is_zero():
        raise ValueError(f"(alpha, alpha) is not a matrix factorization of f; residual {res!r}")


def _check_nonzerodivisor(S, f, z):
    R = QuotientRing(S, f)
    K = kernel_of_map(Matrix(S, [[S(z)]]), R)
    if K.gens:
        raise ValueError(f"{z} is a zero divisor modulo {f}: it kills {K.gens[0][0]}")


def knoerrer_image(alpha, f, z, h, u="u", v="v"):
    """The 2n x 4n matrix (alpha zeta z^h 0; eta_bar -alpha 0 z^h) over S[u, v].

    ``alpha`` must satisfy alpha^2 = f*I over S.
    """
    _check_mf(alpha, f)
    if h < 0:
        raise ValueError("h must be non-negative")
    _check_nonzerodivisor(alpha.ring, f, z)
    S2 = alpha.ring.extend(u, v)
    a = alpha.lift(S2)
    n = alpha.nrows
    zt, eb = zeta_eta(S2, u, v)
    zh = Matrix.scalar(S2, n, S2(z) ** h)
    Z = Matrix.zeros(S2, n, n)
    return Matrix.block([[a, Matrix.scalar(S2, n, zt), zh, Z],
                         [Matrix.scalar(S2, n, eb), -a, Z, zh]])


def knoerrer_presentation(alpha, f, z, h, u="u", v="v"):
    """Knörrer image of the presentation (alpha -z^h; 0 alpha):
    (alpha -z^h zeta 0; 0 alpha 0 zeta; eta_bar 0 -alpha -z^h; 0 eta_bar 0 -alpha)."""
    _check_mf(alpha, f)
    S2 = alpha.ring.extend(u, v)
    a = alpha.lift(S2)
    n = alpha.nrows
    zt, eb = zeta_eta(S2, u, v)
    ZT = Matrix.scalar(S2, n, zt)
    EB = Matrix.scalar(S2, n, eb)
    zh = Matrix.scalar(S2, n, S2(z) ** h)
    Z = Matrix.zeros(S2, n, n)
    return Matrix.block([[a, -zh, ZT, Z],
                         [Z, a, Z, ZT],
                         [EB, Z, -a, -zh],
                         [Z, EB, Z, -a]])


def knoerrer_presentation_ops(n):
    """Elementary operations taking the Knörrer presentation to block upper
    triangular form: swap the second and third block rows and columns."""
    ops = []
    for k in range(n):
        ops.append(("swap_rows", n + k, 2 * n + k))
        ops.append(("swap_cols", n + k, 2 * n + k))
    return ops


def apply_elementary_ops(M, ops):
    """Apply ("swap_rows", i, j), ("swap_cols", i, j), ("add_row", i, j, c)
    meaning row_i += c*row_j, ("add_col", i, j, c), ("scale_row", i, c),
    ("scale_col", i, c) in order."""
    rows = [list(r) for r in M.rows]
    ring = M.ring
    for op in ops:
        kind = op[0]
        if kind == "swap_rows":
            i, j = op[1:]
            rows[i], rows[j] = rows[j], rows[i]
        elif kind == "swap_cols":
            i, j = op[1:]
            for r in rows:
                r[i], r[j] = r[j], r[i]
        elif kind == "add_row":
            i, j, c = op[1], op[2], ring(op[3])
            rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
        elif kind == "add_col":
            i, j, c = op[1], op[2], ring(op[3])
            for r in rows:
                r[i] = r[i] + c * r[j]
        elif kind == "scale_row":
            i, c = op[1], ring(op[2])
            rows[i] = [c * a for a in rows[i]]
        elif kind == "scale_col":
            i, c = op[1], ring(op[2])
            for r in rows:
                r[i] = c * r[i]
        else:
            raise ValueError(f"unknown elementary operation {kind!r}")
    return Matrix(ring, rows)


def lemma41_blocks(alpha, beta, x):
    """A = (alpha x*I; 0 beta) and B = (beta -x*I; 0 alpha)."""
    if alpha.shape != beta.shape or not alpha.is_square():
        raise ValueError("alpha and beta must be square of equal size")
    ring = alpha.ring
    n = alpha.nrows
    X = Matrix.scalar(ring, n, x)
    Z = Matrix.zeros(ring, n, n)
    A = Matrix.block([[alpha, X], [Z, beta]])
    B = Matrix.block([[beta, -X], [Z, alpha]])
    return A, B


def cokernel_presentation(alpha, x, h):
    """(alpha -x^h*I; 0 alpha), presenting alpha(L) + x^h L when Im alpha = Ker alpha."""
    if h < 0:
        raise ValueError("h must be non-negative")
    ring = alpha.ring
    n = alpha.nrows
    X = Matrix.scalar(ring, n, ring(x) ** h)
    return Matrix.block([[alpha, -X], [Matrix.zeros(ring, n, n), alpha]])


# ---------------------------------------------------------------------------
# Smith normal form over k[y]

def smith_normal_form(M):
    """(D, P, Q) with P @ M @ Q == D diagonal, d_i | d_{i+1}, d_i monic and
    P, Q invertible over k[y]."""
    ring = M.ring
    if ring.nvars != 1:
        raise ValueError(f"Smith normal form needs a univariate ring, got {ring.vars}")
    m, n = M.shape
    A = [list(r) for r in M.rows]
    one, zero = ring.one, ring.zero
    P = [[one if i == j else zero for j in range(m)] for i in range(m)]
    Q = [[one if i == j else zero for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for X in (A, Q):
            for r in X:
                r[i], r[j] = r[j], r[i]

    def add_row(i, j, c):  # row_i += c * row_j
        for X in (A, P):
            X[i] = [a + c * b for a, b in zip(X[i], X[j])]

    def add_col(i, j, c):  # col_i += c * col_j
        for X in (A, Q):
            for r in X:
                r[i] = r[i] + c * r[j]

    for k in range(min(m, n)):
        while True:
            best = None
            for i in range(k, m):
                for j in range(k, n):
                    a = A[i][j]
                    if a and (best is None or a.total_degree() < best[0]):
                        best = (a.total_degree(), i, j)
            if best is None:
                break
            _, i, j = best
            if i != k:
                swap_rows(i, k)
            if j != k:
                swap_cols(j, k)
            piv = A[k][k]
            clean = True
            for i in range(k + 1, m):
                if A[i][k]:
                    (q,), r = divide(A[i][k], [piv])
                    add_row(i, k, -q)
                    clean = clean and r.is_zero()
            for j in range(k + 1, n):
                if A[k][j]:
                    (q,), r = divide(A[k][j], [piv])
                    add_col(j, k, -q)
                    clean = clean and r.is_zero()
            if not clean:
                continue
            bad = next((i for i in range(k + 1, m) for j in range(k + 1, n)
                        if A[i][j] and not divide(A[i][j], [piv])[1].is_zero()), None)
            if bad is not None:
                add_row(k, bad, one)
                continue
            break
        if A[k][k]:
            inv = ring.field.one / A[k][k].lc
            A[k] = [a.scale(inv) for a in A[k]]
            P[k] = [a.scale(inv) for a in P[k]]
    return Matrix(ring, A), Matrix(ring, P), Matrix(ring, Q)


@dataclass
class Recognition:
    """Decomposition of a square-zero matrix over k[y] into catalog summands.

    ``transform`` T satisfies mu @ T == T @ model; ``exact`` is False when
    some invariant factor is not a pure power of y (then the class is read
    from its y-adic valuation and ``model`` carries the actual factor).
    """
    classes: list
    transform: Matrix
    model: Matrix
    exact: bool


def _y_power(d, y):
    # (valuation, is the monic factor exactly y^m)
    i = d.ring.index(y)
    val = min(e[i] for e in d.term_dict())
    return val, len(d) == 1


def recognize_dim1(mu):
    """Classify a square-zero matrix over k[y] as a multiset of (A_inf) dim-1
    classes: invariant factor 1 -> R, y^m -> (x, y^m), leftover kernel -> R/(x)."""
    from .catalog import CMClass, dim1_block

    ring = mu.ring
    if ring.nvars != 1:
        raise ValueError("recognize_dim1 needs a matrix over a univariate ring")
    if not (mu @ mu).is_zero():
        raise ValueError("matrix is not square-zero")
    y = ring.vars[0]
    n = mu.nrows
    D, _, Q = smith_normal_form(mu)
    r = sum(1 for i in range(min(D.shape)) if not D[i, i].is_zero())
    QC = Q.submatrix(range(n), range(r))
    QK = Q.submatrix(range(n), range(r, n))
    summands = []
    if r:
        X = Q.inverse_unimodular() @ (mu @ QC)
        B = X.submatrix(range(r, n), range(r))
        D2, U, V = smith_normal_form(B)
        Kp = QK @ U.inverse_unimodular()
        Cp = QC @ V
        for i in range(r):
            d = D2[i, i]
            m, pure = _y_power(d, y)
            cls = CMClass(1, "free") if m == 0 else CMClass(1, "idealA", m)
            summands.append((cls, Kp.col(i), Cp.col(i), d, pure and (m > 0 or d == 1)))
        rest = [Kp.col(i) for i in range(r, n - r)]
    else:
        rest = [QK.col(i) for i in range(n)]
    summands.sort(key=lambda s: s[0].sort_key())
    cols, blocks, exact = [], [], True
    for cls, kc, cc, d, pure in summands:
        cols += [kc, cc]
        exact = exact and pure
        blocks.append(dim1_block(cls, ring) if pure else Matrix(ring, [[0, d], [0, 0]]))
    for kc in rest:
        cols.append(kc)
        blocks.append(Matrix(ring, [[0]]))
    classes = [s[0] for s in summands] + [CMClass(1, "rmodx")] * len(rest)
    T = Matrix.from_columns(ring, cols, n)
    model = Matrix.diag_blocks(blocks) if blocks else Matrix.zeros(ring, 0, 0)
    if not (mu @ T == T @ model):
        raise AssertionError("recognition transform failed to conjugate")
    return Recognition(classes, T, model, exact)


def recognize_dim2(mu, R=None, y="y", z="z"):
    """Class of a rank-1 or rank-2 representation over k[y, z] for
    R = k[x, y, z]/(x^2 - x*y): (x), (x-y), R, (x, z^n) or (x-y, z^n)."""
    from .catalog import CMClass

    S = mu.ring
    if R is not None:
        res = mr_residual(mu, R)
        if not res.is_zero():
            raise ValueError("matrix does not satisfy the defining relation of R")
    else:
        if not (mu @ mu - mu * S.gen(y)).is_zero():
            raise ValueError("matrix does not satisfy mu^2 = y*mu")
    yv = S.gen(y)
    if mu.shape == (1, 1):
        if mu[0, 0] == yv:
            return CMClass(2, "x")
        if mu[0, 0].is_zero():
            return CMClass(2, "xminusy")
        raise ValueError("1x1 matrix outside the supported families")
    if mu.shape != (2, 2):
        raise ValueError("recognize_dim2 supports 1x1 and 2x2 matrices only")
    if mu.trace() != yv or not mu.det().is_zero():
        raise ValueError("2x2 matrix outside the supported families (trace/determinant)")
    I1 = buchberger(minors_ideal(mu, 1))
    if I1.is_unit():
        return CMClass(2, "free")
    ker = kernel_of_map(mu)
    if len(ker.gens) != 1:
        raise ValueError("kernel is not generated by a single vector")
    content = Ideal(S, list(ker.gens[0]))
    kind = "idealB" if buchberger(content).is_unit() else "idealA"
    lex = PolyRing((y, z) + tuple(v for v in S.vars if v not in (y, z)), "lex", S.field)
    elim = [g for g in buchberger(Ideal(lex, [g.lift(lex) for g in I1.gens])).gb
            if g.variables() == [z]]
    if len(elim) != 1 or len(elim[0]) != 1:
        raise ValueError("I_1 does not meet k[z] in a power of z")
    n = elim[0].degree(z)
    # the ideal I_1 of either family is (y, z^n)
    if not ideal_equal(I1, Ideal(S, [yv, S.gen(z) ** n])):
        raise ValueError("I_1 is not (y, z^n); outside the supported families")
    return CMClass(2, kind, n)
