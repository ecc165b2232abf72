"""Cohen-Macaulay modules over the (A_inf) hypersurfaces of dimension 1 and 2.

Dimension 1: R = k[x, y]/(x^2), S = k[y].  Classes R, R/(x), (x, y^n).
Dimension 2: R = k[x, y, z]/(x^2 - x*y), S = k[y, z].  Classes R, (x),
(x - y), (x, z^n), (x - y, z^n).  The second ring is the change of
coordinates Y -> x - y of k[x, y, z]/(x*y); in the original coordinates
(x - y, z^n) reads (y, z^n).
"""
from __future__ import annotations

import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import total_ordering

import networkx as nx

from .degeneration import DegenerationWitness, verify_witness
from .ideal import Submodule, submodule_equal
from .matfac import (
    MatrixRepresentation, BlockTag, double_sharp, knoerrer_image,
    knoerrer_presentation, knoerrer_presentation_ops, apply_elementary_ops,
    cokernel_presentation,
)
from .matrix import Matrix
from .poly import QQ, PolyRing, QuotientRing, divide

__all__ = [
    "CMClass", "dim1_ring", "dim2_ring", "dim1_block", "catalog_matrix",
    "catalog_ideal", "identify_dim1_ideal", "oracle_degenerates", "thm31_witness",
    "PosetGraph", "build_poset", "iterated_knoerrer_module", "knoerrer_ring",
    "prop56_image",
]

_KINDS = {1: ("free", "rmodx", "idealA"), 2: ("free", "x", "xminusy", "idealA", "idealB")}


@total_ordering
@dataclass(frozen=True)
class CMClass:
    """An indecomposable class; ``n`` is the exponent for the ideal kinds."""
    dim: int
    kind: str
    n: int = 0

    def __post_init__(self):
        if self.dim not in _KINDS or self.kind not in _KINDS[self.dim]:
            raise ValueError(f"unsupported class {self.kind!r} in dimension {self.dim}")
        if self.kind.startswith("ideal") and self.n < 1:
            raise ValueError("ideal classes need n >= 1")
        if not self.kind.startswith("ideal") and self.n:
            raise ValueError(f"class {self.kind!r} takes no exponent")

    @property
    def exponent(self):
        """Position in the dim-1 chain: R counts as (x, y^0)."""
        return 0 if self.kind == "free" else self.n

    @property
    def label(self):
        if self.dim == 1:
            return {"free": "R", "rmodx": "R/(x)"}.get(self.kind) or f"(x,y^{self.n})"
        return {"free": "R", "x": "(x)", "xminusy": "(x-y)",
                "idealA": f"(x,z^{self.n})", "idealB": f"(x-y,z^{self.n})"}[self.kind]

    @property
    def alias(self):
        """Label in the coordinates of k[x, y, z]/(x*y)."""
        if self.dim == 2:
            return {"xminusy": "(y)", "idealB": f"(y,z^{self.n})"}.get(self.kind, self.label)
        return self.label

    def sort_key(self):
        return (self.dim, _KINDS[self.dim].index(self.kind) if self.kind != "free" else -1, self.n)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    @classmethod
    def parse(cls, text, dim=1):
        s = text.replace(" ", "")
        if s == "R":
            return cls(dim, "free")
        if dim == 1:
            if s == "R/(x)":
                return cls(1, "rmodx")
            m = re.fullmatch(r"\(x,y\^?(\d+)?\)", s)
            if m:
                n = int(m.group(1) or 1)
                return cls(1, "free") if n == 0 else cls(1, "idealA", n)
        else:
            simple = {"(x)": "x", "(x-y)": "xminusy", "(y)": "xminusy"}
            if s in simple:
                return cls(2, simple[s])
            m = re.fullmatch(r"\((x|x-y|y),z\^?(\d+)?\)", s)
            if m:
                return cls(2, "idealA" if m.group(1) == "x" else "idealB", int(m.group(2) or 1))
        raise ValueError(f"cannot parse class {text!r} in dimension {dim}")


def dim1_ring(field=QQ, x="x", y="y"):
    base = PolyRing((x, y), "grevlex", field)
    return QuotientRing(base, base.gen(x) ** 2, x)


def dim2_ring(field=QQ):
    base = PolyRing(("x", "y", "z"), "grevlex", field)
    X, Y = base.gen("x"), base.gen("y")
    return QuotientRing(base, X * X - X * Y, "x")


def dim1_block(cls, S):
    y = S.gens()[0]
    if cls.kind == "free":
        return Matrix(S, [[0, 1], [0, 0]])
    if cls.kind == "rmodx":
        return Matrix(S, [[0]])
    return Matrix(S, [[0, y ** cls.n], [0, 0]])


def catalog_matrix(c, field=QQ):
    """The matrix representation of a catalog class over S."""
    if c.dim == 1:
        R = dim1_ring(field)
        return MatrixRepresentation(R, dim1_block(c, R.s_ring), BlockTag("catalog", c.label))
    R = dim2_ring(field)
    S = R.s_ring
    y, z = S.gen("y"), S.gen("z")
    mats = {"free": [[y, 1], [0, 0]], "x": [[y]], "xminusy": [[0]]}
    if c.kind in mats:
        mu = Matrix(S, mats[c.kind])
    elif c.kind == "idealA":
        mu = Matrix(S, [[y, z ** c.n], [0, 0]])
    else:
        mu = Matrix(S, [[0, z ** c.n], [0, y]])
    return MatrixRepresentation(R, mu, BlockTag("catalog", c.label))


def catalog_ideal(c, R=None):
    """Generators of the class as an ideal (a rank-1 submodule of R)."""
    if c.dim != 1 or c.kind == "rmodx":
        if c.dim == 2:
            R = R or dim2_ring()
            P = R.base
            x, y, z = P.gen("x"), P.gen("y"), P.gen("z")
            g = {"free": [P.one], "x": [x], "xminusy": [x - y]}.get(c.kind)
            if g is None:
                g = [x if c.kind == "idealA" else x - y, z ** c.n]
            return Submodule(R, 1, [(a,) for a in g])
        raise ValueError("R/(x) is not an ideal class")
    R = R or dim1_ring()
    P = R.base
    x, y = P.gens()
    if c.kind == "free":
        return Submodule(R, 1, [(P.one,)])
    return Submodule(R, 1, [(x,), (y ** c.n,)])


def _strip_regular(sub, var):
    # divide every generator by the largest common power of var
    R = sub.ring
    gens = [g[0] for g in sub.gens]
    k = min(min(e[R.base.index(var)] for e in g.term_dict()) for g in gens)
    if k == 0:
        return sub, 0
    yk = R.base.gen(var) ** k
    return Submodule(R, 1, [(divide(g, [yk])[0][0],) for g in gens]), k


def identify_dim1_ideal(sub, n_max=16, normalize=True):
    """The class (x, y^n) or R of a rank-1 submodule, or None.

    With ``normalize`` a common factor y^k (y is regular) is divided out
    first, so y^k * (x, y^n) is identified with (x, y^n).
    """
    R = sub.ring
    if not sub.gens:
        return None
    if normalize:
        sub, _ = _strip_regular(sub, R.base.vars[1])
    for n in range(n_max + 1):
        c = CMClass(1, "free") if n == 0 else CMClass(1, "idealA", n)
        if submodule_equal(sub, catalog_ideal(c, R)):
            return c
    return None


def oracle_degenerates(a, b):
    """'yes', 'no' or 'unknown' from the two classification theorems."""
    if a.dim != b.dim:
        raise ValueError("classes of different dimension")
    if a == b:
        return "yes"
    if a.dim == 1:
        if "rmodx" in (a.kind, b.kind):
            return "unknown"
        p, q = a.exponent, b.exponent
        return "yes" if p <= q and (q - p) % 2 == 0 else "no"
    ideal = ("idealA", "idealB")
    if a.kind in ideal and b.kind in ideal and a.n < b.n:
        return "no"
    return "unknown"


def thm31_witness(a, b, field=QQ, samples=(1, 2, 3), x="x", y="y", t="t"):
    """xi = (t y^m, y^b; -t^2 y^a, -t y^m) with m = (a+b)/2, degenerating
    (x, y^a) (R when a = 0) to (x, y^b).

    At t = c the matrix P = (y^d, 1/c; -c, 0), d = (b-a)/2, satisfies
    xi(c) P = P mu with det P = 1; these are attached as certificates.
    """
    if not (0 <= a <= b) or (b - a) % 2:
        raise ValueError(f"no degeneration (x,y^{a}) -> (x,y^{b}): need a <= b and a = b mod 2")
    R = dim1_ring(field, x, y)
    S = R.s_ring
    T = S.extend(t)
    Y, tv = T.gen(y), T.gen(t)
    m, d = (a + b) // 2, (b - a) // 2
    xi = Matrix(T, [[tv * Y ** m, Y ** b], [-(tv ** 2) * Y ** a, -tv * Y ** m]])
    src = CMClass(1, "free") if a == 0 else CMClass(1, "idealA", a)
    tgt = CMClass(1, "free") if b == 0 else CMClass(1, "idealA", b)
    mu = dim1_block(src, S)
    nu = dim1_block(tgt, S)
    certs = {}
    for c in samples:
        cc = field(c)
        if not cc:
            continue
        certs[c] = Matrix(S, [[S.gen(y) ** d, field.one / cc], [-cc, 0]])
    return DegenerationWitness(R, t, xi, mu, nu, "thm31", certs, None, src.label, tgt.label,
                               {"a": a, "b": b})


# ---------------------------------------------------------------------------
# posets

@dataclass
class PosetGraph:
    dim: int
    nodes: list
    edges: list = field(default_factory=list)  # (src, dst, provenance)
    hasse: list = field(default_factory=list)

    def add_edge(self, src, dst, provenance):
        if oracle_degenerates(src, dst) == "no":
            raise ValueError(f"{src.label} -> {dst.label} contradicts the classification")
        self.edges.append((src, dst, provenance))

    def reduce(self):
        g = nx.DiGraph()
        g.add_nodes_from(self.nodes)
        g.add_edges_from((s, d) for s, d, _ in self.edges if s != d)
        red = nx.transitive_reduction(g)
        self.hasse = sorted(red.edges(), key=lambda e: (e[0].sort_key(), e[1].sort_key()))
        return self

    def to_json(self):
        return {"dim": self.dim, "nodes": [c.label for c in self.nodes],
                "edges": [{"src": s.label, "dst": d.label, "provenance": p} for s, d, p in self.edges],
                "hasse": [{"src": s.label, "dst": d.label} for s, d in self.hasse]}

    def to_dot(self):
        prov = {(s, d): p for s, d, p in self.edges}
        lines = [f"digraph degenerations_dim{self.dim} {{", "  rankdir=TB;"]
        ids = {c: f"n{k}" for k, c in enumerate(self.nodes)}
        for c in self.nodes:
            lines.append(f'  {ids[c]} [label="{c.label}"];')
        for s, d in self.hasse:
            lines.append(f'  {ids[s]} -> {ids[d]} [provenance="{prov.get((s, d), "theorem")}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _witness_ok(pair):
    a, b = pair
    return verify_witness(thm31_witness(a, b)).ok


def build_poset(dim, n_max, jobs=1, verify=True):
    """Catalog classes with n <= n_max, oracle edges and their Hasse diagram.

    In dimension 1 every edge carries an explicit one-parameter witness which is verified
    (in ``jobs`` worker processes when jobs > 1).
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if dim == 1:
        nodes = [CMClass(1, "free")] + [CMClass(1, "idealA", n) for n in range(1, n_max + 1)] + [CMClass(1, "rmodx")]
    elif dim == 2:
        nodes = ([CMClass(2, k) for k in ("free", "x", "xminusy")] +
                 [CMClass(2, "idealA", n) for n in range(1, n_max + 1)] +
                 [CMClass(2, "idealB", n) for n in range(1, n_max + 1)])
    else:
        raise ValueError("dimension must be 1 or 2")
    g = PosetGraph(dim, nodes)
    pairs = [(s, d) for s in nodes for d in nodes if s != d and oracle_degenerates(s, d) == "yes"]
    if dim == 1 and verify and pairs:
        args = [(s.exponent, d.exponent) for s, d in pairs]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                oks = list(ex.map(_witness_ok, args))
        else:
            oks = [_witness_ok(p) for p in args]
        for (s, d), ok in zip(pairs, oks):
            if not ok:
                raise AssertionError(f"witness for {s.label} -> {d.label} failed verification")
            g.add_edge(s, d, "witness")
    else:
        for s, d in pairs:
            g.add_edge(s, d, "theorem")
    return g.reduce()


# ---------------------------------------------------------------------------
# Knörrer constructions

def knoerrer_ring(target_dim, field):
    """k[x0, ..., x_d]/(x1^2 + ... + x_d^2) with presentation variable x1 and
    x0 playing the role of z."""
    names = tuple(f"x{k}" for k in range(target_dim + 1))
    base = PolyRing(("x1", "x0") + names[2:], "grevlex", field)
    f = sum((base.gen(n) ** 2 for n in names[1:]), base.zero)
    return QuotientRing(base, f, "x1")


def iterated_knoerrer_module(h, target_dim, field=QQ):
    """M(h): the class (x1, x0^h) pushed through (target_dim - 1)/2 double
    sharp steps, with fresh variables x2, x3, ..."""
    if target_dim < 1 or target_dim % 2 == 0:
        raise ValueError("target dimension must be odd and positive")
    if target_dim > 1 and not field.has_sqrt_minus_one:
        raise ValueError(f"{field} has no square root of -1")
    R = dim1_ring(field, "x1", "x0")
    S = R.s_ring
    c = CMClass(1, "free") if h == 0 else CMClass(1, "idealA", h)
    mr = MatrixRepresentation(R, dim1_block(c, S), BlockTag("catalog", c.label))
    k = 2
    while k < target_dim:
        mr = double_sharp(mr, f"x{k}", f"x{k + 1}")
        k += 2
    return mr


@dataclass
class Prop56Data:
    alpha: Matrix
    z: object
    h: int
    image: Submodule
    knoerrer_image: Matrix
    presentation: Matrix
    knoerrer_presentation: Matrix
    ops: list
    transformed: Matrix
    target: Matrix
    matches: bool
    metadata: dict


def prop56_image(alpha, f, z, h, u="u", v="v"):
    """Im(alpha z^h) over S/(f), its Knörrer counterpart and the presentation
    identity: the Knörrer image of (alpha -z^h; 0 alpha) becomes
    (alpha zeta -z^h 0; eta_bar -alpha 0 -z^h; 0 0 alpha zeta; 0 0 eta_bar -alpha)
    after the recorded row/column swaps."""
    S = alpha.ring
    n = alpha.nrows
    R = QuotientRing(S, f)
    zz = S(z)
    cols = alpha.columns() + [tuple(zz ** h if k == i else S.zero for k in range(n)) for i in range(n)]
    image = Submodule(R, n, cols)
    ki = knoerrer_image(alpha, f, zz, h, u, v)
    pres = cokernel_presentation(alpha, zz, h)
    kp = knoerrer_presentation(alpha, f, zz, h, u, v)
    ops = knoerrer_presentation_ops(n)
    transformed = apply_elementary_ops(kp, ops)
    S2 = kp.ring
    a = alpha.lift(S2)
    i = S2.field.i
    ZT = Matrix.scalar(S2, n, S2.gen(u) + S2.gen(v) * i)
    EB = Matrix.scalar(S2, n, S2.gen(u) - S2.gen(v) * i)
    zh = Matrix.scalar(S2, n, S2(zz) ** h)
    Z = Matrix.zeros(S2, n, n)
    target = Matrix.block([[a, ZT, -zh, Z], [EB, -a, Z, -zh], [Z, Z, a, ZT], [Z, Z, EB, -a]])
    return Prop56Data(alpha, zz, h, image, ki, pres, kp, ops, transformed, target,
                      transformed == target, {"f": str(f), "z": str(zz)})
