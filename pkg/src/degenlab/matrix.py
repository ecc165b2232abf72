"""Small exact matrices of polynomials."""
from __future__ import annotations

from itertools import combinations

from .poly import Poly, PolyRing, RingMismatchError, render, parse_poly, substitute

__all__ = ["Matrix", "det"]


class Matrix:
    """Immutable r x c matrix with entries in a :class:`PolyRing`."""

    __slots__ = ("ring", "rows")

    def __init__(self, ring, rows):
        self.ring = ring
        self.rows = tuple(tuple(ring(e) for e in row) for row in rows)
        if len({len(r) for r in self.rows}) > 1:
            raise ValueError("ragged matrix")

    # -- construction --------------------------------------------------
    @classmethod
    def identity(cls, ring, n):
        return cls.scalar(ring, n, 1)

    @classmethod
    def scalar(cls, ring, n, c):
        c = ring(c)
        z = ring.zero
        return cls(ring, [[c if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring, r, c):
        return cls(ring, [[ring.zero] * c for _ in range(r)])

    @classmethod
    def from_columns(cls, ring, cols, nrows=None):
        cols = [tuple(c) for c in cols]
        if not cols:
            return cls.zeros(ring, nrows or 0, 0)
        return cls(ring, list(zip(*cols)))

    @classmethod
    def block(cls, blocks):
        """Assemble from a 2D list of matrices (``None``-free)."""
        ring = blocks[0][0].ring
        rows = []
        for brow in blocks:
            for i in range(brow[0].nrows):
                rows.append(sum((b.rows[i] for b in brow), ()))
        return cls(ring, rows)

    @classmethod
    def diag_blocks(cls, mats):
        ring = mats[0].ring
        n = sum(m.nrows for m in mats)
        c = sum(m.ncols for m in mats)
        out = [[ring.zero] * c for _ in range(n)]
        r0 = c0 = 0
        for m in mats:
            for i in range(m.nrows):
                for j in range(m.ncols):
                    out[r0 + i][c0 + j] = m.rows[i][j]
            r0 += m.nrows
            c0 += m.ncols
        return cls(ring, out)

    @classmethod
    def parse(cls, ring, rows):
        return cls(ring, [[parse_poly(e, ring) if isinstance(e, str) else e for e in r] for r in rows])

    # -- shape ---------------------------------------------------------
    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def is_square(self):
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.col(j) for j in range(self.ncols)]

    @property
    def T(self):
        return Matrix(self.ring, list(zip(*self.rows)) if self.rows else [])

    def submatrix(self, rows, cols):
        return Matrix(self.ring, [[self.rows[i][j] for j in cols] for i in rows])

    # -- arithmetic ----------------------------------------------------
    def _check(self, other):
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Matrix(self.ring, [[-a for a in r] for r in self.rows])

    def __matmul__(self, other):
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        z = self.ring.zero
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = z
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(self.ring, out)

    def __mul__(self, c):
        """Scalar or polynomial multiple."""
        if isinstance(c, Matrix):
            raise TypeError("use @ for matrix products")
        c = self.ring(c)
        return Matrix(self.ring, [[a * c for a in r] for r in self.rows])

    __rmul__ = __mul__

    def __pow__(self, n):
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        r, b = Matrix.identity(self.ring, self.nrows), self
        while n:
            if n & 1:
                r = r @ b
            b = b @ b
            n >>= 1
        return r

    def apply(self, vec):
        """Matrix times a column given as a sequence of polys."""
        z = self.ring.zero
        out = []
        for r in self.rows:
            acc = z
            for a, b in zip(r, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def map(self, fn):
        return Matrix(self.ring, [[fn(a) for a in r] for r in self.rows])

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.ring == other.ring and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def is_zero(self):
        return all(a.is_zero() for r in self.rows for a in r)

    # -- ring changes --------------------------------------------------
    def lift(self, ring):
        return Matrix(ring, [[a.lift(ring) for a in r] for r in self.rows])

    def subs(self, var, value):
        target = self.ring.drop(var)
        return Matrix(target, [[substitute(a, var, value) for a in r] for r in self.rows])

    def normal_form(self, R):
        return Matrix(self.ring, [[R.normal_form(a) for a in r] for r in self.rows])

    # -- invariants ----------------------------------------------------
    def trace(self):
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        acc = self.ring.zero
        for i in range(self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def det(self):
        return det(self)

    def minors(self, j):
        """All j x j minors, row-subset major."""
        if j < 0 or j > min(self.shape):
            raise ValueError(f"minor size {j} out of range for {self.shape}")
        if j == 0:
            return [self.ring.one]
        memo = {}
        out = []
        for rs in combinations(range(self.nrows), j):
            for cs in combinations(range(self.ncols), j):
                out.append(_laplace(self.rows, rs, cs, memo, self.ring))
        return out

    def inverse_unimodular(self):
        """Inverse of a matrix whose determinant is a nonzero constant."""
        d = self.det()
        if d.is_zero() or not d.is_constant():
            raise ValueError("matrix is not invertible over the polynomial ring")
        n = self.nrows
        memo = {}
        allr = tuple(range(n))
        adj = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                rs = allr[:j] + allr[j + 1:]
                cs = allr[:i] + allr[i + 1:]
                m = _laplace(self.rows, rs, cs, memo, self.ring) if n > 1 else self.ring.one
                adj[i][j] = m if (i + j) % 2 == 0 else -m
        inv_d = self.ring.field.one / d.constant_coeff()
        return Matrix(self.ring, [[a.scale(inv_d) for a in r] for r in adj])

    # -- I/O -----------------------------------------------------------
    def to_strings(self):
        return [[render(a) for a in r] for r in self.rows]

    def to_json(self):
        return {"ring": self.ring.descriptor(), "rows": self.nrows, "cols": self.ncols,
                "entries": self.to_strings()}

    @classmethod
    def from_json(cls, d, ring=None):
        ring = ring or PolyRing.from_descriptor(d["ring"])
        m = cls.parse(ring, d["entries"]) if d["entries"] else cls.zeros(ring, d.get("rows", 0), d.get("cols", 0))
        if (m.nrows, m.ncols) != (d.get("rows", m.nrows), d.get("cols", m.ncols)):
            raise ValueError("declared shape does not match entries")
        return m

    def __repr__(self):
        return "Matrix(" + "; ".join(", ".join(render(a) for a in r) for r in self.rows) + ")"


def _laplace(rows, rs, cs, memo, ring):
    # expansion along the first listed row, memoised on (rows, cols)
    key = (rs, cs)
    if key in memo:
        return memo[key]
    if len(rs) == 1:
        val = rows[rs[0]][cs[0]]
    else:
        val = ring.zero
        r0, rest = rs[0], rs[1:]
        for k, c in enumerate(cs):
            a = rows[r0][c]
            if a.is_zero():
                continue
            sub = _laplace(rows, rest, cs[:k] + cs[k + 1:], memo, ring)
            if sub.is_zero():
                continue
            val = val + a * sub if k % 2 == 0 else val - a * sub
    memo[key] = val
    return val


def det(m):
    """Determinant by memoised cofactor expansion (exact over any ring)."""
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    if m.nrows == 0:
        return m.ring.one
    n = tuple(range(m.nrows))
    return _laplace(m.rows, n, n, {}, m.ring)
