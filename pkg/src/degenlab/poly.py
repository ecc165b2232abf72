"""Exact multivariate polynomials over Q, Q(i) and prime fields.

Polynomials are immutable.  A :class:`Poly` stores a dict mapping exponent
tuples to nonzero coefficients; the descending term list is derived from the
ring's monomial order on demand.
"""
from __future__ import annotations

import re
from fractions import Fraction

from gmpy2 import mpq

__all__ = [
    "CoeffField", "QQ", "QQI", "GF", "PolyRing", "Poly", "QuotientRing",
    "PolySyntaxError", "RingMismatchError",
    "parse_poly", "render", "divide", "normal_form", "substitute",
]


class RingMismatchError(ValueError):
    pass


class PolySyntaxError(ValueError):
    def __init__(self, message, pos):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


# ---------------------------------------------------------------------------
# coefficient fields

class ModP:
    """Element of the prime field F_p."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            return other.v
        if isinstance(other, int):
            return other
        other = mpq(other)
        return int(other.numerator) * pow(int(other.denominator), -1, self.p)

    def __add__(self, o):
        return ModP(self.v + self._coerce(o), self.p)

    __radd__ = __add__

    def __sub__(self, o):
        return ModP(self.v - self._coerce(o), self.p)

    def __rsub__(self, o):
        return ModP(self._coerce(o) - self.v, self.p)

    def __mul__(self, o):
        return ModP(self.v * self._coerce(o), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __truediv__(self, o):
        d = self._coerce(o) % self.p
        if d == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return ModP(self.v * pow(d, -1, self.p), self.p)

    def __rtruediv__(self, o):
        return ModP(self._coerce(o), self.p) / self

    def __pow__(self, n):
        if n < 0:
            return ModP(pow(self.v, -1, self.p), self.p) ** (-n)
        return ModP(pow(self.v, n, self.p), self.p)

    def __eq__(self, o):
        try:
            return (self.v - self._coerce(o)) % self.p == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"ModP({self.v}, {self.p})"


class GaussQ:
    """Element a + b*i of Q(i), with i^2 = -1."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = mpq(re)
        self.im = mpq(im)

    @staticmethod
    def _c(o):
        if isinstance(o, GaussQ):
            return o
        return GaussQ(o, 0)

    def __add__(self, o):
        o = self._c(o)
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._c(o)
        return GaussQ(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        o = self._c(o)
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __truediv__(self, o):
        o = self._c(o)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return self * GaussQ(o.re / n, -o.im / n)

    def __rtruediv__(self, o):
        return self._c(o) / self

    def __pow__(self, n):
        r, b = GaussQ(1), self
        if n < 0:
            b, n = GaussQ(1) / b, -n
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def __eq__(self, o):
        if isinstance(o, (GaussQ, int, Fraction, _MPQ)):
            o = self._c(o)
            return self.re == o.re and self.im == o.im
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussQ({self.re}, {self.im})"


_MPQ = type(mpq(0))


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class CoeffField:
    """One of Q, Q(i) or F_p (p an odd prime)."""

    def __init__(self, kind="rationals", p=0):
        if kind not in ("rationals", "gaussian-rationals", "prime-field"):
            raise ValueError(f"unknown field kind {kind!r}")
        if kind == "prime-field":
            if not _is_prime(p) or p == 2:
                raise ValueError("prime field needs an odd prime (characteristic 2 is excluded)")
        else:
            p = 0
        self.kind = kind
        self.p = p
        self._sqrt_m1 = None
        if kind == "prime-field" and p % 4 == 1:
            self._sqrt_m1 = next(r for r in range(2, p) if (r * r + 1) % p == 0)

    @property
    def characteristic(self):
        return self.p

    @property
    def has_sqrt_minus_one(self):
        return self.kind == "gaussian-rationals" or self._sqrt_m1 is not None

    @property
    def i(self):
        """A fixed square root of -1."""
        if self.kind == "gaussian-rationals":
            return GaussQ(0, 1)
        if self._sqrt_m1 is not None:
            return ModP(self._sqrt_m1, self.p)
        raise ValueError(f"{self} has no square root of -1")

    def __call__(self, value):
        if self.kind == "prime-field":
            if isinstance(value, ModP):
                return ModP(value.v, self.p)
            if isinstance(value, int):
                return ModP(value, self.p)
            if isinstance(value, GaussQ):
                if value.im:
                    raise ValueError("cannot map i into this prime field")
                value = value.re
            q = mpq(value)
            return ModP(int(q.numerator) * pow(int(q.denominator), -1, self.p), self.p)
        if isinstance(value, GaussQ):
            if self.kind == "rationals":
                if value.im:
                    raise ValueError("Q has no square root of -1")
                return value.re
            return value
        if isinstance(value, ModP):
            raise ValueError("cannot lift a prime-field element to characteristic 0")
        q = mpq(value)
        return GaussQ(q) if self.kind == "gaussian-rationals" else q

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def render(self, c):
        """Text for a coefficient; parenthesised when it is a sum."""
        if isinstance(c, ModP):
            v = c.v if c.v <= c.p // 2 else c.v - c.p
            return str(v)
        if isinstance(c, GaussQ):
            if not c.im:
                return str(c.re)
            im = "i" if c.im == 1 else "-i" if c.im == -1 else f"{c.im}*i"
            if not c.re:
                return im
            sign = "-" if c.im < 0 else "+"
            mag = "i" if abs(c.im) == 1 else f"{abs(c.im)}*i"
            return f"({c.re} {sign} {mag})"
        return str(c)

    def is_negative(self, c):
        if isinstance(c, ModP):
            return c.v > c.p // 2
        if isinstance(c, GaussQ):
            return (c.re < 0) if c.re else (c.im < 0)
        return c < 0

    def descriptor(self):
        return {"char": self.p, "adjoin_i": self.kind == "gaussian-rationals"}

    def __eq__(self, other):
        return isinstance(other, CoeffField) and (self.kind, self.p) == (other.kind, other.p)

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        if self.kind == "prime-field":
            return f"GF({self.p})"
        return "QQ" if self.kind == "rationals" else "QQ(i)"


QQ = CoeffField("rationals")
QQI = CoeffField("gaussian-rationals")


def GF(p):
    return CoeffField("prime-field", p)


# ---------------------------------------------------------------------------
# rings

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
ORDERS = ("lex", "grlex", "grevlex")


def _key_lex(e):
    return e


def _key_grlex(e):
    return (sum(e), e)


def _key_grevlex(e):
    return (sum(e), tuple(-a for a in reversed(e)))


_KEYS = {"lex": _key_lex, "grlex": _key_grlex, "grevlex": _key_grevlex}


class PolyRing:
    """k[vars] with a monomial order.  Rings compare equal by value."""

    def __init__(self, vars, order="grevlex", field=QQ):
        vars = tuple(vars)
        for v in vars:
            if not _IDENT.match(v):
                raise ValueError(f"bad variable name {v!r}")
        if len(set(vars)) != len(vars):
            raise ValueError("variable names must be distinct")
        if order not in ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        if field.has_sqrt_minus_one and "i" in vars:
            raise ValueError("'i' is reserved for the square root of -1")
        self.vars = vars
        self.order = order
        self.field = field
        self.nvars = len(vars)
        self.sort_key = _KEYS[order]
        self._zero_exp = (0,) * self.nvars

    def __eq__(self, other):
        return isinstance(other, PolyRing) and (self.vars, self.order, self.field) == (
            other.vars, other.order, other.field)

    def __hash__(self):
        return hash((self.vars, self.order, self.field))

    def __repr__(self):
        return f"PolyRing({list(self.vars)}, {self.order!r}, {self.field!r})"

    def index(self, name):
        try:
            return self.vars.index(name)
        except ValueError:
            raise KeyError(f"variable {name!r} not in {self.vars}") from None

    def gen(self, name):
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Poly(self, {tuple(e): self.field.one})

    def gens(self):
        return tuple(self.gen(v) for v in self.vars)

    @property
    def zero(self):
        return Poly(self, {})

    @property
    def one(self):
        return self.const(1)

    def const(self, c):
        c = self.field(c)
        return Poly(self, {self._zero_exp: c} if c else {})

    def monomial(self, exps, coeff=1):
        c = self.field(coeff)
        return Poly(self, {tuple(exps): c} if c else {})

    def __call__(self, value):
        """Coerce a string, scalar or Poly (lifted by variable name)."""
        if isinstance(value, Poly):
            return value if value.ring == self else value.lift(self)
        if isinstance(value, str):
            return parse_poly(value, self)
        return self.const(value)

    def extend(self, *names, order=None):
        return PolyRing(self.vars + tuple(names), order or self.order, self.field)

    def drop(self, *names):
        for n in names:
            self.index(n)
        return PolyRing(tuple(v for v in self.vars if v not in names), self.order, self.field)

    def with_order(self, order):
        return PolyRing(self.vars, order, self.field)

    def with_field(self, field):
        return PolyRing(self.vars, self.order, field)

    def descriptor(self):
        d = {"vars": list(self.vars), "order": self.order}
        d.update(self.field.descriptor())
        return d

    @classmethod
    def from_descriptor(cls, d):
        char = int(d.get("char", 0))
        if char:
            field = GF(char)
        else:
            field = QQI if d.get("adjoin_i") else QQ
        return cls(d["vars"], d.get("order", "grevlex"), field)


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Poly:
    """A polynomial in a :class:`PolyRing`.  Treat as immutable."""

    __slots__ = ("ring", "_t", "_sorted")

    def __init__(self, ring, terms):
        self.ring = ring
        self._t = terms
        self._sorted = None

    # -- structure -----------------------------------------------------
    @property
    def terms(self):
        """(exponents, coefficient) pairs, strictly descending."""
        if self._sorted is None:
            key = self.ring.sort_key
            self._sorted = sorted(self._t.items(), key=lambda it: key(it[0]), reverse=True)
        return self._sorted

    def term_dict(self):
        return dict(self._t)

    def __len__(self):
        return len(self._t)

    def is_zero(self):
        return not self._t

    def __bool__(self):
        return bool(self._t)

    @property
    def lm(self):
        return self.terms[0][0]

    @property
    def lc(self):
        return self.terms[0][1]

    def is_constant(self):
        return not self._t or (len(self._t) == 1 and self.ring._zero_exp in self._t)

    def constant_coeff(self):
        return self._t.get(self.ring._zero_exp, self.ring.field.zero)

    def total_degree(self):
        return max((sum(e) for e in self._t), default=-1)

    def degree(self, var):
        i = self.ring.index(var)
        return max((e[i] for e in self._t), default=-1)

    def variables(self):
        return [v for i, v in enumerate(self.ring.vars) if any(e[i] for e in self._t)]

    def coeff_in(self, var):
        """Coefficients c_k (polys in the ring without ``var``) with self = sum c_k var^k."""
        i = self.ring.index(var)
        sub = self.ring.drop(var)
        out = {}
        for e, c in self._t.items():
            out.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        deg = max(out, default=-1)
        return [Poly(sub, out.get(k, {})) for k in range(deg + 1)]

    # -- comparison ----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self._t == other._t
        try:
            return self == self.ring.const(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    # -- arithmetic ----------------------------------------------------
    def _other(self, o):
        if isinstance(o, Poly):
            if o.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {o.ring}")
            return o
        return self.ring.const(o)

    def __add__(self, o):
        o = self._other(o)
        t = dict(self._t)
        for e, c in o._t.items():
            s = t.get(e)
            if s is None:
                t[e] = c
            else:
                s = s + c
                if s:
                    t[e] = s
                else:
                    del t[e]
        return Poly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self._t.items()})

    def __sub__(self, o):
        return self + (-self._other(o))

    def __rsub__(self, o):
        return self._other(o) - self

    def __mul__(self, o):
        if not isinstance(o, Poly):
            return self.scale(o)
        o = self._other(o)
        if len(self._t) < len(o._t):
            a, b = self._t, o._t
        else:
            a, b = o._t, self._t
        t = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = t.get(e)
                t[e] = c1 * c2 if s is None else s + c1 * c2
        return Poly(self.ring, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def scale(self, c):
        c = self.ring.field(c)
        if not c:
            return self.ring.zero
        return Poly(self.ring, {e: v * c for e, v in self._t.items()})

    def mul_term(self, exps, c):
        return Poly(self.ring, {_add_exp(e, exps): v * c for e, v in self._t.items()})

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        r, b = self.ring.one, self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def __truediv__(self, c):
        """Division by a scalar (or by a constant polynomial)."""
        if isinstance(c, Poly):
            if not c.is_constant() or c.is_zero():
                raise ZeroDivisionError("can only divide by a nonzero constant")
            c = c.constant_coeff()
        return self.scale(self.ring.field.one / self.ring.field(c))

    def monic(self):
        return self if not self._t else self / self.lc

    # -- conversion ----------------------------------------------------
    def lift(self, ring):
        """Re-express in ``ring`` by matching variable names."""
        if ring == self.ring:
            return self
        pos = []
        for i, v in enumerate(self.ring.vars):
            if any(e[i] for e in self._t):
                pos.append((i, ring.index(v)))
        t = {}
        for e, c in self._t.items():
            ne = [0] * ring.nvars
            for i, j in pos:
                ne[j] = e[i]
            c = ring.field(c)
            if c:
                t[tuple(ne)] = c
        return Poly(ring, t)

    def subs(self, var, value):
        return substitute(self, var, value)

    def evaluate(self, point):
        """Value at ``point`` (mapping var name -> field element)."""
        vals = [point[v] for v in self.ring.vars]
        acc = self.ring.field.zero
        for e, c in self._t.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term = term * v ** k
            acc = acc + term
        return acc

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Poly({render(self)!r})"


# ---------------------------------------------------------------------------
# text I/O

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<id>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


def _tokenize(text):
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolySyntaxError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text, ring):
        self.toks = _tokenize(text)
        self.k = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.k]

    def take(self, value=None):
        tok = self.toks[self.k]
        if value is not None and tok[1] != value:
            raise PolySyntaxError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.k += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self):
        base = self.base()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise PolySyntaxError("exponent must be an unsigned integer", pos)
            return base ** int(val)
        return base

    def base(self):
        kind, val, pos = self.take()
        ring = self.ring
        if kind == "num":
            num = int(val)
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                k2, v2, p2 = self.take()
                if k2 != "num":
                    raise PolySyntaxError("denominator must be an unsigned integer", p2)
                if int(v2) == 0:
                    raise PolySyntaxError("division by zero in rational literal", p2)
                return ring.const(Fraction(num, int(v2)))
            return ring.const(num)
        if kind == "id":
            if val == "i" and ring.field.has_sqrt_minus_one:
                return ring.const(ring.field.i)
            if val not in ring.vars:
                raise PolySyntaxError(f"unknown variable {val!r}", pos)
            return ring.gen(val)
        if kind == "op" and val == "(":
            e = self.expr()
            self.take(")")
            return e
        raise PolySyntaxError(f"unexpected {val or 'end of input'!r}", pos)


def parse_poly(text, ring):
    """Parse ``text`` with the grammar documented in the README."""
    p = _Parser(text, ring)
    if p.peek()[0] == "end":
        raise PolySyntaxError("empty expression", 0)
    out = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        raise PolySyntaxError(f"unexpected {tok[1]!r}", tok[2])
    return out


def _render_monomial(ring, e):
    parts = []
    for v, k in zip(ring.vars, e):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def render(p):
    """Canonical text: terms in descending monomial order."""
    if not p._t:
        return "0"
    field = p.ring.field
    out = []
    for e, c in p.terms:
        neg = field.is_negative(c)
        mag = -c if neg else c
        mono = _render_monomial(p.ring, e)
        cs = field.render(mag)
        if not mono:
            body = cs
        elif mag == 1:
            body = mono
        else:
            body = f"{cs}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# ---------------------------------------------------------------------------
# division, quotient rings, substitution

def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def divide(p, divisors):
    """Multivariate division: returns (quotients, remainder) with
    p = sum q_i d_i + r and no term of r divisible by any lm(d_i)."""
    ring = p.ring
    for d in divisors:
        if d.ring != ring:
            raise RingMismatchError("divisor ring differs")
        if d.is_zero():
            raise ZeroDivisionError("zero divisor in division")
    leads = [(d.lm, d.lc, d) for d in divisors]
    qs = [dict() for _ in divisors]
    rem = {}
    work = dict(p._t)
    key = ring.sort_key
    while work:
        e = max(work, key=key)
        c = work[e]
        for k, (lm, lc, d) in enumerate(leads):
            if _divides(lm, e):
                q = tuple(a - b for a, b in zip(e, lm))
                m = c / lc
                qs[k][q] = qs[k].get(q, 0) + m
                for de, dc in d._t.items():
                    ne = _add_exp(de, q)
                    nv = work.get(ne, 0) - m * dc
                    if nv:
                        work[ne] = nv
                    else:
                        work.pop(ne, None)
                break
        else:
            rem[e] = c
            del work[e]
    quots = [Poly(ring, {e: ring.field(c) for e, c in q.items() if c}) for q in qs]
    return quots, Poly(ring, rem)


class QuotientRing:
    """R = base/(f).  With ``var`` set, f must be monic in that variable and
    R is viewed as a free module over the polynomial ring in the other
    variables (the coefficient ring S)."""

    def __init__(self, base, f, var=None):
        if isinstance(f, str):
            f = parse_poly(f, base)
        f = base(f)
        if f.is_zero():
            raise ValueError("defining polynomial must be nonzero")
        if f.constant_coeff():
            raise ValueError("defining polynomial must lie in the maximal ideal")
        self.base = base
        self.f = f
        self.var = var
        if var is not None:
            cs = f.coeff_in(var)
            if not (cs[-1].is_constant() and cs[-1].constant_coeff() == 1):
                raise ValueError(f"f is not monic in {var}")
            self.degree = len(cs) - 1

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and (self.base, self.f, self.var) == (
            other.base, other.f, other.var)

    def __hash__(self):
        return hash((self.base, self.f, self.var))

    def __repr__(self):
        return f"QuotientRing({self.base!r}, {render(self.f)!r}, var={self.var!r})"

    @property
    def field(self):
        return self.base.field

    @property
    def s_ring(self):
        """The coefficient ring S (base without the presentation variable)."""
        if self.var is None:
            raise ValueError("no presentation variable set")
        return self.base.drop(self.var)

    def x_coefficients(self):
        """[c_0, ..., c_d] in S with f = sum c_k x^k."""
        return self.f.coeff_in(self.var)

    def normal_form(self, p):
        return normal_form(self.base(p), self)

    def __call__(self, value):
        return self.normal_form(self.base(value))

    def descriptor(self):
        d = self.base.descriptor()
        d["f"] = render(self.f)
        if self.var is not None:
            d["presentation_var"] = self.var
        return d

    @classmethod
    def from_descriptor(cls, d):
        base = PolyRing.from_descriptor(d)
        return cls(base, parse_poly(d["f"], base), d.get("presentation_var"))


def normal_form(p, R):
    """Remainder of ``p`` on division by the defining polynomial of ``R``."""
    return divide(p, [R.f])[1]


def substitute(p, var, value):
    """Replace ``var`` by a scalar or by a Poly from the ring without ``var``."""
    ring = p.ring
    i = ring.index(var)
    target = ring.drop(var)
    if isinstance(value, Poly):
        if value.ring != target:
            if var in value.variables():
                raise ValueError("substituted value must not involve the variable itself")
            value = value.lift(target)
    else:
        value = target.const(value)
    powers = {0: target.one}
    out = target.zero
    groups = {}
    for e, c in p._t.items():
        groups.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
    for k, t in groups.items():
        if k not in powers:
            powers[k] = value ** k
        out = out + Poly(target, t) * powers[k]
    return out
