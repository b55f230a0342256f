"""Exact arithmetic over a single real algebraic generator.

Every geometric quantity in the package is a rational polynomial in one
designated real algebraic number theta (monic irreducible integer minimal
polynomial plus an isolating interval).  Signs and comparisons are decided
exactly by interval refinement; floating point only enters through the
explicit embedding helpers, which always report an error bound.

Systems whose data is purely rational use the trivial context (theta = 0).
Generators of degree > 6 fall back to tolerance-based float arithmetic,
flagged on the context, so reports can mark non-certified verdicts.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from . import polynomials as P
from .errors import ConfigError, ContextMismatchError, PrecisionError

EXACT_DEGREE_CAP = 6
FLOAT_MODE_TOL = 1e-9

_REFINE_CAP = 20000


def parse_fraction(x) -> Fraction:
    """Accept int, Fraction, or strings like '3', '-1/2'."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        if x != int(x):
            raise ConfigError(f"non-integral float {x!r} not allowed in exact data")
        return Fraction(int(x))
    raise ConfigError(f"cannot interpret {x!r} as a rational number")


class AlgebraicContext:
    """The generator theta: minimal polynomial plus isolating interval."""

    _registry: dict = {}

    def __init__(self, minpoly: Sequence, lo, hi, _exact: bool = True):
        mp = P.poly([parse_fraction(c) for c in minpoly])
        if not P.is_monic_integer(mp):
            raise ConfigError("minpoly not monic with integer coefficients")
        self.minpoly = tuple(int(c) for c in mp)
        self.degree = P.degree(mp)
        if self.degree < 1:
            raise ConfigError("minpoly must have degree >= 1")
        # beyond the cap, irreducibility cannot be certified: tolerance mode
        self.exact = _exact and self.degree <= EXACT_DEGREE_CAP
        lo, hi = parse_fraction(lo), parse_fraction(hi)
        if lo > hi:
            raise ConfigError("root_interval bounds out of order")
        if self.degree == 1:
            root = -mp[0]
            if not lo <= root <= hi:
                raise ConfigError("root_interval does not bracket the rational root")
            self._lo = self._hi = Fraction(root)
        else:
            if self.exact and not P.is_irreducible(mp):
                raise ConfigError(f"minpoly {P.poly_str(mp)} is reducible")
            if P.poly_eval(mp, lo) == 0 or P.poly_eval(mp, hi) == 0:
                raise ConfigError("root_interval endpoints must not be roots")
            if P.count_real_roots(mp, lo, hi) != 1:
                raise ConfigError("root_interval must isolate exactly one real root")
            self._lo, self._hi = lo, hi
        self._theta_float: float | None = None
        # reductions of theta^k for k = degree .. 2*degree-2
        red = []
        base = P.poly_neg(self.minpoly[:-1])  # theta^s = -(lower part)
        cur = P.poly(base)
        for _ in range(self.degree - 1):
            red.append(tuple(cur) + (Fraction(0),) * (self.degree - len(cur)))
            cur = self._shift_reduce(cur)
        self._power_reductions = red

    def _shift_reduce(self, p: P.Coeffs) -> P.Coeffs:
        # p(theta) * theta reduced mod minpoly, for len(p) <= degree
        shifted = (Fraction(0),) + tuple(p)
        if len(shifted) <= self.degree:
            return P.poly(shifted)
        overflow = shifted[self.degree]
        body = P.poly(shifted[: self.degree])
        return P.poly_add(body, P.poly_scale(P.poly_neg(self.minpoly[:-1]), overflow))

    @classmethod
    def get(cls, minpoly: Sequence, lo, hi) -> "AlgebraicContext":
        """Interned construction: one context object per (minpoly, root)."""
        probe = cls(minpoly, lo, hi)
        mp = P.poly(probe.minpoly)
        below = -P.cauchy_root_bound(mp) - 1
        key = (probe.minpoly, P.count_real_roots(mp, below, probe._hi))
        if key in cls._registry:
            return cls._registry[key]
        cls._registry[key] = probe
        return probe

    @classmethod
    def rational(cls) -> "AlgebraicContext":
        return cls.get((0, 1), 0, 0)

    def refine(self) -> None:
        """Halve the isolating interval by exact bisection."""
        if self._lo == self._hi:
            return
        mid = (self._lo + self._hi) / 2
        vm = P.poly_eval(P.poly(self.minpoly), mid)
        if vm == 0:
            raise PrecisionError("midpoint hit a root of an irreducible minpoly")
        vl = P.poly_eval(P.poly(self.minpoly), self._lo)
        if (vl > 0) == (vm > 0):
            self._lo = mid
        else:
            self._hi = mid

    def interval(self, width: Fraction) -> tuple[Fraction, Fraction]:
        """Isolating interval refined to at most the requested width."""
        steps = 0
        while self._hi - self._lo > width:
            self.refine()
            steps += 1
            if steps > _REFINE_CAP:
                raise PrecisionError("interval refinement cap reached")
        return self._lo, self._hi

    def theta_float(self) -> float:
        if self._theta_float is None:
            lo, hi = self.interval(Fraction(1, 2 ** 80))
            self._theta_float = float((lo + hi) / 2)
        return self._theta_float

    def zero(self) -> "AlgebraicScalar":
        return AlgebraicScalar(self, (0,) * self.degree)

    def one(self) -> "AlgebraicScalar":
        return AlgebraicScalar(self, (1,) + (0,) * (self.degree - 1))

    def theta(self) -> "AlgebraicScalar":
        if self.degree == 1:
            return AlgebraicScalar(self, (self._lo,))
        return AlgebraicScalar(self, (0, 1) + (0,) * (self.degree - 2))

    def scalar(self, value) -> "AlgebraicScalar":
        v = parse_fraction(value)
        return AlgebraicScalar(self, (v,) + (0,) * (self.degree - 1))

    def from_coeffs(self, coeffs: Iterable) -> "AlgebraicScalar":
        cs = [parse_fraction(c) for c in coeffs]
        if len(cs) > self.degree:
            raise ConfigError("coefficient vector longer than field degree")
        cs += [Fraction(0)] * (self.degree - len(cs))
        return AlgebraicScalar(self, tuple(cs))

    def __repr__(self):
        return f"AlgebraicContext({P.poly_str(P.poly(self.minpoly), 't')}, [{self._lo}, {self._hi}])"


class AlgebraicScalar:
    """Element of Q(theta), stored as a coefficient vector in the power basis."""

    __slots__ = ("context", "coeffs", "_float", "_hash")

    def __init__(self, context: AlgebraicContext, coeffs: Sequence[Fraction]):
        self.context = context
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        if len(self.coeffs) != context.degree:
            raise ConfigError("coefficient vector length mismatch")
        self._float = None
        self._hash = None

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other) -> "AlgebraicScalar":
        if isinstance(other, AlgebraicScalar):
            if other.context is not self.context:
                raise ContextMismatchError("scalars from different generator contexts")
            return other
        if isinstance(other, (int, Fraction)):
            return self.context.scalar(other)
        return NotImplemented

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return AlgebraicScalar(self.context, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicScalar(self.context, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return AlgebraicScalar(self.context, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        s = self.context.degree
        conv = [Fraction(0)] * (2 * s - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                if b != 0:
                    conv[i + j] += a * b
        out = list(conv[:s])
        for k in range(s, 2 * s - 1):
            c = conv[k]
            if c != 0:
                red = self.context._power_reductions[k - s]
                for idx in range(s):
                    out[idx] += c * red[idx]
        return AlgebraicScalar(self.context, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero algebraic scalar")
        if self.is_rational():
            return self.context.scalar(1 / self.coeffs[0])
        # extended Euclid in Q[x] against the (irreducible) minpoly
        mp = P.poly(self.context.minpoly)
        a = P.poly(self.coeffs)
        r0, r1 = mp, a
        t0, t1 = P.poly([]), P.poly([1])
        while not P.is_zero(r1):
            q, r = P.poly_divmod(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, P.poly_sub(t0, P.poly_mul(q, t1))
        if P.degree(r0) != 0:
            raise PrecisionError("gcd with minpoly not constant; minpoly reducible?")
        inv = P.poly_scale(t0, 1 / r0[0])
        return self.context.from_coeffs(inv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.context.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- predicates and comparisons ----------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def sign(self) -> int:
        """Exact sign: 0 iff the value is exactly zero.  Always terminates.

        In tolerance mode (degree above the exactness cap) values within
        FLOAT_MODE_TOL of zero are reported as zero.
        """
        if self.is_zero():
            return 0
        if self.is_rational():
            return 1 if self.coeffs[0] > 0 else -1
        p = P.poly(self.coeffs)
        tol = Fraction(FLOAT_MODE_TOL).limit_denominator(10 ** 12)
        steps = 0
        while True:
            lo, hi = self.context._lo, self.context._hi
            vlo, vhi = P.poly_eval_interval(p, lo, hi)
            if vlo > 0:
                return 1
            if vhi < 0:
                return -1
            if not self.context.exact and max(abs(vlo), abs(vhi)) < tol:
                return 0
            self.context.refine()
            steps += 1
            if steps > _REFINE_CAP:
                raise PrecisionError("sign refinement cap reached")

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except ContextMismatchError:
            return False
        if o is NotImplemented:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.context), self.coeffs))
        return self._hash

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- embedding ----------------------------------------------------------

    def enclosure(self, width: Fraction) -> tuple[Fraction, Fraction]:
        """Exact rational interval of at most the given width containing the value."""
        if self.is_rational():
            v = self.coeffs[0]
            return v, v
        p = P.poly(self.coeffs)
        steps = 0
        while True:
            lo, hi = self.context._lo, self.context._hi
            vlo, vhi = P.poly_eval_interval(p, lo, hi)
            if vhi - vlo <= width:
                return vlo, vhi
            self.context.refine()
            steps += 1
            if steps > _REFINE_CAP:
                raise PrecisionError("enclosure refinement cap reached")

    def approx(self, bits: int = 53) -> tuple[float, float]:
        """Float approximation with a certified absolute error bound."""
        target = Fraction(1, 2 ** (bits + 1))
        vlo, vhi = self.enclosure(target)
        mid = (vlo + vhi) / 2
        f = float(mid)
        # interval halfwidth plus float conversion slack
        bound = float((vhi - vlo) / 2) + abs(f) * 2.0 ** -52 + 2.0 ** -1070
        return f, bound

    def __float__(self):
        if self._float is None:
            self._float = self.approx(60)[0]
        return self._float

    def __repr__(self):
        if self.is_rational():
            return f"{self.coeffs[0]}"
        return f"<{P.poly_str(P.poly(self.coeffs), 't')} ~ {float(self):.6f}>"

    def to_json(self):
        return [str(c) for c in self.coeffs]


# -- spec-facing functional surface ----------------------------------------


def scalar_arith(a: AlgebraicScalar, b: AlgebraicScalar, op: str) -> AlgebraicScalar:
    """add / sub / mul on scalars sharing one generator context."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def scalar_sign(a: AlgebraicScalar) -> int:
    return a.sign()


def embed_float(a: AlgebraicScalar, precision: int = 53) -> tuple[float, float]:
    """Approximation within 2^-precision of the true value, bound reported."""
    return a.approx(precision)


# -- expression parsing ------------------------------------------------------


class _ExprParser:
    def __init__(self, text: str, context: AlgebraicContext, allow_theta: bool):
        self.tokens = self._tokenize(text)
        self.pos = 0
        self.ctx = context
        self.allow_theta = allow_theta

    @staticmethod
    def _tokenize(text: str):
        toks = []
        i = 0
        while i < len(text):
            c = text[i]
            if c.isspace():
                i += 1
            elif c in "+-*/()^":
                toks.append(c)
                i += 1
            elif c.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                toks.append(int(text[i:j]))
                i = j
            elif c == "t":
                toks.append("t")
                i += 1
            else:
                raise ConfigError(f"bad character {c!r} in scalar expression {text!r}")
        return toks

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self):
        tok = self._peek()
        self.pos += 1
        return tok

    def parse(self) -> AlgebraicScalar:
        v = self._expr()
        if self._peek() is not None:
            raise ConfigError(f"trailing tokens in scalar expression: {self.tokens[self.pos:]}")
        return v

    def _expr(self):
        v = self._term()
        while self._peek() in ("+", "-"):
            op = self._next()
            rhs = self._term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def _term(self):
        v = self._factor()
        while self._peek() in ("*", "/"):
            op = self._next()
            rhs = self._factor()
            v = v * rhs if op == "*" else v / rhs
        return v

    def _factor(self):
        tok = self._peek()
        if tok == "-":
            self._next()
            return -self._factor()
        if tok == "+":
            self._next()
            return self._factor()
        v = self._atom()
        if self._peek() == "^":
            self._next()
            e = self._next()
            if not isinstance(e, int):
                raise ConfigError("exponent must be an integer literal")
            v = v ** e
        return v

    def _atom(self):
        tok = self._next()
        if isinstance(tok, int):
            return self.ctx.scalar(tok)
        if tok == "t":
            if not self.allow_theta:
                raise ConfigError("symbol 't' used but no theta declared for this system")
            return self.ctx.theta()
        if tok == "(":
            v = self._expr()
            if self._next() != ")":
                raise ConfigError("unbalanced parenthesis in scalar expression")
            return v
        raise ConfigError(f"unexpected token {tok!r} in scalar expression")


def parse_scalar(expr, context: AlgebraicContext, allow_theta: bool = True) -> AlgebraicScalar:
    """Parse a config scalar: int, 'p/q', or an expression over rationals and 't'."""
    if isinstance(expr, AlgebraicScalar):
        if expr.context is not context:
            raise ContextMismatchError("scalar from a different context")
        return expr
    if isinstance(expr, (int, Fraction)):
        return context.scalar(expr)
    if isinstance(expr, float):
        return context.scalar(parse_fraction(expr))
    if isinstance(expr, str):
        return _ExprParser(expr, context, allow_theta).parse()
    raise ConfigError(f"cannot parse scalar {expr!r}")


# -- vectors -----------------------------------------------------------------


class AlgebraicVector:
    """Point of R^d with entries sharing one generator context."""

    __slots__ = ("context", "entries", "_hash")

    def __init__(self, entries: Sequence[AlgebraicScalar]):
        entries = tuple(entries)
        if not entries:
            raise ConfigError("empty vector")
        ctx = entries[0].context
        for e in entries[1:]:
            if e.context is not ctx:
                raise ContextMismatchError("vector entries from different contexts")
        self.context = ctx
        self.entries = entries
        self._hash = None

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __add__(self, other):
        return AlgebraicVector(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other):
        return AlgebraicVector(tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self):
        return AlgebraicVector(tuple(-a for a in self.entries))

    def scale(self, s) -> "AlgebraicVector":
        return AlgebraicVector(tuple(e * s for e in self.entries))

    def dot(self, other) -> AlgebraicScalar:
        acc = self.entries[0] * other.entries[0]
        for a, b in zip(self.entries[1:], other.entries[1:]):
            acc = acc + a * b
        return acc

    def norm_sq(self) -> AlgebraicScalar:
        return self.dot(self)

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def __eq__(self, other):
        if not isinstance(other, AlgebraicVector):
            return NotImplemented
        return self.entries == other.entries

    def __lt__(self, other):
        for a, b in zip(self.entries, other.entries):
            s = (a - b).sign()
            if s < 0:
                return True
            if s > 0:
                return False
        return False

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(e.coeffs for e in self.entries))
        return self._hash

    def floats(self) -> tuple[float, ...]:
        return tuple(float(e) for e in self.entries)

    def __repr__(self):
        return "(" + ", ".join(repr(e) for e in self.entries) + ")"

    def to_json(self):
        return [e.to_json() for e in self.entries]


def vector(context: AlgebraicContext, exprs: Sequence) -> AlgebraicVector:
    return AlgebraicVector(tuple(parse_scalar(e, context) for e in exprs))


# -- generic exact matrix helpers (entries: Fraction or AlgebraicScalar) -----


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [
        [sum2([a[i][t] * b[t][j] for t in range(k)]) for j in range(m)]
        for i in range(n)
    ]


def sum2(items):
    acc = items[0]
    for x in items[1:]:
        acc = acc + x
    return acc


def mat_vec(a, v):
    return [sum2([a[i][j] * v[j] for j in range(len(v))]) for i in range(len(a))]


def mat_identity(n, one, zero):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def _is_zero_entry(x) -> bool:
    if isinstance(x, AlgebraicScalar):
        return x.is_zero()
    return x == 0


def mat_inverse(a, one, zero):
    """Gaussian elimination with exact nonzero pivoting."""
    n = len(a)
    aug = [list(row) + list(idrow) for row, idrow in zip(a, mat_identity(n, one, zero))]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not _is_zero_entry(aug[r][col]):
                piv = r
                break
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv_p = one / aug[col][col]
        aug[col] = [x * inv_p for x in aug[col]]
        for r in range(n):
            if r != col and not _is_zero_entry(aug[r][col]):
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def mat_charpoly(a, one, zero) -> P.Coeffs:
    """Faddeev-LeVerrier: exact characteristic polynomial det(xI - A)."""
    n = len(a)
    m = mat_identity(n, one, zero)
    coeffs = [one]  # leading coefficient of x^n
    for k in range(1, n + 1):
        am = mat_mul(a, m)
        tr = sum2([am[i][i] for i in range(n)])
        ck = tr * Fraction(-1, k)
        coeffs.append(ck)
        m = [
            [am[i][j] + (ck if i == j else zero) for j in range(n)]
            for i in range(n)
        ]
    # coeffs[i] multiplies x^(n-i); convert to constant-first
    return tuple(reversed(coeffs))


def mat_rank(a) -> int:
    """Exact rank by Gaussian elimination (entries Fraction or AlgebraicScalar)."""
    rows = [list(r) for r in a]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, len(rows)):
            if not _is_zero_entry(rows[r][col]):
                piv = r
                break
        if piv is None:
            continue
        rows[row], rows[piv] = rows[piv], rows[row]
        pivot = rows[row][col]
        for r in range(len(rows)):
            if r != row and not _is_zero_entry(rows[r][col]):
                f = rows[r][col] / pivot
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[row])]
        rank += 1
        row += 1
        if row == len(rows):
            break
    return rank


class RationalMatrix:
    """Dense exact rational matrix; acts exactly on algebraic vectors."""

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = tuple(tuple(parse_fraction(x) for x in row) for row in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for row in self.rows:
            if len(row) != self.ncols:
                raise ConfigError("ragged matrix")

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self.rows == other.rows

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix(mat_mul(self.rows, other.rows))

    def pow(self, k: int) -> "RationalMatrix":
        out = RationalMatrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def apply(self, v: AlgebraicVector) -> AlgebraicVector:
        ctx = v.context
        entries = []
        for row in self.rows:
            acc = ctx.zero()
            for c, e in zip(row, v.entries):
                if c != 0:
                    acc = acc + e * c
            entries.append(acc)
        return AlgebraicVector(tuple(entries))

    def inverse(self) -> "RationalMatrix":
        return RationalMatrix(mat_inverse(self.rows, Fraction(1), Fraction(0)))

    def charpoly(self) -> P.Coeffs:
        return mat_charpoly(self.rows, Fraction(1), Fraction(0))

    def floats(self):
        return [[float(x) for x in row] for row in self.rows]

    def __repr__(self):
        return f"RationalMatrix({[[str(x) for x in row] for row in self.rows]})"


class FieldMatrix:
    """Dense matrix with entries in Q(theta)."""

    def __init__(self, entries: Sequence[Sequence[AlgebraicScalar]]):
        self.rows = tuple(tuple(row) for row in entries)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        self.context = self.rows[0][0].context

    @classmethod
    def from_rational(cls, m: RationalMatrix, ctx: AlgebraicContext) -> "FieldMatrix":
        return cls([[ctx.scalar(x) for x in row] for row in m.rows])

    @classmethod
    def identity(cls, n: int, ctx: AlgebraicContext) -> "FieldMatrix":
        return cls([[ctx.one() if i == j else ctx.zero() for j in range(n)] for i in range(n)])

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        return FieldMatrix(mat_mul(self.rows, other.rows))

    def pow(self, k: int) -> "FieldMatrix":
        out = FieldMatrix.identity(self.nrows, self.context)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def apply(self, v: AlgebraicVector) -> AlgebraicVector:
        return AlgebraicVector(tuple(mat_vec(self.rows, list(v.entries))))

    def add(self, other: "FieldMatrix") -> "FieldMatrix":
        return FieldMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)]
        )

    def scale(self, s) -> "FieldMatrix":
        return FieldMatrix([[x * s for x in row] for row in self.rows])

    def inverse(self) -> "FieldMatrix":
        ctx = self.context
        return FieldMatrix(mat_inverse(self.rows, ctx.one(), ctx.zero()))

    def charpoly(self) -> tuple[AlgebraicScalar, ...]:
        ctx = self.context
        return mat_charpoly(self.rows, ctx.one(), ctx.zero())

    def is_rational(self) -> bool:
        return all(x.is_rational() for row in self.rows for x in row)

    def to_rational(self) -> RationalMatrix:
        return RationalMatrix([[x.as_fraction() for x in row] for row in self.rows])

    def is_scalar_multiple_of_identity(self) -> AlgebraicScalar | None:
        if self.nrows != self.ncols:
            return None
        diag = self.rows[0][0]
        for i in range(self.nrows):
            for j in range(self.ncols):
                want = diag if i == j else None
                if want is None:
                    if not self.rows[i][j].is_zero():
                        return None
                elif not (self.rows[i][j] - want).is_zero():
                    return None
        return diag

    def floats(self):
        return [[float(x) for x in row] for row in self.rows]

    def __repr__(self):
        return f"FieldMatrix({self.rows})"
