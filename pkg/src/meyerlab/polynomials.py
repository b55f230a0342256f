"""Exact univariate polynomial arithmetic over the rationals.

Polynomials are tuples of coefficients, constant term first.  All routines
are exact (int / Fraction); nothing here touches floating point except the
explicitly named float helpers.  Irreducible factorization is supported up
to degree 6, which is the exactness cap of the whole package.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Coeffs = tuple[Fraction, ...]

FACTOR_DEGREE_CAP = 6


def poly(coeffs: Sequence) -> Coeffs:
    """Normalize a coefficient sequence (strip trailing zeros)."""
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def degree(p: Coeffs) -> int:
    """Degree, with deg(0) = -1."""
    return len(p) - 1


def is_zero(p: Coeffs) -> bool:
    return len(p) == 0


def leading(p: Coeffs) -> Fraction:
    if not p:
        return Fraction(0)
    return p[-1]


def poly_add(p: Coeffs, q: Coeffs) -> Coeffs:
    n = max(len(p), len(q))
    out = [Fraction(0)] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return poly(out)


def poly_neg(p: Coeffs) -> Coeffs:
    return tuple(-c for c in p)


def poly_sub(p: Coeffs, q: Coeffs) -> Coeffs:
    return poly_add(p, poly_neg(q))


def poly_scale(p: Coeffs, s) -> Coeffs:
    s = Fraction(s)
    if s == 0:
        return ()
    return tuple(c * s for c in p)


def poly_mul(p: Coeffs, q: Coeffs) -> Coeffs:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly(out)


def poly_pow(p: Coeffs, n: int) -> Coeffs:
    out = poly([1])
    base = p
    while n > 0:
        if n & 1:
            out = poly_mul(out, base)
        base = poly_mul(base, base)
        n >>= 1
    return out


def poly_divmod(p: Coeffs, q: Coeffs) -> tuple[Coeffs, Coeffs]:
    """Exact division with remainder over Q.  q must be nonzero."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    dq = degree(q)
    lc = q[-1]
    quot = [Fraction(0)] * max(0, len(p) - dq)
    for k in range(len(p) - dq - 1, -1, -1):
        c = rem[k + dq] / lc
        if c != 0:
            quot[k] = c
            for j, b in enumerate(q):
                rem[k + j] -= c * b
    return poly(quot), poly(rem)


def poly_mod(p: Coeffs, q: Coeffs) -> Coeffs:
    return poly_divmod(p, q)[1]


def divides(q: Coeffs, p: Coeffs) -> bool:
    return is_zero(poly_divmod(p, q)[1])


def poly_gcd(p: Coeffs, q: Coeffs) -> Coeffs:
    """Monic gcd over Q."""
    a, b = p, q
    while not is_zero(b):
        a, b = b, poly_mod(a, b)
    if not a:
        return ()
    return poly_scale(a, 1 / a[-1])


def derivative(p: Coeffs) -> Coeffs:
    return poly(tuple(i * c for i, c in enumerate(p) if i > 0))


def poly_eval(p: Coeffs, x) -> Fraction:
    """Horner evaluation at an exact point."""
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_eval_float(p: Coeffs, x: float) -> float:
    acc = 0.0
    for c in reversed(p):
        acc = acc * x + float(c)
    return acc


def poly_eval_interval(p: Coeffs, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Interval Horner: exact enclosure of p([lo, hi])."""
    alo, ahi = Fraction(0), Fraction(0)
    for c in reversed(p):
        prods = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(prods) + c, max(prods) + c
    return alo, ahi


def poly_eval_gauss(p: Coeffs, re: Fraction, im: Fraction) -> tuple[Fraction, Fraction]:
    """Horner at a Gaussian-rational point; returns (re, im) exactly."""
    ar, ai = Fraction(0), Fraction(0)
    for c in reversed(p):
        ar, ai = ar * re - ai * im + c, ar * im + ai * re
    return ar, ai


def content(p: Coeffs) -> Fraction:
    """Rational content: p / content(p) is a primitive integer polynomial."""
    if not p:
        return Fraction(0)
    num = 0
    den = 1
    for c in p:
        num = math.gcd(num, c.numerator)
        den = den * c.denominator // math.gcd(den, c.denominator)
    sign = 1 if p[-1] > 0 else -1
    return Fraction(sign * num, den)


def primitive_part(p: Coeffs) -> tuple[int, ...]:
    """Integer primitive part with positive leading coefficient."""
    c = content(p)
    if c == 0:
        return ()
    return tuple(int(x / c) for x in p)


def is_monic_integer(p: Coeffs) -> bool:
    return bool(p) and p[-1] == 1 and all(c.denominator == 1 for c in p)


def cauchy_root_bound(p: Coeffs) -> Fraction:
    """All complex roots of p lie in |z| <= bound."""
    if degree(p) < 1:
        return Fraction(1)
    lc = abs(p[-1])
    m = max(abs(c) for c in p[:-1]) if len(p) > 1 else Fraction(0)
    return 1 + m / lc


def _divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        return []
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def rational_roots(p: Coeffs) -> list[Fraction]:
    """All rational roots (without multiplicity) of a nonzero polynomial."""
    ip = primitive_part(p)
    if not ip:
        return []
    roots = []
    if ip[0] == 0:
        roots.append(Fraction(0))
        while ip and ip[0] == 0:
            ip = ip[1:]
        if not ip:
            return roots
    for q in _divisors(ip[-1]):
        for r in _divisors(ip[0]):
            for s in (1, -1):
                cand = Fraction(s * r, q)
                if cand not in roots and poly_eval(poly(ip), cand) == 0:
                    roots.append(cand)
    return roots


def squarefree_decomposition(p: Coeffs) -> list[tuple[Coeffs, int]]:
    """Yun's algorithm: [(g_i, i)] with p = lc * prod g_i^i, g_i monic squarefree."""
    p = poly_scale(p, 1 / p[-1])
    out: list[tuple[Coeffs, int]] = []
    dp = derivative(p)
    a = poly_gcd(p, dp)
    b = poly_divmod(p, a)[0]
    c = poly_divmod(dp, a)[0]
    d = poly_sub(c, derivative(b))
    i = 1
    while degree(b) > 0:
        g = poly_gcd(b, d)
        if degree(g) > 0:
            out.append((g, i))
        b2 = poly_divmod(b, g)[0]
        c2 = poly_divmod(d, g)[0]
        b, d = b2, poly_sub(c2, derivative(b2))
        i += 1
    return out


def _trial_divisors_of_degree(ip: tuple[int, ...], k: int):
    """Yield integer degree-k divisor candidates of a primitive integer poly.

    Coefficient ranges come from the root bound: a factor's roots are roots
    of ip, so its j-th coefficient is bounded by binom(k,j) * M^j * |lc|.
    """
    m = cauchy_root_bound(poly(ip))
    for lc in _divisors(ip[-1]):
        bounds = [math.comb(k, j) * (m ** (k - j)) * lc for j in range(k + 1)]
        consts = [d for d in _divisors(ip[0])]
        if k == 2:
            b1 = math.ceil(bounds[1])
            for a0 in consts:
                for s0 in (1, -1):
                    for a1 in range(-b1, b1 + 1):
                        yield poly((s0 * a0, a1, lc))
        elif k == 3:
            b1 = math.ceil(bounds[1])
            b2 = math.ceil(bounds[2])
            for a0 in consts:
                for s0 in (1, -1):
                    for a2 in range(-b2, b2 + 1):
                        for a1 in range(-b1, b1 + 1):
                            yield poly((s0 * a0, a1, a2, lc))


def _factor_squarefree_primitive(ip: tuple[int, ...]) -> list[Coeffs]:
    """Irreducible factors of a squarefree primitive integer polynomial."""
    p = poly(ip)
    d = degree(p)
    if d <= 0:
        return []
    if d == 1:
        return [p]
    for r in rational_roots(p):
        lin = poly((-r.numerator, r.denominator))
        quot = poly_divmod(p, lin)[0]
        return [poly(primitive_part(lin))] + _factor_squarefree_primitive(
            primitive_part(quot)
        )
    if d <= 3:
        return [p]
    if d > FACTOR_DEGREE_CAP:
        raise ValueError(f"exact factorization capped at degree {FACTOR_DEGREE_CAP}")
    for k in (2, 3):
        if 2 * k > d:
            continue
        for cand in _trial_divisors_of_degree(ip, k):
            if degree(cand) != k:
                continue
            quot, rem = poly_divmod(p, cand)
            if is_zero(rem):
                return _factor_squarefree_primitive(
                    primitive_part(cand)
                ) + _factor_squarefree_primitive(primitive_part(quot))
    return [p]


def factor(p: Coeffs) -> tuple[Fraction, list[tuple[Coeffs, int]]]:
    """Factor p over Q: returns (unit, [(irreducible primitive integer, mult)]).

    p == unit * prod f_i^{m_i} exactly.  Degree cap 6 on the squarefree parts.
    """
    p = poly(p)
    if is_zero(p):
        return Fraction(0), []
    if degree(p) == 0:
        return p[0], []
    factors: list[tuple[Coeffs, int]] = []
    for g, mult in squarefree_decomposition(p):
        gp = primitive_part(g)
        for f in _factor_squarefree_primitive(gp):
            factors.append((f, mult))
    # recover the exact unit: p / prod f_i^{m_i}
    prod = poly([1])
    for f, m in factors:
        prod = poly_mul(prod, poly_pow(f, m))
    unit = Fraction(p[-1], prod[-1])
    return unit, factors


def is_irreducible(p: Coeffs) -> bool:
    if degree(p) < 1:
        return False
    _, fs = factor(p)
    return len(fs) == 1 and fs[0][1] == 1 and degree(fs[0][0]) == degree(p)


def sturm_chain(p: Coeffs) -> list[Coeffs]:
    chain = [p, derivative(p)]
    while degree(chain[-1]) > 0:
        rem = poly_mod(chain[-2], chain[-1])
        if is_zero(rem):
            break
        chain.append(poly_neg(rem))
    return chain


def _sign_changes(chain: list[Coeffs], x: Fraction) -> int:
    signs = []
    for q in chain:
        v = poly_eval(q, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: Coeffs, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of p in (lo, hi], p squarefree or not."""
    sf = poly_divmod(p, poly_gcd(p, derivative(p)))[0] if degree(p) > 1 else p
    chain = sturm_chain(sf)
    return _sign_changes(chain, Fraction(lo)) - _sign_changes(chain, Fraction(hi))


def eulerian_number(k: int, j: int) -> int:
    """Eulerian number <k, j> (triangle recurrence)."""
    if j < 0 or j > max(k - 1, 0):
        return 0
    if k == 0:
        return 1 if j == 0 else 0
    row = [1]
    for n in range(2, k + 1):
        new = [0] * n
        for i in range(n):
            left = row[i] if i < len(row) else 0
            up = row[i - 1] if i - 1 >= 0 else 0
            new[i] = (i + 1) * left + (n - i) * up
        row = new
    return row[j]


def power_weighted_geometric_sum(k: int, t: Fraction) -> Fraction:
    """Exact value of sum_{n>=0} n^k t^n for rational 0 <= t < 1.

    k = 0 gives 1/(1-t); for k >= 1 the closed form uses Eulerian numbers:
    sum n^k t^n = (sum_j <k,j> t^{j+1}) / (1-t)^{k+1}.
    """
    t = Fraction(t)
    if not 0 <= t < 1:
        raise ValueError("requires 0 <= t < 1")
    if k == 0:
        return 1 / (1 - t)
    num = sum(eulerian_number(k, j) * t ** (j + 1) for j in range(k))
    return num / (1 - t) ** (k + 1)


def poly_str(p: Coeffs, var: str = "x") -> str:
    """Human-readable form, highest power first."""
    if is_zero(p):
        return "0"
    parts = []
    for i in range(degree(p), -1, -1):
        c = p[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = f"{mag}"
        else:
            pw = var if i == 1 else f"{var}^{i}"
            body = pw if mag == 1 else f"{mag}*{pw}"
        parts.append((sign, body))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
