import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meyerlab import polynomials as P
from meyerlab.arithmetic import (
    AlgebraicContext,
    AlgebraicVector,
    FieldMatrix,
    RationalMatrix,
    embed_float,
    parse_scalar,
    scalar_arith,
    scalar_sign,
    vector,
)
from meyerlab.errors import ConfigError, ContextMismatchError


@pytest.fixture
def golden():
    return AlgebraicContext.get([-1, -1, 1], 1, 2)  # x^2 - x - 1, root phi


@pytest.fixture
def sqrt13ish():
    return AlgebraicContext.get([-3, -1, 1], 2, 3)  # x^2 - x - 3


def test_phi_plus_phi(golden):
    phi = golden.theta()
    s = scalar_arith(phi, phi, "add")
    assert s.coeffs == (Fraction(0), Fraction(2))


def test_phi_times_phi_reduces_via_division_oracle(golden):
    # oracle: reduce x^2 mod x^2-x-1 by explicit polynomial division
    _, rem = P.poly_divmod(P.poly([0, 0, 1]), P.poly([-1, -1, 1]))
    phi = golden.theta()
    prod = scalar_arith(phi, phi, "mul")
    assert prod.coeffs == tuple(rem) == (Fraction(1), Fraction(1))


def test_rational_subtraction(golden):
    a = golden.scalar(Fraction(3, 2))
    b = golden.scalar(Fraction(1, 2))
    assert scalar_arith(a, b, "sub") == golden.scalar(1)


def test_sign_examples(golden):
    phi = golden.theta()
    assert scalar_sign(phi - 1) == 1          # phi ~ 1.618 > 1
    assert scalar_sign(golden.zero()) == 0
    assert scalar_sign(1 - phi) == -1


def test_embed_float_golden(golden):
    phi = golden.theta()
    val, bound = embed_float(phi, 30)
    assert bound <= 2.0 ** -30 + abs(val) * 2.0 ** -50
    assert abs(val - 1.6180339887) < 1e-9


def test_embed_float_rational_exact(golden):
    val, bound = embed_float(golden.scalar(Fraction(1, 2)), 10)
    assert val == 0.5
    assert bound < 1e-10


def test_embed_float_sqrt13(sqrt13ish):
    val, _ = embed_float(sqrt13ish.theta(), 30)
    assert abs(val - 2.3027756377) < 1e-9


def test_minpoly_vanishes_exactly(golden, sqrt13ish):
    for ctx in (golden, sqrt13ish):
        th = ctx.theta()
        acc = ctx.zero()
        for i, c in enumerate(ctx.minpoly):
            acc = acc + (th ** i) * c
        assert acc.is_zero()


def test_context_mismatch_raises(golden, sqrt13ish):
    with pytest.raises(ContextMismatchError):
        scalar_arith(golden.theta(), sqrt13ish.theta(), "add")


def test_context_interning():
    a = AlgebraicContext.get([-1, -1, 1], 1, 2)
    b = AlgebraicContext.get([-1, -1, 1], Fraction(3, 2), Fraction(17, 10))
    assert a is b
    c = AlgebraicContext.get([-1, -1, 1], -1, 0)  # the conjugate root
    assert c is not a


def test_reducible_minpoly_rejected():
    with pytest.raises(ConfigError):
        AlgebraicContext([-1, 0, 0, 0, 1], Fraction(1, 2), 2)  # x^4 - 1


scalar_coeffs = st.tuples(
    st.integers(-8, 8), st.integers(-8, 8)
).map(lambda t: (Fraction(t[0]), Fraction(t[1], 3)))


@settings(max_examples=80, deadline=None)
@given(a=scalar_coeffs, b=scalar_coeffs, c=scalar_coeffs)
def test_ring_axioms(a, b, c):
    ctx = AlgebraicContext.get([-1, -1, 1], 1, 2)
    x, y, z = (ctx.from_coeffs(t) for t in (a, b, c))
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x
    assert x * y == y * x


def test_sign_agrees_with_embedding():
    rng = random.Random(42)
    ctx = AlgebraicContext.get([-3, -1, 1], 2, 3)
    for _ in range(1000):
        s = ctx.from_coeffs(
            (Fraction(rng.randint(-50, 50), rng.randint(1, 7)),
             Fraction(rng.randint(-50, 50), rng.randint(1, 7)))
        )
        val, _ = embed_float(s, 60)
        if abs(val) > 2.0 ** -59:
            assert scalar_sign(s) == (1 if val > 0 else -1)


def test_inverse_and_division(golden):
    phi = golden.theta()
    inv = phi.inverse()
    assert (phi * inv) == golden.one()
    assert inv == phi - 1  # 1/phi = phi - 1
    q = (phi + 3) / (phi + 2)
    assert (q * (phi + 2)) == phi + 3


def test_parse_scalar(golden):
    assert parse_scalar("t", golden) == golden.theta()
    assert parse_scalar("t+1", golden) == golden.theta() + 1
    assert parse_scalar("1/2", golden) == golden.scalar(Fraction(1, 2))
    assert parse_scalar("(t+1)*(t-1)", golden) == golden.theta() ** 2 - 1
    assert parse_scalar("t^2 - t - 1", golden).is_zero()
    assert parse_scalar("-3/2 + 2*t", golden).coeffs == (Fraction(-3, 2), Fraction(2))
    with pytest.raises(ConfigError):
        parse_scalar("t", AlgebraicContext.rational(), allow_theta=False)
    with pytest.raises(ConfigError):
        parse_scalar("q+1", golden)


def test_vectors(golden):
    v = vector(golden, ["t", "1"])
    w = vector(golden, ["1", "0"])
    assert (v + w).entries[0] == golden.theta() + 1
    assert (v - v).is_zero()
    assert v.dot(w) == golden.theta()
    assert sorted([v, w]) == [w, v]
    assert hash(v) != hash(w)


def test_rational_matrix_action(golden):
    m = RationalMatrix([[0, 1], [1, 1]])
    v = vector(golden, ["1", "t"])
    mv = m.apply(v)
    assert mv.entries[0] == golden.theta()
    assert mv.entries[1] == golden.theta() + 1
    assert m.pow(2) == RationalMatrix([[1, 1], [1, 2]])
    assert m.inverse() @ m == RationalMatrix.identity(2)


def test_rational_matrix_charpoly_cayley_hamilton():
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(1, 4)
        m = RationalMatrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        cp = m.charpoly()
        # Cayley-Hamilton: cp(M) = 0 exactly
        acc = RationalMatrix([[0] * n for _ in range(n)])
        power = RationalMatrix.identity(n)
        for c in cp:
            acc = RationalMatrix(
                [[a + c * b for a, b in zip(ra, rb)] for ra, rb in zip(acc.rows, power.rows)]
            )
            power = power @ m
        assert all(x == 0 for row in acc.rows for x in row)


def test_field_matrix(golden):
    phi = golden.theta()
    q = FieldMatrix([[phi]])
    assert q.pow(2).rows[0][0] == phi + 1
    inv = q.inverse()
    assert inv.rows[0][0] == phi - 1
    assert q.is_scalar_multiple_of_identity() == phi
    cp = q.charpoly()  # x - phi, constant first
    assert cp[0] == -phi and cp[1] == golden.one()


def test_tolerance_mode_degree_cap():
    # degree 7 generator: not certifiable, context flags itself
    ctx = AlgebraicContext([-2, 0, 0, 0, 0, 0, 0, 1], 1, 2)  # x^7 - 2
    assert not ctx.exact
    th = ctx.theta()
    assert abs(float(th) - 2 ** (1 / 7)) < 1e-9
    assert (th - th).sign() == 0
