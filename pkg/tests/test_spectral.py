import random
from fractions import Fraction

import numpy as np
import pytest

from meyerlab import polynomials as P
from meyerlab import spectral as S
from meyerlab.arithmetic import (
    AlgebraicContext,
    AlgebraicVector,
    FieldMatrix,
    RationalMatrix,
    vector,
)
from meyerlab.errors import NotPisotError, RankError


@pytest.fixture
def golden():
    return AlgebraicContext.get([-1, -1, 1], 1, 2)


@pytest.fixture
def sqrt13ish():
    return AlgebraicContext.get([-3, -1, 1], 2, 3)


# -- certified roots -----------------------------------------------------------


def test_certified_roots_golden():
    discs = S.certify_factor_roots((-1, -1, 1))
    mods = sorted(d.mod_vs_one for d in discs)
    assert mods == [-1, 1]
    for d in discs:
        assert d.radius < Fraction(1, 10 ** 10)


def test_certified_roots_exact_rational():
    discs = S.certify_factor_roots((-2, 1))
    assert discs[0].radius == 0 and discs[0].re == 2
    assert discs[0].mod_vs_one == 1


def test_certified_roots_cyclotomic_modulus_one():
    # x^2 + 1: both roots exactly on the unit circle
    discs = S.certify_factor_roots((1, 0, 1))
    assert all(d.mod_vs_one == 0 for d in discs)
    # x^2 - x - 1 reversed sign case: x^2 + x - 1 has roots 1/phi, -phi
    discs = S.certify_factor_roots((-1, 1, 1))
    assert sorted(d.mod_vs_one for d in discs) == [-1, 1]


def test_salem_like_reciprocal_detection():
    # x^4 - x^3 - x^2 - x + 1: Salem polynomial, two unit-modulus roots
    discs = S.certify_factor_roots((1, -1, -1, -1, 1))
    assert sorted(d.mod_vs_one for d in discs) == [-1, 0, 0, 1]


# -- minimal polynomials -------------------------------------------------------


def test_minimal_polynomial_of_theta(golden, sqrt13ish):
    assert S.minimal_polynomial(golden.theta()) == (-1, -1, 1)
    assert S.minimal_polynomial(sqrt13ish.theta()) == (-3, -1, 1)
    assert S.minimal_polynomial(golden.scalar(Fraction(3, 2))) == (-3, 2)
    # phi^2 = phi + 1 has minpoly x^2 - 3x + 1
    phi2 = golden.theta() ** 2
    assert S.minimal_polynomial(phi2) == (1, -3, 1)


def test_isolate_real_roots():
    ctxs = S.isolate_real_roots((-1, -1, 1))
    vals = sorted(float(c.theta()) for c in ctxs)
    assert len(vals) == 2
    assert abs(vals[0] + 0.618033988) < 1e-6
    assert abs(vals[1] - 1.618033988) < 1e-6
    assert S.isolate_real_roots((1, 0, 1)) == []


# -- char poly -----------------------------------------------------------------


def test_char_poly_jordan_block():
    q = RationalMatrix([[2, 1], [0, 2]])
    cp = q.charpoly()
    assert cp == P.poly([4, -4, 1])  # x^2 - 4x + 4 (hand 2x2 determinant)


def test_char_poly_identity_3():
    q = RationalMatrix.identity(3)
    assert q.charpoly() == P.poly([-1, 3, -3, 1])  # (x-1)^3


def test_char_poly_scalar_golden(golden):
    q = FieldMatrix([[golden.theta()]])
    rep, kind = S.char_poly(q)
    assert rep == (-1, -1, 1)
    assert kind == "scalar_minpoly"


def test_factor_charpoly_examples():
    _, fs = S.factor_charpoly([4, -4, 1])
    assert fs == [((-2, 1), 2)]
    _, fs = S.factor_charpoly([-1, -1, 1])
    assert fs == [((-1, -1, 1), 1)]
    _, fs = S.factor_charpoly([-1, 0, 0, 0, 1])
    assert sorted(fs) == sorted([((-1, 1), 1), ((1, 1), 1), ((1, 0, 1), 1)])


# -- spectral data / jordan ----------------------------------------------------


def test_analyze_jordan_block_structure():
    spec = S.analyze_expansion(RationalMatrix([[2, 1], [0, 2]]))
    assert len(spec.records) == 1
    rec = spec.records[0]
    assert rec.multiplicity == 2
    assert rec.block_sizes == (2,)
    assert spec.K == 1


def test_analyze_diagonalizable_repeated():
    spec = S.analyze_expansion(RationalMatrix([[2, 0], [0, 2]]))
    assert spec.records[0].block_sizes == (1, 1)
    assert spec.K == 0


def test_analyze_irrational_repeated_eigenvalue_exact_ranks():
    # companion-style matrix with charpoly (x^2-x-1)^2; one 2-block per root
    c = RationalMatrix([[0, 1, 0, 0], [1, 1, 0, 0], [1, 0, 0, 1], [0, 1, 1, 1]])
    cp = c.charpoly()
    assert cp == P.poly_mul(P.poly([-1, -1, 1]), P.poly([-1, -1, 1]))
    spec = S.analyze_expansion(c)
    assert spec.certified
    for rec in spec.records:
        assert rec.block_sizes == (2,)


def test_is_expansive():
    ok, _ = S.analyze_expansion(RationalMatrix([[2]])).is_expansive()
    assert ok
    bad, msg = S.analyze_expansion(RationalMatrix([[1, 0], [0, 2]])).is_expansive()
    assert not bad and "modulus" in msg


# -- pisot family --------------------------------------------------------------


def test_pisot_family_fibonacci(golden):
    spec = S.analyze_expansion(FieldMatrix([[golden.theta()]]))
    verdict = S.pisot_family_check(spec)
    assert verdict.is_pisot_family
    assert verdict.certified


def test_pisot_family_nonpisot13(sqrt13ish):
    spec = S.analyze_expansion(FieldMatrix([[sqrt13ish.theta()]]))
    verdict = S.pisot_family_check(spec)
    assert not verdict.is_pisot_family
    (lo, hi) = verdict.margins[0]
    # oracle: conjugate is (1-sqrt(13))/2, |.| = 1.30277563...
    conj = (13 ** 0.5 - 1) / 2
    assert lo <= conj <= hi
    assert hi - lo < 1e-6


def test_pisot_family_rational_2I():
    spec = S.analyze_expansion(RationalMatrix([[2, 0], [0, 2]]))
    assert S.pisot_family_check(spec).is_pisot_family


def test_pisot_family_unimodular_conjugation_invariance(golden):
    # rational Q: conjugating by a unimodular integer matrix preserves verdict
    q = RationalMatrix([[0, 1], [1, 1]])
    u = RationalMatrix([[1, 1], [0, 1]])
    qc = u @ q @ u.inverse()
    v1 = S.pisot_family_check(S.analyze_expansion(q))
    v2 = S.pisot_family_check(S.analyze_expansion(qc))
    assert v1.verdict == v2.verdict == "pisot_family"


def test_is_pisot_scalar(golden, sqrt13ish):
    ok, _ = S.is_pisot_scalar(golden.theta())
    assert ok
    ok, reason = S.is_pisot_scalar(sqrt13ish.theta())
    assert not ok and "conjugate" in reason
    ok, reason = S.is_pisot_scalar(golden.scalar(Fraction(3, 2)))
    assert not ok and "integer" in reason


# -- jordan expansion ----------------------------------------------------------


def test_jordan_expansion_nilpotent_shift():
    # <Q^n w, a> = n 2^(n-1) for Q=[[2,1],[0,2]], w=(0,1), a=(1,0)
    q = RationalMatrix([[2, 1], [0, 2]])
    exp = S.jordan_expansion(q, [0, 1], [1, 0])
    assert exp.exact
    assert len(exp.eigenvalues) == 1
    c0, c1 = exp.coefficients[0]
    assert abs(c0) < 1e-12 and abs(c1 - 0.5) < 1e-12  # P(n) = n/2 at lambda=2
    for n in range(31):
        truth = n * 2 ** (n - 1) if n >= 1 else 0
        assert abs(exp.evaluate(n) - truth) <= 1e-8 * 2 ** n


def test_jordan_expansion_diagonal():
    q = RationalMatrix([[2, 0], [0, 3]])
    exp = S.jordan_expansion(q, [1, 1], [1, 1])
    got = {round(l.real): c[0] for l, c in zip(exp.eigenvalues, exp.coefficients)}
    assert abs(got[2] - 1) < 1e-12 and abs(got[3] - 1) < 1e-12


def test_jordan_expansion_scalar_golden(golden):
    q = FieldMatrix([[golden.theta()]])
    exp = S.jordan_expansion(q, [1], [1])
    assert abs(exp.coefficients[0][0] - 1) < 1e-9


def test_jordan_expansion_random_rational_identity():
    rng = random.Random(9)
    trials = 0
    while trials < 12:
        d = rng.randint(2, 4)
        q = RationalMatrix([[rng.randint(-2, 3) for _ in range(d)] for _ in range(d)])
        try:
            exp = S.jordan_expansion(q, [rng.randint(-3, 3) for _ in range(d)],
                                     [rng.randint(-3, 3) for _ in range(d)])
        except ZeroDivisionError:
            continue  # singular confluent system (zero eigenvalue)
        trials += 1
        growth = max(1.0, exp.growth)
        for n, r in enumerate(exp.residuals):
            assert r <= 1e-8 * growth ** n + 1e-7


# -- algebraic integer construction ---------------------------------------------


def test_algebraic_integer_check_fibonacci(golden):
    gens = [vector(golden, ["1"]), vector(golden, ["t"])]
    q = FieldMatrix([[golden.theta()]])
    cert = S.algebraic_integer_check(gens, q)
    assert cert.ok
    m = RationalMatrix(cert.matrix)
    # oracle: multiply-and-reduce gives [[0,1],[1,1]] on basis {1, phi}
    assert m.charpoly() == P.poly([-1, -1, 1])
    assert cert.matrix == [[0, 1], [1, 1]]


def test_algebraic_integer_check_trivial():
    ctx = AlgebraicContext.rational()
    gens = [vector(ctx, ["1"])]
    cert = S.algebraic_integer_check(gens, RationalMatrix([[2]]))
    assert cert.ok and cert.matrix == [[2]]


def test_algebraic_integer_check_failure():
    ctx = AlgebraicContext.rational()
    gens = [vector(ctx, ["1"])]
    cert = S.algebraic_integer_check(gens, RationalMatrix([[Fraction(3, 2)]]))
    assert not cert.ok
    assert cert.witness is not None


def test_algebraic_integer_check_rank_error(golden):
    gens = [vector(golden, ["1", "0"])]
    with pytest.raises(RankError):
        S.algebraic_integer_check(gens, RationalMatrix([[2, 0], [0, 2]]))


# -- separation bound -----------------------------------------------------------


def test_separation_bound_integer_two():
    ctx = AlgebraicContext.rational()
    cert = S.separation_bound(ctx.scalar(2), coeff_bound=1, poly_degree_cap=0)
    assert cert.lower_bound == 1  # nonzero integers
    assert cert.l_count == 0


def test_separation_bound_golden_positive(golden):
    cert = S.separation_bound(golden.theta(), coeff_bound=1, poly_degree_cap=0)
    assert cert.lower_bound > 0
    # conjugate bound ~ 0.618..., sum 1/(1-t) ~ 2.618: bound ~ 0.3819
    assert abs(float(cert.lower_bound) - 0.3819) < 0.01


def test_separation_bound_rejects_non_pisot(sqrt13ish):
    with pytest.raises(NotPisotError):
        S.separation_bound(sqrt13ish.theta())


def test_separation_bound_below_brute_force_small(golden):
    # quick version of the acceptance oracle: degree <= 7, coeffs in {-1,0,1}
    cert = S.separation_bound(golden.theta(), 1, 0)
    phi = (1 + 5 ** 0.5) / 2
    fib = [0, 1]
    for _ in range(10):
        fib.append(fib[-1] + fib[-2])
    best = None
    import itertools

    for coeffs in itertools.product((-1, 0, 1), repeat=8):
        # phi^n = fib[n]*phi + fib[n-1], with the n=0 term contributing 1
        a = sum(c * (fib[n - 1] if n >= 1 else 1) for n, c in enumerate(coeffs))
        b = sum(c * fib[n] for n, c in enumerate(coeffs))
        if a == 0 and b == 0:
            continue
        val = abs(a + b * phi)
        best = val if best is None else min(best, val)
    assert float(cert.lower_bound) <= best + 1e-12
