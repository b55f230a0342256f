import random
from fractions import Fraction

import pytest

from meyerlab import polynomials as P


def brute_mul(p, q):
    # oracle: schoolbook convolution written independently
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i in range(len(p)):
        for j in range(len(q)):
            out[i + j] += Fraction(p[i]) * Fraction(q[j])
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def test_mul_matches_convolution_oracle():
    rng = random.Random(7)
    for _ in range(50):
        p = P.poly([rng.randint(-5, 5) for _ in range(rng.randint(0, 6))])
        q = P.poly([rng.randint(-5, 5) for _ in range(rng.randint(0, 6))])
        assert P.poly_mul(p, q) == brute_mul(p, q)


def test_divmod_reconstructs():
    rng = random.Random(11)
    for _ in range(60):
        q = P.poly([rng.randint(-4, 4) for _ in range(rng.randint(1, 5))] + [1])
        p = P.poly([rng.randint(-9, 9) for _ in range(rng.randint(0, 8))])
        quot, rem = P.poly_divmod(p, q)
        assert P.poly_add(P.poly_mul(quot, q), rem) == p
        assert P.degree(rem) < P.degree(q)


def test_gcd_of_known_product():
    a = P.poly([-1, -1, 1])      # x^2 - x - 1
    b = P.poly([1, 1])           # x + 1
    g = P.poly_gcd(P.poly_mul(a, b), P.poly_mul(a, P.poly([3, 1])))
    assert g == P.poly_scale(a, Fraction(1, 1))


def test_eval_interval_encloses_samples():
    p = P.poly([1, -3, 0, 2])
    lo, hi = Fraction(1, 2), Fraction(3, 2)
    blo, bhi = P.poly_eval_interval(p, lo, hi)
    for k in range(11):
        x = lo + (hi - lo) * k / 10
        v = P.poly_eval(p, x)
        assert blo <= v <= bhi


@pytest.mark.parametrize(
    "coeffs,expected",
    [
        ([4, -4, 1], [((-2, 1), 2)]),                    # x^2-4x+4 = (x-2)^2
        ([-1, -1, 1], [((-1, -1, 1), 1)]),               # irreducible (disc 5)
        ([-1, 0, 0, 0, 1], [((-1, 1), 1), ((1, 1), 1), ((1, 0, 1), 1)]),  # x^4-1
        ([-3, -1, 1], [((-3, -1, 1), 1)]),               # x^2-x-3 irreducible
    ],
)
def test_factor_known_cases(coeffs, expected):
    unit, factors = P.factor(P.poly(coeffs))
    got = sorted((tuple(int(c) for c in f), m) for f, m in factors)
    assert got == sorted(expected)
    # exact reconstruction
    prod = P.poly([1])
    for f, m in factors:
        prod = P.poly_mul(prod, P.poly_pow(f, m))
    assert P.poly_scale(prod, unit) == P.poly(coeffs)


def test_factor_random_products_reconstruct():
    rng = random.Random(3)
    irreducibles = [
        P.poly([-1, -1, 1]),
        P.poly([1, 0, 1]),
        P.poly([-2, 1]),
        P.poly([1, 1, 1]),
        P.poly([-2, 0, 1]),
    ]
    for _ in range(20):
        chosen = rng.sample(irreducibles, rng.randint(1, 3))
        p = P.poly([rng.choice([1, 2, -3])])
        for f in chosen:
            p = P.poly_mul(p, f)
        if P.degree(p) > 6:
            continue
        unit, factors = P.factor(p)
        prod = P.poly([1])
        for f, m in factors:
            prod = P.poly_mul(prod, P.poly_pow(f, m))
        assert P.poly_scale(prod, unit) == p


def test_is_irreducible():
    assert P.is_irreducible(P.poly([-1, -1, 1]))
    assert not P.is_irreducible(P.poly([4, -4, 1]))
    assert P.is_irreducible(P.poly([1, 0, 1]))
    assert not P.is_irreducible(P.poly([-1, 0, 0, 0, 1]))


def test_rational_roots():
    p = P.poly_mul(P.poly([-3, 2]), P.poly([1, 1]))  # (2x-3)(x+1)
    roots = P.rational_roots(p)
    assert set(roots) == {Fraction(3, 2), Fraction(-1)}
    assert P.rational_roots(P.poly([-1, -1, 1])) == []


def test_sturm_count_golden():
    p = P.poly([-1, -1, 1])
    assert P.count_real_roots(p, Fraction(1), Fraction(2)) == 1
    assert P.count_real_roots(p, Fraction(-1), Fraction(0)) == 1
    assert P.count_real_roots(p, Fraction(2), Fraction(10)) == 0


def test_power_weighted_geometric_sum_vs_partial_sums():
    # oracle: direct partial summation with a rigorous-enough horizon
    for k in (0, 1, 2, 3):
        for t in (Fraction(1, 2), Fraction(2, 3), Fraction(9, 10)):
            exact = P.power_weighted_geometric_sum(k, t)
            approx = sum(Fraction(n**k) * t**n for n in range(400))
            assert abs(float(exact - approx)) < 1e-6


def test_eulerian_triangle():
    assert [P.eulerian_number(3, j) for j in range(3)] == [1, 4, 1]
    assert [P.eulerian_number(4, j) for j in range(4)] == [1, 11, 11, 1]
