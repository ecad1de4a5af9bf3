import random
from fractions import Fraction
from math import comb, factorial, gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from windschitl import (
    Polynomial,
    RationalFunction,
    ShapeError,
    SignKind,
    bernoulli,
    sign_criterion,
)
from support import brute_force_sign_profile, random_shaped_polynomial

# ---------------------------------------------------------------------------
# Bernoulli numbers
# ---------------------------------------------------------------------------


def bernoulli_double_sum(n: int) -> Fraction:
    """Independent oracle: the explicit double-sum formula (B_1 = -1/2)."""
    total = Fraction(0)
    for k in range(n + 1):
        inner = sum(Fraction((-1) ** j * comb(k, j) * j**n) for j in range(k + 1))
        total += inner / (k + 1)
    return total


def test_bernoulli_base_case():
    assert bernoulli(0) == 1


def test_bernoulli_convention():
    assert bernoulli(1) == Fraction(-1, 2)


@pytest.mark.parametrize("n", range(25))
def test_bernoulli_matches_double_sum_oracle(n):
    assert bernoulli(n) == bernoulli_double_sum(n)


def test_bernoulli_cross_checked_by_csch_coefficients():
    # -2(2^(2i-1) - 1) B_2i / (2i)! must reproduce the published series terms
    assert -2 * (Fraction(2) ** 1 - 1) * bernoulli(2) / factorial(2) == Fraction(-1, 6)
    assert bernoulli(2) == Fraction(1, 6)
    assert -2 * (Fraction(2) ** 9 - 1) * bernoulli(10) / factorial(10) == Fraction(-73, 3421440)
    assert bernoulli(10) == Fraction(5, 66)


def test_bernoulli_odd_indices_vanish():
    for i in range(1, 16):
        assert bernoulli(2 * i + 1) == 0


def test_bernoulli_even_signs_alternate():
    for i in range(1, 16):
        assert (1 if bernoulli(2 * i) > 0 else -1) == (-1) ** (i + 1)


def test_bernoulli_rejects_negative_index():
    with pytest.raises(ValueError):
        bernoulli(-1)


def test_bernoulli_cache_is_consistent_under_threads():
    import threading

    results = []

    def worker():
        results.append([bernoulli(n) for n in (120, 60, 90)])

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == results[0] for r in results)
    assert results[0][1] == bernoulli_double_sum(60)


# ---------------------------------------------------------------------------
# Rational canonical form
# ---------------------------------------------------------------------------


def test_fraction_canonical_form_under_random_ops():
    rng = random.Random(1729)
    ops = "+-*/"
    value = Fraction(1)
    for _ in range(10_000):
        other = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
        op = rng.choice(ops)
        if op == "+":
            value = value + other
        elif op == "-":
            value = value - other
        elif op == "*":
            value = value * other
        elif other != 0:
            value = value / other
        if abs(value) > 10**12 or value == 0:
            value = Fraction(rng.randint(1, 99), rng.randint(1, 99))
        assert value.denominator > 0
        assert gcd(value.numerator, value.denominator) == 1


# ---------------------------------------------------------------------------
# Polynomial arithmetic
# ---------------------------------------------------------------------------

fractions_st = st.fractions(
    min_value=-100, max_value=100, max_denominator=50
)
polys_st = st.lists(fractions_st, min_size=0, max_size=9).map(Polynomial)


def test_identity_squared():
    t = Polynomial.identity()
    assert t * t == Polynomial.monomial(2)


def test_csch_minorant_square_low_coefficients():
    h = Polynomial.from_terms(
        {
            0: 1,
            2: Fraction(-1, 6),
            4: Fraction(7, 360),
            6: Fraction(-31, 15120),
            8: Fraction(127, 604800),
            10: Fraction(-73, 3421440),
        }
    )
    square = h * h
    assert square.degree == 20
    assert square.coefficient(0) == 1
    assert square.coefficient(2) == Fraction(-1, 3)


def test_cubed_binomial_endpoints():
    cube = Polynomial((35, 0, 33)) ** 3
    assert cube.leading == 33**3 == 35937
    assert cube.coefficient(0) == 35**3 == 42875


@given(a=polys_st, b=polys_st)
@settings(max_examples=60)
def test_addition_commutes(a, b):
    assert a + b == b + a


@given(a=polys_st, b=polys_st)
@settings(max_examples=60)
def test_multiplication_commutes(a, b):
    assert a * b == b * a


@given(a=polys_st, b=polys_st, c=polys_st)
@settings(max_examples=60)
def test_associativity(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)


@given(a=polys_st, b=polys_st, c=polys_st)
@settings(max_examples=60)
def test_distributivity(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(a=polys_st, b=polys_st)
@settings(max_examples=60)
def test_degree_law_for_products(a, b):
    if a.is_zero() or b.is_zero():
        assert (a * b).is_zero()
    else:
        assert (a * b).degree == a.degree + b.degree


@given(a=polys_st, b=polys_st, x=fractions_st)
@settings(max_examples=60)
def test_evaluation_is_a_ring_morphism(a, b, x):
    assert (a + b)(x) == a(x) + b(x)
    assert (a * b)(x) == a(x) * b(x)


def test_evaluation_examples():
    t_minus_1 = Polynomial((-1, 1))
    assert t_minus_1(1) == 0
    h = Polynomial.from_terms(
        {
            0: 1,
            2: Fraction(-1, 6),
            4: Fraction(7, 360),
            6: Fraction(-31, 15120),
            8: Fraction(127, 604800),
            10: Fraction(-73, 3421440),
        }
    )
    # h(1) equals the constant term of the substituted polynomial at x = 0:
    # both routes evaluate the same quantity through different forms
    even_part = Polynomial(
        (
            Fraction(1),
            Fraction(-1, 6),
            Fraction(7, 360),
            Fraction(-31, 15120),
            Fraction(127, 604800),
            Fraction(-73, 3421440),
        )
    )
    substituted = even_part.compose(Polynomial((1, -1)))
    assert h(1) == substituted(0) == Fraction(14556793, 17107200)


def test_compose_and_reciprocal_substitution():
    p = Polynomial((1, 2, 3))  # 3t^2 + 2t + 1
    q = Polynomial((1, 1))  # t + 1
    assert p.compose(q) == Polynomial((6, 8, 3))
    rev = p.reciprocal_substitution()
    assert rev == Polynomial((3, 2, 1))
    assert p.reciprocal_substitution(4) == Polynomial((0, 0, 3, 2, 1))
    with pytest.raises(ValueError):
        p.reciprocal_substitution(1)


def test_divided_by_power():
    p = Polynomial((0, 0, 0, 5, 7))
    assert p.divided_by_power(3) == Polynomial((5, 7))
    with pytest.raises(ValueError):
        p.divided_by_power(4)


def test_polynomial_rejects_floats():
    with pytest.raises(TypeError):
        Polynomial((0.5, 1))


def test_polynomial_normalization_and_degree():
    assert Polynomial((1, 2, 0, 0)).degree == 1
    assert Polynomial(()).degree == -1
    assert Polynomial((0, 0)).is_zero()


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


def test_trivial_ratfun_equality():
    t = Polynomial.identity()
    assert RationalFunction(t, t) == RationalFunction(1, 1)


@given(num=polys_st, den=polys_st, factor=polys_st)
@settings(max_examples=60)
def test_ratfun_equality_invariances(num, den, factor):
    if den.is_zero():
        den = Polynomial.constant(1)
    f = RationalFunction(num, den)
    assert f == f
    g = RationalFunction(num * Fraction(1, 3), den * Fraction(1, 3))
    assert f == g and g == f
    if not factor.is_zero():
        scaled = RationalFunction(num * factor, den * factor)
        assert f == scaled and scaled == f


def test_ratfun_arithmetic_and_derivative():
    t = Polynomial.identity()
    f = RationalFunction(1, t)  # 1/t
    g = RationalFunction(t, Polynomial.constant(1))
    assert f * g == RationalFunction(1, 1)
    assert f + f == RationalFunction(2, t)
    # (t^2)' = 2t through the quotient rule with denominator 1
    sq = RationalFunction(t * t, Polynomial.constant(1))
    assert sq.derivative() == RationalFunction(2 * t, Polynomial.constant(1))
    # (1/t)' = -1/t^2
    assert f.derivative() == RationalFunction(Polynomial.constant(-1), t * t)


def test_ratfun_evaluation_and_zero_denominator():
    t = Polynomial.identity()
    f = RationalFunction(t + 1, t)
    assert f(2) == Fraction(3, 2)
    with pytest.raises(ZeroDivisionError):
        f(0)
    with pytest.raises(ZeroDivisionError):
        RationalFunction(t, Polynomial.zero())


# ---------------------------------------------------------------------------
# Single-probe sign criterion
# ---------------------------------------------------------------------------


def test_sign_criterion_linear_example():
    p = Polynomial((-1, 1))  # t - 1
    result = sign_criterion(p, 0, 2)
    assert result.kind is SignKind.ALL_POSITIVE_ON_INTERVAL
    lo, hi = result.crossing_bracket
    assert lo <= 1 <= hi


def test_sign_criterion_probe_hits_root():
    p = Polynomial((-1, 1))
    result = sign_criterion(p, 0, 1)
    assert result.kind is SignKind.SINGLE_CROSSING
    assert result.crossing_bracket == (Fraction(1), Fraction(1))


def test_sign_criterion_cubic_example():
    # t^3 + t^2 - t - 1 = (t - 1)(t + 1)^2, shaped with m = 1
    p = Polynomial((-1, -1, 1, 1))
    result = sign_criterion(p, 1, Fraction(1, 2))
    assert result.kind is SignKind.ALL_NEGATIVE_ON_INTERVAL
    lo, hi = result.crossing_bracket
    assert lo <= 1 <= hi
    # independent check by dense scan
    oracle_lo, oracle_hi = brute_force_sign_profile(p)
    assert oracle_lo <= 1 <= oracle_hi


def test_sign_criterion_shape_violations():
    with pytest.raises(ShapeError):
        sign_criterion(Polynomial((1, 1)), 0, 1)  # constant term positive
    with pytest.raises(ShapeError):
        sign_criterion(Polynomial((-1, -1)), 0, 1)  # negative leading term
    with pytest.raises(ShapeError):
        sign_criterion(Polynomial((-1, 1)), 1, 1)  # pivot at the degree
    with pytest.raises(ShapeError):
        sign_criterion(Polynomial((0, 1)), 0, 1)  # pivot coefficient zero
    with pytest.raises(ShapeError):
        sign_criterion(Polynomial((-1, -2, 3, 1)), 0, 1)  # negative above pivot


def test_sign_criterion_rejects_bad_probe():
    with pytest.raises(ValueError):
        sign_criterion(Polynomial((-1, 1)), 0, 0)


def test_sign_criterion_bracket_width_is_configurable():
    p = Polynomial((-2, 0, 1))  # root sqrt(2), never hit exactly
    wide = sign_criterion(p, 0, 1, bracket_width=Fraction(1, 4))
    lo, hi = wide.crossing_bracket
    assert hi - lo <= Fraction(1, 4)
    assert p(lo) < 0 < p(hi)
    narrow = sign_criterion(p, 0, 1, bracket_width=Fraction(1, 2**48))
    lo, hi = narrow.crossing_bracket
    assert hi - lo <= Fraction(1, 2**48)
    assert p(lo) < 0 < p(hi)


def test_sign_criterion_agrees_with_brute_force_on_random_shapes():
    rng = random.Random(20240817)
    for _ in range(100):
        p, m = random_shaped_polynomial(rng)
        probe = Fraction(rng.randint(1, 400), rng.randint(1, 200))
        result = sign_criterion(p, m, probe)
        oracle_lo, oracle_hi = brute_force_sign_profile(p)
        lo, hi = result.crossing_bracket
        # both brackets contain the unique crossing, so they must intersect
        assert max(lo, oracle_lo) <= min(hi, oracle_hi)
        value = p(probe)
        if value > 0:
            assert result.kind is SignKind.ALL_POSITIVE_ON_INTERVAL
            assert oracle_lo <= probe
        elif value < 0:
            assert result.kind is SignKind.ALL_NEGATIVE_ON_INTERVAL
            assert oracle_hi >= probe
        else:
            assert result.kind is SignKind.SINGLE_CROSSING
