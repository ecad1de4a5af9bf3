from fractions import Fraction
from math import log2

import pytest

from windschitl import (
    DomainError,
    FormulaId,
    OracleConfig,
    PrecisionReal,
    Target,
    approximate,
    exp,
    format_sci,
    ln,
    ln_gamma_ref,
    log1p_defect,
    log_approximate,
    log_error,
    pi,
    sinh,
    sqrt,
    w2_correction,
    w2_log_gap,
    w2star_log_gap,
)

CFG = OracleConfig.for_digits(50)
PREC = CFG.precision_bits


# ---------------------------------------------------------------------------
# Catalog structure
# ---------------------------------------------------------------------------


def test_tags_are_the_stable_strings():
    assert {f.value for f in FormulaId} == {
        "stirling",
        "w0",
        "w1",
        "w2",
        "w2star",
        "lsm",
        "ramanujan",
        "smith",
        "nemes1",
        "nemes2",
        "chen",
        "yangchu1",
        "yangchu2",
    }
    assert FormulaId("w2") is FormulaId.W2


def test_half_shift_targets():
    half = {FormulaId.SMITH, FormulaId.YANGCHU1, FormulaId.YANGCHU2}
    for f in FormulaId:
        expected = Target.GAMMA_X_PLUS_HALF if f in half else Target.GAMMA_X_PLUS_1
        assert f.target is expected


def test_nonpositive_arguments_are_rejected():
    with pytest.raises(DomainError):
        approximate(FormulaId.W2, PrecisionReal(0, 64))
    with pytest.raises(DomainError):
        log_error(FormulaId.W2, Fraction(-1), CFG)


# ---------------------------------------------------------------------------
# Point values
# ---------------------------------------------------------------------------


def test_stirling_at_five():
    value = approximate(FormulaId.STIRLING, PrecisionReal(5, PREC))
    # sqrt(10 pi) (5/e)^5, a touch below 5! = 120
    closed = sqrt(10 * pi(PREC)) * (5 / exp(PrecisionReal(1, PREC))) ** 5
    assert abs(value - closed) < Fraction(1, 10**45)
    assert value.to_decimal_string(12) == "118.019167958"
    record = log_error(FormulaId.STIRLING, 5, CFG)
    assert format_sci(record.relative_error, 3) == "1.65E-2"


def test_windschitl_base_at_one_closed_form():
    value = approximate(FormulaId.W0, PrecisionReal(1, PREC))
    closed = sqrt(2 * pi(PREC) * sinh(PrecisionReal(1, PREC))) / exp(PrecisionReal(1, PREC))
    assert abs(value - closed) < Fraction(1, 10**45)
    record = log_error(FormulaId.W0, 1, CFG)
    assert abs(record.relative_error - abs(closed - 1)) < Fraction(1, 10**45)


def test_corrected_formulas_at_one():
    w2 = log_error(FormulaId.W2, 1, CFG)
    assert approximate(FormulaId.W2, PrecisionReal(1, PREC)) < 1  # underestimates
    assert format_sci(w2.relative_error, 4) == "2.407E-5"
    w1 = log_error(FormulaId.W1, 1, CFG)
    assert format_sci(w1.relative_error, 4) == "1.832E-4"


def test_published_cells_at_ten_and_hundred():
    assert format_sci(log_error(FormulaId.W2, 10, CFG).relative_error, 4) == "2.785E-13"
    assert format_sci(log_error(FormulaId.NEMES2, 100, CFG).relative_error, 4) == "3.684E-18"


def test_half_shift_formula_is_compared_to_gamma_x_plus_half():
    record = log_error(FormulaId.SMITH, 3, CFG)
    # Gamma(3.5) = 15 sqrt(pi) / 8; independent reconstruction of the gap
    gamma_35 = 15 * sqrt(pi(PREC)) / 8
    direct = ln(gamma_35) - log_approximate(FormulaId.SMITH, PrecisionReal(3, PREC))
    assert abs(record.log_gap - direct) < Fraction(1, 10**45)
    assert record.relative_error < Fraction(1, 10**5)


def test_relative_error_consistency_invariant():
    record = log_error(FormulaId.CHEN, 7, CFG)
    reconstructed = abs(exp(-record.log_gap) - 1)
    assert abs(record.relative_error - reconstructed) == 0


# ---------------------------------------------------------------------------
# Error functionals
# ---------------------------------------------------------------------------


def test_gap_at_one_displays_as_published():
    assert format_sci(w2_log_gap(1, CFG), 4) == "2.407E-5"
    assert format_sci(w2star_log_gap(1, CFG), 4) == "2.412E-5"


def test_gap_vanishes_at_infinity():
    cfg = OracleConfig.for_digits(80)
    tail = w2_log_gap(10**6, cfg)
    assert tail > 0
    assert tail < Fraction(1, 10**50)


def test_gap_is_between_zero_and_value_at_one():
    g1 = w2_log_gap(1, CFG)
    g2 = w2_log_gap(2, CFG)
    assert 0 < g2 < g1


def test_gap_positive_on_sample_points():
    for x in (Fraction(3, 2), 2, 5, 17, 120):
        assert w2_log_gap(x, CFG) > 0
        assert w2star_log_gap(x, CFG) > 0


def test_star_gap_identity():
    x = PrecisionReal(3, PREC)
    lhs = w2star_log_gap(3, CFG) - w2_log_gap(3, CFG)
    rhs = log1p_defect(w2_correction(x))
    assert abs(lhs - rhs) < Fraction(1, 10**45)


def test_log1p_defect_at_zero():
    assert log1p_defect(PrecisionReal(0, 64)) == 0


def test_log1p_defect_domain():
    with pytest.raises(DomainError):
        log1p_defect(PrecisionReal(-1, 64))


# ---------------------------------------------------------------------------
# Comparative structure
# ---------------------------------------------------------------------------


def test_error_hierarchy_at_published_abscissas():
    for x in (1, 2, 5, 10, 20, 50, 100):
        w2 = log_error(FormulaId.W2, x, CFG).relative_error
        for other in (FormulaId.W1, FormulaId.NEMES2, FormulaId.CHEN):
            assert w2 < log_error(other, x, CFG).relative_error


def test_sinh_refinement_beats_power_correction_at_five():
    lsm = log_error(FormulaId.LSM, 5, CFG).relative_error
    w1 = log_error(FormulaId.W1, 5, CFG).relative_error
    assert lsm < w1


def test_windschitl_envelope_on_sample_points():
    # W0(x) < Gamma(x+1) < W0(x) (1 + 1/(1620 x^5)) on a small sample;
    # the acceptance suite runs the full 50-point grid
    for x in (Fraction(1, 10), Fraction(1), Fraction(13, 2), Fraction(20)):
        xv = PrecisionReal(x, PREC)
        gap = ln_gamma_ref(x + 1, CFG) - log_approximate(FormulaId.W0, xv)
        upper = ln(1 + 1 / (1620 * xv**5))
        assert 0 < gap < upper


# one decade of decay pins each formula's convergence exponent
_DECAY_EXPONENTS = {
    FormulaId.STIRLING: 1,
    FormulaId.W0: 5,
    FormulaId.W1: 7,
    FormulaId.W2: 9,
    FormulaId.W2STAR: 9,
    FormulaId.LSM: 11,
    FormulaId.RAMANUJAN: 4,
    FormulaId.SMITH: 5,
    FormulaId.NEMES1: 5,
    FormulaId.NEMES2: 7,
    FormulaId.CHEN: 7,
    FormulaId.YANGCHU1: 5,
    FormulaId.YANGCHU2: 7,
}


@pytest.mark.parametrize("formula", list(FormulaId), ids=lambda f: f.value)
def test_decay_exponent_matches_published_rate(formula):
    cfg = OracleConfig.for_digits(60)
    e10 = log_error(formula, 10, cfg).relative_error.to_float()
    e20 = log_error(formula, 20, cfg).relative_error.to_float()
    slope = log2(e10 / e20)
    assert abs(slope - _DECAY_EXPONENTS[formula]) < 0.25
