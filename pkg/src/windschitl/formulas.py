"""The gamma-approximation formula catalog and its error functionals.

Thirteen closed-form approximations are evaluated in log space (their
factored forms make ln F(x) direct to compute, immune to overflow, and
accurate enough to resolve gaps far below the formula values).  Ten
approximate Gamma(x+1); the Smith and Yang-Chu forms approximate
Gamma(x+1/2) and are compared against that target.

``w2_log_gap`` / ``w2star_log_gap`` are the error functionals of the two
exponent-corrected Windschitl formulas: ln Gamma(x+1) - ln F(x), strictly
decreasing and convex on (1, oo) with range (0, value-at-1).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .precision import (
    OracleConfig,
    PrecisionReal,
    exp,
    ln,
    ln_gamma_ref,
    ln_sqrt_two_pi,
    sinh,
    tanh,
    DomainError,
    default_config,
)

__all__ = [
    "FormulaId",
    "Target",
    "LogErrorValue",
    "approximate",
    "log_approximate",
    "log_error",
    "w2_correction",
    "w2_log_gap",
    "w2star_log_gap",
    "log1p_defect",
]


class Target(enum.Enum):
    """Which gamma value a formula approximates."""

    GAMMA_X_PLUS_1 = "gamma(x+1)"
    GAMMA_X_PLUS_HALF = "gamma(x+1/2)"


class FormulaId(enum.Enum):
    """Stable tags for the approximation formulas (CLI and CSV use the values)."""

    STIRLING = "stirling"
    W0 = "w0"
    W1 = "w1"
    W2 = "w2"
    W2STAR = "w2star"
    LSM = "lsm"
    RAMANUJAN = "ramanujan"
    SMITH = "smith"
    NEMES1 = "nemes1"
    NEMES2 = "nemes2"
    CHEN = "chen"
    YANGCHU1 = "yangchu1"
    YANGCHU2 = "yangchu2"

    @property
    def target(self) -> Target:
        if self in (FormulaId.SMITH, FormulaId.YANGCHU1, FormulaId.YANGCHU2):
            return Target.GAMMA_X_PLUS_HALF
        return Target.GAMMA_X_PLUS_1


def _ln_stirling(x: PrecisionReal) -> PrecisionReal:
    # ln sqrt(2 pi x) + x ln x - x
    return ln_sqrt_two_pi(x.prec) + ln(x) / 2 + x * ln(x) - x


def _ln_half_shift_base(x: PrecisionReal) -> PrecisionReal:
    # ln sqrt(2 pi) + x ln x - x, shared by the Gamma(x+1/2) formulas
    return ln_sqrt_two_pi(x.prec) + x * ln(x) - x


def _ln_windschitl_core(x: PrecisionReal) -> PrecisionReal:
    return _ln_stirling(x) + (x / 2) * ln(x * sinh(1 / x))


def w2_correction(x: PrecisionReal) -> PrecisionReal:
    """The exponent correction 7 / (324 x^3 (35 x^2 + 33))."""
    return 7 / (324 * x * x * x * (35 * x * x + 33))


def _ln_w1(x: PrecisionReal) -> PrecisionReal:
    return _ln_stirling(x) + (x / 2) * ln(x * sinh(1 / x) + 1 / (810 * x**6))


def _ln_w2(x: PrecisionReal) -> PrecisionReal:
    return _ln_windschitl_core(x) + w2_correction(x)


def _ln_w2star(x: PrecisionReal) -> PrecisionReal:
    return _ln_windschitl_core(x) + ln(1 + w2_correction(x))


def _ln_lsm(x: PrecisionReal) -> PrecisionReal:
    # sinh-argument refinement truncated after the 1/x^11 coefficient
    arg = 1 / x + Fraction(1, 810) / x**7 - Fraction(67, 42525) / x**9 + Fraction(19, 8505) / x**11
    return _ln_stirling(x) + (x / 2) * ln(x * sinh(arg))


def _ln_ramanujan(x: PrecisionReal) -> PrecisionReal:
    body = 8 * x**3 + 4 * x * x + x + Fraction(1, 30)
    return ln_sqrt_two_pi(x.prec) - ln(PrecisionReal(2, x.prec)) / 2 + x * ln(x) - x + ln(body) / 6


def _ln_smith(x: PrecisionReal) -> PrecisionReal:
    return _ln_half_shift_base(x) + (x / 2) * ln(2 * x * tanh(1 / (2 * x)))


def _ln_nemes1(x: PrecisionReal) -> PrecisionReal:
    return _ln_stirling(x) + x * ln(1 + 1 / (12 * x * x - Fraction(1, 10)))


def _ln_nemes2(x: PrecisionReal) -> PrecisionReal:
    return _ln_stirling(x) + (210 * x * x + 53) / (360 * x * (7 * x * x + 2))


def _ln_chen(x: PrecisionReal) -> PrecisionReal:
    return _ln_stirling(x) + (x * x + Fraction(53, 210)) * ln(
        1 + 1 / (12 * x**3 + Fraction(24, 7) * x - Fraction(1, 2))
    )


def _ln_yangchu1(x: PrecisionReal) -> PrecisionReal:
    return _ln_half_shift_base(x) - Fraction(1, 24) * x / (x * x + Fraction(7, 120))


def _ln_yangchu2(x: PrecisionReal) -> PrecisionReal:
    return (
        _ln_half_shift_base(x)
        - 1 / (24 * x)
        + Fraction(7, 2880) / x / (x * x + Fraction(31, 98))
    )


_LN_EVALUATORS = {
    FormulaId.STIRLING: _ln_stirling,
    FormulaId.W0: _ln_windschitl_core,
    FormulaId.W1: _ln_w1,
    FormulaId.W2: _ln_w2,
    FormulaId.W2STAR: _ln_w2star,
    FormulaId.LSM: _ln_lsm,
    FormulaId.RAMANUJAN: _ln_ramanujan,
    FormulaId.SMITH: _ln_smith,
    FormulaId.NEMES1: _ln_nemes1,
    FormulaId.NEMES2: _ln_nemes2,
    FormulaId.CHEN: _ln_chen,
    FormulaId.YANGCHU1: _ln_yangchu1,
    FormulaId.YANGCHU2: _ln_yangchu2,
}


def log_approximate(formula: FormulaId, x: PrecisionReal) -> PrecisionReal:
    """ln F(x) for the tagged formula, at the precision carried by x."""
    if x.sign <= 0:
        raise DomainError("approximation formulas need x > 0")
    return _LN_EVALUATORS[formula](x)


def approximate(formula: FormulaId, x: PrecisionReal) -> PrecisionReal:
    """F(x) for the tagged formula, at the precision carried by x."""
    return exp(log_approximate(formula, x))


@dataclass(frozen=True)
class LogErrorValue:
    """Error of one formula at one abscissa against the reference oracle.

    ``log_gap`` is ln(true value) - ln(approximation); ``relative_error``
    is |approximation - true| / true = |exp(-log_gap) - 1|, derived from
    the same evaluation.
    """

    x: PrecisionReal
    formula: FormulaId
    log_gap: PrecisionReal
    relative_error: PrecisionReal


def log_error(formula: FormulaId, x, cfg: OracleConfig | None = None) -> LogErrorValue:
    """Evaluate a formula against its target gamma value at oracle accuracy."""
    cfg = cfg or default_config()
    x = PrecisionReal(x, cfg.precision_bits) if not isinstance(x, PrecisionReal) else x
    x = PrecisionReal(x, max(x.prec, cfg.precision_bits))
    shift = Fraction(1) if formula.target is Target.GAMMA_X_PLUS_1 else Fraction(1, 2)
    true_ln = ln_gamma_ref(x + shift, cfg)
    gap = true_ln - log_approximate(formula, x)
    rel = abs(exp(-gap) - 1)
    return LogErrorValue(x=x, formula=formula, log_gap=gap, relative_error=rel)


def w2_log_gap(x, cfg: OracleConfig | None = None) -> PrecisionReal:
    """ln Gamma(x+1) - ln W2(x): the exponent-corrected formula's log error.

    Strictly decreasing and convex on (1, oo), falling from its value at
    x = 1 (about 2.4066e-5) to 0; positive, so the formula underestimates.
    """
    cfg = cfg or default_config()
    x = PrecisionReal(x, cfg.precision_bits) if not isinstance(x, PrecisionReal) else x
    return ln_gamma_ref(x + 1, cfg) - _ln_w2(PrecisionReal(x, max(x.prec, cfg.precision_bits)))


def w2star_log_gap(x, cfg: OracleConfig | None = None) -> PrecisionReal:
    """ln Gamma(x+1) - ln W2*(x), for the linear-corrected variant."""
    cfg = cfg or default_config()
    x = PrecisionReal(x, cfg.precision_bits) if not isinstance(x, PrecisionReal) else x
    return ln_gamma_ref(x + 1, cfg) - _ln_w2star(PrecisionReal(x, max(x.prec, cfg.precision_bits)))


def log1p_defect(y: PrecisionReal) -> PrecisionReal:
    """y - ln(1+y) for y > -1: the gap between the two correction styles.

    Satisfies w2star_log_gap(x) = w2_log_gap(x) + log1p_defect(w2_correction(x)).
    """
    if y <= -1:
        raise DomainError("log1p_defect needs y > -1")
    return y - ln(1 + y)
