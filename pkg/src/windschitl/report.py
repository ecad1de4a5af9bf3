"""Comparison-table construction, golden checks, and CSV/Markdown rendering.

CSV is the regression format (6 significant digits, schema
``x,formula,relative_error,log_gap,digits``); Markdown is the display
format (4 significant digits, one row per abscissa).  Both use LF line
endings, a ``.`` decimal point, and the one scientific notation produced
by :func:`windschitl.precision.format_sci`, so identical inputs render
byte-identically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .formulas import FormulaId, LogErrorValue, log_error
from .goldens import TABLE_GOLDENS, GoldenCell
from .precision import DomainError, OracleConfig, PrecisionError, format_sci
from .verify import VerificationReport, _Checks

__all__ = [
    "TableSpec",
    "build_table",
    "render_csv",
    "render_markdown",
    "check_goldens",
]

DEFAULT_ABSCISSAS = tuple(Fraction(v) for v in (1, 2, 5, 10, 20, 50, 100))
DEFAULT_FORMULAS = (FormulaId.NEMES2, FormulaId.CHEN, FormulaId.W1, FormulaId.W2)


@dataclass(frozen=True)
class TableSpec:
    """What to tabulate: abscissas x formulas at a given oracle accuracy."""

    abscissas: tuple[Fraction, ...] = DEFAULT_ABSCISSAS
    formulas: tuple[FormulaId, ...] = DEFAULT_FORMULAS
    precision_digits: int = 50
    format: str = "csv"

    def __post_init__(self):
        if not self.formulas:
            raise ValueError("at least one formula is required")
        if not self.abscissas:
            raise ValueError("at least one abscissa is required")
        if any(x <= 0 for x in self.abscissas):
            raise ValueError("abscissas must be positive")
        if any(b <= a for a, b in zip(self.abscissas, self.abscissas[1:])):
            raise ValueError("abscissas must be strictly increasing")
        if self.precision_digits <= 0:
            raise ValueError("precision_digits must be positive")
        if self.format not in ("csv", "markdown"):
            raise ValueError("format must be 'csv' or 'markdown'")

    @property
    def config(self) -> OracleConfig:
        return OracleConfig.for_digits(self.precision_digits)


def build_table(spec: TableSpec) -> tuple[LogErrorValue, ...]:
    """One error record per (abscissa, formula) pair, in that order.

    Oracle precision and domain failures are re-raised with the offending
    cell identified.
    """
    cfg = spec.config
    records = []
    for x in spec.abscissas:
        for formula in spec.formulas:
            try:
                records.append(log_error(formula, x, cfg))
            except (DomainError, PrecisionError) as e:
                raise type(e)(f"cell (x={x}, {formula.value}): {e}") from e
    return tuple(records)


def _fraction_to_plain_decimal(fr: Fraction) -> str:
    """Exact plain-decimal rendering when the fraction terminates, else p/q."""
    den = fr.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return str(fr)
    k = max(twos, fives)
    if k == 0:
        return str(fr.numerator)
    scaled = fr.numerator * 10**k // fr.denominator
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(k + 1, "0")
    return f"{sign}{digits[:-k]}.{digits[-k:]}".rstrip("0").rstrip(".")


def render_csv(spec: TableSpec, records: Sequence[LogErrorValue]) -> str:
    lines = ["x,formula,relative_error,log_gap,digits"]
    pairs = [(x, f) for x in spec.abscissas for f in spec.formulas]
    for (x, formula), record in zip(pairs, records, strict=True):
        lines.append(
            ",".join(
                (
                    _fraction_to_plain_decimal(x),
                    formula.value,
                    format_sci(record.relative_error, 6),
                    format_sci(record.log_gap, 6),
                    str(spec.precision_digits),
                )
            )
        )
    return "\n".join(lines) + "\n"


def render_markdown(spec: TableSpec, records: Sequence[LogErrorValue]) -> str:
    header = "| x | " + " | ".join(f.value for f in spec.formulas) + " |"
    rule = "| --- |" + " --- |" * len(spec.formulas)
    lines = [header, rule]
    per_row = len(spec.formulas)
    for i, x in enumerate(spec.abscissas):
        row = records[i * per_row : (i + 1) * per_row]
        cells = " | ".join(format_sci(r.relative_error, 4) for r in row)
        lines.append(f"| {_fraction_to_plain_decimal(x)} | {cells} |")
    return "\n".join(lines) + "\n"


def _floor_log10(q: Fraction) -> int:
    if q <= 0:
        raise ValueError("positive value required")
    e = len(str(q.numerator)) - len(str(q.denominator))
    while Fraction(10) ** e > q:
        e -= 1
    while Fraction(10) ** (e + 1) <= q:
        e += 1
    return e


def check_goldens(
    cells: Sequence[GoldenCell] = TABLE_GOLDENS,
    tol_sig_digits: int = 3,
    cfg: OracleConfig | None = None,
) -> VerificationReport:
    """Recompute each golden cell and compare to the published value.

    A cell passes when |computed - published| stays below half an ulp of
    the published value's ``tol_sig_digits``-th significant digit; the
    default of 3 leaves the published 4th digit to its unknown rounding
    rule.  The comparison is exact rational arithmetic.
    """
    if not 2 <= tol_sig_digits <= 4:
        raise ValueError("tol_sig_digits must be between 2 and 4")
    cfg = cfg or OracleConfig.for_digits(50)
    c = _Checks("reference-table", tolerance=None)
    worst: tuple[Fraction, GoldenCell] | None = None
    for cell in cells:
        record = log_error(cell.formula, cell.x, cfg)
        computed = record.relative_error.to_fraction()
        published = cell.expected_relative_error
        band = Fraction(10) ** _floor_log10(published) / (2 * 10 ** (tol_sig_digits - 1))
        offset = abs(computed - published)
        c.expect(
            offset < band,
            f"cell (x={cell.x}, {cell.formula.value}) matches to "
            f"{tol_sig_digits} significant digits",
            f"computed {format_sci(computed, 6)}, published {format_sci(published, 4)}",
        )
        severity = offset / band
        if worst is None or severity > worst[0]:
            worst = (severity, cell)
    if worst is not None:
        c.note(
            "worst cell",
            f"(x={worst[1].x}, {worst[1].formula.value}) at "
            f"{format_sci(worst[0], 3)} of the allowed band",
        )
    return c.report()
