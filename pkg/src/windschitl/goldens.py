"""Golden regression values for the default comparison table.

Each cell pins the published 4-significant-digit relative error
|F(x) - Gamma(x+1)| / Gamma(x+1) for one formula at one abscissa.  The
expected values are stored as exact Fractions of the printed decimals so
that tolerance checks are themselves exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from .formulas import FormulaId

__all__ = ["GoldenCell", "TABLE_GOLDENS"]


@dataclass(frozen=True)
class GoldenCell:
    x: Fraction
    formula: FormulaId
    expected_relative_error: Fraction

    def __post_init__(self):
        if self.x <= 0:
            raise ValueError("abscissa must be positive")
        if self.expected_relative_error <= 0:
            raise ValueError("expected relative error must be positive")


def _cell(x: int, tag: str, printed: str) -> GoldenCell:
    return GoldenCell(Fraction(x), FormulaId(tag), Fraction(Decimal(printed)))


TABLE_GOLDENS: tuple[GoldenCell, ...] = (
    _cell(1, "nemes2", "1.114e-4"),
    _cell(1, "chen", "1.398e-4"),
    _cell(1, "w1", "1.832e-4"),
    _cell(1, "w2", "2.407e-5"),
    _cell(2, "nemes2", "1.900e-6"),
    _cell(2, "chen", "2.222e-6"),
    _cell(2, "w1", "2.668e-6"),
    _cell(2, "w2", "2.308e-7"),
    _cell(5, "nemes2", "4.353e-9"),
    _cell(5, "chen", "4.956e-9"),
    _cell(5, "w1", "5.743e-9"),
    _cell(5, "w2", "1.249e-10"),
    _cell(10, "nemes2", "3.609e-11"),
    _cell(10, "chen", "4.088e-11"),
    _cell(10, "w1", "4.710e-11"),
    _cell(10, "w2", "2.785e-13"),
    _cell(20, "nemes2", "2.864e-13"),
    _cell(20, "chen", "3.240e-13"),
    _cell(20, "w1", "3.727e-13"),
    _cell(20, "w2", "5.634e-16"),
    _cell(50, "nemes2", "4.713e-16"),
    _cell(50, "chen", "5.330e-16"),
    _cell(50, "w1", "6.129e-16"),
    _cell(50, "w2", "1.492e-19"),
    _cell(100, "nemes2", "3.684e-18"),
    _cell(100, "chen", "4.166e-18"),
    _cell(100, "w1", "4.791e-18"),
    _cell(100, "w2", "2.918e-22"),
)
