"""Shared test helpers: independent oracles and generators.

The brute-force sign profile here deliberately avoids the logic of
``sign_criterion``: it scans a dense grid of exact rational points below
a root bound, demands a single minus-to-plus transition, and bisects
only the grid cell where the flip happened.
"""

from __future__ import annotations

import random
from fractions import Fraction

from windschitl import Polynomial

BRACKET_WIDTH = Fraction(1, 2**32)


def random_shaped_polynomial(rng: random.Random) -> tuple[Polynomial, int]:
    """A random polynomial matching the single-probe criterion's shape.

    Degree <= 12; one nonpositive coefficient block at low degrees (strictly
    negative at its top), nonnegative elsewhere, positive leading term; a
    sprinkling of exact zeros on both sides.
    """
    n = rng.randint(2, 12)
    m = rng.randint(0, n - 1)
    coeffs: list[Fraction] = []
    for i in range(n + 1):
        if i == n:
            c = Fraction(rng.randint(1, 40), rng.choice((1, 2, 3)))
        elif i == m:
            c = -Fraction(rng.randint(1, 40), rng.choice((1, 2, 3)))
        elif i < m:
            c = Fraction(0) if rng.random() < 0.3 else -Fraction(rng.randint(0, 30), rng.choice((1, 2)))
        else:
            c = Fraction(0) if rng.random() < 0.3 else Fraction(rng.randint(0, 30), rng.choice((1, 2)))
        coeffs.append(c)
    return Polynomial(coeffs), m


def positive_root_bound(p: Polynomial) -> Fraction:
    """Cauchy bound: every real root is below 1 + max|c_i| / |leading|."""
    body = p.coeffs[:-1]
    if not body:
        return Fraction(2)
    return 1 + max(abs(c) for c in body) / abs(p.leading)


def brute_force_sign_profile(
    p: Polynomial, n_points: int = 1000
) -> tuple[Fraction, Fraction]:
    """Locate the unique sign change of a shaped polynomial by dense scan.

    Evaluates at n_points exact rational abscissas up to the root bound,
    asserts the profile is (negatives)(single flip)(positives), and
    bisects the flip cell down to BRACKET_WIDTH.  Returns the bracket.
    """
    bound = positive_root_bound(p)
    step = bound / n_points
    prev_x, prev_v = None, None
    flip: tuple[Fraction, Fraction] | None = None
    for k in range(1, n_points + 1):
        x = k * step
        v = p(x)
        if v == 0:
            assert flip is None, "second crossing found"
            flip = (x, x)
        elif v > 0:
            if flip is None:
                assert prev_v is not None and prev_v < 0, "profile must start negative"
                flip = (prev_x, x)
        else:
            assert flip is None, "negative value after a crossing"
        if v != 0:
            prev_x, prev_v = x, v
    assert flip is not None, "no crossing below the root bound"
    lo, hi = flip
    if lo == hi:
        return flip
    while hi - lo > BRACKET_WIDTH:
        mid = (lo + hi) / 2
        v = p(mid)
        if v == 0:
            return (mid, mid)
        if v < 0:
            lo = mid
        else:
            hi = mid
    return (lo, hi)
