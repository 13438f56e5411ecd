"""Closed forms used as external reference values in the checks."""

from __future__ import annotations

from fractions import Fraction

from .polyalg import LaurentPoly


def F11() -> LaurentPoly:
    t, = LaurentPoly.gens(("t1",))
    return Fraction(-1, 384) * (1 + t) ** 4 * t ** -2 * (t - 4 + t ** -1)


def F03() -> LaurentPoly:
    t1, t2, t3 = LaurentPoly.gens(("t1", "t2", "t3"))
    return Fraction(-1, 16) * (t1 + 1) * (t2 + 1) * (t3 + 1) * (1 + (t1 * t2 * t3) ** -1)


def W11() -> LaurentPoly:
    t, = LaurentPoly.gens(("t1",))
    return Fraction(-1, 128) * (t ** 2 - 1) ** 3 * t ** -4


def W03_literal() -> LaurentPoly:
    """The W_{0,3} expression exactly as commonly quoted: -(1/16)(1/(t1 t2 t3) - 1).

    It is odd under t -> -t and is not d1 d2 d3 of F03(); kept so the
    discrepancy stays visible.
    """
    t1, t2, t3 = LaurentPoly.gens(("t1", "t2", "t3"))
    return Fraction(-1, 16) * ((t1 * t2 * t3) ** -1 - 1)


def W03() -> LaurentPoly:
    """d1 d2 d3 F03() = (1/16)(1/(t1 t2 t3)^2 - 1)."""
    t1, t2, t3 = LaurentPoly.gens(("t1", "t2", "t3"))
    return Fraction(1, 16) * ((t1 * t2 * t3) ** -2 - 1)


# known Witten-Kontsevich values, independent of this package
TAU = {
    (0, (0, 0, 0)): Fraction(1),
    (1, (1,)): Fraction(1, 24),
    (2, (4,)): Fraction(1, 1152),
}

CATALAN_SEQUENCE = [1, 1, 2, 5, 14, 42, 132, 429, 1430]
MOTZKIN_SEQUENCE = [1, 1, 2, 4, 9, 21, 51, 127, 323]
