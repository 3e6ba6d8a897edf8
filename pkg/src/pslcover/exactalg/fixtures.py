"""Embedded exact data: the degree-24 Belyi map of the family and two small covers."""

from __future__ import annotations

from fractions import Fraction as F

from .poly import Poly, QuadElem, X_poly, product

QUINTIC = Poly([F(-2, 3), F(8), F(-34), F(178, 3), F(-137, 4), F(1)])


def psi24_factors():
    """Factored numerator and 1-fiber of the degree-24 map as ``(poly, multiplicity)`` lists."""
    X = X_poly()
    num = [
        (X - F(1, 4), 1),
        (Poly([F(1, 8), F(-11, 16), F(1)]), 4),
        (QUINTIC, 3),
    ]
    one = [
        (X - F(1, 2), 3),
        (X - F(1, 3), 4),
        (X - F(5, 16), 2),
        (Poly([F(-1, 6), F(1, 3), F(1)]), 7),
    ]
    return num, one, F(243)


def psi24():
    """``(p24, q24, r24)`` with ``q24 = p24 + r24``; the map is ``p24/q24 = 1 - r24/q24``."""
    num, one, c = psi24_factors()
    p = product(f**m for f, m in num)
    r = product(f**m for f, m in one) * c
    return p, p + r, r


PSI24_TYPES = ("4^2.3^5.1^1", "7^2.4^1.3^1.2^1.1^1", "2^12")


def hyperelliptic_factors():
    """Branch factors of the genus-3 curve over the degree-24 map: quintic, mu - 1/4, mu - 5/16."""
    X = X_poly()
    return [QUINTIC, X - F(1, 4), X - F(5, 16)]


def psl32_belyi():
    """Degree-7 polynomial Belyi map with types (4.2.1, 2^2.1^3, 7) over Q(sqrt -7).

    ``X^4 (X - 1)^2 (X - r) / c`` where ``2r^2 + r + 1 = 0`` and c is the
    common value at the two extra critical points.
    """
    d = -7
    r = QuadElem(F(-1, 4), F(1, 4), d)
    c = QuadElem(F(1, 49), F(-13, 2401), d)
    X = Poly([QuadElem(0, 0, d), QuadElem(1, 0, d)])
    one = QuadElem(1, 0, d)
    num = X**4 * (X - one) ** 2 * (X - r)
    return num, Poly([c])


PSL32_TYPES = ("4^1.2^1.1^1", "2^2.1^3", "7^1")
