"""Complex polynomials at arbitrary precision (ascending coefficient lists of ``mpc``)."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath


class NoConvergence(RuntimeError):
    pass


def mpc(z) -> mpmath.mpc:
    if isinstance(z, mpmath.mpc):
        return z
    if isinstance(z, Fraction):
        return mpmath.mpc(mpmath.mpf(z.numerator) / z.denominator)
    if hasattr(z, "to_complex"):
        return mpmath.mpc(z.to_complex())
    return mpmath.mpc(z)


class CPoly:
    """Dense polynomial; ``coeffs[i]`` multiplies ``X^i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [mpc(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = c

    @classmethod
    def from_roots(cls, roots: Sequence, lead=1) -> CPoly:
        return cls(poly_from_roots([mpc(r) for r in roots], mpc(lead)))

    @classmethod
    def from_exact(cls, poly) -> CPoly:
        """Convert an exact :class:`pslcover.exactalg.poly.Poly`."""
        return cls(mpc(c) for c in poly.c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z):
        return horner(self.coeffs, z)

    def deriv(self) -> CPoly:
        return CPoly(deriv(self.coeffs))

    def __add__(self, other: CPoly) -> CPoly:
        return CPoly(add(self.coeffs, other.coeffs))

    def __sub__(self, other: CPoly) -> CPoly:
        return CPoly(sub(self.coeffs, other.coeffs))

    def __mul__(self, other) -> CPoly:
        if isinstance(other, CPoly):
            return CPoly(mul(self.coeffs, other.coeffs))
        return CPoly(c * other for c in self.coeffs)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> CPoly:
        out = [mpmath.mpc(1)]
        for _ in range(k):
            out = mul(out, self.coeffs)
        return CPoly(out)

    def __repr__(self):
        return f"CPoly(degree={self.degree})"


# list helpers; they work for python complex as well as mpc


def horner(c: Sequence, z):
    acc = 0 * z
    for a in reversed(c):
        acc = acc * z + a
    return acc


def horner_d(c: Sequence, z):
    """Value and derivative in one pass."""
    p = 0 * z
    dp = 0 * z
    for a in reversed(c):
        dp = dp * z + p
        p = p * z + a
    return p, dp


def add(a: Sequence, b: Sequence) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = out[i] + x
    return out


def sub(a: Sequence, b: Sequence) -> list:
    out = list(a) + [0 * x for x in b[len(a):]]
    for i, x in enumerate(b):
        out[i] = out[i] - x
    return out


def mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0 * a[0]] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def deriv(a: Sequence) -> list:
    return [i * a[i] for i in range(1, len(a))]


def poly_from_roots(roots: Sequence, lead=1) -> list:
    out = [lead]
    for r in roots:
        nxt = [0 * lead] * (len(out) + 1)
        for i, x in enumerate(out):
            nxt[i + 1] += x
            nxt[i] -= r * x
        out = nxt
    return out


def residual_scale(c: Sequence, z):
    """``sum |c_i| |z|^i``, the natural scale for a relative residual."""
    az = abs(z)
    acc = 0 * az
    for a in reversed(c):
        acc = acc * az + abs(a)
    return acc


def roots_all(p: CPoly | Sequence, prec: int | None = None, maxiter: int = 1000, tol_bits: int = 32) -> list:
    """All roots by Aberth-Ehrlich iteration.

    A root is accepted once its relative residual is below
    ``2^(tol_bits - prec)``; clustered roots are therefore only as accurate
    as their conditioning allows.
    """
    coeffs = p.coeffs if isinstance(p, CPoly) else [mpc(x) for x in p]
    prec = prec or mpmath.mp.prec
    n = len(coeffs) - 1
    if n < 1:
        raise ValueError("degree must be at least 1")
    with mpmath.workprec(prec):
        lead = coeffs[-1]
        c = [x / lead for x in coeffs]
        if n == 1:
            return [-c[0]]
        # Fujiwara-type bound for the starting circle; the angular offset breaks symmetry
        radius = 2 * max(abs(c[i]) ** (mpmath.mpf(1) / (n - i)) for i in range(n)) + mpmath.mpf("1e-3")
        z = [radius * mpmath.expj(2 * mpmath.pi * k / n + mpmath.mpf("0.4")) for k in range(n)]
        eps = mpmath.mpf(2) ** (tol_bits - prec)
        done = [False] * n
        for _ in range(maxiter):
            active = False
            for i in range(n):
                if done[i]:
                    continue
                pv, dv = horner_d(c, z[i])
                if abs(pv) <= eps * residual_scale(c, z[i]):
                    done[i] = True
                    continue
                active = True
                ratio = pv / dv if dv != 0 else mpmath.mpc(radius)
                s = sum(1 / (z[i] - z[j]) for j in range(n) if j != i and z[i] != z[j])
                z[i] -= ratio / (1 - ratio * s)
            if not active:
                break
        else:
            raise NoConvergence(f"Aberth iteration did not converge in {maxiter} steps")
        # one Newton polish per root, kept only if it lowers the residual
        for i in range(n):
            pv, dv = horner_d(c, z[i])
            if dv != 0:
                cand = z[i] - pv / dv
                if abs(horner(c, cand)) < abs(pv):
                    z[i] = cand
        return z


def max_relative_residual(coeffs: Sequence, roots: Sequence):
    return max(abs(horner(coeffs, z)) / residual_scale(coeffs, z) for z in roots)


def bits(x) -> float:
    """``log2 |x|`` (``-inf`` for 0)."""
    return -math.inf if x == 0 else float(mpmath.log(abs(x), 2))
