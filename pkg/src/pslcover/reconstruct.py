"""Recognizing exact numbers from high-precision approximations and fitting rational functions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .exactalg.poly import Poly, QuadElem, gcd


class NoMatch(LookupError):
    pass


class NoFit(LookupError):
    pass


class YCollision(ZeroDivisionError):
    pass


DEFAULT_HEIGHT = 10**30
# a convergent p/q of a generic real is within about 1/q^2; a genuine rational beats that by far
SIGNIFICANCE = mpmath.mpf(2) ** -32


def _tol(prec: int | None):
    prec = prec or mpmath.mp.prec
    return mpmath.mpf(2) ** (-(prec // 2))


def recognize_rational(x, height: int = DEFAULT_HEIGHT, prec: int | None = None) -> Fraction:
    """Continued-fraction recognition of a real number (imaginary part must be negligible)."""
    x = mpmath.mpmathify(x)
    tol = _tol(prec)
    if abs(mpmath.im(x)) >= tol:
        raise NoMatch("imaginary part is not negligible")
    v = mpmath.re(x)
    h0, h1 = 0, 1
    k0, k1 = 1, 0
    r = v
    for _ in range(400):
        a = int(mpmath.floor(r))
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        if k1 > height:
            break
        err = abs(v - mpmath.mpf(h1) / k1)
        if 2 * err < tol and err * k1 * k1 < SIGNIFICANCE:
            return Fraction(h1, k1)
        frac = r - a
        if frac == 0:
            break
        r = 1 / frac
    raise NoMatch(f"no rational with denominator <= {height} within tolerance")


def _lll(basis: list[list[int]], delta: Fraction = Fraction(3, 4)) -> list[list[int]]:
    """Textbook LLL with exact rational Gram-Schmidt (tiny dimensions only)."""
    b = [list(v) for v in basis]
    n = len(b)

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    def gso():
        bs, mu = [], [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = Fraction(dot(b[i], bs[j])) / dot(bs[j], bs[j]) if dot(bs[j], bs[j]) else Fraction(0)
                v = [x - mu[i][j] * y for x, y in zip(v, bs[j])]
            bs.append(v)
        return bs, mu

    bs, mu = gso()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                bs, mu = gso()
        if dot(bs[k], bs[k]) >= (delta - mu[k][k - 1] ** 2) * dot(bs[k - 1], bs[k - 1]):
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            bs, mu = gso()
            k = max(k - 1, 1)
    return b


def recognize_quadratic(x, d: int, height: int = DEFAULT_HEIGHT, prec: int | None = None) -> QuadElem:
    """Find rationals a, b with ``x ~ a + b sqrt(d)`` by lattice reduction on (1, sqrt d, x)."""
    prec = prec or mpmath.mp.prec
    x = mpmath.mpmathify(x)
    tol = _tol(prec)
    with mpmath.workprec(prec + 20):
        s = mpmath.sqrt(mpmath.mpf(d)) if d > 0 else mpmath.mpc(0, mpmath.sqrt(-d))
        K = mpmath.mpf(2) ** (prec - 8)
        vals = [mpmath.mpc(1), mpmath.mpc(s), -mpmath.mpc(x)]
        rows = []
        for i, v in enumerate(vals):
            row = [0, 0, 0]
            row[i] = 1
            row += [int(mpmath.nint(K * v.real)), int(mpmath.nint(K * v.imag))]
            rows.append(row)
        for v in _lll(rows):
            c0, c1, c2 = v[:3]
            if c2 == 0:
                continue
            a, bq = Fraction(c0, c2), Fraction(c1, c2)
            if max(abs(a.numerator), a.denominator, abs(bq.numerator), bq.denominator) > height:
                continue
            approx = mpmath.mpf(a.numerator) / a.denominator + mpmath.mpf(bq.numerator) / bq.denominator * s
            if 2 * abs(approx - x) < tol:
                return QuadElem(a, bq, d)
    raise NoMatch(f"no element of Q(sqrt {d}) within tolerance")


@dataclass
class Sample:
    mu: Fraction
    y: object
    coeffs: list

    def to_json(self) -> dict:
        return {
            "mu": str(self.mu),
            "y": _cjson(self.y),
            "coeffs": [_cjson(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> Sample:
        return cls(Fraction(obj["mu"]), _cparse(obj["y"]), [_cparse(c) for c in obj["coeffs"]])


def _cjson(z) -> dict:
    z = mpmath.mpc(z)
    return {"re": mpmath.nstr(z.real, mpmath.mp.dps, min_fixed=1, max_fixed=0), "im": mpmath.nstr(z.imag, mpmath.mp.dps, min_fixed=1, max_fixed=0)}


def _cparse(obj) -> mpmath.mpc:
    if isinstance(obj, dict):
        return mpmath.mpc(mpmath.mpf(obj["re"]), mpmath.mpf(obj["im"]))
    return mpmath.mpc(obj)


def split_even_odd(plus: Sample, minus: Sample, tol=None) -> tuple[list, list]:
    """Separate ``H1 + y H2`` from samples at the two points over the same mu."""
    if plus.mu != minus.mu:
        raise ValueError("samples lie over different mu")
    tol = tol if tol is not None else _tol(None)
    y = plus.y
    if abs(y) < tol:
        raise YCollision("y vanishes at this mu")
    if abs(y + minus.y) > tol * max(1, abs(y)):
        raise ValueError("samples do not carry opposite y values")
    h1 = [(a + b) / 2 for a, b in zip(plus.coeffs, minus.coeffs)]
    h2 = [(a - b) / (2 * y) for a, b in zip(plus.coeffs, minus.coeffs)]
    return h1, h2


@dataclass(frozen=True)
class RatFun:
    num: Poly
    den: Poly

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    def __str__(self):
        return f"({[str(c) for c in self.num.c]}) / ({[str(c) for c in self.den.c]})"


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def _reduce(num: Poly, den: Poly) -> RatFun:
    g = gcd(num, den)
    if g.degree > 0:
        num, den = num.exact_div(g), den.exact_div(g)
    lc = den.lc()
    return RatFun(num * (1 / lc), den.monic())


def fit_ratfun(points: Sequence[tuple[Fraction, Fraction]], bounds: tuple[int, int]) -> RatFun:
    """Exact rational function of degree at most ``bounds`` through all points.

    The first ``dn + dd + 2`` points determine the candidate; every point is
    then checked.
    """
    dn, dd = bounds
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    need = dn + dd + 2
    if len(pts) < need:
        raise ValueError(f"need at least {need} points")
    if len({x for x, _ in pts}) != len(pts):
        raise ValueError("abscissae must be distinct")
    rows = []
    for x, y in pts[:need]:
        rows.append([x**i for i in range(dn + 1)] + [-y * x**j for j in range(dd + 1)])
    null = _nullspace(rows, dn + dd + 2)
    for v in null:
        num = Poly(v[: dn + 1])
        den = Poly(v[dn + 1:])
        if not den:
            continue
        f = _reduce(num, den)
        if all(f.den(x) != 0 and f.num(x) == y * f.den(x) for x, y in pts):
            return f
    raise NoFit(f"no rational function of degrees {bounds} fits the points")


def fit_search(points: Sequence[tuple[Fraction, Fraction]], max_total: int | None = None) -> RatFun:
    """Increase ``dn + dd`` until a fit validates on at least one held-out point."""
    n = len(points)
    max_total = n - 3 if max_total is None else min(max_total, n - 3)
    for total in range(0, max_total + 1):
        for dd in range(0, total + 1):
            try:
                return fit_ratfun(points, (total - dd, dd))
            except NoFit:
                continue
    raise NoFit("no rational function within the degree budget")


def recognize_values(values: Sequence, height: int = DEFAULT_HEIGHT, prec: int | None = None) -> list[Fraction]:
    return [recognize_rational(v, height, prec) for v in values]
