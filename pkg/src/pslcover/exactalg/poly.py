"""Dense univariate polynomials over Q and quadratic fields Q(sqrt d)."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Sequence


class MixedFieldError(ValueError):
    pass


def parse_fraction(s) -> Fraction:
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(str(s).strip())


class QuadElem:
    """``a + b*sqrt(d)`` with rational a, b and a squarefree integer d."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d: int = -1):
        if d in (0, 1):
            raise ValueError("d must be squarefree and not 0 or 1")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    def _coerce(self, other) -> QuadElem:
        if isinstance(other, QuadElem):
            if other.d != self.d:
                raise MixedFieldError(f"sqrt({self.d}) vs sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(other, 0, self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def conj(self) -> QuadElem:
        return QuadElem(self.a, -self.b, self.d)

    def inverse(self) -> QuadElem:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadElem(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadElem(1, 0, self.d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadElem):
            return self.d == other.d and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    def to_complex(self, ctx=None):
        """Numeric value with ``sqrt(d)`` on the positive real or imaginary axis."""
        import mpmath

        ctx = ctx or mpmath.mp
        return ctx.mpf(self.a.numerator) / self.a.denominator + ctx.mpf(self.b.numerator) / self.b.denominator * ctx.sqrt(self.d)

    def __repr__(self):
        return f"QuadElem({self.a}, {self.b}, d={self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.d})"

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "d": self.d}

    @classmethod
    def from_json(cls, obj: dict) -> QuadElem:
        return cls(parse_fraction(obj["a"]), parse_fraction(obj["b"]), int(obj["d"]))


def _is_zero(c) -> bool:
    return not c


class Poly:
    """Polynomial with field coefficients (``Fraction`` or :class:`QuadElem`), ascending order."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = list(coeffs)
        while c and _is_zero(c[-1]):
            c.pop()
        self.c = tuple(c)

    @classmethod
    def from_ints(cls, coeffs: Iterable[int]) -> Poly:
        return cls(Fraction(x) for x in coeffs)

    @classmethod
    def monomial(cls, k: int, coeff=Fraction(1)) -> Poly:
        return cls([coeff * 0] * k + [coeff])

    @classmethod
    def const(cls, a) -> Poly:
        return cls([a])

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def lc(self):
        return self.c[-1]

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def _zero(self):
        return self.c[0] * 0 if self.c else Fraction(0)

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        n = max(len(self.c), len(other.c))
        a = self.c + (0,) * (n - len(self.c))
        b = other.c + (0,) * (n - len(other.c))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-x for x in self.c)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(x * other for x in self.c)
        if not self.c or not other.c:
            return Poly()
        out = [None] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if _is_zero(x):
                continue
            for j, y in enumerate(other.c):
                t = x * y
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        z = self._zero()
        return Poly(z if v is None else v for v in out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        out = Poly([Fraction(1)])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        dq = len(r) - len(other.c)
        if dq < 0:
            return Poly(), self
        inv = 1 / other.lc()
        q = [0] * (dq + 1)
        for k in range(dq, -1, -1):
            coef = r[k + len(other.c) - 1] * inv
            q[k] = coef
            if _is_zero(coef):
                continue
            for j, y in enumerate(other.c):
                r[k + j] = r[k + j] - coef * y
        return Poly(q), Poly(r[: len(other.c) - 1])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: Poly) -> Poly:
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("division leaves a remainder")
        return q

    def monic(self) -> Poly:
        if not self.c:
            return self
        inv = 1 / self.lc()
        return Poly(x * inv for x in self.c)

    def deriv(self) -> Poly:
        return Poly(x * i for i, x in enumerate(self.c) if i)

    def __call__(self, x):
        acc = self._zero()
        for coef in reversed(self.c):
            acc = acc * x + coef
        return acc

    def compose(self, other: Poly) -> Poly:
        acc = Poly()
        for coef in reversed(self.c):
            acc = acc * other + coef
        return acc

    def map(self, fn: Callable) -> Poly:
        return Poly(fn(x) for x in self.c)

    def conj(self) -> Poly:
        """Apply ``sqrt(d) -> -sqrt(d)`` coefficientwise (identity on rational coefficients)."""
        return Poly(x.conj() if isinstance(x, QuadElem) else x for x in self.c)

    def field_d(self) -> int | None:
        for x in self.c:
            if isinstance(x, QuadElem):
                return x.d
        return None

    def is_rational(self) -> bool:
        return all(not isinstance(x, QuadElem) or x.is_rational() for x in self.c)

    def to_rational(self) -> Poly:
        out = []
        for x in self.c:
            if isinstance(x, QuadElem):
                if not x.is_rational():
                    raise ValueError("coefficient is not rational")
                x = x.a
            out.append(Fraction(x))
        return Poly(out)

    def trace(self):
        """Sum of the roots of a monic polynomial."""
        return -self.c[-2] / self.c[-1] if len(self.c) > 1 else self._zero()

    def __repr__(self):
        return f"Poly({[str(x) for x in self.c]})"

    def to_json(self) -> dict:
        if any(isinstance(x, QuadElem) for x in self.c):
            d = self.field_d()
            return {"coeffs": [(x if isinstance(x, QuadElem) else QuadElem(x, 0, d)).to_json() for x in self.c]}
        return {"coeffs": [str(x) for x in self.c]}

    @classmethod
    def from_json(cls, obj: dict) -> Poly:
        out = []
        ds = set()
        for x in obj["coeffs"]:
            if isinstance(x, dict):
                q = QuadElem.from_json(x)
                ds.add(q.d)
                out.append(q)
            else:
                out.append(parse_fraction(x))
        if len(ds) > 1:
            raise MixedFieldError(f"coefficients from several fields {sorted(ds)}")
        return cls(out)


def X_poly() -> Poly:
    return Poly([Fraction(0), Fraction(1)])


def from_roots(roots: Sequence) -> Poly:
    p = Poly([Fraction(1)])
    for r in roots:
        p = p * Poly([-r, Fraction(1)])
    return p


def gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a % b
    return a.monic()


def product(polys: Iterable[Poly]) -> Poly:
    out = Poly([Fraction(1)])
    for p in polys:
        out = out * p
    return out


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm (characteristic 0).  Returns monic ``(factor, multiplicity)`` pairs."""
    if not p:
        raise ValueError("zero polynomial")
    out = []
    f = p.monic()
    if f.degree == 0:
        return out
    fp = f.deriv()
    a = gcd(f, fp)
    b = f.exact_div(a)
    c = fp.exact_div(a)
    d = c - b.deriv()
    i = 1
    while b.degree > 0:
        a = gcd(b, d)
        b = b.exact_div(a)
        c = d.exact_div(a)
        if a.degree > 0:
            out.append((a, i))
        d = c - b.deriv()
        i += 1
    return out


def is_squarefree(p: Poly) -> bool:
    return gcd(p, p.deriv()).degree == 0


# ---------------------------------------------------------------------------
# resultants


def resultant(f: Poly, g: Poly):
    """Resultant over a field via the Euclidean algorithm."""
    if not f or not g:
        return f._zero() if f else g._zero()
    res = Fraction(1)
    while g.degree > 0:
        m, n = f.degree, g.degree
        r = f % g
        if not r:
            return f._zero()
        # Res(f, g) = (-1)^{mn} lc(g)^{m - deg r} Res(g, r)
        if (m * n) % 2:
            res = -res
        res = res * g.lc() ** (m - r.degree)
        f, g = g, r
    if not g:
        return f._zero()
    return res * g.lc() ** f.degree


def _int_content(coeffs: Sequence[int]) -> int:
    return math.gcd(*coeffs) if coeffs else 0


def int_resultant(f: Sequence[int], g: Sequence[int]) -> int:
    """Resultant of integer polynomials (ascending) via the subresultant PRS."""
    A = _strip(list(f))
    B = _strip(list(g))
    if not A or not B:
        return 0
    dA, dB = len(A) - 1, len(B) - 1
    s = 1
    if dA < dB:
        A, B = B, A
        dA, dB = dB, dA
        if dA % 2 and dB % 2:
            s = -1
    if dB == 0:
        return s * B[0] ** dA
    a, b = _int_content(A), _int_content(B)
    A = [x // a for x in A]
    B = [x // b for x in B]
    t = a ** dB * b ** dA
    g = h = 1
    while True:
        delta = len(A) - len(B)
        if (len(A) - 1) % 2 and (len(B) - 1) % 2:
            s = -s
        R = _prem(A, B)
        A = B
        if not R:
            return 0
        div = g * h ** delta
        B = [x // div for x in R]
        g = A[-1]
        h = g ** delta // h ** (delta - 1) if delta >= 1 else h
        if len(B) == 1:
            break
    dA = len(A) - 1
    h = B[0] ** dA // h ** (dA - 1) if dA >= 1 else h
    return s * t * h


def _strip(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _prem(A: list[int], B: list[int]) -> list[int]:
    """Pseudo-remainder ``lc(B)^(deg A - deg B + 1) * A mod B``."""
    r = list(A)
    lb = B[-1]
    db = len(B) - 1
    e = len(A) - len(B) + 1
    while r and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [x * lb for x in r]
        for j, y in enumerate(B):
            r[shift + j] -= lr * y
        r = _strip(r)
        e -= 1
    return [x * lb ** e for x in r]


def discriminant(f: Poly):
    n = f.degree
    if n < 1:
        raise ValueError("discriminant of a constant")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.deriv()) / f.lc()


def integer_primitive(p: Poly) -> tuple[list[int], Fraction]:
    """Scale a rational polynomial to a primitive integer one; returns (coeffs, scale)."""
    den = 1
    for x in p.c:
        den = math.lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in p.c]
    g = _int_content(ints) or 1
    return [x // g for x in ints], Fraction(g, den)


def interpolate(xs: Sequence, ys: Sequence) -> Poly:
    """Newton divided differences; exact for exact inputs."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    p = Poly([coef[-1]])
    for i in range(n - 2, -1, -1):
        p = p * Poly([-xs[i], Fraction(1)]) + coef[i]
    return p
