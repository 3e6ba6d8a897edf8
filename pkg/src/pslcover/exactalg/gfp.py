"""Polynomials over a prime field, stored as ascending lists of ints in ``[0, p)``.

Factorization is squarefree splitting, distinct-degree splitting and
Cantor-Zassenhaus equal-degree splitting (trace map for p = 2).
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .poly import Poly, QuadElem


class BadPrime(ValueError):
    pass


def strip(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a, b, p):
    n = max(len(a), len(b))
    return strip([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def sub(a, b, p):
    n = max(len(a), len(b))
    return strip([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return strip([v % p for v in out])


def scale(a, c, p):
    return strip([x * c % p for x in a])


def divmod_(a, b, p):
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], strip(r)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] * inv % p
        q[k] = c
        if c:
            for j, y in enumerate(b):
                r[k + j] = (r[k + j] - c * y) % p
    return strip(q), strip(r[:db])


def rem(a, b, p):
    return divmod_(a, b, p)[1]


def monic(a, p):
    if not a:
        return a
    return scale(a, pow(a[-1], -1, p), p)


def gcd(a, b, p):
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def deriv(a, p):
    return strip([i * x % p for i, x in enumerate(a)][1:])


def powmod(a, e, m, p):
    out = [1]
    base = rem(a, m, p)
    while e:
        if e & 1:
            out = rem(mul(out, base, p), m, p)
        base = rem(mul(base, base, p), m, p)
        e >>= 1
    return out


def evaluate(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def sqrt_mod(a: int, p: int) -> int | None:
    """Smallest square root of ``a`` modulo the prime ``p`` (None if a is a non-residue)."""
    a %= p
    if a == 0 or p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return min(r, p - r)


def reduce_coeff(x, p: int, root: int | None = None) -> int:
    if isinstance(x, QuadElem):
        if root is None:
            raise BadPrime(f"no square root of {x.d} chosen modulo {p}")
        return (reduce_coeff(x.a, p) + reduce_coeff(x.b, p) * root) % p
    x = Fraction(x)
    if x.denominator % p == 0:
        raise BadPrime(f"{p} divides a coefficient denominator")
    return x.numerator * pow(x.denominator, -1, p) % p


def reduce_poly(f: Poly | Sequence, p: int, root: int | None = None) -> list[int]:
    """Reduce a rational or quadratic polynomial mod p.

    For coefficients in Q(sqrt d) the prime must split and ``root`` selects
    the image of sqrt(d); by default the smallest square root of d is used.
    """
    coeffs = f.c if isinstance(f, Poly) else tuple(f)
    ds = {c.d for c in coeffs if isinstance(c, QuadElem)}
    if ds and root is None:
        (d,) = ds
        root = sqrt_mod(d, p)
        if root is None:
            raise BadPrime(f"{p} is inert in Q(sqrt({d}))")
    return strip([reduce_coeff(c, p, root) for c in coeffs])


def _squarefree_parts(f, p):
    """Squarefree decomposition of a monic polynomial over F_p as (factor, multiplicity)."""
    out = []
    fd = deriv(f, p)
    if not fd:
        # f is a p-th power
        root = [f[i] for i in range(0, len(f), p)]
        return [(g, m * p) for g, m in _squarefree_parts(root, p)]
    c = gcd(f, fd, p)
    w = divmod_(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = gcd(w, c, p)
        z = divmod_(w, y, p)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = divmod_(c, y, p)[0]
    if len(c) > 1:
        root = [c[i] for i in range(0, len(c), p)]
        out += [(g, m * p) for g, m in _squarefree_parts(root, p)]
    return out


def distinct_degree(f, p):
    """Split a monic squarefree f into (product of all degree-d factors, d)."""
    out = []
    h = [0, 1]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, d))
            f = divmod_(f, g, p)[0]
            h = rem(h, f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree(f, d, p, rng):
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = strip([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        if p == 2:
            t = a
            acc = a
            for _ in range(d - 1):
                t = rem(mul(t, t, p), f, p)
                acc = add(acc, t, p)
            h = acc
        else:
            h = sub(powmod(a, (p**d - 1) // 2, f, p), [1], p)
        g = gcd(f, h, p)
        if 1 < len(g) < len(f):
            return equal_degree(g, d, p, rng) + equal_degree(divmod_(f, g, p)[0], d, p, rng)


def is_irreducible(f, p) -> bool:
    f = monic(f, p)
    if len(f) < 2:
        return False
    if len(gcd(f, deriv(f, p), p)) > 1:
        return False
    dd = distinct_degree(f, p)
    return len(dd) == 1 and dd[0][1] == len(f) - 1


def factor_mod_p(f, p: int, rng: random.Random | None = None, root: int | None = None, check: bool = True):
    """Factor over F_p.  Returns ``(leading coefficient, [(monic irreducible, multiplicity), ...])``.

    ``f`` may be a list of ints or a rational/quadratic :class:`Poly`.
    Factors are sorted by (degree, coefficients).
    """
    rng = rng or random.Random(p)
    if isinstance(f, Poly):
        a = reduce_poly(f, p, root)
        if len(a) != len(f.c):
            raise BadPrime(f"leading coefficient vanishes modulo {p}")
    else:
        a = strip([x % p for x in f])
    if not a:
        raise ValueError("zero polynomial")
    lc = a[-1]
    a = monic(a, p)
    out = []
    for g, m in _squarefree_parts(a, p):
        for h, d in distinct_degree(g, p):
            for q in equal_degree(h, d, p, rng):
                out.append((q, m))
    out.sort(key=lambda t: (len(t[0]), t[0], t[1]))
    if check:
        prod = [lc]
        for q, m in out:
            for _ in range(m):
                prod = mul(prod, q, p)
            if not is_irreducible(q, p):
                raise ArithmeticError("factor is not irreducible")
        if prod != a and scale(a, lc, p) != prod:
            raise ArithmeticError("factors do not reassemble the input")
    return lc, out


def factor_degrees(f, p: int, **kw) -> list[int]:
    _, fac = factor_mod_p(f, p, **kw)
    return sorted(len(q) - 1 for q, m in fac for _ in range(m))


def count_roots(f, p: int) -> int:
    """Number of distinct roots in F_p by direct evaluation."""
    return sum(1 for x in range(p) if evaluate(f, x, p) == 0)
