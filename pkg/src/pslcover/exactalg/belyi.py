"""Exact ramification checks for rational functions ``num/den``."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import sympy

from ..permgrp import CycleType
from .poly import (
    Poly,
    QuadElem,
    discriminant,
    gcd,
    int_resultant,
    interpolate,
    parse_fraction,
    product,
    squarefree_decomposition,
)


class Inseparable(ValueError):
    pass


class DegreeOutOfRange(ValueError):
    pass


class NotSquarefree(ValueError):
    pass


class ZeroInput(ValueError):
    pass


def map_degree(num: Poly, den: Poly) -> int:
    return max(num.degree, den.degree)


@dataclass(frozen=True)
class MultPattern:
    """Multiplicities of the points in one fiber; ``at_infinity`` is 0 if X = inf is not in it."""

    finite: tuple[int, ...]
    at_infinity: int = 0

    def cycle_type(self) -> CycleType:
        lengths = list(self.finite)
        if self.at_infinity:
            lengths.append(self.at_infinity)
        return CycleType.from_lengths(lengths)

    @property
    def index(self) -> int:
        return self.cycle_type().index

    def __str__(self):
        return str(self.cycle_type())


def fiber_poly(num: Poly, den: Poly, value) -> Poly:
    if value == "inf":
        return den
    value = parse_fraction(value) if isinstance(value, str) else value
    return num - den * value


def mult_pattern(num: Poly, den: Poly, value="0") -> MultPattern:
    """Ramification multiplicities of ``num/den`` over ``value`` (0, 1, ``"inf"`` or any field element)."""
    if value in (0, 1, "0", "1"):
        value = int(value)
    f = fiber_poly(num, den, value)
    if not f:
        raise ValueError("map is constant on the fiber")
    mults = []
    for g, m in squarefree_decomposition(f):
        mults += [m] * g.degree
    deficit = map_degree(num, den) - f.degree
    return MultPattern(tuple(sorted(mults, reverse=True)), deficit)


def _support_01(delta: Poly) -> tuple[int, int, Poly]:
    """Strip powers of t and t-1; returns (a, b, cofactor)."""
    a = 0
    t = Poly([Fraction(0), Fraction(1)])
    t1 = Poly([Fraction(-1), Fraction(1)])
    while delta.degree > 0 and not delta.c[0]:
        delta = delta.exact_div(t)
        a += 1
    b = 0
    while delta.degree > 0:
        q, r = delta.divmod(t1)
        if r:
            break
        delta = q
        b += 1
    return a, b, delta


def normalized_discriminant(p: Poly, q: Poly) -> Poly:
    """Discriminant of ``p - t q`` in X as a monic polynomial in t.

    Evaluated at integer t by an integer subresultant computation (or field
    Euclid for quadratic coefficients) and recovered by exact interpolation.
    """
    quad = p.field_d() is not None or q.field_d() is not None
    n = max(p.degree, q.degree)
    if n < 1:
        raise ValueError("constant map")
    # resultant has t-degree at most 2n - 1; one extra point validates
    need = 2 * n + 1
    ts, vals = [], []
    if not quad:
        pi, qi = _common_integer(p, q)
    t = 0
    while len(ts) < need:
        t += 1
        for tv in (t, -t) if t else (0,):
            if len(ts) >= need:
                break
            F = p - q * Fraction(tv)
            if F.degree != n:
                continue
            if quad:
                vals.append(discriminant(F) * F.lc())
            else:
                Fi = [a - tv * b for a, b in zip(pi, qi)]
                while Fi and Fi[-1] == 0:
                    Fi.pop()
                dF = [i * a for i, a in enumerate(Fi)][1:]
                vals.append(Fraction(int_resultant(Fi, dF)))
            ts.append(Fraction(tv))
    res = interpolate(ts[:-1], vals[:-1])
    if res(ts[-1]) != vals[-1]:
        raise ArithmeticError("resultant interpolation failed validation")
    if not res:
        raise Inseparable("p - t q is inseparable")
    # divide by the leading coefficient of p - t q (a polynomial in t)
    pn = p.c[n] if p.degree == n else Fraction(0)
    qn = q.c[n] if q.degree == n else Fraction(0)
    lead = Poly([pn, -qn])
    delta = res.exact_div(lead) if lead.degree > 0 else res
    return delta.monic()


def _common_integer(p: Poly, q: Poly) -> tuple[list[int], list[int]]:
    """Integer coefficient lists of ``k*p`` and ``k*q`` for a common denominator k."""
    n = max(p.degree, q.degree) + 1
    pc = [Fraction(x) for x in p.c] + [Fraction(0)] * (n - len(p.c))
    qc = [Fraction(x) for x in q.c] + [Fraction(0)] * (n - len(q.c))
    den = math.lcm(*(x.denominator for x in pc + qc))
    return [int(x * den) for x in pc], [int(x * den) for x in qc]


def wronskian(num: Poly, den: Poly) -> Poly:
    return num.deriv() * den - num * den.deriv()


@dataclass
class Report:
    checks: dict[str, bool] = field(default_factory=dict)
    details: dict[str, str] = field(default_factory=dict)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks[name] = bool(ok)
        if detail:
            self.details[name] = detail

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failed(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": self.checks, "details": self.details}


def verify_belyi(
    num: Poly,
    den: Poly,
    expected: Sequence[CycleType | str],
    r: Poly | None = None,
    with_discriminant: bool = True,
) -> Report:
    """Check that ``num/den`` is a Belyi map with the given types over (0, 1, inf).

    ``r`` (optional) is the 1-fiber numerator with ``den = num + r``.
    """
    rep = Report()
    expected = [CycleType.parse(e) for e in expected]
    n = map_degree(num, den)
    rep.add("coprime", gcd(num, den).degree == 0)
    if r is not None:
        rep.add("identity", den == num + r, "den = num + r")
    patterns = {}
    for label, value in (("0", 0), ("1", 1), ("inf", "inf")):
        patterns[label] = mult_pattern(num, den, value)
    for (label, pat), exp in zip(patterns.items(), expected):
        rep.add(f"pattern_{label}", pat.cycle_type() == exp, f"{pat} (expected {exp})")
    total = sum(p.index for p in patterns.values())
    rep.add("riemann_hurwitz", total == 2 * n - 2, f"sum of indices {total}, 2n-2 = {2 * n - 2}")

    # finite ramification points are exactly the roots of the Wronskian
    W = wronskian(num, den)
    expected_w = product(
        g ** (m - 1)
        for value in (0, 1, "inf")
        for g, m in squarefree_decomposition(fiber_poly(num, den, value))
        if m > 1
    )
    ok = bool(W) and W.degree == expected_w.degree and (W % expected_w.monic()).degree < 0
    rep.add("wronskian", ok, f"deg W = {W.degree}, expected {expected_w.degree}")

    if with_discriminant:
        try:
            delta = normalized_discriminant(num, den)
            a, b, rest = _support_01(delta)
            rep.add("discriminant_support", rest.degree == 0, f"t^{a} (t-1)^{b} * deg-{rest.degree} cofactor")
        except Inseparable as exc:
            rep.add("discriminant_support", False, str(exc))
    return rep


# ---------------------------------------------------------------------------
# hyperelliptic model


@dataclass
class HyperellipticModel:
    c: Fraction
    P: Poly
    genus: int
    infinity_branch: bool

    def rhs(self) -> Poly:
        return self.P * self.c

    def to_json(self) -> dict:
        return {
            "c": str(self.c),
            "P": self.P.to_json(),
            "genus": self.genus,
            "infinity_is_branch_point": self.infinity_branch,
        }


def hyperelliptic_model(factors: Sequence[Poly], c, genus: int = 3) -> HyperellipticModel:
    """``y^2 = c * prod(factors)`` after checking squarefreeness and coprimality."""
    c = parse_fraction(c) if isinstance(c, str) else Fraction(c)
    if c == 0:
        raise ZeroInput("c must be nonzero")
    for f in factors:
        if f.degree < 1 or f.lc() != 1:
            raise ValueError("factors must be monic and nonconstant")
        if gcd(f, f.deriv()).degree > 0:
            raise NotSquarefree("factor is not squarefree")
    for i, f in enumerate(factors):
        for g in factors[i + 1:]:
            if gcd(f, g).degree > 0:
                raise NotSquarefree("factors are not pairwise coprime")
    P = product(factors)
    deg = P.degree
    if deg not in (2 * genus + 1, 2 * genus + 2):
        raise DegreeOutOfRange(f"degree {deg} does not give genus {genus}")
    return HyperellipticModel(c, P, (deg - 1) // 2, deg % 2 == 1)


def squarefree_part(r) -> int:
    """The squarefree integer d with ``r = d * (rational square)``."""
    r = Fraction(r)
    if r == 0:
        raise ZeroInput("zero has no squarefree part")
    n = abs(r.numerator) * r.denominator
    d = 1
    for prime, e in sympy.factorint(n).items():
        if e % 2:
            d *= prime
    return d if r > 0 else -d


# ---------------------------------------------------------------------------
# certificates


def _norm_fiber(num: Poly, den: Poly, center, radicand) -> Poly:
    """``(num - (center + s) den)(num - (center - s) den)`` with ``s^2 = radicand``."""
    a = num - den * center
    return a * a - den * den * radicand


def _pattern_of(f: Poly, deficit: int) -> CycleType:
    mults = []
    for g, m in squarefree_decomposition(f):
        mults += [m] * g.degree
    if deficit:
        mults.append(deficit)
    return CycleType.from_lengths(mults)


def verify_certificate(cert: dict) -> Report:
    """Verify a cover certificate (see the README for the JSON layout).

    Supported loci: ``"0,1,inf"``, ``"0,inf,1±sqrt(lambda)"`` (needs
    ``"lambda"``) and ``"0,inf,±sqrt(c)"`` (needs ``"c"``).  Paired branch
    points are checked through the norm of their two fibers, whose pattern
    is the union of both expected structures.
    """
    p = Poly.from_json(cert["p"])
    q = Poly.from_json(cert["q"])
    d = cert.get("field_d")
    for poly in (p, q):
        pd = poly.field_d()
        if pd is not None and d is not None and pd != d:
            raise ValueError(f"coefficients in Q(sqrt {pd}) but field_d = {d}")
    expected = [CycleType.parse(s) for s in cert["expected_structures"]]
    locus = cert.get("expected_locus", "0,1,inf").replace(" ", "")
    n = map_degree(p, q)
    rep = Report()
    rep.add("coprime", gcd(p, q).degree == 0)

    if locus == "0,1,inf":
        sub = verify_belyi(p, q, expected)
        for k, v in sub.checks.items():
            rep.add(k, v, sub.details.get(k, ""))
        return rep

    if locus.startswith("0,inf,1"):
        center, radicand = Fraction(1), _scalar(cert["lambda"])
    elif locus.startswith("0,inf,"):
        center, radicand = Fraction(0), _scalar(cert["c"])
    else:
        raise ValueError(f"unknown locus {locus!r}")
    if len(expected) != 4:
        raise ValueError("a four-point locus needs four structures")
    p0 = mult_pattern(p, q, 0).cycle_type()
    pinf = mult_pattern(p, q, "inf").cycle_type()
    rep.add("pattern_0", p0 == expected[0], f"{p0}")
    rep.add("pattern_inf", pinf == expected[1], f"{pinf}")
    N = _norm_fiber(p, q, center, radicand)
    pair = _pattern_of(N, 2 * n - N.degree)
    want = CycleType.from_lengths(expected[2].lengths() + expected[3].lengths())
    rep.add("pattern_pair", pair == want, f"{pair} (expected {want})")
    total = p0.index + pinf.index + pair.index
    rep.add("riemann_hurwitz", total == 2 * n - 2, f"sum of indices {total}")
    delta = normalized_discriminant(p, q)
    t = Poly([Fraction(0), Fraction(1)])
    locus_poly = t * ((t - center) * (t - center) - radicand)
    rest = delta
    for _ in range(2 * n):
        g = gcd(rest, locus_poly)
        if g.degree == 0:
            break
        rest = rest.exact_div(g)
    rep.add("discriminant_support", rest.degree == 0, f"cofactor degree {rest.degree}")
    return rep


def _scalar(x):
    if isinstance(x, dict):
        return QuadElem.from_json(x)
    return parse_fraction(x)


def load_certificate(path) -> dict:
    with open(path) as fh:
        return json.load(fh)
