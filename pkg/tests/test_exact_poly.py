from fractions import Fraction as F

import pytest
import sympy
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import assume, given
from hypothesis import strategies as st

from pslcover.exactalg.poly import (
    MixedFieldError,
    Poly,
    QuadElem,
    X_poly,
    discriminant,
    from_roots,
    gcd,
    int_resultant,
    interpolate,
    is_squarefree,
    product,
    resultant,
    squarefree_decomposition,
)

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)
ints = st.integers(-9, 9)
quads = st.builds(lambda a, b: QuadElem(a, b, -7), fracs, fracs)
int_polys = st.lists(ints, min_size=1, max_size=6).filter(lambda c: c[-1] != 0)

x = sympy.symbols("x")


def to_sympy(c):
    return sympy.Poly(list(reversed(c)), x)


# --- quadratic field


@given(quads, quads, quads)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if a:
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@given(quads)
def test_norm_is_multiplicative_and_conjugation(a):
    assert a.norm() == (a * a.conj()).a
    assert (a * a.conj()).b == 0


def test_sqrt_squares():
    s = QuadElem(0, 1, -7)
    assert s * s == -7


def test_mixed_fields():
    with pytest.raises(MixedFieldError):
        QuadElem(1, 1, -7) + QuadElem(1, 1, 5)


def test_bad_radicand():
    with pytest.raises(ValueError):
        QuadElem(1, 1, 1)


def test_quad_json_round_trip():
    a = QuadElem(F(3, 5), F(-2, 9), -3199)
    assert QuadElem.from_json(a.to_json()) == a


@given(quads)
def test_to_complex(a):
    z = a.to_complex()
    assert abs(z.real - float(a.a)) < 1e-9
    assert abs(z.imag - float(a.b) * 7**0.5) < 1e-9


# --- polynomials


@given(int_polys, int_polys)
def test_arithmetic_matches_sympy(a, b):
    A, B = Poly.from_ints(a), Poly.from_ints(b)
    assert list((A * B).c) == [F(v) for v in reversed(to_sympy(a).mul(to_sympy(b)).all_coeffs())]
    q, r = A.divmod(B)
    assert q * B + r == A
    assert r.degree < B.degree


@given(int_polys, fracs)
def test_evaluation(a, t):
    assert Poly.from_ints(a)(t) == to_sympy(a).eval(sympy.Rational(t.numerator, t.denominator))


@given(int_polys, int_polys)
def test_resultant_matches_sylvester_determinant(a, b):
    assume(len(a) + len(b) > 2)
    # sympy.resultant gets the sign wrong for some degenerate inputs
    ref = int(sylvester(to_sympy(a).as_expr(), to_sympy(b).as_expr(), x).det())
    assert int_resultant(a, b) == ref
    assert resultant(Poly.from_ints(a), Poly.from_ints(b)) == ref


@given(st.lists(fracs, min_size=2, max_size=5))
def test_discriminant_from_roots(roots):
    p = from_roots(roots)
    expect = F(1)
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            expect *= (roots[i] - roots[j]) ** 2
    assert discriminant(p) == expect


@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(1, 3)), min_size=1, max_size=4, unique_by=lambda t: t[0]))
def test_squarefree_decomposition(root_mults):
    X = X_poly()
    p = product((X - r) ** m for r, m in root_mults)
    dec = squarefree_decomposition(p * F(3, 2))
    assert product(f**m for f, m in dec) == p
    for m in {m for _, m in root_mults}:
        want = product(X - r for r, k in root_mults if k == m)
        assert dict((k, f) for f, k in dec)[m] == want
    assert is_squarefree(p) == all(m == 1 for _, m in root_mults)


@given(int_polys, int_polys, int_polys)
def test_gcd_divides(a, b, c):
    A, B, C = Poly.from_ints(a), Poly.from_ints(b), Poly.from_ints(c)
    g = gcd(A * C, B * C)
    assert (A * C) % g == Poly()
    assert (B * C) % g == Poly()
    assert (g % C.monic()) == Poly() or C.degree == 0


@given(st.lists(fracs, min_size=1, max_size=6, unique=True), st.data())
def test_interpolation(xs, data):
    ys = data.draw(st.lists(fracs, min_size=len(xs), max_size=len(xs)))
    p = interpolate(xs, ys)
    assert p.degree < len(xs)
    assert [p(v) for v in xs] == ys


def test_poly_over_quadratic_field():
    s = QuadElem(0, 1, -7)
    p = Poly([s, QuadElem(1, 0, -7)])
    assert (p * p.conj()).is_rational()
    assert (p * p.conj()).to_rational() == Poly([F(7), F(0), F(1)])


def test_poly_json_round_trip():
    p = Poly([F(-2, 3), F(8), F(-137, 4), F(1)])
    assert Poly.from_json(p.to_json()) == p
    q = Poly([QuadElem(1, 2, -7), QuadElem(0, 1, -7)])
    assert Poly.from_json(q.to_json()) == q
