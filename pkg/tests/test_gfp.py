import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gfp_oracle import factor_table, monic_polys
from pslcover.exactalg import gfp
from pslcover.exactalg.poly import Poly, QuadElem

small_primes = st.sampled_from([2, 3, 5, 7, 11, 13, 101, 127])


def expand(lc, factors, p):
    out = [lc]
    for q, m in factors:
        for _ in range(m):
            out = gfp.mul(out, q, p)
    return out


@pytest.mark.parametrize("p", [2, 3, 5])
def test_factorization_table_small_primes(p):
    table = factor_table(p, 4)
    for d in range(1, 5):
        for f in monic_polys(d, p):
            _, fac = gfp.factor_mod_p(list(f), p)
            flat = tuple(sorted(tuple(q) for q, m in fac for _ in range(m)))
            assert flat == table[f], f


@given(small_primes, st.lists(st.integers(0, 200), min_size=2, max_size=12))
def test_factors_reassemble(p, coeffs):
    f = gfp.strip([c % p for c in coeffs])
    if len(f) < 2:
        return
    lc, fac = gfp.factor_mod_p(f, p)
    assert expand(lc, fac, p) == f
    for q, _ in fac:
        assert gfp.is_irreducible(q, p)


@given(small_primes, st.lists(st.integers(0, 200), min_size=2, max_size=8))
def test_linear_factors_are_the_roots(p, coeffs):
    f = gfp.strip([c % p for c in coeffs])
    if len(f) < 2:
        return
    _, fac = gfp.factor_mod_p(f, p)
    assert sum(1 for q, _ in fac if len(q) == 2) == gfp.count_roots(f, p)


@given(st.sampled_from([3, 5, 7, 11, 13, 17, 101]), st.integers(0, 10**6))
def test_sqrt_mod(p, a):
    r = gfp.sqrt_mod(a, p)
    squares = {x * x % p for x in range(p)}
    if a % p in squares:
        assert r is not None and r * r % p == a % p and r <= p - r
    else:
        assert r is None


def test_irreducibility_examples():
    assert gfp.is_irreducible([1, 1, 1], 2)
    assert not gfp.is_irreducible([1, 0, 1], 2)
    assert gfp.is_irreducible([1, 0, 1], 7)
    assert not gfp.is_irreducible([1, 0, 1], 5)


def test_repeated_factors():
    # (x + 1)^3 (x^2 + 1) over F_7
    f = gfp.mul(gfp.mul(gfp.mul([1, 1], [1, 1], 7), [1, 1], 7), [1, 0, 1], 7)
    lc, fac = gfp.factor_mod_p(f, 7)
    assert lc == 1
    assert fac == [([1, 1], 3), ([1, 0, 1], 1)]


def test_rational_reduction():
    f = Poly([F(1, 2), F(0), F(1)])
    assert gfp.reduce_poly(f, 5) == [3, 0, 1]
    with pytest.raises(gfp.BadPrime):
        gfp.reduce_poly(f, 2)


def test_quadratic_coefficients_need_a_split_prime():
    s = QuadElem(0, 1, -7)
    f = Poly([s, QuadElem(1, 0, -7)])  # X + sqrt(-7)
    # -7 is a square mod 11 but not mod 5
    assert gfp.factor_degrees(f, 11) == [1]
    with pytest.raises(gfp.BadPrime):
        gfp.reduce_poly(f, 5)


def test_leading_coefficient_vanishing():
    with pytest.raises(gfp.BadPrime):
        gfp.factor_mod_p(Poly([F(1), F(5)]), 5)


def test_zero_polynomial():
    with pytest.raises(ValueError):
        gfp.factor_mod_p([0, 0], 5)


def test_deterministic_for_a_seed():
    f = [3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 1]
    a = gfp.factor_mod_p(f, 101, rng=random.Random(1))
    b = gfp.factor_mod_p(f, 101, rng=random.Random(2))
    assert a == b
