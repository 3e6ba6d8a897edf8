import json
import random
from fractions import Fraction as F

import pytest

from pslcover.exactalg import (
    DegreeOutOfRange,
    NotSquarefree,
    Poly,
    ZeroInput,
    hyperelliptic_model,
    mult_pattern,
    normalized_discriminant,
    squarefree_part,
    verify_belyi,
    verify_certificate,
)
from pslcover.exactalg.belyi import map_degree, wronskian
from pslcover.exactalg.fixtures import PSI24_TYPES, PSL32_TYPES, hyperelliptic_factors, psi24, psl32_belyi
from pslcover.exactalg.lemma31 import (
    AllSamplesDegenerate,
    common_coarsening,
    hyperplane_points,
    lemma31_degree_pattern,
    orbit_length_certificate,
    setwise_stabilizer,
)
from pslcover.exactalg.poly import X_poly
from pslcover.nielsen import ClassVector, search_tuple
from pslcover.permgrp import orbits, psl62_generators, schreier_generators

X = X_poly()
CUBIC = X**3 - 3 * X


def test_mult_pattern_of_cubic():
    one = Poly([F(1)])
    assert str(mult_pattern(CUBIC, one, 0).cycle_type()) == "1^3"
    assert str(mult_pattern(CUBIC, one, 2).cycle_type()) == "2^1.1^1"
    assert str(mult_pattern(CUBIC, one, "inf").cycle_type()) == "3^1"


def test_normalized_discriminant_of_cubic():
    # roots of the discriminant in t are the critical values +-2
    delta = normalized_discriminant(CUBIC, Poly([F(1)]))
    assert delta == Poly([F(-4), F(0), F(1)])


def test_map_degree():
    assert map_degree(X**2, X + 1) == 2
    assert map_degree(Poly([F(1)]), X**3) == 3


def test_wronskian_vanishes_at_critical_points():
    W = wronskian(CUBIC, Poly([F(1)]))
    assert W(F(1)) == 0 and W(F(-1)) == 0


def test_psi24_passes():
    p, q, r = psi24()
    rep = verify_belyi(p, q, PSI24_TYPES, r=r)
    assert rep.passed, rep.failed()
    assert map_degree(p, q) == 24


def test_psl32_passes():
    num, den = psl32_belyi()
    assert verify_belyi(num, den, PSL32_TYPES).passed


@pytest.mark.parametrize("where", [0, 5, 11])
def test_perturbed_coefficient_fails(where):
    p, q, r = psi24()
    c = list(p.c)
    c[where] += F(1, 10**6)
    p2 = Poly(c)
    rep = verify_belyi(p2, p2 + r, PSI24_TYPES, r=r)
    assert not rep.passed


def test_wrong_expected_types_fail():
    p, q, r = psi24()
    rep = verify_belyi(p, q, ("4^2.3^5.1^1", "2^12", "7^2.4^1.3^1.2^1.1^1"), r=r)
    assert set(rep.failed()) == {"pattern_1", "pattern_inf"}


def test_broken_identity_is_reported():
    p, q, r = psi24()
    rep = verify_belyi(p, q, PSI24_TYPES, r=r * 2)
    assert rep.failed() == ["identity"]


# --- certificates


def cubic_certificate(locus, shift):
    f = CUBIC + shift
    cert = {
        "p": f.to_json(),
        "q": Poly([F(1)]).to_json(),
        "expected_structures": ["1^3", "3^1", "2^1.1^1", "2^1.1^1"],
        "expected_locus": locus,
    }
    return cert


def test_certificate_plus_minus_sqrt_c():
    cert = cubic_certificate("0,inf,±sqrt(c)", 0)
    cert["c"] = "4"
    assert verify_certificate(cert).passed


def test_certificate_one_plus_minus_sqrt_lambda():
    cert = cubic_certificate("0,inf,1±sqrt(lambda)", 1)
    cert["lambda"] = "4"
    rep = verify_certificate(json.loads(json.dumps(cert)))
    assert rep.passed, rep.failed()


def test_certificate_wrong_radicand():
    cert = cubic_certificate("0,inf,±sqrt(c)", 0)
    cert["c"] = "5"
    rep = verify_certificate(cert)
    assert "discriminant_support" in rep.failed()
    assert "pattern_pair" in rep.failed()


def test_certificate_belyi_locus():
    p, q, _ = psi24()
    cert = {"p": p.to_json(), "q": q.to_json(), "expected_structures": list(PSI24_TYPES)}
    assert verify_certificate(cert).passed


def test_certificate_field_mismatch():
    num, den = psl32_belyi()
    cert = {"p": num.to_json(), "q": den.to_json(), "expected_structures": list(PSL32_TYPES), "field_d": 5}
    with pytest.raises(ValueError):
        verify_certificate(cert)


# --- hyperelliptic model


def test_hyperelliptic_model():
    m = hyperelliptic_model(hyperelliptic_factors(), 3)
    assert m.genus == 3 and m.infinity_branch
    assert m.P.degree == 7
    assert m.rhs() == m.P * 3


def test_hyperelliptic_rejects():
    with pytest.raises(NotSquarefree):
        hyperelliptic_model([X - 1, X - 1], 1, genus=0)
    with pytest.raises(DegreeOutOfRange):
        hyperelliptic_model([X - 1, X - 2], 1)
    with pytest.raises(ZeroInput):
        hyperelliptic_model(hyperelliptic_factors(), 0)


@pytest.mark.parametrize(
    "r, d",
    [(F(12), 3), (F(-50, 3), -6), (F(1, 4), 1), (F(-3199 * 9), -3199), (F(8, 27), 6)],
)
def test_squarefree_part(r, d):
    assert squarefree_part(r) == d


def test_squarefree_part_of_zero():
    with pytest.raises(ZeroInput):
        squarefree_part(0)


# --- degree patterns of p(X) q(t) - p(t) q(X)


def stabilizer_orbit_lengths(gens):
    return sorted(len(o) for o in orbits(schreier_generators(gens, 0), degree=gens[0].degree))


def test_pattern_x2_x3():
    one = Poly([F(1)])
    assert lemma31_degree_pattern(X**2, one).degrees == (1, 1)
    assert lemma31_degree_pattern(X**3, one).degrees == (1, 2)


def test_pattern_psl32_matches_point_stabilizer_orbits():
    num, den = psl32_belyi()
    got = lemma31_degree_pattern(num, den).degrees
    # oracle: orbit lengths of a point stabilizer in the monodromy group
    t = search_tuple(ClassVector.parse(PSL32_TYPES, "psl32"), random.Random(0))
    assert list(got) == stabilizer_orbit_lengths(list(t.perms)) == [1, 6]


def test_pattern_all_degenerate():
    # modulo 2 the specialization X^2 - 1 = (X + 1)^2 is not squarefree
    with pytest.raises(AllSamplesDegenerate):
        lemma31_degree_pattern(X**2, Poly([F(1)]), primes=(2,), points=(1,))


@pytest.mark.parametrize(
    "patterns, expect",
    [([(1, 1, 2)], (1, 1, 2)), ([(1, 1, 2), (1, 3)], (1, 3)), ([(1, 2, 2), (1, 1, 3)], (1, 4)), ([(2, 2), (1, 3)], (4,))],
)
def test_common_coarsening(patterns, expect):
    assert common_coarsening(patterns) == expect


def test_orbit_lengths_in_psl62():
    _, gens = psl62_generators()
    assert stabilizer_orbit_lengths(gens) == [1, 62]
    H = hyperplane_points(1)
    assert len(H) == 31
    stab = setwise_stabilizer(gens, H, random.Random(0))
    assert sorted(len(o) for o in orbits(stab, degree=63)) == [31, 32]
    assert orbit_length_certificate(gens, [31, 32])
    assert orbit_length_certificate(gens, [1, 62])
    assert not orbit_length_certificate(gens, [2, 61])
