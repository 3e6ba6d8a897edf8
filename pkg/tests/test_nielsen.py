import itertools
import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pslcover.nielsen import (
    FAMILY_TARGETS,
    PSL62_CLASSES,
    BlockSystem,
    BraidWord,
    BudgetExhausted,
    ClassVector,
    EscapesOrbit,
    GenTuple,
    InconsistentCover,
    OrbitTable,
    ParityError,
    Primitive,
    action_of_word,
    apply_word,
    block_system,
    braid_move,
    braid_orbit,
    degree2_branch_data,
    find_family_words,
    geometric_family_words,
    pure_braid,
    rh_genus,
    schreier_word,
    search_tuple,
    straight_generators,
)
from pslcover.permgrp import Perm, canonical_key, is_transitive, symmetric_generators, tuple_conjugator

TOY = ("2^1.1^2", "2^1.1^2", "3^1.1^1", "3^1.1^1")


def perms(n):
    return st.permutations(range(n)).map(Perm)


def product(ps):
    out = Perm.identity(ps[0].degree)
    for g in ps:
        out = out * g
    return out


def brute_nielsen_class(classes, n):
    """Product-one transitive tuples in S_n with the given types, up to conjugation."""
    cts = [ClassVector.parse(classes, f"s{n}").classes[i] for i in range(len(classes))]
    members = [[Perm(p) for p in itertools.permutations(range(n)) if Perm(p).cycle_type() == c] for c in cts]
    keys = set()
    for head in itertools.product(*members[:-1]):
        tail = ~product(list(head))
        if tail.cycle_type() != cts[-1]:
            continue
        t = list(head) + [tail]
        if is_transitive(t):
            keys.add(canonical_key(t))
    return keys


@pytest.fixture(scope="module")
def toy_table():
    cv = ClassVector.parse(TOY, "s4")
    return braid_orbit(search_tuple(cv, random.Random(0)), full=True)


# --- Riemann-Hurwitz


def test_rh_genus_zero_for_the_class_vector():
    assert rh_genus(63, PSL62_CLASSES) == 0


def test_rh_genus_of_family_curve():
    assert rh_genus(48, FAMILY_TARGETS) == 3


def test_rh_genus_parity():
    with pytest.raises(ParityError):
        rh_genus(3, ["2^1.1^1", "1^3", "1^3"])


def test_rh_genus_degree_check():
    with pytest.raises(ValueError):
        rh_genus(4, ["2^1.1^1", "2^1.1^2", "2^1.1^2"])


# --- braid moves


def test_braid_move_formula():
    a = Perm.from_cycles(3, (1, 2))
    b = Perm.from_cycles(3, (2, 3))
    c = ~(a * b)
    out = braid_move((a, b, c), 1)
    assert out == (b, ~b * a * b, c)


@given(st.lists(perms(5), min_size=4, max_size=4), st.integers(1, 3), st.sampled_from([1, -1]))
def test_braid_moves_preserve_product_and_classes(ps, i, sign):
    out = braid_move(ps, i, sign)
    assert product(out) == product(ps)
    assert sorted(str(g.cycle_type()) for g in out) == sorted(str(g.cycle_type()) for g in ps)
    assert braid_move(out, i, -sign) == tuple(ps)


@given(st.lists(perms(5), min_size=4, max_size=4))
def test_braid_relations(ps):
    q1, q2 = BraidWord.parse("Q1 Q2 Q1"), BraidWord.parse("Q2 Q1 Q2")
    assert apply_word(ps, q1) == apply_word(ps, q2)
    assert apply_word(ps, BraidWord.parse("Q1 Q3")) == apply_word(ps, BraidWord.parse("Q3 Q1"))


def test_braid_index_range():
    e = Perm.identity(3)
    with pytest.raises(IndexError):
        braid_move((e, e, e), 3)


@pytest.mark.parametrize("text", ["Q3", "Q1 Q2^-1 Q3", ""])
def test_word_round_trip(text):
    w = BraidWord.parse(text)
    assert str(w) == text
    assert str(w.inverse().inverse()) == text


def test_word_rejects():
    with pytest.raises(ValueError):
        BraidWord.parse("Q1^2")
    with pytest.raises(ValueError):
        BraidWord.parse("R1")


def test_pure_braid_words():
    assert str(pure_braid(1, 2)) == "Q1 Q1"
    assert str(pure_braid(1, 3)) == "Q2 Q1 Q1 Q2^-1"


def test_straight_generators_include_swaps_of_equal_classes():
    cv = ClassVector.parse(PSL62_CLASSES)
    words = [str(w) for w in straight_generators(cv)]
    assert "Q3" in words
    assert "Q1" not in words
    assert len(words) == 7


# --- tuple search


def test_search_tuple_toy():
    cv = ClassVector.parse(TOY, "s4")
    t = search_tuple(cv, random.Random(5))
    t.check()
    assert is_transitive(list(t.perms))


def test_search_tuple_budget():
    # a 4-cycle and 3-cycles cannot multiply to one with these types in S4 (parity)
    cv = ClassVector.parse(["4^1", "3^1.1^1", "3^1.1^1"], "s4")
    with pytest.raises(BudgetExhausted):
        search_tuple(cv, random.Random(0), budget=200)


def test_gen_tuple_json_round_trip():
    cv = ClassVector.parse(TOY, "s4")
    t = search_tuple(cv, random.Random(2))
    back = GenTuple.from_json(json.loads(json.dumps(t.to_json())))
    assert back.perms == t.perms


# --- orbits


def test_toy_orbit_equals_brute_force_class(toy_table):
    brute = brute_nielsen_class(TOY, 4)
    assert set(toy_table.keys[: toy_table.size]) == brute
    assert toy_table.size == len(brute) == 6


@given(st.data())
def test_orbit_closed_under_straight_moves(toy_table, data):
    idx = data.draw(st.integers(0, toy_table.size - 1))
    word = data.draw(st.sampled_from(straight_generators(toy_table.classes)))
    image = apply_word(toy_table.tuple_at(idx), word)
    assert toy_table.locate(image) < toy_table.size


def test_orbit_json_round_trip(toy_table):
    back = OrbitTable.from_json(json.loads(json.dumps(toy_table.to_json())))
    assert back.keys[: back.size] == toy_table.keys[: toy_table.size]
    assert back.moves == toy_table.moves


def test_locate_outside_orbit(toy_table):
    g = Perm.from_cycles(4, (1, 2, 3, 4))
    e = Perm.identity(4)
    with pytest.raises(EscapesOrbit):
        toy_table.locate([g, ~g, e, e])


def test_action_of_word_is_a_homomorphism(toy_table):
    a, b = BraidWord.parse("Q3"), BraidWord.parse("Q2 Q2")
    assert action_of_word(toy_table, a + b) == action_of_word(toy_table, a) * action_of_word(toy_table, b)


def test_psl62_orbit_size(psl62_orbit):
    assert psl62_orbit.size == 48


def test_geometric_words(psl62_orbit):
    x, y, z = geometric_family_words()
    assert str(x) == "Q3"
    got = [str(action_of_word(psl62_orbit, w).cycle_type()) for w in (x, y, z)]
    assert got == list(FAMILY_TARGETS)


def test_family_words_agree_with_geometric_words(psl62_orbit):
    matches = find_family_words(psl62_orbit, maxlen=4)
    assert matches
    geo = [psl62_orbit.x, psl62_orbit.y, psl62_orbit.z]
    for m in matches:
        assert [str(p.cycle_type()) for p in m.perms] == list(FAMILY_TARGETS)
        assert tuple_conjugator(list(m.perms), geo) is not None


# --- blocks


def test_block_system_dihedral():
    r = Perm.from_cycles(4, (1, 2, 3, 4))
    s = Perm.from_cycles(4, (2, 4))
    bs = block_system([r, s])
    assert sorted(map(sorted, bs.blocks)) == [[0, 2], [1, 3]]
    assert bs.block_size == 2


def test_block_system_primitive():
    with pytest.raises(Primitive):
        block_system(symmetric_generators(5))


@given(perms(6))
def test_blocks_are_preserved(h):
    # the wreath-like group generated by a 6-cycle and a block-preserving swap, relabelled by h
    g1 = Perm.from_cycles(6, (1, 2, 3, 4, 5, 6)).conj(h)
    g2 = Perm.from_cycles(6, (1, 4)).conj(h)
    bs = block_system([g1, g2])
    for g in (g1, g2):
        for b in bs.blocks:
            assert len({bs.block_of[g[p]] for p in b}) == 1


def test_branch_data_cyclic():
    g = Perm.from_cycles(4, (1, 2, 3, 4))
    gens = [g, ~g, Perm.identity(4)]
    bs = block_system(gens)
    data = degree2_branch_data(gens, bs)
    assert [d.ramified for d in data] == [[2], [2], []]
    assert data[2].split == [1, 1]


def test_branch_data_inconsistent():
    # blocks {0, 2} and {1, 3}; the 3-cycle does not respect them
    bs = BlockSystem([[0, 2], [1, 3]], [0, 1, 0, 1], (Perm.identity(2),))
    with pytest.raises(InconsistentCover):
        degree2_branch_data([Perm.from_cycles(4, (1, 2, 3))], bs)


def test_psl62_block_system(psl62_orbit):
    gens = [psl62_orbit.x, psl62_orbit.y, psl62_orbit.z]
    bs = block_system(gens)
    assert len(bs.blocks) == 24 and bs.block_size == 2
    assert [str(h.cycle_type()) for h in bs.induced] == ["4^2.3^5.1^1", "7^2.4^1.3^1.2^1.1^1", "2^12"]
    assert [len(d.ramified) for d in degree2_branch_data(gens, bs)] == [6, 2, 0]


# --- words in a permutation group


@given(st.integers(0, 6), st.integers(0, 6))
def test_schreier_word_moves_points(a, b):
    gens = [Perm.from_cycles(7, (1, 2, 3, 4, 5, 6, 7)), Perm.from_cycles(7, (1, 2))]
    w = schreier_word(gens, a, b)
    p = a
    for gi, s in w:
        p = (gens[gi] if s == 1 else ~gens[gi])[p]
    assert p == b


def test_schreier_word_unreachable():
    assert schreier_word([Perm.from_cycles(4, (1, 2))], 0, 3) is None
