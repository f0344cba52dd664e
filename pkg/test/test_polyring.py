import random

import pytest

from nqf.errors import InvariantViolation
from nqf.linalg import rank_dense
from nqf.nichols import BElem
from nqf.polyring import (AMBIENT, WEIGHT, CPoly, bgg_class, bgg_pairing_matrix,
                          classical_invariants, convert, coordinates, demazure, demazure_word,
                          divide_linear, fundamental_degrees, in_invariant_ideal, mu,
                          random_poly, reflect_poly, schubert_poly_A, staircase,
                          w_act_poly, weight_form)
from nqf.quantum import RootConstants
from nqf.scalars import RingElem


def ambient_vars(rs):
    coords = coordinates(rs, AMBIENT)
    return [CPoly.variable(coords, k) for k in range(coords.dim)]


def test_arithmetic(a2):
    x1, x2, x3 = ambient_vars(a2)
    f = (x1 + x2) * (x1 - x2)
    assert f == x1 ** 2 - x2 ** 2
    assert f.degree() == 2
    assert (f - f).is_zero()
    assert sorted(f.components()) == [2]
    assert f.to_string() == "x1^2 - x2^2"


def test_q_coefficients(a2):
    coords = coordinates(a2, WEIGHT)
    w1 = CPoly.variable(coords, 0)
    q1 = RingElem.q(2, 0)
    f = w1 * w1 + CPoly.const(coords, q1)
    assert not f.is_q_free()
    assert f.q_zero() == w1 * w1
    assert f.to_string() == "w1^2 + q1"
    expansion = f.q_expansion()
    assert len(expansion) == 2
    assert w1 * w1 in expansion.values()


def test_reflection_swaps_variables(a2):
    x1, x2, x3 = ambient_vars(a2)
    assert reflect_poly(0, x1) == x2
    assert reflect_poly(1, x1 * x2 ** 2) == x1 * x3 ** 2
    w0 = a2.longest_element()
    assert w_act_poly(w0, x1) == x3


def test_weight_coordinates(b2):
    x = CPoly.variable(coordinates(b2, AMBIENT), 0)
    assert convert(convert(x ** 2 + x, WEIGHT), AMBIENT) == x ** 2 + x
    # e1 = w1 in B2
    assert convert(x, WEIGHT) == CPoly.variable(coordinates(b2, WEIGHT), 0)
    assert weight_form(b2, (0, 1)) == convert(CPoly.variable(coordinates(b2, AMBIENT), 1),
                                              WEIGHT)


def test_demazure_linear(a2):
    x1, x2, x3 = ambient_vars(a2)
    assert demazure(0, x1) == 1
    assert demazure(0, x3).is_zero()
    assert demazure(1, x2 ** 2) == x2 + x3


def test_demazure_weight(b2):
    coords = coordinates(b2, WEIGHT)
    for i in range(2):
        w = CPoly.variable(coords, i)
        for j in range(2):
            assert demazure(j, w) == (1 if i == j else 0)


def test_divide_linear_remainder(a2):
    x1, x2, x3 = ambient_vars(a2)
    quotient, remainder = divide_linear(x1 * x2, (1, -1, 0))
    assert quotient * (x1 - x2) + remainder == x1 * x2
    assert remainder == x1 ** 2


def test_nil_hecke_relations(a2):
    f = random_poly(coordinates(a2, WEIGHT), random.Random(5), 3)
    assert demazure(0, demazure(0, f)).is_zero()
    assert demazure_word((0, 1, 0), f) == demazure_word((1, 0, 1), f)


def test_schubert_s3(a2):
    x1, x2, x3 = ambient_vars(a2)
    table = {(): CPoly.const(x1.coords),
             (0,): x1,
             (1,): x1 + x2,
             (0, 1): x1 * x2,
             (1, 0): x1 ** 2,
             (0, 1, 0): x1 ** 2 * x2}
    assert staircase(a2) == x1 ** 2 * x2
    for word, expected in table.items():
        assert schubert_poly_A(a2.from_word(word)) == expected


def test_staircase_type_a_only(b2):
    with pytest.raises(ValueError):
        staircase(b2)


def test_bgg_classes(b2):
    identity = b2.identity
    assert bgg_class(identity) == 1
    for i in range(2):
        # X_{s_i} = w_i modulo invariants; degree one has no invariants
        assert bgg_class(b2.simple_reflection(i)) == CPoly.variable(coordinates(b2, WEIGHT), i)


def test_bgg_top_class(a2):
    w0 = a2.longest_element()
    top = bgg_class(w0)
    assert top.degree() == 3
    assert demazure_word(w0.reduced_word(), top) == 1


def test_bgg_pairing_rank(b2):
    histogram = b2.length_histogram()
    for length, count in enumerate(histogram):
        assert rank_dense(bgg_pairing_matrix(b2, length)) == count


def test_fundamental_degrees(a3, b3):
    assert fundamental_degrees(a3) == [2, 3, 4]
    assert fundamental_degrees(b3) == [2, 4, 6]


def test_classical_invariants(a2, b2):
    for rs in (a2, b2):
        invariants = classical_invariants(rs, WEIGHT)
        assert [f.degree() for f in invariants] == fundamental_degrees(rs)
        for f in invariants:
            for i in range(rs.rank):
                assert reflect_poly(i, f) == f
            assert in_invariant_ideal(f)


def test_in_invariant_ideal(a2):
    x1, x2, x3 = ambient_vars(a2)
    e2, e3 = classical_invariants(a2, AMBIENT)
    assert in_invariant_ideal(e2 * x1 + e3)
    assert not in_invariant_ideal(x1)
    assert not in_invariant_ideal(x1 ** 2)


def test_mu_linear(nb_a2):
    w1 = CPoly.variable(coordinates(nb_a2.rs, WEIGHT), 0)
    # <w1, a^> is 1 for a1 and a1+a2
    assert mu(nb_a2, w1) == nb_a2.generator(0) + nb_a2.generator(2)
    assert mu(nb_a2, CPoly.const(w1.coords, 3)) == BElem.one(nb_a2).scale(3)


def test_mu_constants(nb_b2):
    constants = RootConstants(nb_b2.rs, 1, 2)
    e2 = CPoly.variable(coordinates(nb_b2.rs, AMBIENT), 1)
    # e2 pairs with the coroots of a2 = e2 (2), e1+e2 (1) and a1 = e1-e2 (-1)
    expected = (nb_b2.generator(0).scale(-1) + nb_b2.generator(1).scale(2 * 2) +
                nb_b2.generator(3))
    assert mu(nb_b2, e2, constants) == expected


def test_mu_is_multiplicative(nb_a2):
    coords = coordinates(nb_a2.rs, WEIGHT)
    f = CPoly.variable(coords, 0) + CPoly.variable(coords, 1).scale(2)
    g = CPoly.variable(coords, 1) ** 2 - CPoly.variable(coords, 0)
    assert mu(nb_a2, f * g) == mu(nb_a2, f) * mu(nb_a2, g)


def test_mu_kills_invariants(nb_a2, nb_b2):
    for nb in (nb_a2, nb_b2):
        for f in classical_invariants(nb.rs, AMBIENT):
            assert mu(nb, f).is_zero()


def test_mu_derivation(nb_b2):
    constants = RootConstants(nb_b2.rs, 3, 2)
    f = random_poly(coordinates(nb_b2.rs, WEIGHT), random.Random(1), 3)
    image = mu(nb_b2, f, constants)
    for alpha in range(2):
        expected = mu(nb_b2, demazure(alpha, f), constants).scale(constants.c(alpha))
        assert nb_b2.dbar(alpha, image) == expected
        assert nb_b2.dbar_right(alpha, image) == expected


def test_random_poly_is_seeded(a2):
    coords = coordinates(a2, WEIGHT)
    assert (random_poly(coords, random.Random(3), 4) ==
            random_poly(coords, random.Random(3), 4))
    assert random_poly(coords, random.Random(3), 2).degree() <= 2


def test_demazure_remainder_is_reported(a2, monkeypatch):
    x1, x2, x3 = ambient_vars(a2)
    monkeypatch.setattr("nqf.polyring.reflect_poly", lambda root_index, f: CPoly.zero(f.coords))
    with pytest.raises(InvariantViolation):
        demazure(0, x1 + x3)
