from fractions import Fraction

import pytest

from nqf.errors import ConfigError
from nqf.scalars import (QMonomial, RingElem, b_type_display, display, divide, parse_ring_elem,
                         q_of_coroot, rational, ring_add, ring_mul)


def test_rational_prefers_int():
    assert rational(Fraction(4, 2)) == 2
    assert isinstance(rational(Fraction(4, 2)), int)
    assert rational("3/4") == Fraction(3, 4)
    with pytest.raises(TypeError):
        rational(0.5)


def test_divide():
    assert divide(6, 3) == 2
    assert isinstance(divide(6, 3), int)
    assert divide(1, 3) == Fraction(1, 3)


def test_q_of_coroot():
    assert q_of_coroot((2, 1)) == QMonomial((2, 1))
    with pytest.raises(ConfigError):
        q_of_coroot((Fraction(1, 2), 1))


def test_ring_arithmetic():
    q1 = RingElem.q(2, 0)
    q2 = RingElem.q(2, 1)
    value = (q1 + 1) * (q2 - 1)
    assert value == q1 * q2 - q1 + q2 - 1
    assert value.constant_term() == -1
    assert value.q_zero() == -1
    assert (q1 - q1).is_zero()
    assert not RingElem.zero(2)
    assert RingElem.const(2, 3).is_constant()
    assert not q1.is_constant()
    assert ring_mul(q1, q2) == ring_mul(q2, q1)
    assert ring_add(q1, RingElem.const(2, -1)) == q1 - 1


def test_constants_hash_as_their_value():
    three = RingElem.const(2, 3)
    half = RingElem.const(2, Fraction(1, 2))
    assert three == 3 and hash(three) == hash(3)
    assert half == Fraction(1, 2) and hash(half) == hash(Fraction(1, 2))
    assert hash(RingElem.zero(2)) == hash(0)
    assert set([3, three]) == set([3])
    assert {RingElem.q(2, 0): "q1"}[RingElem.q(2, 0)] == "q1"


def test_ring_scale_keeps_canonical_form():
    q1 = RingElem.q(1, 0)
    assert q1.scale(0).terms == {}
    assert q1.scale(Fraction(2, 4)).terms == {QMonomial((1,)): Fraction(1, 2)}


def test_to_string():
    q1 = RingElem.q(2, 0)
    q2 = RingElem.q(2, 1)
    value = q1 * q1 * q2 * Fraction(3, 2) - q1 + 1
    assert value.to_string() == "3/2*q1^2*q2 - q1 + 1"
    assert RingElem.zero(2).to_string() == "0"


def test_parse_ring_elem():
    value = parse_ring_elem("3/2*q1^2*q2 - q1 + 1", 2)
    assert value.to_string() == "3/2*q1^2*q2 - q1 + 1"
    assert parse_ring_elem("-q2", 2) == -RingElem.q(2, 1)
    with pytest.raises(ValueError):
        parse_ring_elem("x1", 2)


def test_b_type_display():
    # q^{a1} -> q1/q2 and q^{a2} -> q2^2 in B2
    assert b_type_display(QMonomial((1, 0))) == QMonomial((1, -1))
    assert b_type_display(QMonomial((0, 1))) == QMonomial((0, 2))
    # e1+e2 has coroot a1 + a2
    assert b_type_display(QMonomial((1, 1))) == QMonomial((1, 1))
    assert b_type_display(QMonomial((1, 0))).to_string() == "q1*q2^-1"


def test_display():
    value = RingElem.q(2, 1) + RingElem.q(2, 0)
    assert display(value, "A") == value.to_string()
    assert display(value, "B") == "q2^2 + q1*q2^-1"
