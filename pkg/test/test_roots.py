from fractions import Fraction

import pytest

from nqf import roots
from nqf.errors import ConfigError, InvariantViolation
from nqf.roots import RootSystem, expected_weyl_order


@pytest.mark.parametrize("type_label,rank,positive,order", [
    ("A", 1, 1, 2),
    ("A", 2, 3, 6),
    ("A", 3, 6, 24),
    ("B", 2, 4, 8),
    ("B", 3, 9, 48),
    ("C", 2, 4, 8),
    ("D", 3, 6, 24),
])
def test_counts(type_label, rank, positive, order):
    rs = RootSystem(type_label, rank)
    assert len(rs.roots) == positive
    assert len(rs.enumerate_weyl()) == order == expected_weyl_order(type_label, rank)
    assert rs.longest_element().length() == positive


def test_unsupported():
    with pytest.raises(ConfigError):
        RootSystem("E", 6)
    with pytest.raises(ConfigError):
        RootSystem("B", 1)
    with pytest.raises(ConfigError):
        RootSystem("A", 5)


def test_weyl_bound(b3):
    with pytest.raises(InvariantViolation):
        b3.enumerate_weyl(bound=10)


def test_simple_roots_first(b2):
    assert [root.coords for root in b2.roots] == [(1, 0), (0, 1), (1, 1), (1, 2)]
    assert b2.roots[1].vector == (0, 1)
    assert b2.root_label(3) == "a1+2a2"
    assert b2.ambient_label(3) == "e1+e2"
    assert b2.orbit_label(0) == "long"
    assert b2.orbit_label(1) == "short"


def test_coroots(b2):
    # e1 = a1 + a2 is short, its coroot 2e1 = 2a1^ + a2^
    assert b2.roots[2].coroot == (2, 1)
    assert b2.roots[3].coroot == (1, 1)


def test_quantum_roots(a2, b2, b3):
    assert a2.quantum_roots() == [0, 1, 2]
    assert b2.quantum_roots() == [0, 1, 3]
    # Every simple root is quantum
    assert set(range(b3.rank)) <= set(b3.quantum_roots())


def test_reflect(a2):
    # s_{a1}(a2) = a1 + a2
    assert a2.reflect(0, 1) == (1, 2)
    assert a2.reflect(0, 0) == (-1, 0)
    assert a2.lookup((0, -1, 1)) == (-1, 1)
    with pytest.raises(KeyError):
        a2.lookup((1, 1, 0))


def test_fundamental_weights(a2, b2):
    for rs in (a2, b2):
        for i, omega in enumerate(rs.fundamental_weights()):
            for j in range(rs.rank):
                assert rs.pairing(omega, j) == (1 if i == j else 0)
    assert b2.fundamental_weights()[1] == (Fraction(1, 2), Fraction(1, 2))


def test_braid_relations(a2, b2):
    assert a2.from_word([0, 1, 0]) == a2.from_word([1, 0, 1])
    assert b2.from_word([0, 1, 0, 1]) == b2.from_word([1, 0, 1, 0])
    assert a2.from_word([0, 0]).is_identity()


def test_composition_order(a2):
    s1 = a2.simple_reflection(0)
    s2 = a2.simple_reflection(1)
    w = s1 * s2
    # (s1 s2)(a2) = s1(-a2) = -(a1+a2)
    assert w.act_root(1) == (-1, 2)
    assert w.reduced_word() == (0, 1)
    assert w.word_label() == "s1s2"
    assert (w * w.inverse()).is_identity()


def test_reduced_words(a3):
    w0 = a3.longest_element()
    words = w0.reduced_words()
    assert len(words) == 16
    assert all(a3.from_word(word) == w0 for word in words)
    assert w0.reduced_word() in words


def test_reflection_length(b2):
    assert [b2.reflection(i).length() for i in range(4)] == [1, 1, 3, 3]


def test_length_histogram(a2, b2):
    assert a2.length_histogram() == [1, 2, 2, 1]
    assert b2.length_histogram() == [1, 2, 2, 2, 1]


def test_act_vector(b2):
    w = b2.from_word([0, 1])
    for i, root in enumerate(b2.roots):
        sign, j = w.act_root(i)
        assert w.act_vector(root.vector) == tuple(sign * v for v in b2.roots[j].vector)


def test_module_functions(a2):
    rs = roots.build_root_system("A", 2)
    w = rs.longest_element()
    assert roots.weyl_length(w) == 3
    assert roots.reduced_word(w) == w.reduced_word()
    assert roots.quantum_roots(rs) == a2.quantum_roots()
    assert len(roots.enumerate_weyl(rs)) == 6
