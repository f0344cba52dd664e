import pytest

from nqf.errors import ConfigError, TruncationError
from nqf.nichols import BElem
from nqf.polyring import (AMBIENT, WEIGHT, CPoly, classical_invariants, convert, coordinates,
                          in_invariant_ideal)
from nqf.quantum import (GradedOperator, QuantumModel, RootConstants, bn_generators,
                         bn_relations, evaluator, filtration_ranks, givental_kim,
                         prop1_sets, quantize_poly, quantum_invariants, relation_operator)
from nqf.scalars import RingElem


def test_root_constants(b2):
    constants = RootConstants.from_mapping(b2, {0: 1, 1: 2, 2: 2, 3: 1})
    assert (constants.c_long, constants.c_short) == (1, 2)
    assert constants.c(1) == 2
    # s_{a1} is simple, so d = 1/c
    assert constants.d(0) == 1
    for root in b2.roots:
        assert constants.check_reduced_words(root.index)
    assert constants.to_dict() == {"c_long": "1", "c_short": "2"}


@pytest.mark.parametrize("mapping", [
    {0: 1, 1: 2, 2: 3, 3: 1},
    {0: 1, 1: 2, 2: 2},
])
def test_root_constants_rejected(b2, mapping):
    with pytest.raises(ConfigError):
        RootConstants.from_mapping(b2, mapping)


def test_root_constants_nonzero(b2):
    with pytest.raises(ConfigError):
        RootConstants(b2, 0, 1)


def test_simply_laced_constants(a2):
    constants = RootConstants(a2, 2, 5)
    assert constants.c_short == 2


def test_graded_operator_identity(nb_a2):
    identity = GradedOperator.identity(nb_a2)
    x = nb_a2.word_elem((0, 1)) + nb_a2.generator(2)
    assert identity(x) == x
    assert GradedOperator.zero(nb_a2).is_zero()
    assert (identity - identity).is_zero()
    assert identity.scale(2).first_mismatch(identity) == (0, 0)
    assert identity.checked_degrees() == [0, 1, 2, 3, 4]


def test_model_side(nb_a2):
    with pytest.raises(ValueError):
        QuantumModel(nb_a2, side="middle")


def test_quantized_generators(nb_a2):
    model = QuantumModel(nb_a2)
    assert model.quantum_roots == set([0, 1, 2])
    gen = model.quantized_gen(2)
    assert gen.quantum
    assert gen.d == 1
    # [a1]~ 1 = [a1]
    one = BElem.one(nb_a2)
    assert model.quantize_root(0)(one) == nb_a2.generator(0)
    # [a1]~ [a1] = q1
    assert model.quantize_root(0)(nb_a2.generator(0)) == one.scale(RingElem.q(2, 0))


@pytest.mark.parametrize("side", ["left", "right"])
def test_squares(nb_b2, side):
    rs = nb_b2.rs
    model = QuantumModel(nb_b2, RootConstants(rs, 2, 3), side=side)
    for root in rs.roots:
        op = model.quantize_root(root.index)
        square = op.compose(op)
        if root.index < rs.rank:
            gen = model.quantized_gen(root.index)
            expected = GradedOperator.identity(
                nb_b2, RingElem.monomial(rs.q_monomial(root.index), gen.c * gen.d))
            assert square.equals(expected)
        else:
            assert square.is_zero()


@pytest.mark.parametrize("side", ["left", "right"])
def test_generator_multiplies_on_its_side(nb_a2, side):
    model = QuantumModel(nb_a2, side=side)
    a1, a2 = nb_a2.generator(0), nb_a2.generator(1)
    # [a1]~ on [a2] has no quantum part, leaving [a1][a2] or [a2][a1]
    expected = nb_a2.multiply(a1, a2) if side == "left" else nb_a2.multiply(a2, a1)
    assert nb_a2.multiply(a1, a2) != nb_a2.multiply(a2, a1)
    assert model.quantize_root(0)(a2) == expected


def test_square_exactness(nb_a3):
    model = QuantumModel(nb_a3)
    assert model.raising_exact == 3
    op = model.quantize_root(0)
    assert op.exact_through == 3
    assert op.compose(op).exact_through == 2
    with pytest.raises(TruncationError):
        op(BElem.basis_element(nb_a3, 4, 0))


@pytest.mark.parametrize("fixture,constants", [
    ("nb_a2", (1, 1)),
    ("nb_b2", (1, 1)),
    ("nb_b2", (2, 3)),
])
def test_eta_commute(request, fixture, constants):
    nb = request.getfixturevalue(fixture)
    for side in ("left", "right"):
        model = QuantumModel(nb, RootConstants(nb.rs, *constants), side=side)
        eta1, eta2 = model.eta(0), model.eta(1)
        assert eta1.compose(eta2).equals(eta2.compose(eta1))


def test_apply_poly_matches_operator(nb_b2):
    model = QuantumModel(nb_b2)
    coords = coordinates(nb_b2.rs, WEIGHT)
    f = CPoly.variable(coords, 0) ** 2 - CPoly.variable(coords, 1).scale(3)
    x = nb_b2.word_elem((1, 0))
    assert model.apply_poly(f, x) == model.mu_tilde_poly(f)(x)


def test_quantize_poly(a2):
    coords = coordinates(a2, WEIGHT)
    f = CPoly.variable(coords, 0) * CPoly.variable(coords, 1)
    quantized = quantize_poly(a2, f)
    assert evaluator(a2)(quantized) == f
    assert quantized.q_zero() == f
    assert quantize_poly(a2, CPoly.variable(coords, 0)) == CPoly.variable(coords, 0)


@pytest.mark.parametrize("fixture", ["a2", "b2"])
def test_quantum_invariants(request, fixture):
    rs = request.getfixturevalue(fixture)
    phi = evaluator(rs)
    invariants = quantum_invariants(rs)
    assert [f.q_zero() for f in invariants] == classical_invariants(rs, WEIGHT)
    for f in invariants:
        assert in_invariant_ideal(phi(f))


def test_quantum_invariants_kill_the_model(nb_a2):
    model = QuantumModel(nb_a2)
    for f in quantum_invariants(nb_a2.rs):
        assert model.mu_tilde_poly(f).is_zero()


def test_givental_kim(a2):
    e2, e3 = givental_kim(a2)
    classical = classical_invariants(a2, AMBIENT)
    assert [e2.q_zero(), e3.q_zero()] == classical
    x1, x2, x3 = [CPoly.variable(coordinates(a2, AMBIENT), k) for k in range(3)]
    q1, q2 = RingElem.q(2, 0), RingElem.q(2, 1)
    assert e2 == classical[0] + CPoly.const(x1.coords, q1 + q2)
    assert e3 == classical[1] + x3.scale(q1) + x1.scale(q2)
    phi = evaluator(a2)
    for f in (e2, e3):
        assert in_invariant_ideal(phi(convert(f, WEIGHT)))


def test_givental_kim_type_a_only(b2):
    with pytest.raises(ValueError):
        givental_kim(b2)


@pytest.mark.parametrize("fixture", ["a2", "b2", "a3"])
def test_prop1_sets_match(request, fixture):
    rs = request.getfixturevalue(fixture)
    sets = prop1_sets(rs)
    assert len(sets.a_prime) == len(sets.b_prime)
    assert sorted(sets.matching) == sorted(sets.a_prime)
    for (alpha, beta), (gamma, delta) in sets.matching.items():
        coroot = tuple(g + d for g, d in zip(rs.roots[gamma].coroot, rs.roots[delta].coroot))
        assert coroot == rs.roots[alpha].coroot
        assert (rs.reflection(alpha) * rs.reflection(beta) ==
                rs.reflection(gamma) * rs.reflection(delta))


def test_bn_relations_hold(nb_b2):
    model = QuantumModel(nb_b2)
    generators = bn_generators(model)
    assert sorted(generators) == ["[1,2]", "[1]", "[2,1]", "[2]", "bar[1,2]", "bar[2,1]"]
    relations = bn_relations(2)
    assert set(r.group for r in relations) == set([1, 3, 4, 5])
    for relation in relations:
        assert relation_operator(generators, relation).is_zero(), relation.text


def test_bn_relations_commute_not_anticommute(nb_b2):
    generators = bn_generators(QuantumModel(nb_b2))
    relation = [r for r in bn_relations(2) if r.group == 3][0]
    assert relation.text == "[1]*[2] = [2]*[1]"
    assert relation.terms == [(1, ("[1]", "[2]")), (-1, ("[2]", "[1]"))]
    assert relation_operator(generators, relation).is_zero()
    a, b = generators["[1]"], generators["[2]"]
    assert not (a.compose(b) + b.compose(a)).is_zero()


def test_bn_generators_type_b_only(nb_a2):
    with pytest.raises(ValueError):
        bn_generators(QuantumModel(nb_a2))


def test_filtration_ranks(nb_a2, nb_b2):
    assert filtration_ranks(QuantumModel(nb_a2)) == [1, 2, 2, 1]
    assert filtration_ranks(QuantumModel(nb_b2)) == [1, 2, 2, 2, 1]
    assert filtration_ranks(QuantumModel(nb_b2), max_degree=2) == [1, 2, 2]
