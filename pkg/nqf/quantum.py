"""Quantized generators as operators on B(V), the map μ̃, and the
polynomial side of the quantum picture.

A quantized generator acts on B(V) as

    [α]~ = c_α L_α + d_α q^{α∨} D̄_{s_α}     (α a quantum root)
    [α]~ = c_α L_α                         (otherwise)

where L_α is left multiplication by [α], or right multiplication together with
the right derivations for the model on B(V)^op. Operators are stored column by
column over the basis of B(V). On a truncated basis an operator that raises
degree is only known up to some source degree, tracked as `exact_through`.
"""
from __future__ import absolute_import
import itertools
import threading
from collections import namedtuple

from six import iteritems
from six.moves import range

from . import log
from .errors import ConfigError, InvariantViolation, TruncationError
from .linalg import solve_dense, sparse_rank
from .nichols import BElem
from .polyring import (AMBIENT, WEIGHT, CPoly, classical_invariants, convert, coordinates,
                       demazure_w)
from .scalars import QMonomial, RingElem, divide, rational

MYPY = False
if MYPY:
    from typing import Any, Callable, Dict, List, Optional, Sequence, Text, Tuple
    from .nichols import NicholsBasis
    from .roots import RootSystem
    Key = Tuple[int, int]
    Column = Dict[Key, RingElem]

logger = log.get_logger(__name__)


class RootConstants(object):
    """Nonzero constants c_α, constant on W-orbits of roots."""

    def __init__(self, rs, c_long=1, c_short=1):
        # type: (RootSystem, Any, Any) -> None
        self.rs = rs
        self.c_long = rational(c_long)
        self.c_short = rational(c_short)
        if not self.c_long or not self.c_short:
            raise ConfigError("Root constants must be nonzero")
        if rs.simply_laced and self.c_short != self.c_long:
            logger.warning("%s is simply laced; ignoring c_short" % rs.name)
            self.c_short = self.c_long
        self._d = {}  # type: Dict[int, Any]

    @classmethod
    def from_mapping(cls, rs, mapping):
        # type: (RootSystem, Dict[int, Any]) -> RootConstants
        """Constants given per root; rejected unless c_α = c_{wα}"""
        values = {}
        for root in rs.roots:
            if root.index not in mapping:
                raise ConfigError("No constant given for root %s" % rs.root_label(root.index))
            values[root.index] = rational(mapping[root.index])
        for root in rs.roots:
            for i in range(rs.rank):
                _, image = rs.reflect(i, root.index)
                if values[image] != values[root.index]:
                    raise ConfigError("Constants differ on the W-orbit of %s: %s vs %s" %
                                      (rs.root_label(root.index), values[root.index],
                                       values[image]))
        long_values = set(v for i, v in iteritems(values) if rs.roots[i].long)
        short_values = set(v for i, v in iteritems(values) if not rs.roots[i].long)
        c_long = long_values.pop()
        c_short = short_values.pop() if short_values else c_long
        return cls(rs, c_long, c_short)

    def c(self, root_index):
        # type: (int) -> Any
        return self.c_long if self.rs.roots[root_index].long else self.c_short

    def product_over_word(self, word):
        # type: (Sequence[int]) -> Any
        value = 1
        for i in word:
            value = value * self.c(i)
        return rational(value)

    def d(self, root_index):
        # type: (int) -> Any
        """(c_{α_1}⋯c_{α_l})⁻¹ over a reduced word of s_α"""
        if root_index not in self._d:
            word = self.rs.reflection(root_index).reduced_word()
            self._d[root_index] = divide(1, self.product_over_word(word))
        return self._d[root_index]

    def check_reduced_words(self, root_index):
        # type: (int) -> bool
        """The product over every reduced word of s_α agrees"""
        words = self.rs.reflection(root_index).reduced_words()
        return len(set(self.product_over_word(word) for word in words)) == 1

    def to_dict(self):
        # type: () -> Dict[Text, Any]
        return {"c_long": str(self.c_long), "c_short": str(self.c_short)}


QuantizedGen = namedtuple("QuantizedGen", ["root", "c", "d", "quantum", "q"])


def _min_exact(a, b):
    # type: (Optional[int], Optional[int]) -> Optional[int]
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class GradedOperator(object):
    """R-linear operator on B(V), stored by columns over the basis."""

    def __init__(self, nb, columns, exact_through=None, raise_by=0):
        # type: (NicholsBasis, Dict[Key, Column], Optional[int], int) -> None
        self.nb = nb
        self.columns = columns
        self.exact_through = exact_through
        self.raise_by = raise_by

    def __repr__(self):
        return "GradedOperator(%s, exact_through=%r)" % (self.nb.rs.name, self.exact_through)

    @classmethod
    def source_degrees(cls, nb, exact_through):
        # type: (NicholsBasis, Optional[int]) -> List[int]
        top = nb.built if exact_through is None else min(exact_through, nb.built)
        return [k for k in range(top + 1) if k >= 0]

    @classmethod
    def from_function(cls, nb, fn, exact_through=None, raise_by=0):
        # type: (NicholsBasis, Callable[[BElem], BElem], Optional[int], int) -> GradedOperator
        columns = {}  # type: Dict[Key, Column]
        for k in cls.source_degrees(nb, exact_through):
            for idx in range(nb.dim(k)):
                columns[(k, idx)] = fn(BElem.basis_element(nb, k, idx)).coords
        return cls(nb, columns, exact_through, raise_by)

    @classmethod
    def identity(cls, nb, value=1):
        # type: (NicholsBasis, Any) -> GradedOperator
        scalar = value if isinstance(value, RingElem) else RingElem.const(nb.rs.rank, value)
        columns = {}  # type: Dict[Key, Column]
        for k in cls.source_degrees(nb, None):
            for idx in range(nb.dim(k)):
                columns[(k, idx)] = {(k, idx): scalar} if scalar else {}
        return cls(nb, columns, None, 0)

    @classmethod
    def zero(cls, nb):
        # type: (NicholsBasis) -> GradedOperator
        return cls.identity(nb, 0)

    def apply(self, x):
        # type: (BElem) -> BElem
        coords = {}  # type: Column
        for key, coef in iteritems(x.coords):
            if key not in self.columns:
                raise TruncationError("Operator on %s is exact through degree %s only, "
                                      "got degree %d" % (self.nb.rs.name, self.exact_through,
                                                         key[0]))
            for target, value in iteritems(self.columns[key]):
                term = coef * value
                coords[target] = coords[target] + term if target in coords else term
        return BElem(self.nb, coords)

    __call__ = apply

    def compose(self, other):
        # type: (GradedOperator) -> GradedOperator
        """self ∘ other"""
        exact = other.exact_through
        if self.exact_through is not None:
            exact = _min_exact(exact, self.exact_through - other.raise_by)
        columns = {}
        for key, column in iteritems(other.columns):
            if exact is not None and key[0] > exact:
                continue
            columns[key] = self.apply(BElem(self.nb, column)).coords
        return GradedOperator(self.nb, columns, exact, self.raise_by + other.raise_by)

    def __mul__(self, other):
        if isinstance(other, GradedOperator):
            return self.compose(other)
        return self.scale(other)

    def scale(self, value):
        # type: (Any) -> GradedOperator
        columns = {key: BElem(self.nb, column).scale(value).coords
                   for key, column in iteritems(self.columns)}
        return GradedOperator(self.nb, columns, self.exact_through, self.raise_by)

    __rmul__ = scale

    def __add__(self, other):
        # type: (GradedOperator) -> GradedOperator
        exact = _min_exact(self.exact_through, other.exact_through)
        columns = {}
        for key in set(self.columns) & set(other.columns):
            if exact is not None and key[0] > exact:
                continue
            total = BElem(self.nb, self.columns[key]) + BElem(self.nb, other.columns[key])
            columns[key] = total.coords
        return GradedOperator(self.nb, columns, exact, max(self.raise_by, other.raise_by))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def first_mismatch(self, other):
        # type: (GradedOperator) -> Optional[Key]
        """First basis element, in degree order, on which the operators differ"""
        for key in sorted(set(self.columns) & set(other.columns)):
            if self.columns[key] != other.columns[key]:
                return key
        return None

    def equals(self, other):
        # type: (GradedOperator) -> bool
        return self.first_mismatch(other) is None

    def first_nonzero(self):
        # type: () -> Optional[Key]
        for key in sorted(self.columns):
            if self.columns[key]:
                return key
        return None

    def is_zero(self):
        # type: () -> bool
        return self.first_nonzero() is None

    def q_zero(self):
        # type: () -> GradedOperator
        columns = {key: BElem(self.nb, column).q_zero().coords
                   for key, column in iteritems(self.columns)}
        return GradedOperator(self.nb, columns, self.exact_through, self.raise_by)

    def checked_degrees(self):
        # type: () -> List[int]
        return sorted(set(k for k, _ in self.columns))


class QuantumModel(object):
    """Quantized generators and μ̃ over one Nichols basis.

    `side` selects left multiplication by [α] with the left twisted
    derivations D̄, or right multiplication (B(V)^op) with the derivations
    acting from the right.
    """

    def __init__(self, nb, constants=None, side="left"):
        # type: (NicholsBasis, Optional[RootConstants], Text) -> None
        if side not in ("left", "right"):
            raise ValueError("side must be left or right, not %r" % (side,))
        self.nb = nb
        self.rs = nb.rs
        self.constants = constants or RootConstants(nb.rs)
        self.side = side
        self.quantum_roots = set(self.rs.quantum_roots())
        self._generators = {}  # type: Dict[int, GradedOperator]
        self._eta = {}  # type: Dict[int, GradedOperator]
        self._monomials = {}  # type: Dict[Tuple[int, ...], GradedOperator]

    @property
    def raising_exact(self):
        # type: () -> Optional[int]
        """Highest source degree on which multiplication by [α] is known"""
        return None if self.nb.complete else self.nb.built - 1

    def quantized_gen(self, root_index):
        # type: (int) -> QuantizedGen
        quantum = root_index in self.quantum_roots
        return QuantizedGen(root_index, self.constants.c(root_index),
                            self.constants.d(root_index) if quantum else 0, quantum,
                            self.rs.q_monomial(root_index) if quantum else None)

    def twisted_derivation(self, root_index, x):
        # type: (int, BElem) -> BElem
        """D̄_{s_α} (or the right-hand version) applied to x"""
        word = self.rs.reflection(root_index).reduced_word()
        if self.side == "left":
            return self.nb.dbar_word(word, x)
        for i in word:
            x = self.nb.dbar_right(i, x)
        return x

    def _generator_column(self, root_index, coefficient, x):
        # type: (int, Any, BElem) -> BElem
        gen = self.quantized_gen(root_index)
        if self.side == "left":
            result = self.nb.left_multiply(root_index, x)
        else:
            result = self.nb.right_multiply_root(root_index, x)
        result = result.scale(gen.c * coefficient)
        if gen.quantum:
            scalar = RingElem.monomial(gen.q, gen.d * coefficient)
            result = result + self.twisted_derivation(root_index, x).scale(scalar)
        return result

    def quantize_root(self, root_index):
        # type: (int) -> GradedOperator
        if root_index not in self._generators:
            self._generators[root_index] = GradedOperator.from_function(
                self.nb, lambda x: self._generator_column(root_index, 1, x),
                self.raising_exact, 1)
        return self._generators[root_index]

    def mu_tilde_lin(self, vector):
        # type: (Sequence[Any]) -> GradedOperator
        """μ̃(x) = Σ ⟨x, α∨⟩ [α]~ for an ambient vector x"""
        weights = [(root.index, self.rs.pairing(vector, root.index)) for root in self.rs.roots]
        weights = [(i, w) for i, w in weights if w]

        def column(x):
            total = BElem(self.nb)
            for root_index, weight in weights:
                total = total + self._generator_column(root_index, weight, x)
            return total

        return GradedOperator.from_function(self.nb, column, self.raising_exact, 1)

    def eta(self, i):
        # type: (int) -> GradedOperator
        """μ̃(ω_i)"""
        if i not in self._eta:
            self._eta[i] = self.mu_tilde_lin(self.rs.fundamental_weights()[i])
        return self._eta[i]

    def monomial_operator(self, exponents):
        # type: (Tuple[int, ...]) -> GradedOperator
        exponents = tuple(exponents)
        if exponents not in self._monomials:
            if not any(exponents):
                op = GradedOperator.identity(self.nb)
            else:
                k = next(i for i, e in enumerate(exponents) if e)
                rest = tuple(e - 1 if i == k else e for i, e in enumerate(exponents))
                op = self.eta(k).compose(self.monomial_operator(rest))
            self._monomials[exponents] = op
        return self._monomials[exponents]

    def mu_tilde_poly(self, f):
        # type: (CPoly) -> GradedOperator
        """Substitute η_i = μ̃(ω_i) into f"""
        f = convert(f, WEIGHT)
        total = None  # type: Optional[GradedOperator]
        for exponents, coef in sorted(iteritems(f.terms)):
            term = self.monomial_operator(exponents).scale(coef)
            total = term if total is None else total + term
        return total if total is not None else GradedOperator.zero(self.nb)

    def apply_poly(self, f, x):
        # type: (CPoly, BElem) -> BElem
        """μ̃(f)(x), one monomial at a time"""
        f = convert(f, WEIGHT)
        memo = {(0,) * self.rs.rank: x}  # type: Dict[Tuple[int, ...], BElem]

        def monomial(exponents):
            if exponents not in memo:
                k = next(i for i, e in enumerate(exponents) if e)
                rest = tuple(e - 1 if i == k else e for i, e in enumerate(exponents))
                memo[exponents] = self.eta(k).apply(monomial(rest))
            return memo[exponents]

        result = BElem(self.nb)
        for exponents, coef in sorted(iteritems(f.terms)):
            result = result + monomial(exponents).scale(coef)
        return result

    def apply_to_vacuum(self, f):
        # type: (CPoly) -> BElem
        return self.apply_poly(f, BElem.one(self.nb))


def quantize_root(model, root_index):
    # type: (QuantumModel, int) -> GradedOperator
    return model.quantize_root(root_index)


def mu_tilde_lin(model, vector):
    # type: (QuantumModel, Sequence[Any]) -> GradedOperator
    return model.mu_tilde_lin(vector)


def mu_tilde_poly(model, f):
    # type: (QuantumModel, CPoly) -> GradedOperator
    return model.mu_tilde_poly(f)


class YOperator(object):
    """Y_i = ω_i + Σ_{γ quantum} ⟨ω_i, γ∨⟩ q^{γ∨} ∂_{s_γ} on weight polynomials"""

    def __init__(self, rs, i):
        # type: (RootSystem, int) -> None
        self.rs = rs
        self.i = i
        self.omega = CPoly.variable(coordinates(rs, WEIGHT), i)
        self.terms = []  # type: List[Tuple[Any, RingElem]]
        for root_index in rs.quantum_roots():
            weight = rs.roots[root_index].coroot[i]
            if weight:
                self.terms.append((rs.reflection(root_index),
                                   RingElem.monomial(rs.q_monomial(root_index), weight)))

    def __call__(self, g):
        # type: (CPoly) -> CPoly
        g = convert(g, WEIGHT)
        result = self.omega * g
        for reflection, scalar in self.terms:
            derived = demazure_w(reflection, g)
            if derived:
                result = result + derived.scale(scalar)
        return result


def y_operator(rs, i):
    # type: (RootSystem, int) -> YOperator
    return YOperator(rs, i)


class QuantumEvaluator(object):
    """g ↦ g((Y_i))(1), memoized per monomial"""

    def __init__(self, rs):
        # type: (RootSystem) -> None
        self.rs = rs
        self.coords = coordinates(rs, WEIGHT)
        self.operators = [YOperator(rs, i) for i in range(rs.rank)]
        self._memo = {}  # type: Dict[Tuple[int, ...], CPoly]
        self._memo[(0,) * rs.rank] = CPoly.const(self.coords)

    def monomial(self, exponents):
        # type: (Tuple[int, ...]) -> CPoly
        if exponents not in self._memo:
            k = next(i for i, e in enumerate(exponents) if e)
            rest = tuple(e - 1 if i == k else e for i, e in enumerate(exponents))
            self._memo[exponents] = self.operators[k](self.monomial(rest))
        return self._memo[exponents]

    def __call__(self, g):
        # type: (CPoly) -> CPoly
        g = convert(g, WEIGHT)
        result = CPoly.zero(self.coords)
        for exponents, coef in iteritems(g.terms):
            result = result + self.monomial(exponents).scale(coef)
        return result


_evaluators = {}  # type: Dict[Text, QuantumEvaluator]
_evaluators_lock = threading.Lock()


def evaluator(rs):
    # type: (RootSystem) -> QuantumEvaluator
    with _evaluators_lock:
        if rs.name not in _evaluators:
            _evaluators[rs.name] = QuantumEvaluator(rs)
        return _evaluators[rs.name]


def quantize_poly(rs, f):
    # type: (RootSystem, CPoly) -> CPoly
    """The f̃ with f̃((Y_i))(1) = f.

    Each correction has strictly lower x-degree than the previous one, so
    the loop ends after at most deg f rounds.
    """
    f = convert(f, WEIGHT)
    phi = evaluator(rs)
    result = f
    for _ in range(f.degree() + 2):
        remainder = f - phi(result)
        if not remainder:
            return result
        result = result + remainder
    raise InvariantViolation("Quantization of %s did not converge" % f.to_string())


def _q_monomials(rank, degree):
    # type: (int, int) -> List[QMonomial]
    out = []
    for combo in itertools.combinations_with_replacement(range(rank), degree):
        exponents = [0] * rank
        for i in combo:
            exponents[i] += 1
        out.append(QMonomial(exponents))
    return sorted(set(out))


def _x_monomials(dim, degree):
    # type: (int, int) -> List[Tuple[int, ...]]
    return sorted(set(tuple(sum(1 for i in combo if i == k) for k in range(dim))
                      for combo in itertools.combinations_with_replacement(range(dim), degree)))


def ideal_coordinates(g):
    # type: (CPoly) -> Dict[Tuple[Any, ...], Any]
    """The linear functionals whose vanishing means g lies in the invariant ideal"""
    rs = g.coords.rs
    by_length = {}  # type: Dict[int, List[Any]]
    for w in rs.enumerate_weyl():
        by_length.setdefault(w.length(), []).append(w)
    out = {}
    zero = (0,) * g.coords.dim
    for degree, component in sorted(iteritems(g.components())):
        for w in by_length.get(degree, []):
            value = demazure_w(w, component)
            coef = value.terms.get(zero)
            if coef is None:
                continue
            for monomial, c in iteritems(coef.terms):
                out[(degree, w.reduced_word(), tuple(monomial))] = c
    return out


def quantum_invariants(rs):
    # type: (RootSystem) -> List[CPoly]
    """Quantum fundamental invariants by kernel search, in weight coordinates.

    For each classical fundamental invariant I of degree d the unknowns are
    the corrections t·q^m·ω^e with 2|m| + |e| = d, |m| ≥ 1, and the condition
    is that I^q((Y_i))(1) lies in the ideal of positive-degree invariants.
    """
    coords = coordinates(rs, WEIGHT)
    phi = evaluator(rs)
    out = []
    for invariant in classical_invariants(rs, WEIGHT):
        d = invariant.degree()
        unknowns = []
        for q_degree in range(1, d // 2 + 1):
            for q in _q_monomials(rs.rank, q_degree):
                for x in _x_monomials(coords.dim, d - 2 * q_degree):
                    unknowns.append(CPoly.monomial(coords, x, RingElem.monomial(q)))
        base = ideal_coordinates(phi(invariant))
        columns = [ideal_coordinates(phi(u)) for u in unknowns]
        keys = sorted(set(base).union(*[set(c) for c in columns]))
        if not keys:
            out.append(invariant)
            continue
        if not unknowns:
            raise InvariantViolation("Degree %d invariant of %s is not quantizable" %
                                     (d, rs.name),
                                     counterexample={"invariant": invariant.to_string()})
        matrix = [[column.get(key, 0) for column in columns] for key in keys]
        rhs = [-base.get(key, 0) for key in keys]
        solution = solve_dense(matrix, rhs)
        if solution is None:
            raise InvariantViolation("No quantum correction for the degree %d invariant of %s" %
                                     (d, rs.name),
                                     counterexample={"invariant": invariant.to_string()})
        result = invariant
        for value, unknown in zip(solution, unknowns):
            if value:
                result = result + unknown.scale(value)
        logger.debug("%s quantum invariant of degree %d: %s" % (rs.name, d, result.to_string()))
        out.append(result)
    return out


def givental_kim(rs):
    # type: (RootSystem) -> List[CPoly]
    """Quantum elementary polynomials E_2..E_{n+1} of type A from

        D_k = (λ + x_k) D_{k-1} + q_{k-1} D_{k-2}

    with E_j the coefficient of λ^{n+1-j} in D_{n+1}, in ambient coordinates.
    """
    if rs.type != "A":
        raise ValueError("The tridiagonal construction is for type A only")
    coords = coordinates(rs, AMBIENT)
    n = rs.rank
    zero = CPoly.zero(coords)
    previous2 = [zero]
    previous = [CPoly.const(coords)]
    for k in range(1, n + 2):
        x = CPoly.variable(coords, k - 1)
        current = [zero] * (k + 1)
        for power, coef in enumerate(previous):
            current[power + 1] = current[power + 1] + coef
            current[power] = current[power] + x * coef
        if k >= 2:
            q = RingElem.q(rs.rank, k - 2)
            for power, coef in enumerate(previous2):
                current[power] = current[power] + coef.scale(q)
        previous2, previous = previous, current
    return [previous[n + 1 - j] for j in range(2, n + 2)]


Prop1Sets = namedtuple("Prop1Sets", ["a", "b", "a_prime", "b_prime", "matching"])


def prop1_sets(rs):
    # type: (RootSystem) -> Prop1Sets
    """The pairs of quantum roots behind operator commutativity, and the
    matching of A′ onto B′ with α∨ = γ∨ + δ∨ and s_α s_β = s_γ s_δ"""
    quantum = rs.quantum_roots()
    reflections = {root.index: rs.reflection(root.index) for root in rs.roots}
    a = []
    for alpha in quantum:
        for root in rs.roots:
            beta = root.index
            product = reflections[alpha] * reflections[beta]
            if product.length() == reflections[alpha].length() - 1:
                a.append((alpha, beta))
    b = []
    for gamma in quantum:
        for delta in quantum:
            product = reflections[gamma] * reflections[delta]
            if product.length() == reflections[gamma].length() + reflections[delta].length():
                b.append((gamma, delta))
    a_prime = [(alpha, beta) for alpha, beta in a if alpha != beta]
    b_prime = [(gamma, delta) for gamma, delta in b
               if reflections[gamma] * reflections[delta] !=
               reflections[delta] * reflections[gamma]]

    candidates = {}  # type: Dict[Tuple[int, int], List[Tuple[int, int]]]
    for alpha, beta in a_prime:
        coroot = rs.roots[alpha].coroot
        product = reflections[alpha] * reflections[beta]
        candidates[(alpha, beta)] = [
            (gamma, delta) for gamma, delta in b_prime
            if tuple(g + d for g, d in zip(rs.roots[gamma].coroot, rs.roots[delta].coroot)) ==
            coroot and reflections[gamma] * reflections[delta] == product]

    matched = {}  # type: Dict[Tuple[int, int], Tuple[int, int]]

    def augment(pair, seen):
        for target in candidates[pair]:
            if target in seen:
                continue
            seen.add(target)
            if target not in matched or augment(matched[target], seen):
                matched[target] = pair
                return True
        return False

    for pair in a_prime:
        augment(pair, set())
    matching = {pair: target for target, pair in iteritems(matched)}
    return Prop1Sets(a, b, a_prime, b_prime, matching)


def bn_generators(model):
    # type: (QuantumModel) -> Dict[Text, GradedOperator]
    """Quantized generators of type B labelled [i,j] (ε_i - ε_j), bar[i,j]
    (ε_i + ε_j) and [i] (ε_i), indices from 1; [j,i] = -[i,j]"""
    rs = model.rs
    if rs.type != "B":
        raise ValueError("Bracket generators are defined for type B only")
    n = rs.rank
    out = {}

    def vector(*entries):
        v = [0] * n
        for position, value in entries:
            v[position - 1] += value
        return v

    for i in range(1, n + 1):
        sign, index = rs.lookup(vector((i, 1)))
        out["[%d]" % i] = model.quantize_root(index).scale(sign)
        for j in range(1, n + 1):
            if i == j:
                continue
            sign, index = rs.lookup(vector((i, 1), (j, -1)))
            out["[%d,%d]" % (i, j)] = model.quantize_root(index).scale(sign)
            sign, index = rs.lookup(vector((i, 1), (j, 1)))
            out["bar[%d,%d]" % (i, j)] = model.quantize_root(index).scale(sign)
    return out


BnRelation = namedtuple("BnRelation", ["group", "text", "terms", "scalar"])


def bn_relations(n):
    # type: (int) -> List[BnRelation]
    """Instances of the quantum B_n bracket relations: Σ ±products = scalar·id.

    `terms` is a list of (sign, generator label sequence) pairs; `scalar`
    is a QMonomial exponent list over the simple coroots, or None for 0.
    """
    out = []
    indices = list(range(1, n + 1))

    def simple_q(k):
        return tuple(1 if t == k - 1 else 0 for t in range(n))

    def rel(group, terms, scalar=None):
        terms = [(1, term) for term in terms]
        text = " + ".join("*".join(term) for _, term in terms)
        out.append(BnRelation(group, "%s = %s" % (text, "Q%r" % (scalar,) if scalar else "0"),
                              terms, scalar))

    def commute(group, a, b):
        out.append(BnRelation(group, "%s*%s = %s*%s" % (a, b, b, a),
                              [(1, (a, b)), (-1, (b, a))], None))

    for i in indices:
        for j in indices:
            if i >= j:
                continue
            if j == i + 1:
                rel(1, [("[%d,%d]" % (i, j),) * 2], simple_q(i))
            else:
                rel(1, [("[%d,%d]" % (i, j),) * 2])
            rel(1, [("bar[%d,%d]" % (i, j),) * 2])
        if i < n:
            rel(1, [("[%d]" % i,) * 2])
        else:
            rel(1, [("[%d]" % i,) * 2], simple_q(n))

    pairs = [(i, j) for i in indices for j in indices if i < j]
    for (i, j), (k, l) in itertools.combinations(pairs, 2):
        if set((i, j)) & set((k, l)):
            continue
        a, b = "[%d,%d]" % (i, j), "[%d,%d]" % (k, l)
        abar, bbar = "bar[%d,%d]" % (i, j), "bar[%d,%d]" % (k, l)
        commute(2, a, b)
        commute(2, abar, b)
        commute(2, a, bbar)
        commute(2, abar, bbar)

    for i, j in pairs:
        commute(3, "[%d]" % i, "[%d]" % j)
        a, abar = "[%d,%d]" % (i, j), "bar[%d,%d]" % (i, j)
        commute(3, a, abar)
        for k in indices:
            if k in (i, j):
                continue
            commute(3, a, "[%d]" % k)
            commute(3, abar, "[%d]" % k)

    for i, j, k in itertools.permutations(indices, 3):
        rel(4, [("[%d,%d]" % (i, j), "[%d,%d]" % (j, k)),
                ("[%d,%d]" % (j, k), "[%d,%d]" % (k, i)),
                ("[%d,%d]" % (k, i), "[%d,%d]" % (i, j))])
        rel(4, [("bar[%d,%d]" % (i, k), "[%d,%d]" % (i, j)),
                ("[%d,%d]" % (j, i), "bar[%d,%d]" % (j, k)),
                ("bar[%d,%d]" % (k, j), "bar[%d,%d]" % (i, k))])
    for i, j in itertools.permutations(indices, 2):
        rel(4, [("[%d,%d]" % (i, j), "[%d]" % i),
                ("[%d]" % j, "[%d,%d]" % (j, i)),
                ("[%d]" % i, "bar[%d,%d]" % (i, j)),
                ("bar[%d,%d]" % (i, j), "[%d]" % j)])

    for i, j in pairs:
        a, abar, s = "[%d,%d]" % (i, j), "bar[%d,%d]" % (i, j), "[%d]" % i
        rel(5, [(a, s, abar, s), (abar, s, a, s), (s, a, s, abar), (s, abar, s, a)])
    return out


def relation_operator(generators, relation):
    # type: (Dict[Text, GradedOperator], BnRelation) -> GradedOperator
    """Left side minus right side of a bracket relation"""
    total = None  # type: Optional[GradedOperator]
    for sign, term in relation.terms:
        op = generators[term[-1]]
        for label in reversed(term[:-1]):
            op = generators[label].compose(op)
        if sign < 0:
            op = -op
        total = op if total is None else total + op
    assert total is not None
    if relation.scalar:
        nb = total.nb
        total = total - GradedOperator.identity(nb, RingElem.monomial(QMonomial(relation.scalar)))
    return total


def filtration_ranks(model, max_degree=None):
    # type: (QuantumModel, Optional[int]) -> List[int]
    """Rank of the top-degree parts of η^e(1), |e| = i, for each i"""
    rs = model.rs
    top = len(rs.length_histogram()) - 1
    if max_degree is not None:
        top = min(top, max_degree)
    coords = coordinates(rs, WEIGHT)
    ranks = []
    for i in range(top + 1):
        vectors = []
        for exponents in _x_monomials(rs.rank, i):
            value = model.apply_to_vacuum(CPoly.monomial(coords, exponents))
            vectors.append({idx: coef.constant_term()
                            for (k, idx), coef in iteritems(value.coords) if k == i})
        ranks.append(sparse_rank(vectors))
    return ranks
