"""Polynomials on 𝔥 (Sym 𝔥*) with coefficients in Q[q], the W-action,
divided differences, BGG and Schubert classes, and the map μ into B(V).

A polynomial records its coordinate system: "ambient" variables are the
x_k (type A) or ε_k of the root system's ambient space, "weight" variables
are the fundamental weights ω_1..ω_n. For type A the ambient variables
restrict to 𝔥* with x_1 + ... + x_{n+1} ↦ 0.
"""
from __future__ import absolute_import
import itertools
import threading

from six import iteritems
from six.moves import range

from . import log
from .errors import InvariantViolation
from .nichols import BElem
from .roots import unit_vector
from .scalars import RingElem, divide, format_terms, rational

MYPY = False
if MYPY:
    from random import Random
    from typing import Any, Callable, Dict, List, Optional, Sequence, Text, Tuple
    from .nichols import NicholsBasis
    from .roots import RootSystem, WeylElem
    Exponents = Tuple[int, ...]
    LinearForm = Tuple[Any, ...]

logger = log.get_logger(__name__)

AMBIENT = "ambient"
WEIGHT = "weight"


class Coordinates(object):
    """A coordinate system on 𝔥*: the variables and how W acts on them."""

    def __init__(self, rs, basis):
        # type: (RootSystem, Text) -> None
        if basis not in (AMBIENT, WEIGHT):
            raise ValueError("Unknown coordinate basis %r" % (basis,))
        self.rs = rs
        self.basis = basis
        self.dim = rs.ambient_dim if basis == AMBIENT else rs.rank
        if basis == WEIGHT:
            self.prefix = "w"
        else:
            self.prefix = "x" if rs.type == "A" else "e"
        self._root_forms = [self._root_form(root.index) for root in rs.roots]
        self._pairings = [[self._pairing(k, root.index) for root in rs.roots]
                          for k in range(self.dim)]
        self._reflections = {}  # type: Dict[int, List[LinearForm]]

    def __eq__(self, other):
        return (isinstance(other, Coordinates) and self.rs.name == other.rs.name and
                self.basis == other.basis)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.rs.name, self.basis))

    def __repr__(self):
        return "Coordinates(%s, %s)" % (self.rs.name, self.basis)

    def _root_form(self, root_index):
        # type: (int) -> LinearForm
        vector = self.rs.roots[root_index].vector
        if self.basis == AMBIENT:
            return tuple(vector)
        return tuple(self.rs.pairing(vector, j) for j in range(self.rs.rank))

    def _pairing(self, k, root_index):
        # type: (int, int) -> Any
        if self.basis == AMBIENT:
            return self.rs.pairing(unit_vector(self.dim, k), root_index)
        return self.rs.roots[root_index].coroot[k]

    def root_form(self, root_index):
        # type: (int) -> LinearForm
        """α as a linear form in the variables"""
        return self._root_forms[root_index]

    def pairing(self, k, root_index):
        # type: (int, int) -> Any
        """⟨v_k, α∨⟩ for the k-th variable"""
        return self._pairings[k][root_index]

    def reflection_images(self, root_index):
        # type: (int) -> List[LinearForm]
        """Images of the variables under s_α: v - ⟨v, α∨⟩ α"""
        if root_index not in self._reflections:
            alpha = self._root_forms[root_index]
            images = []
            for k in range(self.dim):
                pairing = self.pairing(k, root_index)
                images.append(tuple(rational((1 if j == k else 0) - pairing * a)
                                    for j, a in enumerate(alpha)))
            self._reflections[root_index] = images
        return self._reflections[root_index]

    def variable_label(self, k):
        # type: (int) -> Text
        return "%s%d" % (self.prefix, k + 1)

    def to_weight_images(self):
        # type: () -> List[LinearForm]
        """Ambient variables in weight coordinates: x ↦ Σ_j ⟨x, α_j∨⟩ ω_j"""
        assert self.basis == AMBIENT
        return [tuple(self.pairing(k, j) for j in range(self.rs.rank)) for k in range(self.dim)]

    def to_ambient_images(self):
        # type: () -> List[LinearForm]
        assert self.basis == WEIGHT
        return [tuple(weight) for weight in self.rs.fundamental_weights()]


_coordinates = {}  # type: Dict[Tuple[Text, Text], Coordinates]
_coordinates_lock = threading.Lock()


def coordinates(rs, basis=WEIGHT):
    # type: (RootSystem, Text) -> Coordinates
    key = (rs.name, basis)
    with _coordinates_lock:
        if key not in _coordinates:
            _coordinates[key] = Coordinates(rs, basis)
        return _coordinates[key]


def _is_signed_permutation(images):
    # type: (Sequence[LinearForm]) -> bool
    return all(sum(1 for v in form if v) == 1 and all(v in (0, 1, -1) for v in form)
               for form in images)


class CPoly(object):
    """Commutative polynomial: exponent vector -> RingElem."""
    __slots__ = ("coords", "terms")

    def __init__(self, coords, terms=None):
        # type: (Coordinates, Optional[Dict[Exponents, Any]]) -> None
        self.coords = coords
        rank = coords.rs.rank
        clean = {}  # type: Dict[Exponents, RingElem]
        for exponents, coef in iteritems(terms or {}):
            exponents = tuple(exponents)
            if len(exponents) != coords.dim:
                raise ValueError("Exponent vector %r does not have %d entries" %
                                 (exponents, coords.dim))
            if not isinstance(coef, RingElem):
                coef = RingElem.const(rank, coef)
            if exponents in clean:
                coef = clean[exponents] + coef
            if coef:
                clean[exponents] = coef
            else:
                clean.pop(exponents, None)
        self.terms = clean

    @classmethod
    def const(cls, coords, value=1):
        # type: (Coordinates, Any) -> CPoly
        return cls(coords, {(0,) * coords.dim: value})

    @classmethod
    def zero(cls, coords):
        # type: (Coordinates) -> CPoly
        return cls(coords)

    @classmethod
    def variable(cls, coords, k):
        # type: (Coordinates, int) -> CPoly
        return cls(coords, {tuple(1 if j == k else 0 for j in range(coords.dim)): 1})

    @classmethod
    def monomial(cls, coords, exponents, coef=1):
        # type: (Coordinates, Sequence[int], Any) -> CPoly
        return cls(coords, {tuple(exponents): coef})

    @classmethod
    def linear(cls, coords, form):
        # type: (Coordinates, Sequence[Any]) -> CPoly
        terms = {}
        for k, value in enumerate(form):
            if value:
                terms[tuple(1 if j == k else 0 for j in range(coords.dim))] = value
        return cls(coords, terms)

    def is_zero(self):
        # type: () -> bool
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    __nonzero__ = __bool__

    def _check(self, other):
        # type: (CPoly) -> None
        if self.coords != other.coords:
            raise ValueError("Polynomials in %r and %r" % (self.coords, other.coords))

    def _coerce(self, other):
        # type: (Any) -> CPoly
        if isinstance(other, CPoly):
            self._check(other)
            return other
        return CPoly.const(self.coords, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for exponents, coef in iteritems(other.terms):
            terms[exponents] = terms[exponents] + coef if exponents in terms else coef
        return CPoly(self.coords, terms)

    __radd__ = __add__

    def __neg__(self):
        return CPoly(self.coords, {e: -c for e, c in iteritems(self.terms)})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, value):
        # type: (Any) -> CPoly
        return CPoly(self.coords, {e: c * value for e, c in iteritems(self.terms)})

    def __mul__(self, other):
        if not isinstance(other, CPoly):
            return self.scale(other)
        self._check(other)
        terms = {}  # type: Dict[Exponents, RingElem]
        for e1, c1 in iteritems(self.terms):
            for e2, c2 in iteritems(other.terms):
                exponents = tuple(a + b for a, b in zip(e1, e2))
                product = c1 * c2
                terms[exponents] = terms[exponents] + product if exponents in terms else product
        return CPoly(self.coords, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        # type: (int) -> CPoly
        result = CPoly.const(self.coords)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, CPoly):
            return self.coords == other.coords and self.terms == other.terms
        return self == CPoly.const(self.coords, other)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.coords, frozenset(iteritems(self.terms))))

    def degree(self):
        # type: () -> int
        """x-degree; -1 for the zero polynomial"""
        return max([sum(e) for e in self.terms] or [-1])

    def components(self):
        # type: () -> Dict[int, CPoly]
        """Homogeneous components by x-degree"""
        out = {}  # type: Dict[int, Dict[Exponents, RingElem]]
        for exponents, coef in iteritems(self.terms):
            out.setdefault(sum(exponents), {})[exponents] = coef
        return {d: CPoly(self.coords, terms) for d, terms in iteritems(out)}

    def is_q_free(self):
        # type: () -> bool
        return all(coef.is_constant() for coef in self.terms.values())

    def q_zero(self):
        # type: () -> CPoly
        return CPoly(self.coords, {e: c.q_zero() for e, c in iteritems(self.terms)})

    def q_expansion(self):
        # type: () -> Dict[Any, CPoly]
        """q-monomial -> q-free polynomial coefficient"""
        out = {}  # type: Dict[Any, Dict[Exponents, Any]]
        for exponents, coef in iteritems(self.terms):
            for monomial, value in iteritems(coef.terms):
                out.setdefault(monomial, {})[exponents] = value
        return {m: CPoly(self.coords, terms) for m, terms in iteritems(out)}

    def substitute(self, images):
        # type: (Sequence[LinearForm]) -> CPoly
        """Replace each variable by a linear form (possibly in other coordinates)"""
        return substitute(self, images, self.coords)

    def sorted_terms(self):
        # type: () -> List[Tuple[Exponents, RingElem]]
        return sorted(iteritems(self.terms), key=lambda item: (sum(item[0]), item[0]),
                      reverse=True)

    def to_string(self, q_map=None):
        # type: (Optional[Callable[[Any], Any]]) -> Text
        """q_map rewrites q-monomials for display, e.g. the type B Laurent form"""
        parts = []
        for exponents, coef in self.sorted_terms():
            factors = []
            for k, e in enumerate(exponents):
                if e == 1:
                    factors.append(self.coords.variable_label(k))
                elif e:
                    factors.append("%s^%d" % (self.coords.variable_label(k), e))
            x_part = "*".join(factors)
            for monomial, value in coef.sorted_terms():
                q_part = (q_map(monomial) if q_map else monomial).to_string()
                parts.append(("*".join(p for p in (q_part, x_part) if p), value))
        return format_terms(parts)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return "CPoly(%s)" % self.to_string()


def substitute(f, images, target):
    # type: (CPoly, Sequence[LinearForm], Coordinates) -> CPoly
    if len(images) != f.coords.dim:
        raise ValueError("Need %d images, got %d" % (f.coords.dim, len(images)))
    if target.dim == f.coords.dim and _is_signed_permutation(images):
        terms = {}  # type: Dict[Exponents, RingElem]
        moves = []
        for form in images:
            j = next(i for i, v in enumerate(form) if v)
            moves.append((j, form[j]))
        for exponents, coef in iteritems(f.terms):
            image = [0] * target.dim
            sign = 1
            for k, e in enumerate(exponents):
                j, s = moves[k]
                image[j] += e
                if s < 0 and e % 2:
                    sign = -sign
            key = tuple(image)
            value = coef if sign > 0 else -coef
            terms[key] = terms[key] + value if key in terms else value
        return CPoly(target, terms)

    linear = [CPoly.linear(target, form) for form in images]
    powers = {}  # type: Dict[Tuple[int, int], CPoly]

    def power(k, e):
        if (k, e) not in powers:
            powers[(k, e)] = CPoly.const(target) if e == 0 else power(k, e - 1) * linear[k]
        return powers[(k, e)]

    result = CPoly.zero(target)
    for exponents, coef in iteritems(f.terms):
        term = CPoly.const(target, coef)
        for k, e in enumerate(exponents):
            if e:
                term = term * power(k, e)
        result = result + term
    return result


def to_weight(f):
    # type: (CPoly) -> CPoly
    if f.coords.basis == WEIGHT:
        return f
    return substitute(f, f.coords.to_weight_images(), coordinates(f.coords.rs, WEIGHT))


def to_ambient(f):
    # type: (CPoly) -> CPoly
    if f.coords.basis == AMBIENT:
        return f
    return substitute(f, f.coords.to_ambient_images(), coordinates(f.coords.rs, AMBIENT))


def convert(f, basis):
    # type: (CPoly, Text) -> CPoly
    return to_weight(f) if basis == WEIGHT else to_ambient(f)


def reflect_poly(root_index, f):
    # type: (int, CPoly) -> CPoly
    return f.substitute(f.coords.reflection_images(root_index))


def w_act_poly(w, f):
    # type: (WeylElem, CPoly) -> CPoly
    for i in reversed(w.reduced_word()):
        f = reflect_poly(i, f)
    return f


def divide_linear(f, form):
    # type: (CPoly, LinearForm) -> Tuple[CPoly, CPoly]
    """(quotient, remainder) of f by a linear form, eliminating the last
    variable the form involves"""
    pivot = max(k for k, v in enumerate(form) if v)
    lead = form[pivot]
    divisor = CPoly.linear(f.coords, form)
    remainder = f
    quotient = {}  # type: Dict[Exponents, RingElem]
    while True:
        candidates = [e for e in remainder.terms if e[pivot] > 0]
        if not candidates:
            break
        exponents = max(candidates, key=lambda e: (e[pivot], e))
        coef = remainder.terms[exponents] * divide(1, lead)
        reduced = tuple(e - 1 if k == pivot else e for k, e in enumerate(exponents))
        quotient[reduced] = quotient[reduced] + coef if reduced in quotient else coef
        remainder = remainder - CPoly.monomial(f.coords, reduced, coef) * divisor
    return CPoly(f.coords, quotient), remainder


def demazure(root_index, f):
    # type: (int, CPoly) -> CPoly
    """∂_α f = (f - s_α f)/α"""
    numerator = f - reflect_poly(root_index, f)
    if not numerator:
        return CPoly.zero(f.coords)
    quotient, remainder = divide_linear(numerator, f.coords.root_form(root_index))
    if remainder:
        raise InvariantViolation("Divided difference of %s by %s leaves remainder %s" %
                                 (f.to_string(), f.coords.rs.root_label(root_index),
                                  remainder.to_string()),
                                 counterexample={"f": f.to_string(),
                                                 "root": f.coords.rs.root_label(root_index)})
    return quotient


def demazure_word(word, f):
    # type: (Sequence[int], CPoly) -> CPoly
    """∂_{i_1}⋯∂_{i_l} f, last letter applied first"""
    for i in reversed(word):
        if not f:
            break
        f = demazure(i, f)
    return f


def demazure_w(w, f):
    # type: (WeylElem, CPoly) -> CPoly
    return demazure_word(w.reduced_word(), f)


def root_product(rs, basis=WEIGHT):
    # type: (RootSystem, Text) -> CPoly
    coords = coordinates(rs, basis)
    product = CPoly.const(coords)
    for root in rs.roots:
        product = product * CPoly.linear(coords, coords.root_form(root.index))
    return product


_bgg_top = {}  # type: Dict[Tuple[Text, Text], CPoly]
_bgg_top_lock = threading.Lock()


def bgg_class(w, basis=WEIGHT):
    # type: (WeylElem, Text) -> CPoly
    """X_w = ∂_{w⁻¹w₀} X_{w₀} with X_{w₀} = Π α / |W|"""
    rs = w.rs
    key = (rs.name, basis)
    with _bgg_top_lock:
        if key not in _bgg_top:
            order = len(rs.enumerate_weyl())
            _bgg_top[key] = root_product(rs, basis).scale(divide(1, order))
        top = _bgg_top[key]
    return demazure_w(w.inverse() * rs.longest_element(), top)


def staircase(rs):
    # type: (RootSystem) -> CPoly
    """x_1^n x_2^{n-1} ⋯ x_n in ambient coordinates of A_n"""
    if rs.type != "A":
        raise ValueError("Schubert polynomials are defined for type A only")
    n = rs.rank
    return CPoly.monomial(coordinates(rs, AMBIENT), [n - k for k in range(n + 1)])


def schubert_poly_A(w):
    # type: (WeylElem) -> CPoly
    rs = w.rs
    return demazure_w(w.inverse() * rs.longest_element(), staircase(rs))


def elementary(values, k):
    # type: (Sequence[CPoly], int) -> CPoly
    coords = values[0].coords
    total = CPoly.zero(coords)
    for subset in itertools.combinations(values, k):
        term = CPoly.const(coords)
        for v in subset:
            term = term * v
        total = total + term
    return total


def fundamental_degrees(rs):
    # type: (RootSystem) -> List[int]
    n = rs.rank
    if rs.type == "A":
        return list(range(2, n + 2))
    if rs.type in ("B", "C"):
        return [2 * k for k in range(1, n + 1)]
    return sorted([2 * k for k in range(1, n)] + [n])


def classical_invariants(rs, basis=AMBIENT):
    # type: (RootSystem, Text) -> List[CPoly]
    """Fundamental W-invariants, sorted by degree"""
    coords = coordinates(rs, AMBIENT)
    variables = [CPoly.variable(coords, k) for k in range(coords.dim)]
    n = rs.rank
    if rs.type == "A":
        invariants = [elementary(variables, k) for k in range(2, n + 2)]
    else:
        squares = [v * v for v in variables]
        top = n if rs.type in ("B", "C") else n - 1
        invariants = [elementary(squares, k) for k in range(1, top + 1)]
        if rs.type == "D":
            pfaffian = CPoly.const(coords)
            for v in variables:
                pfaffian = pfaffian * v
            invariants.append(pfaffian)
    invariants.sort(key=lambda f: f.degree())
    return [convert(f, basis) for f in invariants]


def in_invariant_ideal(f):
    # type: (CPoly) -> bool
    """Membership in the ideal generated by W-invariants of positive degree.

    A homogeneous f of degree m lies in the ideal exactly when ∂_w f = 0 for
    every w of length m; components above the top length always do.
    """
    rs = f.coords.rs
    by_length = {}  # type: Dict[int, List[WeylElem]]
    for w in rs.enumerate_weyl():
        by_length.setdefault(w.length(), []).append(w)
    for degree, component in sorted(iteritems(f.components())):
        if degree not in by_length:
            continue
        for w in by_length[degree]:
            if demazure_w(w, component):
                return False
    return True


def weight_form(rs, vector):
    # type: (RootSystem, Sequence[Any]) -> CPoly
    """An ambient vector as a linear polynomial in weight coordinates"""
    coords = coordinates(rs, WEIGHT)
    return CPoly.linear(coords, [rs.pairing(vector, j) for j in range(rs.rank)])


def random_poly(coords, rng, max_degree, terms_per_degree=2, bound=3):
    # type: (Coordinates, Random, int, int, int) -> CPoly
    """Random q-free polynomial with small integer coefficients"""
    terms = {}  # type: Dict[Exponents, Any]
    for degree in range(max_degree + 1):
        for _ in range(terms_per_degree):
            exponents = [0] * coords.dim
            for _ in range(degree):
                exponents[rng.randrange(coords.dim)] += 1
            coef = rng.randint(-bound, bound)
            key = tuple(exponents)
            terms[key] = terms.get(key, 0) + coef
    return CPoly(coords, terms)


def mu_images(nb, coords, constants=None):
    # type: (NicholsBasis, Coordinates, Any) -> List[Dict[int, Any]]
    """μ(v_k) = Σ_α c_α ⟨v_k, α∨⟩ [α] as root index -> coefficient"""
    images = []
    for k in range(coords.dim):
        image = {}
        for root in nb.rs.roots:
            value = coords.pairing(k, root.index)
            if constants is not None:
                value = value * constants.c(root.index)
            if value:
                image[root.index] = rational(value)
        images.append(image)
    return images


def mu(nb, f, constants=None):
    # type: (NicholsBasis, CPoly, Any) -> BElem
    """The algebra map Sym 𝔥* -> B(V) extending x ↦ Σ c_α⟨x, α∨⟩[α]"""
    images = mu_images(nb, f.coords, constants)
    memo = {(0,) * f.coords.dim: BElem.one(nb)}  # type: Dict[Exponents, BElem]

    def monomial(exponents):
        # type: (Exponents) -> BElem
        if exponents in memo:
            return memo[exponents]
        k = next(i for i, e in enumerate(exponents) if e)
        rest = monomial(tuple(e - 1 if i == k else e for i, e in enumerate(exponents)))
        value = BElem(nb)
        for alpha, coef in sorted(iteritems(images[k])):
            value = value + nb.left_multiply(alpha, rest).scale(coef)
        memo[exponents] = value
        return value

    result = BElem(nb)
    for exponents, coef in sorted(iteritems(f.terms)):
        result = result + monomial(exponents).scale(coef)
    return result


def bgg_pairing_matrix(rs, length, basis=WEIGHT):
    # type: (RootSystem, int, Text) -> List[List[Any]]
    """Constant terms of ∂_v X_w for v, w of the given length"""
    elements = [w for w in rs.enumerate_weyl() if w.length() == length]
    matrix = []
    for w in elements:
        x_w = bgg_class(w, basis)
        row = []
        for v in elements:
            value = demazure_w(v, x_w)
            row.append(value.terms.get((0,) * value.coords.dim,
                                       RingElem.zero(rs.rank)).constant_term())
        matrix.append(row)
    return matrix
