"""Exact coefficients: rationals times monomials in the quantum parameters.

A RingElem is a sparse map from QMonomial (an exponent vector over the
simple coroots) to a rational. Rationals are kept as int where possible and
as fractions.Fraction otherwise; see `rational`.
"""
from __future__ import absolute_import
import re
from fractions import Fraction

import six
from six import iteritems

from .errors import ConfigError

MYPY = False
if MYPY:
    from typing import Any, Dict, Iterable, List, Optional, Sequence, Text, Tuple, Union
    Rational = Union[int, Fraction]


def rational(value):
    # type: (Any) -> Rational
    """Normalize an exact rational, preferring int when the denominator is 1"""
    if isinstance(value, six.integer_types):
        return int(value)
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value.numerator)
        return value
    if isinstance(value, float):
        raise TypeError("Floating point value %r is not an exact coefficient" % value)
    return rational(Fraction(value))


def divide(a, b):
    # type: (Rational, Rational) -> Rational
    if isinstance(a, int) and isinstance(b, int) and a % b == 0:
        return a // b
    return rational(Fraction(a) / b)


def format_rational(value):
    # type: (Rational) -> Text
    return str(rational(value))


class QMonomial(tuple):
    """Exponent vector of q over the simple coroots."""
    __slots__ = ()

    def __new__(cls, exponents):
        return tuple.__new__(cls, tuple(int(e) for e in exponents))

    @classmethod
    def one(cls, rank):
        # type: (int) -> QMonomial
        return cls((0,) * rank)

    @classmethod
    def unit(cls, rank, index):
        # type: (int, int) -> QMonomial
        return cls(1 if i == index else 0 for i in range(rank))

    def times(self, other):
        # type: (QMonomial) -> QMonomial
        if len(self) != len(other):
            raise ValueError("q-monomials of different rank")
        return QMonomial(a + b for a, b in zip(self, other))

    def power(self, n):
        # type: (int) -> QMonomial
        return QMonomial(a * n for a in self)

    @property
    def degree(self):
        # type: () -> int
        return sum(self)

    def is_one(self):
        # type: () -> bool
        return not any(self)

    def sort_key(self):
        # Graded lex, largest first once sorted in reverse
        return (sum(self), tuple(self))

    def to_string(self, prefix="q"):
        # type: (Text) -> Text
        factors = []
        for i, e in enumerate(self):
            if e == 0:
                continue
            if e == 1:
                factors.append("%s%d" % (prefix, i + 1))
            else:
                factors.append("%s%d^%d" % (prefix, i + 1, e))
        return "*".join(factors)

    def __repr__(self):
        return "QMonomial(%r)" % (tuple(self),)


def q_of_coroot(coroot):
    # type: (Sequence[Any]) -> QMonomial
    """The q-monomial q^{γ∨} for a coroot given over the simple coroots"""
    exponents = []
    for value in coroot:
        value = rational(value)
        if not isinstance(value, int):
            raise ConfigError("Coroot %r has non-integer coordinates" % (tuple(coroot),))
        exponents.append(value)
    return QMonomial(exponents)


class RingElem(object):
    """Element of Q[q^{α∨}] in canonical form (no zero coefficients)."""
    __slots__ = ("rank", "terms", "_hash")

    def __init__(self, rank, terms=None):
        # type: (int, Optional[Dict[QMonomial, Rational]]) -> None
        self.rank = rank
        self._hash = None
        clean = {}
        if terms:
            for monomial, coef in iteritems(terms):
                coef = rational(coef)
                if coef:
                    if len(monomial) != rank:
                        raise ValueError("q-monomial %r does not have rank %d" %
                                         (monomial, rank))
                    clean[QMonomial(monomial)] = coef
        self.terms = clean

    @classmethod
    def _raw(cls, rank, terms):
        # Caller guarantees canonical form
        elem = cls.__new__(cls)
        elem.rank = rank
        elem.terms = terms
        elem._hash = None
        return elem

    @classmethod
    def const(cls, rank, value):
        # type: (int, Any) -> RingElem
        value = rational(value)
        if not value:
            return cls._raw(rank, {})
        return cls._raw(rank, {QMonomial.one(rank): value})

    @classmethod
    def zero(cls, rank):
        # type: (int) -> RingElem
        return cls._raw(rank, {})

    @classmethod
    def monomial(cls, monomial, coef=1):
        # type: (QMonomial, Any) -> RingElem
        return cls(len(monomial), {QMonomial(monomial): coef})

    @classmethod
    def q(cls, rank, index):
        # type: (int, int) -> RingElem
        """The generator q^{α_i∨} (index counted from 0)"""
        return cls._raw(rank, {QMonomial.unit(rank, index): 1})

    def _coerce(self, other):
        # type: (Any) -> RingElem
        if isinstance(other, RingElem):
            if other.rank != self.rank:
                raise ValueError("Ring elements of rank %d and %d" % (self.rank, other.rank))
            return other
        return RingElem.const(self.rank, other)

    def is_zero(self):
        # type: () -> bool
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    __nonzero__ = __bool__

    def is_constant(self):
        # type: () -> bool
        return all(m.is_one() for m in self.terms)

    def constant_term(self):
        # type: () -> Rational
        return self.terms.get(QMonomial.one(self.rank), 0)

    def q_zero(self):
        # type: () -> RingElem
        """Specialize every q to 0"""
        return RingElem.const(self.rank, self.constant_term())

    def __add__(self, other):
        other = self._coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        terms = dict(self.terms)
        for monomial, coef in iteritems(other.terms):
            value = terms.get(monomial, 0) + coef
            if value:
                terms[monomial] = rational(value)
            else:
                terms.pop(monomial, None)
        return RingElem._raw(self.rank, terms)

    __radd__ = __add__

    def __neg__(self):
        return RingElem._raw(self.rank, {m: -c for m, c in iteritems(self.terms)})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, value):
        # type: (Rational) -> RingElem
        value = rational(value)
        if not value:
            return RingElem.zero(self.rank)
        if value == 1:
            return self
        return RingElem._raw(self.rank,
                             {m: rational(c * value) for m, c in iteritems(self.terms)})

    def times_monomial(self, monomial, value=1):
        # type: (QMonomial, Rational) -> RingElem
        if not value:
            return RingElem.zero(self.rank)
        return RingElem._raw(self.rank,
                             {m.times(monomial): rational(c * value)
                              for m, c in iteritems(self.terms)})

    def __mul__(self, other):
        if not isinstance(other, RingElem):
            return self.scale(other)
        other = self._coerce(other)
        if len(other.terms) == 1:
            (monomial, value), = other.terms.items()
            return self.times_monomial(monomial, value)
        terms = {}  # type: Dict[QMonomial, Rational]
        for m1, c1 in iteritems(self.terms):
            for m2, c2 in iteritems(other.terms):
                monomial = m1.times(m2)
                terms[monomial] = terms.get(monomial, 0) + c1 * c2
        return RingElem(self.rank, terms)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, RingElem):
            return self.rank == other.rank and self.terms == other.terms
        try:
            other = rational(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == RingElem.const(self.rank, other).terms

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                # Equal to the rational it holds
                self._hash = hash(self.constant_term())
            else:
                self._hash = hash((self.rank, frozenset(iteritems(self.terms))))
        return self._hash

    def sorted_terms(self):
        # type: () -> List[Tuple[QMonomial, Rational]]
        return sorted(iteritems(self.terms), key=lambda item: item[0].sort_key(), reverse=True)

    def to_string(self, prefix="q"):
        # type: (Text) -> Text
        return format_terms([(monomial.to_string(prefix), coef)
                             for monomial, coef in self.sorted_terms()])

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return "RingElem(%s)" % self.to_string()


def ring_add(a, b):
    # type: (RingElem, RingElem) -> RingElem
    return a + b


def ring_mul(a, b):
    # type: (RingElem, RingElem) -> RingElem
    return a * b


def format_terms(terms):
    # type: (Iterable[Tuple[Text, Rational]]) -> Text
    """Join (monomial string, coefficient) pairs as "3/2*q1^2*q2 - q1 + 1"."""
    parts = []
    for monomial, coef in terms:
        sign = "-" if coef < 0 else "+"
        magnitude = abs(coef)
        if not monomial:
            body = format_rational(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = "%s*%s" % (format_rational(magnitude), monomial)
        if not parts:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append("%s %s" % (sign, body))
    if not parts:
        return "0"
    return " ".join(parts)


_term_split = re.compile(r"\s+([+-])\s+")
_factor = re.compile(r"^([A-Za-z]+)(\d+)(?:\^(-?\d+))?$")
_number = re.compile(r"^\d+(?:/\d+)?$")


def parse_terms(text, prefix="q"):
    # type: (Text, Text) -> List[Tuple[Dict[int, int], Rational]]
    """Inverse of format_terms: list of ({variable index: exponent}, coefficient)"""
    text = text.strip()
    if text == "0":
        return []
    pieces = _term_split.split(text)
    signs = ["+"] + pieces[1::2]
    bodies = pieces[0::2]
    terms = []
    for sign, body in zip(signs, bodies):
        if body.startswith("-"):
            sign = "-" if sign == "+" else "+"
            body = body[1:]
        coef = 1  # type: Rational
        exponents = {}  # type: Dict[int, int]
        for factor in body.split("*"):
            factor = factor.strip()
            if _number.match(factor):
                coef = rational(coef * Fraction(factor))
                continue
            match = _factor.match(factor)
            if not match or match.group(1) != prefix:
                raise ValueError("Can't parse factor %r in %r" % (factor, text))
            index = int(match.group(2)) - 1
            exponents[index] = exponents.get(index, 0) + int(match.group(3) or 1)
        terms.append((exponents, -coef if sign == "-" else coef))
    return terms


def parse_ring_elem(text, rank):
    # type: (Text, int) -> RingElem
    terms = {}  # type: Dict[QMonomial, Rational]
    for exponents, coef in parse_terms(text):
        monomial = QMonomial(exponents.get(i, 0) for i in range(rank))
        if any(i >= rank for i in exponents):
            raise ValueError("Variable index out of range in %r" % text)
        terms[monomial] = terms.get(monomial, 0) + coef
    return RingElem(rank, terms)


def b_type_display(monomial):
    # type: (QMonomial) -> QMonomial
    """Laurent exponents in q_1..q_n for a type B monomial.

    q^{α_i∨} is shown as q_i q_{i+1}^{-1} for i < n and q^{α_n∨} as q_n^2.
    """
    n = len(monomial)
    exponents = [0] * n
    for i, m in enumerate(monomial):
        if i < n - 1:
            exponents[i] += m
            exponents[i + 1] -= m
        else:
            exponents[i] += 2 * m
    return QMonomial(exponents)


def display(elem, type_label):
    # type: (RingElem, Text) -> Text
    """Render a coefficient for the CLI, applying the type B display map"""
    if type_label != "B":
        return elem.to_string()
    terms = {}  # type: Dict[QMonomial, Rational]
    for monomial, coef in iteritems(elem.terms):
        shown = b_type_display(monomial)
        terms[shown] = terms.get(shown, 0) + coef
    return RingElem(elem.rank, terms).to_string()
