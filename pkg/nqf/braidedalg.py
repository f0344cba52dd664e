"""The braided tensor algebra on the generators [α], α a positive root.

Words are tuples of positive-root indices. The Weyl group acts letterwise,
w.[α] = ±[|w(α)|], and the W-degree of [α] is the reflection s_α, so the
braiding is Ψ([α] ⊗ y) = s_α(y) ⊗ [α].

The duality pairing between two copies of the tensor algebra is computed by
peeling letters:

    ⟨[α]ξ, x⟩ = ⟨ξ, x←D_α⟩

where x←D_α contracts the (k-1, 1) component of the braided coproduct of x
against [α]. On a word, x←D_α is the sum over the positions carrying α of
prefix · s_α(suffix).
"""
from __future__ import absolute_import
import itertools
import threading

from six import iteritems
from six.moves import range

from . import log
from .linalg import add_scaled
from .scalars import RingElem, rational
from .threadexecutor import ThreadExecutor

MYPY = False
if MYPY:
    from typing import Any, Dict, List, Optional, Sequence, Tuple
    from .roots import RootSystem, WeylElem
    NcWord = Tuple[int, ...]
    WordVector = Dict[NcWord, Any]

logger = log.get_logger(__name__)


class NcPoly(object):
    """Noncommutative polynomial: sparse map from words to RingElem."""
    __slots__ = ("rs", "terms")

    def __init__(self, rs, terms=None):
        # type: (RootSystem, Optional[Dict[NcWord, Any]]) -> None
        self.rs = rs
        clean = {}
        n = len(rs.roots)
        for word, coef in iteritems(terms or {}):
            word = tuple(word)
            if any(not 0 <= letter < n for letter in word):
                raise ValueError("Word %r has letters outside %s" % (word, rs.name))
            if not isinstance(coef, RingElem):
                coef = RingElem.const(rs.rank, coef)
            if coef:
                clean[word] = clean[word] + coef if word in clean else coef
                if not clean[word]:
                    del clean[word]
        self.terms = clean

    @classmethod
    def word(cls, rs, word, coef=1):
        # type: (RootSystem, Sequence[int], Any) -> NcPoly
        return cls(rs, {tuple(word): coef})

    @classmethod
    def gen(cls, rs, root_index):
        # type: (RootSystem, int) -> NcPoly
        return cls(rs, {(root_index,): 1})

    @classmethod
    def one(cls, rs):
        # type: (RootSystem) -> NcPoly
        return cls(rs, {(): 1})

    @classmethod
    def from_vector(cls, rs, vec):
        # type: (RootSystem, WordVector) -> NcPoly
        return cls(rs, vec)

    def is_zero(self):
        # type: () -> bool
        return not self.terms

    def degrees(self):
        # type: () -> List[int]
        return sorted(set(len(word) for word in self.terms))

    def is_homogeneous(self):
        # type: () -> bool
        return len(self.degrees()) <= 1

    def __add__(self, other):
        # type: (NcPoly) -> NcPoly
        terms = dict(self.terms)
        for word, coef in iteritems(other.terms):
            terms[word] = terms[word] + coef if word in terms else coef
        return NcPoly(self.rs, terms)

    def __neg__(self):
        return NcPoly(self.rs, {w: -c for w, c in iteritems(self.terms)})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, NcPoly):
            return NcPoly(self.rs, {w: c * other for w, c in iteritems(self.terms)})
        terms = {}  # type: Dict[NcWord, RingElem]
        for w1, c1 in iteritems(self.terms):
            for w2, c2 in iteritems(other.terms):
                word = w1 + w2
                value = c1 * c2
                terms[word] = terms[word] + value if word in terms else value
        return NcPoly(self.rs, terms)

    def __rmul__(self, other):
        return NcPoly(self.rs, {w: c * other for w, c in iteritems(self.terms)})

    def __eq__(self, other):
        return isinstance(other, NcPoly) and self.terms == other.terms

    def __ne__(self, other):
        return not self == other

    def rational_terms(self):
        # type: () -> WordVector
        """Terms as rationals; the polynomial must be q-free"""
        out = {}
        for word, coef in iteritems(self.terms):
            if not coef.is_constant():
                raise ValueError("Polynomial has q-dependent coefficients")
            out[word] = coef.constant_term()
        return out

    def to_string(self):
        # type: () -> str
        if not self.terms:
            return "0"
        parts = []
        for word in sorted(self.terms, key=lambda w: (len(w), w)):
            label = "".join("[%s]" % self.rs.root_label(i) for i in word) or "1"
            parts.append("(%s)*%s" % (self.terms[word].to_string(), label))
        return " + ".join(parts)

    def __repr__(self):
        return "NcPoly(%s)" % self.to_string()


def act_word(w, word):
    # type: (WeylElem, NcWord) -> Tuple[int, NcWord]
    sign = 1
    image = []
    for letter in word:
        s, target = w.act_root(letter)
        sign *= s
        image.append(target)
    return sign, tuple(image)


def reflect_word(rs, alpha, word):
    # type: (RootSystem, int, NcWord) -> Tuple[int, NcWord]
    sign = 1
    image = []
    for letter in word:
        s, target = rs.reflect(alpha, letter)
        sign *= s
        image.append(target)
    return sign, tuple(image)


def w_act(w, p):
    # type: (WeylElem, NcPoly) -> NcPoly
    terms = {}
    for word, coef in iteritems(p.terms):
        sign, image = act_word(w, word)
        terms[image] = coef if sign > 0 else -coef
    return NcPoly(p.rs, terms)


def braid(rs, x, y):
    # type: (RootSystem, NcWord, NcWord) -> Tuple[NcPoly, NcPoly]
    """Ψ([α] ⊗ [β]) = s_α[β] ⊗ [α]"""
    if len(x) != 1 or len(y) != 1:
        raise ValueError("braid takes two generators")
    sign, target = rs.reflect(x[0], y[0])
    return NcPoly.word(rs, (target,), sign), NcPoly.word(rs, x)


def braid_tensor(rs, word, position):
    # type: (RootSystem, NcWord, int) -> Tuple[int, NcWord]
    """Ψ acting on letters position, position+1 of a pure tensor of generators"""
    alpha, beta = word[position], word[position + 1]
    sign, target = rs.reflect(alpha, beta)
    return sign, word[:position] + (target, alpha) + word[position + 2:]


def split_word(rs, word, left_positions):
    # type: (RootSystem, NcWord, Sequence[int]) -> Tuple[int, NcWord, NcWord]
    """One term of the braided coproduct: the letters at left_positions go
    left, each acted on by the reflections of the right-going letters before it"""
    left_set = set(left_positions)
    sign = 1
    left = []
    right = []
    for position, letter in enumerate(word):
        if position in left_set:
            for r in reversed(right):
                s, letter = rs.reflect(r, letter)
                sign *= s
            left.append(letter)
        else:
            right.append(letter)
    return sign, tuple(left), tuple(right)


def coproduct_component(x, split):
    # type: (NcPoly, Tuple[int, int]) -> List[Tuple[NcPoly, NcPoly]]
    i, j = split
    if not x.is_homogeneous():
        raise ValueError("coproduct_component needs a homogeneous input")
    degrees = x.degrees()
    if degrees and degrees[0] != i + j:
        raise ValueError("Input of degree %d can't split as (%d, %d)" % (degrees[0], i, j))
    rs = x.rs
    collected = {}  # type: Dict[Tuple[NcWord, NcWord], RingElem]
    for word, coef in iteritems(x.terms):
        for left_positions in itertools.combinations(range(len(word)), i):
            sign, left, right = split_word(rs, word, left_positions)
            key = (left, right)
            value = coef if sign > 0 else -coef
            collected[key] = collected[key] + value if key in collected else value
    return [(NcPoly.word(rs, left, coef), NcPoly.one(rs))
            if not right else (NcPoly.word(rs, left, coef), NcPoly.word(rs, right))
            for (left, right), coef in sorted(iteritems(collected)) if coef]


def right_derivation_vector(rs, alpha, vec):
    # type: (RootSystem, int, WordVector) -> WordVector
    """x←D_α on a rational combination of words"""
    out = {}  # type: WordVector
    for word, coef in iteritems(vec):
        for position, letter in enumerate(word):
            if letter != alpha:
                continue
            sign, suffix = reflect_word(rs, alpha, word[position + 1:])
            add_scaled(out, {word[:position] + suffix: 1}, sign * coef)
    return out


def left_derivation_vector(rs, alpha, vec):
    # type: (RootSystem, int, WordVector) -> WordVector
    """D̄_α on a rational combination of words: s_α(prefix) · suffix"""
    out = {}  # type: WordVector
    for word, coef in iteritems(vec):
        for position, letter in enumerate(word):
            if letter != alpha:
                continue
            sign, prefix = reflect_word(rs, alpha, word[:position])
            add_scaled(out, {prefix + word[position + 1:]: 1}, sign * coef)
    return out


class PairingCache(object):
    """Append-only table of word pairings"""

    def __init__(self):
        self.values = {}  # type: Dict[Tuple[NcWord, NcWord], Any]
        self.lock = threading.Lock()

    def get(self, key):
        return self.values.get(key)

    def set(self, key, value):
        with self.lock:
            existing = self.values.setdefault(key, value)
        assert existing == value
        return existing


_caches = {}  # type: Dict[str, PairingCache]
_caches_lock = threading.Lock()


def pairing_cache(rs):
    # type: (RootSystem) -> PairingCache
    with _caches_lock:
        if rs.name not in _caches:
            _caches[rs.name] = PairingCache()
        return _caches[rs.name]


def word_pairing(rs, xi, x):
    # type: (RootSystem, NcWord, NcWord) -> Any
    """⟨ξ, x⟩ for words by peeling the letters of ξ from the left"""
    if len(xi) != len(x):
        return 0
    cache = pairing_cache(rs)
    key = (xi, x)
    value = cache.get(key)
    if value is None:
        vec = {x: 1}  # type: WordVector
        for letter in xi:
            vec = right_derivation_vector(rs, letter, vec)
            if not vec:
                break
        value = cache.set(key, rational(vec.get((), 0)))
    return value


def word_pairing_dual(rs, xi, x):
    # type: (RootSystem, NcWord, NcWord) -> Any
    """⟨ξ, x⟩ by peeling the last letter of x:

    ⟨ξ, x'[β]⟩ = Σ_i ⟨s_{ξ_1}⋯s_{ξ_{i-1}}[ξ_i], [β]⟩ ⟨ξ without ξ_i, x'⟩
    """
    if len(xi) != len(x):
        return 0
    if not x:
        return 1
    memo = {}  # type: Dict[Tuple[NcWord, NcWord], Any]

    def recurse(left, right):
        if not right:
            return 1
        key = (left, right)
        if key in memo:
            return memo[key]
        beta = right[-1]
        total = 0
        for i, letter in enumerate(left):
            sign = 1
            for previous in reversed(left[:i]):
                s, letter = rs.reflect(previous, letter)
                sign *= s
            if letter != beta:
                continue
            total += sign * recurse(left[:i] + left[i + 1:], right[:-1])
        memo[key] = total
        return total

    return rational(recurse(tuple(xi), tuple(x)))


def pairing(xi, x):
    # type: (NcPoly, NcPoly) -> Any
    """⟨ξ, x⟩ extended bilinearly; the coefficients must be q-free"""
    rs = x.rs
    total = 0
    for w1, c1 in iteritems(xi.rational_terms()):
        for w2, c2 in iteritems(x.rational_terms()):
            if len(w1) == len(w2):
                total += c1 * c2 * word_pairing(rs, w1, w2)
    return rational(total)


def gram_matrix(rs, k, rows, cols, thread_count=1):
    # type: (RootSystem, int, Sequence[NcWord], Sequence[NcWord], int) -> List[List[Any]]
    """Pairings of row words against column words of degree k.

    Each column is handled with one pass over the prefixes of the row words,
    so shared prefixes are derived once.
    """
    for word in itertools.chain(rows, cols):
        if len(word) != k:
            raise ValueError("Word %r does not have degree %d" % (word, k))

    def column(j):
        # type: (int) -> List[Any]
        prefix_vectors = {(): {cols[j]: 1}}  # type: Dict[NcWord, WordVector]
        entries = []
        for xi in rows:
            for depth in range(1, len(xi) + 1):
                prefix = xi[:depth]
                if prefix not in prefix_vectors:
                    prefix_vectors[prefix] = right_derivation_vector(
                        rs, xi[depth - 1], prefix_vectors[xi[:depth - 1]])
            entries.append(rational(prefix_vectors[tuple(xi)].get((), 0)))
        return entries

    columns = ThreadExecutor(thread_count, column).map(range(len(cols)))
    return [[columns[j][i] for j in range(len(cols))] for i in range(len(rows))]


def all_words(rs, k):
    # type: (RootSystem, int) -> List[NcWord]
    return list(itertools.product(range(len(rs.roots)), repeat=k))
