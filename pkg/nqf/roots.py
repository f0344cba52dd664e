"""Classical root systems at small rank and their Weyl groups.

Roots live in ambient coordinates: x_1..x_{n+1} for type A and ε_1..ε_n for
types B, C and D, with the standard dot product as invariant form. Positive
roots are indexed 0..N-1 with the simple roots first, in order.

A Weyl group element is stored as its action on the positive roots: entry i
of the table is +(j+1) if w(β_i) = β_j and -(j+1) if w(β_i) = -β_j.
"""
from __future__ import absolute_import
from collections import deque, namedtuple
from fractions import Fraction

from six.moves import range

from . import log
from .errors import ConfigError, InvariantViolation
from .scalars import QMonomial, q_of_coroot, rational

MYPY = False
if MYPY:
    from typing import Dict, Iterable, List, Optional, Sequence, Text, Tuple
    Vector = Tuple[Fraction, ...]

logger = log.get_logger(__name__)

TYPES = ("A", "B", "C", "D")
MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}

Root = namedtuple("Root", ["index", "vector", "coords", "coroot", "norm", "height",
                           "coheight", "long"])


def dot(x, y):
    # type: (Sequence[Fraction], Sequence[Fraction]) -> Fraction
    return rational(sum(a * b for a, b in zip(x, y)))


def expected_positive_count(type_label, rank):
    # type: (Text, int) -> int
    if type_label == "A":
        return rank * (rank + 1) // 2
    if type_label in ("B", "C"):
        return rank * rank
    return rank * (rank - 1)


def expected_weyl_order(type_label, rank):
    # type: (Text, int) -> int
    order = 1
    for i in range(2, rank + 2 if type_label == "A" else rank + 1):
        order *= i
    if type_label in ("B", "C"):
        order *= 2 ** rank
    elif type_label == "D":
        order *= 2 ** (rank - 1)
    return order


def simple_roots(type_label, rank):
    # type: (Text, int) -> List[Vector]
    dim = rank + 1 if type_label == "A" else rank

    def unit(*entries):
        vector = [0] * dim
        for position, value in entries:
            vector[position] = value
        return tuple(rational(v) for v in vector)

    roots = [unit((i, 1), (i + 1, -1)) for i in range(rank if type_label == "A" else rank - 1)]
    if type_label == "B":
        roots.append(unit((rank - 1, 1)))
    elif type_label == "C":
        roots.append(unit((rank - 1, 2)))
    elif type_label == "D":
        roots.append(unit((rank - 2, 1), (rank - 1, 1)))
    return roots


class RootSystem(object):
    def __init__(self, type_label, rank, max_rank=4):
        # type: (Text, int, int) -> None
        if type_label not in TYPES:
            raise ConfigError("Unsupported root system type %r" % (type_label,))
        if rank < MIN_RANK[type_label] or rank > max_rank:
            raise ConfigError("Unsupported rank %d for type %s (allowed %d..%d)" %
                              (rank, type_label, MIN_RANK[type_label], max_rank))
        self.type = type_label
        self.rank = rank
        self.name = "%s%d" % (type_label, rank)
        self.ambient_dim = rank + 1 if type_label == "A" else rank
        self.simple = simple_roots(type_label, rank)
        self.cartan = [[self._pair(a, b) for b in self.simple] for a in self.simple]
        self.roots = self._close()
        self.index = {root.vector: root.index for root in self.roots}
        expected = expected_positive_count(type_label, rank)
        if len(self.roots) != expected:
            raise InvariantViolation("%s has %d positive roots, expected %d" %
                                     (self.name, len(self.roots), expected))
        max_norm = max(root.norm for root in self.roots)
        self.simply_laced = all(root.norm == max_norm for root in self.roots)
        self._reflections = {}  # type: Dict[int, WeylElem]
        self._weyl = None  # type: Optional[List[WeylElem]]
        self._reflect_table = [[self._reflect_lookup(i, j) for j in range(len(self.roots))]
                               for i in range(len(self.roots))]
        self.identity = WeylElem(self, tuple(i + 1 for i in range(len(self.roots))), ())
        logger.debug("Built %s with %d positive roots" % (self.name, len(self.roots)))

    def __repr__(self):
        return "RootSystem(%s)" % self.name

    @staticmethod
    def _pair(x, alpha):
        # type: (Sequence[Fraction], Sequence[Fraction]) -> Fraction
        return rational(Fraction(2) * dot(x, alpha) / dot(alpha, alpha))

    def _close(self):
        # type: () -> List[Root]
        """Close the simple roots under simple reflections, keeping positive roots"""
        n = self.rank
        seen = {}  # type: Dict[Vector, Tuple[int, ...]]
        queue = deque()
        for i, alpha in enumerate(self.simple):
            coords = tuple(1 if j == i else 0 for j in range(n))
            seen[alpha] = coords
            queue.append(alpha)
        while queue:
            vector = queue.popleft()
            coords = seen[vector]
            for j, alpha in enumerate(self.simple):
                pairing = self._pair(vector, alpha)
                if not pairing:
                    continue
                image = tuple(rational(v - pairing * a) for v, a in zip(vector, alpha))
                if image in seen:
                    continue
                image_coords = tuple(c - pairing if k == j else c for k, c in enumerate(coords))
                seen[image] = image_coords
                queue.append(image)

        positive = [(coords, vector) for vector, coords in seen.items()
                    if all(c >= 0 for c in coords)]
        positive.sort(key=lambda item: (sum(item[0]), tuple(-c for c in item[0])))
        simple_norms = [dot(alpha, alpha) for alpha in self.simple]
        max_norm = max(dot(v, v) for _, v in positive)
        roots = []
        for index, (coords, vector) in enumerate(positive):
            norm = dot(vector, vector)
            coroot = []
            for c, simple_norm in zip(coords, simple_norms):
                value = rational(Fraction(c * simple_norm) / norm)
                if not isinstance(value, int):
                    raise InvariantViolation("Coroot of %r is not integral" % (vector,))
                coroot.append(value)
            roots.append(Root(index, vector, coords, tuple(coroot), norm, sum(coords),
                              sum(coroot), norm == max_norm))
        return roots

    def pairing(self, x, root_index):
        # type: (Sequence[Fraction], int) -> Fraction
        """⟨x, α∨⟩ for an ambient vector x"""
        return self._pair(x, self.roots[root_index].vector)

    def form(self, x, y):
        # type: (Sequence[Fraction], Sequence[Fraction]) -> Fraction
        return dot(x, y)

    def reflect_vector(self, root_index, x):
        # type: (int, Sequence[Fraction]) -> Vector
        alpha = self.roots[root_index].vector
        pairing = self._pair(x, alpha)
        return tuple(rational(v - pairing * a) for v, a in zip(x, alpha))

    def lookup(self, vector):
        # type: (Sequence[Fraction]) -> Tuple[int, int]
        """(sign, index) of a root given in ambient coordinates"""
        vector = tuple(rational(v) for v in vector)
        if vector in self.index:
            return 1, self.index[vector]
        negated = tuple(-v for v in vector)
        if negated in self.index:
            return -1, self.index[negated]
        raise KeyError("%r is not a root of %s" % (vector, self.name))

    def _reflect_lookup(self, i, j):
        # type: (int, int) -> Tuple[int, int]
        return self.lookup(self.reflect_vector(i, self.roots[j].vector))

    def reflect(self, alpha, beta):
        # type: (int, int) -> Tuple[int, int]
        """s_α(β) as (sign, positive root index)"""
        return self._reflect_table[alpha][beta]

    def q_monomial(self, root_index):
        # type: (int) -> QMonomial
        return q_of_coroot(self.roots[root_index].coroot)

    def orbit_label(self, root_index):
        # type: (int) -> Text
        return "long" if self.roots[root_index].long else "short"

    def fundamental_weights(self):
        # type: () -> List[Vector]
        """ω_i in ambient coordinates, with ⟨ω_i, α_j∨⟩ = δ_ij"""
        n = self.rank
        dim = self.ambient_dim
        if self.type == "A":
            return [tuple(rational(1 if k <= i else 0) for k in range(dim)) for i in range(n)]
        from .linalg import solve_dense
        weights = []
        for i in range(n):
            rows = [[self._pair(unit_vector(dim, k), alpha) for k in range(dim)]
                    for alpha in self.simple]
            rhs = [1 if j == i else 0 for j in range(n)]
            solution = solve_dense(rows, rhs)
            if solution is None:
                raise InvariantViolation("No fundamental weight %d for %s" % (i + 1, self.name))
            weights.append(tuple(rational(v) for v in solution))
        return weights

    def reflection(self, root_index):
        # type: (int) -> WeylElem
        if root_index not in self._reflections:
            table = []
            for j in range(len(self.roots)):
                sign, k = self.reflect(root_index, j)
                table.append(sign * (k + 1))
            self._reflections[root_index] = WeylElem(self, tuple(table))
        return self._reflections[root_index]

    def simple_reflection(self, i):
        # type: (int) -> WeylElem
        return self.reflection(i)

    def from_word(self, word):
        # type: (Iterable[int]) -> WeylElem
        element = self.identity
        for i in word:
            if not 0 <= i < self.rank:
                raise ValueError("Simple reflection index %d out of range" % (i + 1))
            element = element * self.simple_reflection(i)
        return element

    def longest_element(self):
        # type: () -> WeylElem
        element = self.identity
        extended = True
        while extended:
            extended = False
            for i in range(self.rank):
                if element.table[i] > 0:
                    element = element * self.simple_reflection(i)
                    extended = True
                    break
        return element

    def quantum_roots(self):
        # type: () -> List[int]
        """Indices of the roots with l(s_α) = 2 ht(α∨) - 1"""
        return [root.index for root in self.roots
                if self.reflection(root.index).length() == 2 * root.coheight - 1]

    def enumerate_weyl(self, bound=1152):
        # type: (int) -> List[WeylElem]
        if self._weyl is not None:
            if len(self._weyl) > bound:
                raise InvariantViolation("Weyl group of %s exceeds bound %d" % (self.name, bound))
            return list(self._weyl)
        seen = {self.identity.table: self.identity}
        queue = deque([self.identity])
        while queue:
            element = queue.popleft()
            for i in range(self.rank):
                product = element * self.simple_reflection(i)
                if product.table not in seen:
                    seen[product.table] = product
                    if len(seen) > bound:
                        raise InvariantViolation("Weyl group of %s exceeds bound %d" %
                                                 (self.name, bound))
                    queue.append(product)
        elements = list(seen.values())
        elements.sort(key=lambda w: (w.length(), w.reduced_word()))
        self._weyl = elements
        return list(elements)

    def length_histogram(self, bound=1152):
        # type: (int) -> List[int]
        histogram = []  # type: List[int]
        for element in self.enumerate_weyl(bound):
            length = element.length()
            while len(histogram) <= length:
                histogram.append(0)
            histogram[length] += 1
        return histogram

    def root_label(self, root_index):
        # type: (int) -> Text
        """Simple-root coordinates, e.g. "a1+a2" """
        parts = []
        for i, c in enumerate(self.roots[root_index].coords):
            if c == 1:
                parts.append("a%d" % (i + 1))
            elif c:
                parts.append("%da%d" % (c, i + 1))
        return "+".join(parts)

    def ambient_label(self, root_index):
        # type: (int) -> Text
        """Ambient coordinates, e.g. "e1-e2" or "x1-x3" """
        prefix = "x" if self.type == "A" else "e"
        out = ""
        for k, v in enumerate(self.roots[root_index].vector):
            if not v:
                continue
            sign = "-" if v < 0 else ("+" if out else "")
            magnitude = "" if abs(v) == 1 else str(abs(v))
            out += "%s%s%s%d" % (sign, magnitude, prefix, k + 1)
        return out


def unit_vector(dim, k):
    # type: (int, int) -> Vector
    return tuple(rational(1 if i == k else 0) for i in range(dim))


class WeylElem(object):
    __slots__ = ("rs", "table", "_word", "_matrix")

    def __init__(self, rs, table, word=None):
        # type: (RootSystem, Tuple[int, ...], Optional[Tuple[int, ...]]) -> None
        self.rs = rs
        self.table = table
        self._word = word
        self._matrix = None

    def __eq__(self, other):
        return isinstance(other, WeylElem) and self.table == other.table

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return "WeylElem(%s)" % self.word_label()

    def __mul__(self, other):
        # type: (WeylElem) -> WeylElem
        """Composition: (u*v)(β) = u(v(β))"""
        table = []
        for entry in other.table:
            inner = self.table[abs(entry) - 1]
            table.append(inner if entry > 0 else -inner)
        return WeylElem(self.rs, tuple(table))

    def act_root(self, root_index):
        # type: (int) -> Tuple[int, int]
        entry = self.table[root_index]
        return (1 if entry > 0 else -1), abs(entry) - 1

    def inverse(self):
        # type: () -> WeylElem
        table = [0] * len(self.table)
        for i, entry in enumerate(self.table):
            j = abs(entry) - 1
            table[j] = (i + 1) if entry > 0 else -(i + 1)
        return WeylElem(self.rs, tuple(table))

    def length(self):
        # type: () -> int
        return sum(1 for entry in self.table if entry < 0)

    def is_identity(self):
        # type: () -> bool
        return all(entry == i + 1 for i, entry in enumerate(self.table))

    def right_descents(self):
        # type: () -> List[int]
        return [i for i in range(self.rs.rank) if self.table[i] < 0]

    def reduced_word(self):
        # type: () -> Tuple[int, ...]
        """Reduced word (0-based simple indices) by stripping the smallest right descent"""
        if self._word is None:
            letters = []
            element = self
            while True:
                descents = element.right_descents()
                if not descents:
                    break
                i = descents[0]
                letters.append(i)
                element = element * self.rs.simple_reflection(i)
            self._word = tuple(reversed(letters))
        return self._word

    def reduced_words(self):
        # type: () -> List[Tuple[int, ...]]
        """Every reduced word, sorted"""
        words = set()

        def walk(element, suffix):
            descents = element.right_descents()
            if not descents:
                words.add(tuple(reversed(suffix)))
                return
            for i in descents:
                walk(element * self.rs.simple_reflection(i), suffix + [i])

        walk(self, [])
        return sorted(words)

    def word_label(self):
        # type: () -> Text
        word = self.reduced_word()
        if not word:
            return "id"
        return "s" + "s".join(str(i + 1) for i in word)

    def act_vector(self, vector):
        # type: (Sequence[Fraction]) -> Vector
        result = tuple(rational(v) for v in vector)
        for i in reversed(self.reduced_word()):
            result = self.rs.reflect_vector(i, result)
        return result

    def matrix(self):
        # type: () -> List[Vector]
        """Images of the ambient unit vectors"""
        if self._matrix is None:
            dim = self.rs.ambient_dim
            self._matrix = [self.act_vector(unit_vector(dim, k)) for k in range(dim)]
        return self._matrix


def build_root_system(type_label, rank, max_rank=4):
    # type: (Text, int, int) -> RootSystem
    return RootSystem(type_label, rank, max_rank=max_rank)


def weyl_length(w):
    # type: (WeylElem) -> int
    return w.length()


def reduced_word(w):
    # type: (WeylElem) -> Tuple[int, ...]
    return w.reduced_word()


def quantum_roots(rs):
    # type: (RootSystem) -> List[int]
    return rs.quantum_roots()


def enumerate_weyl(rs, bound=1152):
    # type: (RootSystem, int) -> List[WeylElem]
    return rs.enumerate_weyl(bound)
