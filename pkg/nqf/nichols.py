"""The Nichols algebra B(V) = T(V)/I(V) with explicit per-degree bases.

A word lies in I(V) exactly when all of its right derivations x←D_α do, so
degree k is built from degree k-1 alone: every spanning word b·[β] (b a
basis word of degree k-1) is mapped to the vector of its right derivations,
expressed in degree k-1 coordinates, and a greedy exact elimination in word
order picks the basis and expresses every other spanning word through it.

Per sealed degree k the basis keeps

* words[k]: basis words, each a basis word of degree k-1 plus one letter
* expansion[k]: (basis index at k-1, letter) -> coordinates at degree k
* derivations[k]: per basis word, α -> coordinates of x←D_α at degree k-1

Everything else (W-action, left twisted derivations D̄_α, left
multiplication by generators) is derived from these tables on demand.
"""
from __future__ import absolute_import
import threading

from six import iteritems
from six.moves import range

from . import log
from .braidedalg import NcPoly, left_derivation_vector
from .errors import InvariantViolation, TruncationError
from .linalg import EchelonBasis, add_scaled, parse_fraction, fraction_string, rank_dense
from .scalars import RingElem, rational

MYPY = False
if MYPY:
    from typing import Any, Callable, Dict, List, Optional, Sequence, Text, Tuple
    from .roots import RootSystem, WeylElem
    NcWord = Tuple[int, ...]
    Coords = Dict[int, Any]
    Table = List[List[Coords]]

logger = log.get_logger(__name__)

CACHE_VERSION = 1


class BElem(object):
    """Element of B(V): coordinates (degree, basis index) -> RingElem."""
    __slots__ = ("nb", "coords")

    def __init__(self, nb, coords=None):
        # type: (NicholsBasis, Optional[Dict[Tuple[int, int], Any]]) -> None
        self.nb = nb
        clean = {}
        rank = nb.rs.rank
        for key, coef in iteritems(coords or {}):
            if not isinstance(coef, RingElem):
                coef = RingElem.const(rank, coef)
            if coef:
                clean[key] = coef
        self.coords = clean

    @classmethod
    def one(cls, nb):
        # type: (NicholsBasis) -> BElem
        return cls(nb, {(0, 0): 1})

    @classmethod
    def basis_element(cls, nb, degree, index):
        # type: (NicholsBasis, int, int) -> BElem
        return cls(nb, {(degree, index): 1})

    @classmethod
    def from_coords(cls, nb, degree, vec):
        # type: (NicholsBasis, int, Coords) -> BElem
        return cls(nb, {(degree, i): v for i, v in iteritems(vec)})

    def is_zero(self):
        # type: () -> bool
        return not self.coords

    def degrees(self):
        # type: () -> List[int]
        return sorted(set(k for k, _ in self.coords))

    def component(self, degree):
        # type: (int) -> BElem
        return BElem(self.nb, {key: c for key, c in iteritems(self.coords) if key[0] == degree})

    def __add__(self, other):
        # type: (BElem) -> BElem
        coords = dict(self.coords)
        for key, coef in iteritems(other.coords):
            coords[key] = coords[key] + coef if key in coords else coef
        return BElem(self.nb, coords)

    def __neg__(self):
        return BElem(self.nb, {key: -c for key, c in iteritems(self.coords)})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, value):
        # type: (Any) -> BElem
        return BElem(self.nb, {key: c * value for key, c in iteritems(self.coords)})

    __rmul__ = scale

    def __mul__(self, other):
        if isinstance(other, BElem):
            return self.nb.multiply(self, other)
        return self.scale(other)

    def __eq__(self, other):
        return isinstance(other, BElem) and self.coords == other.coords

    def __ne__(self, other):
        return not self == other

    def q_zero(self):
        # type: () -> BElem
        return BElem(self.nb, {key: c.q_zero() for key, c in iteritems(self.coords)})

    def to_string(self):
        # type: () -> Text
        if not self.coords:
            return "0"
        parts = []
        for degree, index in sorted(self.coords):
            word = self.nb.words[degree][index]
            label = "".join("[%s]" % self.nb.rs.root_label(i) for i in word) or "1"
            parts.append("(%s)*%s" % (self.coords[(degree, index)].to_string(), label))
        return " + ".join(parts)

    def serialize(self):
        # type: () -> List[List[Any]]
        return [[degree, list(self.nb.words[degree][index]),
                 self.coords[(degree, index)].to_string()]
                for degree, index in sorted(self.coords)]

    def __repr__(self):
        return "BElem(%s)" % self.to_string()


class NicholsBasis(object):
    def __init__(self, rs, max_degree=None):
        # type: (RootSystem, Optional[int]) -> None
        self.rs = rs
        self.n = len(rs.roots)
        self.max_degree = max_degree
        self.words = [[()]]  # type: List[List[NcWord]]
        self.index = [{(): 0}]  # type: List[Dict[NcWord, int]]
        self.expansion = [{}]  # type: List[Dict[Tuple[int, int], Coords]]
        self.derivations = [[{}]]  # type: List[List[Dict[int, Coords]]]
        self.complete = False
        self._lock = threading.RLock()
        self._tables = {}  # type: Dict[Tuple[Text, int], Table]

    def __repr__(self):
        return "NicholsBasis(%s, dims=%r%s)" % (self.rs.name, self.dims(),
                                                "" if self.complete else ", truncated")

    @property
    def built(self):
        # type: () -> int
        """Highest sealed degree"""
        return len(self.words) - 1

    def dims(self):
        # type: () -> List[int]
        return [len(words) for words in self.words]

    def dim(self, degree):
        # type: (int) -> int
        if degree < 0:
            return 0
        if degree <= self.built:
            return len(self.words[degree])
        if self.complete:
            return 0
        raise TruncationError("Degree %d of %s is above the built degree %d" %
                              (degree, self.rs.name, self.built))

    def exact_through(self):
        # type: () -> Optional[int]
        """Highest degree at which the algebra is known; None when complete"""
        return None if self.complete else self.built

    def build(self, max_degree=None):
        # type: (Optional[int]) -> NicholsBasis
        bound = max_degree if max_degree is not None else self.max_degree
        while not self.complete and (bound is None or self.built < bound):
            self.extend_basis(self.built + 1)
        return self

    def extend_basis(self, k):
        # type: (int) -> NicholsBasis
        with self._lock:
            if k <= self.built or self.complete:
                return self
            if k != self.built + 1:
                raise ValueError("Degree %d needs degree %d built first" % (k, k - 1))
            self._seal(*self._construct(k))
        return self

    def _construct(self, k):
        # type: (int) -> Tuple[List[NcWord], List[Dict[int, Coords]], Dict[Tuple[int, int], Coords]]
        echelon = EchelonBasis()
        words = []  # type: List[NcWord]
        derivations = []  # type: List[Dict[int, Coords]]
        expansion = {}  # type: Dict[Tuple[int, int], Coords]
        spanning = 0
        for b, parent in enumerate(self.words[k - 1]):
            for beta in range(self.n):
                spanning += 1
                vec = self._derivation_vector(k, b, beta)
                name = len(words)
                combo = echelon.insert(name, vec)
                if combo is None:
                    words.append(parent + (beta,))
                    split = {}  # type: Dict[int, Coords]
                    for (alpha, idx), value in iteritems(vec):
                        split.setdefault(alpha, {})[idx] = value
                    derivations.append(split)
                    expansion[(b, beta)] = {name: 1}
                else:
                    expansion[(b, beta)] = combo
        logger.info("%s degree %d: %d spanning words, dimension %d" %
                    (self.rs.name, k, spanning, len(words)))
        return words, derivations, expansion

    def _derivation_vector(self, k, b, beta):
        # type: (int, int, int) -> Dict[Tuple[int, int], Any]
        """Right derivations of b·[β]: δ_{αβ} b + (b←D_α)·s_α[β]"""
        vec = {(beta, b): 1}  # type: Dict[Tuple[int, int], Any]
        expansion = self.expansion[k - 1]
        for alpha, dvec in iteritems(self.derivations[k - 1][b]):
            sign, gamma = self.rs.reflect(alpha, beta)
            for c, coef in iteritems(dvec):
                for target, value in iteritems(expansion[(c, gamma)]):
                    key = (alpha, target)
                    new = vec.get(key, 0) + sign * coef * value
                    if new:
                        vec[key] = rational(new)
                    else:
                        vec.pop(key, None)
        return vec

    def _seal(self, words, derivations, expansion):
        self.words.append(words)
        self.index.append({word: i for i, word in enumerate(words)})
        self.derivations.append(derivations)
        self.expansion.append(expansion)
        if not words:
            self.complete = True
            logger.info("%s reached its top degree %d, total dimension %d" %
                        (self.rs.name, self.built - 1, sum(self.dims())))

    def hilbert_series(self):
        # type: () -> List[int]
        dims = self.dims()
        while len(dims) > 1 and dims[-1] == 0:
            dims.pop()
        return dims

    def top_degree(self):
        # type: () -> Optional[int]
        return len(self.hilbert_series()) - 1 if self.complete else None

    def _parent(self, k, idx):
        # type: (int, int) -> Tuple[int, int]
        word = self.words[k][idx]
        return self.index[k - 1][word[:-1]], word[-1]

    def _check_degree(self, degree):
        if degree > self.built and not self.complete:
            raise TruncationError("Degree %d of %s is above the built degree %d" %
                                  (degree, self.rs.name, self.built))

    def right_multiply(self, degree, vec, letter):
        # type: (int, Coords, int) -> Coords
        """Coordinates of x·[letter] for x of the given degree"""
        if not vec:
            return {}
        self._check_degree(degree + 1)
        if degree + 1 > self.built:
            return {}
        out = {}  # type: Coords
        expansion = self.expansion[degree + 1]
        for c, coef in iteritems(vec):
            add_scaled(out, expansion[(c, letter)], coef)
        return out

    def word_coords(self, word):
        # type: (Sequence[int]) -> Coords
        vec = {0: 1}  # type: Coords
        for degree, letter in enumerate(word):
            vec = self.right_multiply(degree, vec, letter)
            if not vec:
                # still validate the requested degree
                self._check_degree(len(word))
                return {}
        return vec

    def normal_form(self, p):
        # type: (NcPoly) -> BElem
        coords = {}  # type: Dict[Tuple[int, int], RingElem]
        for word, coef in iteritems(p.terms):
            degree = len(word)
            for idx, value in iteritems(self.word_coords(word)):
                key = (degree, idx)
                term = coef * value
                coords[key] = coords[key] + term if key in coords else term
        return BElem(self, coords)

    def word_elem(self, word):
        # type: (Sequence[int]) -> BElem
        return BElem.from_coords(self, len(word), self.word_coords(word))

    def generator(self, root_index):
        # type: (int) -> BElem
        return BElem.basis_element(self, 1, root_index)

    def multiply(self, a, b):
        # type: (BElem, BElem) -> BElem
        coords = {}  # type: Dict[Tuple[int, int], RingElem]
        for (ka, ia), ca in iteritems(a.coords):
            for (kb, ib), cb in iteritems(b.coords):
                vec = {ia: 1}  # type: Coords
                degree = ka
                for letter in self.words[kb][ib]:
                    vec = self.right_multiply(degree, vec, letter)
                    degree += 1
                if not vec:
                    continue
                product = ca * cb
                for idx, value in iteritems(vec):
                    key = (ka + kb, idx)
                    term = product * value
                    coords[key] = coords[key] + term if key in coords else term
        return BElem(self, coords)

    # Tables: [α][basis index] -> coordinates

    def _table(self, kind, k, compute):
        # type: (Text, int, Callable[[int], Table]) -> Table
        key = (kind, k)
        table = self._tables.get(key)
        if table is None:
            with self._lock:
                table = self._tables.get(key)
                if table is None:
                    table = compute(k)
                    self._tables[key] = table
        return table

    def reflection_table(self, k):
        # type: (int) -> Table
        """s_α on degree k"""
        return self._table("reflection", k, self._compute_reflection)

    def _compute_reflection(self, k):
        if k == 0:
            return [[{0: 1}] for _ in range(self.n)]
        previous = self.reflection_table(k - 1)
        expansion = self.expansion[k]
        table = []
        for alpha in range(self.n):
            row = []
            for idx in range(len(self.words[k])):
                parent, beta = self._parent(k, idx)
                sign, gamma = self.rs.reflect(alpha, beta)
                out = {}  # type: Coords
                for c, coef in iteritems(previous[alpha][parent]):
                    add_scaled(out, expansion[(c, gamma)], sign * coef)
                row.append(out)
            table.append(row)
        return table

    def left_derivation_table(self, k):
        # type: (int) -> Table
        """D̄_α from degree k to degree k-1"""
        return self._table("dbar", k, self._compute_left_derivation)

    def _compute_left_derivation(self, k):
        if k == 0:
            return [[{}] for _ in range(self.n)]
        previous = self.left_derivation_table(k - 1)
        reflections = self.reflection_table(k - 1)
        expansion = self.expansion[k - 1]
        table = []
        for alpha in range(self.n):
            row = []
            for idx in range(len(self.words[k])):
                parent, beta = self._parent(k, idx)
                out = {}  # type: Coords
                for c, coef in iteritems(previous[alpha][parent]):
                    add_scaled(out, expansion[(c, beta)], coef)
                if alpha == beta:
                    add_scaled(out, reflections[alpha][parent], 1)
                row.append(out)
            table.append(row)
        return table

    def right_derivation_table(self, k):
        # type: (int) -> Table
        """x←D_α from degree k to degree k-1"""
        return self._table("rder", k, self._compute_right_derivation)

    def _compute_right_derivation(self, k):
        return [[dict(self.derivations[k][idx].get(alpha, {}))
                 for idx in range(len(self.words[k]))]
                for alpha in range(self.n)]

    def left_mult_table(self, k):
        # type: (int) -> Table
        """[α]·x from degree k to degree k+1"""
        self._check_degree(k + 1)
        return self._table("lmul", k, self._compute_left_mult)

    def _compute_left_mult(self, k):
        if k + 1 > self.built:
            return [[{} for _ in self.words[k]] for _ in range(self.n)]
        expansion = self.expansion[k + 1]
        if k == 0:
            return [[dict(expansion[(0, alpha)])] for alpha in range(self.n)]
        previous = self.left_mult_table(k - 1)
        table = []
        for alpha in range(self.n):
            row = []
            for idx in range(len(self.words[k])):
                parent, beta = self._parent(k, idx)
                out = {}  # type: Coords
                for c, coef in iteritems(previous[alpha][parent]):
                    add_scaled(out, expansion[(c, beta)], coef)
                row.append(out)
            table.append(row)
        return table

    def right_mult_table(self, k):
        # type: (int) -> Table
        """x·[α] from degree k to degree k+1"""
        self._check_degree(k + 1)
        return self._table("rmul", k, self._compute_right_mult)

    def _compute_right_mult(self, k):
        if k + 1 > self.built:
            return [[{} for _ in self.words[k]] for _ in range(self.n)]
        expansion = self.expansion[k + 1]
        return [[dict(expansion[(idx, alpha)]) for idx in range(len(self.words[k]))]
                for alpha in range(self.n)]

    def _apply(self, x, table_fn, alpha, shift):
        # type: (BElem, Callable[[int], Table], int, int) -> BElem
        coords = {}  # type: Dict[Tuple[int, int], RingElem]
        for (k, idx), coef in iteritems(x.coords):
            if k + shift < 0:
                continue
            for target, value in iteritems(table_fn(k)[alpha][idx]):
                key = (k + shift, target)
                term = coef * value
                coords[key] = coords[key] + term if key in coords else term
        return BElem(self, coords)

    def reflect(self, alpha, x):
        # type: (int, BElem) -> BElem
        return self._apply(x, self.reflection_table, alpha, 0)

    def w_act(self, w, x):
        # type: (WeylElem, BElem) -> BElem
        for i in reversed(w.reduced_word()):
            x = self.reflect(i, x)
        return x

    def dbar(self, alpha, x):
        # type: (int, BElem) -> BElem
        return self._apply(x, self.left_derivation_table, alpha, -1)

    def dbar_right(self, alpha, x):
        # type: (int, BElem) -> BElem
        return self._apply(x, self.right_derivation_table, alpha, -1)

    def dbar_word(self, word, x):
        # type: (Sequence[int], BElem) -> BElem
        """D̄_{i_1}⋯D̄_{i_l}(x), innermost last letter"""
        for i in reversed(word):
            x = self.dbar(i, x)
        return x

    def dbar_w(self, w, x):
        # type: (WeylElem, BElem) -> BElem
        return self.dbar_word(w.reduced_word(), x)

    def left_multiply(self, alpha, x):
        # type: (int, BElem) -> BElem
        return self._apply(x, self.left_mult_table, alpha, 1)

    def right_multiply_root(self, alpha, x):
        # type: (int, BElem) -> BElem
        """x·[α], the action of [α] in the opposite algebra"""
        return self._apply(x, self.right_mult_table, alpha, 1)

    def relations(self, k):
        # type: (int) -> List[Dict[NcWord, Any]]
        """Spanning set of I(V) in degree k: dependent spanning words minus
        their expansion over basis words"""
        out = []
        for (b, beta), vec in sorted(iteritems(self.expansion[k])):
            word = self.words[k - 1][b] + (beta,)
            if word in self.index[k]:
                continue
            relation = {word: 1}  # type: Dict[NcWord, Any]
            for idx, value in iteritems(vec):
                relation[self.words[k][idx]] = -value
            out.append(relation)
        return out

    def gram_matrix(self, k):
        # type: (int) -> List[List[Any]]
        """Pairing between the basis words of degree k (rows: left argument)"""
        key = ("gram", k)
        if key in self._tables:
            return self._tables[key]  # type: ignore
        rtables = {}  # type: Dict[int, Table]
        memo = {(): {0: 1}}  # type: Dict[NcWord, Coords]

        def functional(suffix):
            # ⟨suffix, ·⟩ as a row vector on degree len(suffix)
            if suffix in memo:
                return memo[suffix]
            degree = len(suffix)
            if degree not in rtables:
                rtables[degree] = self.right_derivation_table(degree)
            inner = functional(suffix[1:])
            row = {}  # type: Coords
            table = rtables[degree][suffix[0]]
            for x in range(len(self.words[degree])):
                total = 0
                for y, value in iteritems(table[x]):
                    if y in inner:
                        total += value * inner[y]
                if total:
                    row[x] = rational(total)
            memo[suffix] = row
            return row

        size = len(self.words[k])
        matrix = []
        for xi in self.words[k]:
            row = functional(xi)
            matrix.append([row.get(j, 0) for j in range(size)])
        self._tables[key] = matrix  # type: ignore
        return matrix

    def gram_nonsingular(self, k):
        # type: (int) -> bool
        size = len(self.words[k])
        return size == 0 or rank_dense(self.gram_matrix(k)) == size

    def check_left_derivation_kernel(self, k):
        # type: (int) -> Optional[Dict[NcWord, Any]]
        """First relation of degree k whose left derivation is not in I(V)"""
        for relation in self.relations(k):
            for alpha in range(self.n):
                derived = left_derivation_vector(self.rs, alpha, relation)
                total = {}  # type: Coords
                for word, coef in iteritems(derived):
                    add_scaled(total, self.word_coords(word), coef)
                if total:
                    return relation
        return None

    # Cache documents

    def to_document(self):
        # type: () -> Dict[Text, Any]
        expansion = []
        for k in range(1, self.built + 1):
            entries = []
            for (b, beta) in sorted(self.expansion[k]):
                vec = self.expansion[k][(b, beta)]
                entries.append([b, beta, [[i, fraction_string(vec[i])] for i in sorted(vec)]])
            expansion.append(entries)
        derivations = []
        for k in range(1, self.built + 1):
            per_word = []
            for split in self.derivations[k]:
                per_word.append([[alpha, [[i, fraction_string(split[alpha][i])]
                                          for i in sorted(split[alpha])]]
                                 for alpha in sorted(split)])
            derivations.append(per_word)
        return {
            "version": CACHE_VERSION,
            "type": self.rs.type,
            "rank": self.rs.rank,
            "degree": self.built,
            "complete": self.complete,
            "dims": self.dims(),
            "basis": [[list(word) for word in words] for words in self.words],
            "expansion": expansion,
            "derivations": derivations,
        }

    @classmethod
    def from_document(cls, rs, doc, max_degree=None):
        # type: (RootSystem, Dict[Text, Any], Optional[int]) -> NicholsBasis
        if doc.get("version") != CACHE_VERSION:
            raise ValueError("Unsupported cache version %r" % doc.get("version"))
        if doc.get("type") != rs.type or doc.get("rank") != rs.rank:
            raise ValueError("Cache is for %s%s, not %s" %
                             (doc.get("type"), doc.get("rank"), rs.name))
        nb = cls(rs, max_degree=max_degree)
        degree = doc["degree"]
        if max_degree is not None:
            degree = min(degree, max_degree)
        basis = doc["basis"]
        for k in range(1, degree + 1):
            words = [tuple(word) for word in basis[k]]
            expansion = {}
            for b, beta, vec in doc["expansion"][k - 1]:
                expansion[(b, beta)] = {i: parse_fraction(v) for i, v in vec}
            derivations = []
            for per_word in doc["derivations"][k - 1]:
                derivations.append({alpha: {i: parse_fraction(v) for i, v in vec}
                                    for alpha, vec in per_word})
            if len(words) != doc["dims"][k] or len(derivations) != len(words):
                raise ValueError("Inconsistent dimensions at degree %d" % k)
            if len(expansion) != len(nb.words[k - 1]) * nb.n:
                raise ValueError("Incomplete expansion table at degree %d" % k)
            nb._seal(words, derivations, expansion)
        return nb


def build_nichols(rs, max_degree=None):
    # type: (RootSystem, Optional[int]) -> NicholsBasis
    return NicholsBasis(rs, max_degree=max_degree).build()


def gram_rank_dims(rs, k_max):
    # type: (RootSystem, int) -> List[int]
    """Dimensions from the rank of the pairing on all words of each degree"""
    from .braidedalg import all_words, gram_matrix
    dims = []
    for k in range(k_max + 1):
        words = all_words(rs, k)
        dims.append(rank_dense(gram_matrix(rs, k, words, words)) if k else 1)
    return dims


def check_basis(nb):
    # type: (NicholsBasis) -> None
    for k in range(nb.built + 1):
        if not nb.gram_nonsingular(k):
            raise InvariantViolation("Pairing on basis words of degree %d of %s is singular" %
                                     (k, nb.rs.name))
