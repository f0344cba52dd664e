"""Exact linear algebra over the rationals.

Two flavours are used: dense row echelon for the small systems of the
invariant search and the fundamental weights, and sparse vectors (dicts from
key to rational) with incremental elimination for Nichols basis selection.
Entries are ints or Fractions, normalized through scalars.rational.
"""
from __future__ import absolute_import
from fractions import Fraction

from six import iteritems
from six.moves import range

from .scalars import divide, rational

MYPY = False
if MYPY:
    from typing import Any, Dict, Hashable, List, Optional, Sequence, Tuple
    SparseVector = Dict[Hashable, Any]


def form_rational(m, t=None):
    # type: (List[List[Any]], Optional[List[Any]]) -> List[int]
    """Row echelon form in place; returns the free columns"""
    free_vars = []  # type: List[int]
    n_rows = len(m)
    if n_rows == 0:
        return free_vars
    n_cols = len(m[0])
    assert t is None or len(t) == n_rows
    piv_r = 0
    for piv_c in range(0, n_cols):
        if piv_r == n_rows:
            free_vars.append(piv_c)
            continue
        for i_row in range(piv_r, n_rows):
            if m[i_row][piv_c] != 0:
                break
        else:
            free_vars.append(piv_c)
            continue
        if i_row != piv_r:
            m[piv_r], m[i_row] = m[i_row], m[piv_r]
            if t is not None:
                t[piv_r], t[i_row] = t[i_row], t[piv_r]
        fp = m[piv_r][piv_c]
        for r in range(piv_r + 1, n_rows):
            fr = m[r][piv_c]
            if fr == 0:
                continue
            frp = divide(fr, fp)
            row = m[r]
            pivot_row = m[piv_r]
            for c in range(piv_c, n_cols):
                if pivot_row[c]:
                    row[c] = rational(row[c] - pivot_row[c] * frp)
            if t is not None:
                t[r] = rational(t[r] - t[piv_r] * frp)
        piv_r += 1
    return free_vars


def back_substitution_rational(m, t, free_vars, sol):
    # type: (List[List[Any]], Optional[List[Any]], List[int], List[Any]) -> Optional[List[Any]]
    n_rows = len(m)
    n_cols = len(m[0]) if m else len(sol)
    assert t is None or len(t) == n_rows
    assert len(sol) == n_cols
    rank = n_cols - len(free_vars)
    if t is not None:
        for r in range(rank, n_rows):
            if t[r] != 0:
                return None
    free_flags = [False] * n_cols
    for c in free_vars:
        free_flags[c] = True
    piv_cols = [c for c, f in enumerate(free_flags) if not f]
    for r in range(len(piv_cols) - 1, -1, -1):
        piv_c = piv_cols[r]
        s = 0 if t is None else -t[r]
        for c in range(piv_c + 1, n_cols):
            if m[r][c]:
                s += m[r][c] * sol[c]
        sol[piv_c] = divide(rational(-s), m[r][piv_c])
    return sol


def solve_dense(m, t):
    # type: (Sequence[Sequence[Any]], Sequence[Any]) -> Optional[List[Any]]
    """A solution of m x = t with free variables set to 0, or None"""
    rows = [[rational(v) for v in row] for row in m]
    rhs = [rational(v) for v in t]
    if not rows:
        return []
    free_vars = form_rational(rows, rhs)
    return back_substitution_rational(rows, rhs, free_vars, [0] * len(rows[0]))


def rank_dense(m):
    # type: (Sequence[Sequence[Any]]) -> int
    rows = [[rational(v) for v in row] for row in m]
    if not rows or not rows[0]:
        return 0
    free_vars = form_rational(rows)
    return len(rows[0]) - len(free_vars)


def add_scaled(target, vec, factor):
    # type: (SparseVector, SparseVector, Any) -> SparseVector
    """target += factor * vec, in place, dropping zeros"""
    if not factor:
        return target
    for key, value in iteritems(vec):
        new = target.get(key, 0) + value * factor
        if new:
            target[key] = rational(new)
        else:
            target.pop(key, None)
    return target


def scaled(vec, factor):
    # type: (SparseVector, Any) -> SparseVector
    if not factor:
        return {}
    return {key: rational(value * factor) for key, value in iteritems(vec)}


def combine(terms):
    # type: (Sequence[Tuple[SparseVector, Any]]) -> SparseVector
    result = {}  # type: SparseVector
    for vec, factor in terms:
        add_scaled(result, vec, factor)
    return result


class EchelonBasis(object):
    """Incrementally built echelon basis of sparse vectors.

    Every stored vector has a distinct minimal key (its pivot) and carries
    the combination of inserted vectors it came from, so a dependent vector
    can be expressed through the inserted independent ones.
    """

    def __init__(self):
        self.pivots = {}  # type: Dict[Hashable, Tuple[SparseVector, SparseVector]]
        self.members = []  # type: List[Hashable]

    def __len__(self):
        return len(self.members)

    def reduce(self, vec):
        # type: (SparseVector) -> Tuple[SparseVector, SparseVector]
        remainder = dict(vec)
        combo = {}  # type: SparseVector
        while remainder:
            key = min(remainder)
            entry = self.pivots.get(key)
            if entry is None:
                break
            pivot_vec, transform = entry
            factor = divide(remainder[key], pivot_vec[key])
            add_scaled(remainder, pivot_vec, -factor)
            add_scaled(combo, transform, factor)
        return remainder, combo

    def insert(self, name, vec):
        # type: (Hashable, SparseVector) -> Optional[SparseVector]
        """Add vec under name if independent and return None; otherwise return
        its coordinates over the previously inserted independent vectors"""
        remainder, combo = self.reduce(vec)
        if not remainder:
            return combo
        transform = scaled(combo, -1)
        transform[name] = 1
        self.pivots[min(remainder)] = (remainder, transform)
        self.members.append(name)
        return None

    def contains(self, vec):
        # type: (SparseVector) -> bool
        remainder, _ = self.reduce(vec)
        return not remainder


def sparse_rank(vectors):
    # type: (Sequence[SparseVector]) -> int
    basis = EchelonBasis()
    for i, vec in enumerate(vectors):
        basis.insert(i, vec)
    return len(basis)


def fraction_string(value):
    # type: (Any) -> str
    return str(rational(value))


def parse_fraction(text):
    # type: (str) -> Any
    return rational(Fraction(text))
