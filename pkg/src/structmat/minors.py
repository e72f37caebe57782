"""Batched minor computations behind the class predicates.

Subsets of ``{1..n}`` are handled internally as bitmasks (bit ``i-1`` for
index ``i``). Reported index sets are converted back to 1-based tuples.

Exact input is processed in integer arithmetic: the matrix is scaled by the
common denominator ``L`` of its entries, so that every minor of order ``m``
is an integer equal to ``L**m`` times the true minor. Signs, and the
comparisons the predicates need, are unaffected by that scaling.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb
from typing import Iterator

import numpy as np

from .core import integer_scaled, is_exact, to_float, bareiss_det

ALL_MINOR_LIMIT = 14


def mask_to_tuple(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def tuple_to_mask(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


_RANK_CACHE: dict[int, np.ndarray] = {}


def lex_rank(n: int) -> np.ndarray:
    """Position of every bitmask in the lexicographic order of its 1-based tuple."""
    if n not in _RANK_CACHE:
        masks = sorted(range(1 << n), key=mask_to_tuple)
        rank = np.empty(1 << n, dtype=np.int64)
        rank[masks] = np.arange(1 << n)
        _RANK_CACHE[n] = rank
    return _RANK_CACHE[n]


def popcounts(n: int) -> np.ndarray:
    masks = np.arange(1 << n)
    return np.array([bin(m).count("1") for m in masks], dtype=np.int64)


# --------------------------------------------------------------------------
# principal minors and bordered (almost principal) minors


class ExactSchurTable:
    """Exact principal and bordered minors for every subset, by Sylvester's identity.

    For each subset ``g`` reached, ``state[g]`` is the integer matrix whose
    ``(i, j)`` entry (``i, j`` not in ``g``) is ``L**(|g|+1)`` times the
    determinant with rows ``(g, i)`` and columns ``(g, j)`` in that order.
    Subsets are reached depth first by appending indices in increasing order;
    a zero principal minor on the path stops the descent and its subtree is
    computed from scratch.

    ``visit(mask, state)``, when given, is called once per subset.
    """

    def __init__(self, A: np.ndarray, visit=None):
        self.n = A.shape[0]
        M, self.L = integer_scaled(A)
        self.M = np.array(M, dtype=object)
        self.principal = np.empty(1 << self.n, dtype=object)
        self.principal[0] = 1
        self.visit = visit
        self._walk(0, self.M, 1, 0)

    def _walk(self, mask, state, d, start):
        if self.visit is not None:
            self.visit(mask, state)
        for p in range(start, self.n):
            child = mask | (1 << p)
            pivot = state[p, p]
            self.principal[child] = pivot
            if pivot == 0:
                self._walk_direct(child, p + 1)
                continue
            col = state[:, p:p + 1]
            row = state[p:p + 1, :]
            new = (pivot * state - col * row) // d
            self._walk(child, new, pivot, p + 1)

    def _walk_direct(self, mask, start):
        if self.visit is not None:
            self.visit(mask, self._direct_state(mask))
        for p in range(start, self.n):
            child = mask | (1 << p)
            idx = [i - 1 for i in mask_to_tuple(child)]
            self.principal[child] = bareiss_det([[self.M[i, j] for j in idx] for i in idx])
            self._walk_direct(child, p + 1)

    def _direct_state(self, mask):
        g = [i - 1 for i in mask_to_tuple(mask)]
        st = np.zeros((self.n, self.n), dtype=object)
        for i in range(self.n):
            if mask >> i & 1:
                continue
            for j in range(self.n):
                if mask >> j & 1:
                    continue
                rows, cols = g + [i], g + [j]
                st[i, j] = bareiss_det([[self.M[r, c] for c in cols] for r in rows])
        return st


def float_principal_minors(A: np.ndarray) -> np.ndarray:
    """All principal minors of a float matrix, indexed by bitmask (batched per cardinality)."""
    n = A.shape[0]
    out = np.empty(1 << n, dtype=A.dtype)
    out[0] = 1.0
    for m in range(1, n + 1):
        combos = np.array(list(itertools.combinations(range(n), m)))
        masks = (1 << combos).sum(axis=1)
        for chunk in np.array_split(np.arange(len(combos)), max(1, len(combos) * m * m // 2_000_000 + 1)):
            c = combos[chunk]
            sub = A[c[:, :, None], c[:, None, :]]
            out[masks[chunk]] = np.linalg.det(sub)
    return out


def principal_minor_table(A: np.ndarray) -> tuple[np.ndarray, int | None]:
    """Principal minors indexed by bitmask.

    Returns ``(values, L)``. For exact input the values are integers scaled by
    ``L**|mask|``; for float input ``L`` is ``None``.
    """
    if is_exact(A):
        table = ExactSchurTable(A)
        return table.principal, table.L
    return float_principal_minors(A), None


def float_almost_principal_products(A: np.ndarray) -> Iterator[tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]]:
    """Yield batches ``(gamma_masks, i, j, minor_ab, minor_ba)`` over almost principal pairs.

    ``alpha = gamma + {i}``, ``beta = gamma + {j}`` with ``i < j`` (0-based
    indices), minors in sorted row/column order.
    """
    n = A.shape[0]
    for i, j in itertools.combinations(range(n), 2):
        others = np.array([x for x in range(n) if x != i and x != j], dtype=np.int64)
        for size in range(0, n - 1):
            combos = list(itertools.combinations(others, size))
            G = np.array(combos, dtype=np.int64).reshape(len(combos), size)
            gms = (1 << G).sum(axis=1) if size else np.zeros(len(G), dtype=np.int64)
            al = np.sort(np.hstack([G, np.full((len(G), 1), i)]), axis=1)
            be = np.sort(np.hstack([G, np.full((len(G), 1), j)]), axis=1)
            ab = np.linalg.det(A[al[:, :, None], be[:, None, :]])
            ba = np.linalg.det(A[be[:, :, None], al[:, None, :]])
            yield gms, np.full(len(G), i), np.full(len(G), j), ab, ba


# --------------------------------------------------------------------------
# all minors, one order at a time


def combination_masks(n: int, m: int) -> np.ndarray:
    combos = list(itertools.combinations(range(n), m))
    return np.array([sum(1 << x for x in c) for c in combos], dtype=np.int64)


def minor_levels(A: np.ndarray) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """Yield ``(m, masks, level)`` for m = 1..n.

    ``level[r, c]`` is the minor with rows ``masks[r]`` and columns
    ``masks[c]``; masks are listed in lexicographic order of their tuples.
    Each level is obtained from the previous one by Laplace expansion along
    the last selected column, so only two levels are held at a time. Exact
    input yields integers scaled by ``L**m``.
    """
    n = A.shape[0]
    if is_exact(A):
        M, _ = integer_scaled(A)
        W = np.array(M, dtype=object)
    else:
        W = to_float(A)
    prev_index = {0: 0}
    prev = np.ones((1, 1), dtype=W.dtype)
    for m in range(1, n + 1):
        combos = list(itertools.combinations(range(n), m))
        masks = np.array([sum(1 << x for x in c) for c in combos], dtype=np.int64)
        carr = np.array(combos)
        last = carr[:, -1]
        col_drop = np.array([prev_index[sum(1 << x for x in c[:-1])] for c in combos])
        level = np.zeros((len(combos), len(combos)), dtype=W.dtype)
        for pos in range(m):
            rows = carr[:, pos]
            row_drop = np.array([prev_index[sum(1 << x for x in c[:pos] + c[pos + 1:])] for c in combos])
            sign = 1 if (pos + m - 1) % 2 == 0 else -1
            term = W[rows[:, None], last[None, :]] * prev[row_drop[:, None], col_drop[None, :]]
            if sign > 0:
                level += term
            else:
                level -= term
        yield m, masks, level
        prev = level
        prev_index = {int(mk): i for i, mk in enumerate(masks)}


def all_minor_count(n: int) -> int:
    return comb(2 * n, n) - 1


# --------------------------------------------------------------------------
# minors with consecutive indices


def contiguous_minors(A: np.ndarray) -> dict[tuple[int, int, int], object]:
    """Minors with consecutive rows and consecutive columns.

    Keys are ``(i, j, m)`` (1-based start row, start column, order). Exact
    input yields Fractions, float input yields floats.
    """
    n = A.shape[0]
    out = {}
    exact = is_exact(A)
    if exact:
        M, L = integer_scaled(A)
    else:
        F = to_float(A)
    for m in range(1, n + 1):
        for i in range(n - m + 1):
            for j in range(n - m + 1):
                if exact:
                    sub = [row[j:j + m] for row in M[i:i + m]]
                    out[(i + 1, j + 1, m)] = Fraction(bareiss_det(sub), L ** m)
                else:
                    out[(i + 1, j + 1, m)] = np.linalg.det(F[i:i + m, j:j + m])
    return out


def is_upper_hessenberg(A: np.ndarray) -> bool:
    n = A.shape[0]
    return all(A[i, j] == 0 for i in range(n) for j in range(n) if i > j + 1)


def hessenberg_run_minors(A: np.ndarray) -> dict[tuple[int, int], object]:
    """Principal minors ``A[i..j]`` of an upper Hessenberg matrix, for all ``i <= j``.

    Uses the expansion of a Hessenberg determinant along its last column,
    which costs O(n) per minor given the shorter ones.
    """
    n = A.shape[0]
    exact = is_exact(A)
    H = A if exact else to_float(A)
    one = Fraction(1) if exact else 1.0
    out = {}
    for s in range(n):
        d = [one]
        for m in range(s, n):
            total = 0
            prod = one
            for j in range(m, s - 1, -1):
                sign = 1 if (m - j) % 2 == 0 else -1
                total += sign * H[j, m] * prod * d[j - s]
                if j > s:
                    prod = prod * H[j, j - 1]
            d.append(total)
            out[(s + 1, m + 1)] = total
    return out
