"""Seeded generators for the matrix classes exercised by the property suites.

Every sampler takes a ``numpy.random.Generator`` and returns members of its
class by construction; the class predicates are re-run on each draw and a
draw that fails them is rejected and redrawn, so callers never see a
non-member.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .core import as_matrix
from .exceptions import ArgumentError, NumericalError
from .predicates import is_p_matrix, is_sign_symmetric, is_strictly_ultrametric

MAX_REDRAWS = 100


def _redraw(draw, accept, what):
    for _ in range(MAX_REDRAWS):
        A = draw()
        if accept(A):
            return A
    raise NumericalError(f"{what} sampler rejected {MAX_REDRAWS} consecutive draws")


def _spd(n, rng):
    # positive definite with eigenvalues bounded below by n / 10
    Q = rng.standard_normal((n, n))
    return Q @ Q.T + n * 0.1 * np.eye(n)


def p_matrix(n: int, rng: np.random.Generator, step: float = 0.25) -> np.ndarray:
    """A P-matrix: entries uniform on ``[-1, 1]`` plus a diagonal shift.

    The shift grows in increments of ``step`` until every principal minor
    is positive, so the draw stays close to the boundary of the class.
    """
    if n < 1:
        raise ArgumentError("order must be positive")
    A = rng.uniform(-1.0, 1.0, size=(n, n))
    for _ in range(MAX_REDRAWS):
        if is_p_matrix(A).holds:
            return A
        A = A + step * np.eye(n)
    raise NumericalError(f"no P-matrix after {MAX_REDRAWS} diagonal shifts")


def sign_symmetric_p_matrix(n: int, rng: np.random.Generator) -> np.ndarray:
    """``D1 S D2`` with ``S`` symmetric positive definite and positive diagonal scalings.

    Every minor pair satisfies ``A[a,b] A[b,a] = d S[a,b]^2`` with ``d > 0``.
    """
    if n < 1:
        raise ArgumentError("order must be positive")

    def draw():
        d1, d2 = rng.uniform(0.2, 5.0, n), rng.uniform(0.2, 5.0, n)
        return d1[:, None] * _spd(n, rng) * d2[None, :]

    return _redraw(draw, lambda A: is_p_matrix(A).holds and is_sign_symmetric(A).holds,
                   "sign-symmetric P-matrix")


def stable_polynomial(degree: int, rng: np.random.Generator) -> list[Fraction]:
    """Monic polynomial with all roots in the open left half-plane, exact coefficients.

    Built from linear factors ``x + a`` and quadratic factors
    ``x^2 + b x + c`` with positive rational ``a, b, c``. Coefficients are
    returned in descending order.
    """
    if degree < 1:
        raise ArgumentError("degree must be positive")
    poly = [Fraction(1)]
    remaining = degree
    while remaining:
        if remaining >= 2 and rng.random() < 0.5:
            factor = [Fraction(1), Fraction(int(rng.integers(1, 9)), 2), Fraction(int(rng.integers(1, 17)), 2)]
            remaining -= 2
        else:
            factor = [Fraction(1), Fraction(int(rng.integers(1, 9)), 2)]
            remaining -= 1
        poly = [sum(poly[i] * factor[j - i] for i in range(len(poly)) if 0 <= j - i < len(factor))
                for j in range(len(poly) + len(factor) - 1)]
    return poly


def jacobi_matrix(n: int, rng: np.random.Generator) -> np.ndarray:
    """Symmetric tridiagonal integer matrix, positive off-diagonal, strictly diagonally dominant."""
    b = rng.integers(1, 4, size=max(n - 1, 0))
    padded = np.concatenate([[0], b, [0]])
    diag = padded[:-1] + padded[1:] + rng.integers(1, 4, size=n)
    A = np.diag(diag) + np.diag(b, 1) + np.diag(b, -1)
    return as_matrix(A.astype(int).tolist(), exact=True)


def oscillatory_hermitian(n: int, rng: np.random.Generator, square_limit: int = 8) -> np.ndarray:
    """Exact symmetric oscillatory matrix.

    A Jacobi matrix ``J`` (tridiagonal, positive off-diagonal, positive
    definite) is oscillatory; for orders up to ``square_limit`` half of the
    draws return the pentadiagonal ``J^2`` instead.
    """
    if n < 1:
        raise ArgumentError("order must be positive")
    J = jacobi_matrix(n, rng)
    if n <= square_limit and rng.random() < 0.5:
        return J.dot(J)
    return J


def ultrametric_matrix(n: int, rng: np.random.Generator, strict: bool = True) -> np.ndarray:
    """Ultrametric matrix from a random nested partition of the indices.

    Each block of the partition carries a value that grows with depth;
    ``a(i, j)`` is the value of the smallest block holding both indices and
    the diagonal sits on top of the deepest value (strictly above it when
    ``strict``).
    """
    if n < 1:
        raise ArgumentError("order must be positive")
    A = np.zeros((n, n))

    def fill(idx, floor):
        A[np.ix_(idx, idx)] = floor
        if len(idx) == 1:
            i = idx[0]
            A[i, i] = floor + (rng.uniform(0.1, 1.0) if strict else rng.uniform(0.0, 1.0))
            return
        cut = int(rng.integers(1, len(idx)))
        perm = list(rng.permutation(idx))
        for part in (perm[:cut], perm[cut:]):
            fill(sorted(part), floor + rng.uniform(0.0, 1.0))

    fill(list(range(n)), rng.uniform(0.0, 1.0))
    if strict and not is_strictly_ultrametric(A).holds:
        raise NumericalError("ultrametric construction failed its own predicate")
    return A
