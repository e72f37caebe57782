"""Bounded-invertibility experiments on structured matrix families.

The recurring question: given matrices whose spectra stay away from zero
and whose norms stay bounded, do their inverses stay bounded in the
``inf``-norm? The families here probe that question (Hilbert and companion
shifts, a Hermitian Toeplitz band), and the bounds here answer it for
oscillatory Hermitian and totally nonnegative inputs.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.linalg

from .core import as_matrix, inverse, is_exact, is_hermitian, p_norm, to_float, vector_inf_norm
from .exceptions import ArgumentError, ConsistencyError, NumericalError, SingularMatrixError
from .predicates import (
    is_diagonally_dominant,
    is_m_matrix,
    is_oscillatory,
    is_strictly_ultrametric,
    is_totally_nonnegative,
)
from .reports import ClassReport, failed, passed


# --------------------------------------------------------------------------
# families


def hilbert_matrix(n: int, exact: bool = False) -> np.ndarray:
    """``H_n(i, j) = 1 / (i + j - 1)``."""
    if n < 1:
        raise ArgumentError("order must be positive")
    if exact:
        return np.array([[Fraction(1, i + j + 1) for j in range(n)] for i in range(n)], dtype=object)
    i = np.arange(1, n + 1)
    return 1.0 / (i[:, None] + i[None, :] - 1)


def companion_matrix(n: int, exact: bool = False) -> np.ndarray:
    """``C_n(i, j) = 1 / max(i, j)``, the ultrametric companion of the Hilbert matrix."""
    if n < 1:
        raise ArgumentError("order must be positive")
    if exact:
        return np.array([[Fraction(1, max(i, j) + 1) for j in range(n)] for i in range(n)], dtype=object)
    i = np.arange(1, n + 1)
    return 1.0 / np.maximum(i[:, None], i[None, :])


_BASES = {"hilbert": hilbert_matrix, "companion": companion_matrix}


@dataclass(frozen=True)
class FamilyCurve:
    """Per-order measurements of a matrix family."""

    family: str
    orders: tuple
    norm_inf: tuple
    inv_norm_inf: tuple
    min_sigma: tuple
    max_sigma: tuple
    parameters: dict = field(default_factory=dict)

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.orders, self.orders[1:])):
            raise ArgumentError("orders must be strictly increasing")
        cols = (self.norm_inf, self.inv_norm_inf, self.min_sigma, self.max_sigma)
        if any(len(c) != len(self.orders) for c in cols):
            raise ArgumentError("every measurement needs one value per order")
        if not all(math.isfinite(v) for c in cols for v in c):
            raise NumericalError("family measurements must be finite")

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "norm_inf", "inv_norm_inf", "min_sigma", "max_sigma"])
        for row in zip(self.orders, self.norm_inf, self.inv_norm_inf, self.min_sigma, self.max_sigma):
            w.writerow([row[0]] + [repr(float(v)) for v in row[1:]])
        return buf.getvalue()

    def row(self, n: int) -> dict:
        i = self.orders.index(n)
        return {"n": n, "norm_inf": self.norm_inf[i], "inv_norm_inf": self.inv_norm_inf[i],
                "min_sigma": self.min_sigma[i], "max_sigma": self.max_sigma[i]}


def _check_orders(orders):
    orders = tuple(int(n) for n in orders)
    if not orders or orders[0] < 1:
        raise ArgumentError("orders must be positive")
    return orders


def _measure(A, A_inv):
    sv = scipy.linalg.svdvals(A)
    return float(p_norm(A, "inf")), float(p_norm(A_inv, "inf")), float(sv.min()), float(sv.max())


def shifted_inverse_family(base: str, alpha: float, orders) -> FamilyCurve:
    """Measurements of ``A_n = (alpha I + base_n)^-1``.

    ``base`` is ``"hilbert"`` or ``"companion"``. The recorded
    ``inv_norm_inf`` is ``||alpha I + base_n||_inf``; singular values are
    those of ``A_n``.
    """
    if base not in _BASES:
        raise ArgumentError(f"base must be one of {sorted(_BASES)}, got {base!r}")
    if not alpha > 0:
        raise ArgumentError("alpha must be positive")
    orders = _check_orders(orders)
    rows = []
    for n in orders:
        shifted = alpha * np.eye(n) + _BASES[base](n)
        A = np.linalg.inv(shifted)
        rows.append(_measure(A, shifted))
    cols = tuple(zip(*rows))
    return FamilyCurve(f"{base}_shifted_inverse", orders, *cols, parameters={"alpha": alpha})


def harmonic(n: int) -> Fraction:
    return sum((Fraction(1, j) for j in range(1, n + 1)), Fraction(0))


# --------------------------------------------------------------------------
# ultrametric inverses


def mms_inverse_check(A, tol: float = 1e-10) -> ClassReport:
    """The inverse of a strictly ultrametric matrix is a symmetric, strictly
    row diagonally dominant M-matrix.

    The report fails with the witness of the first failing sub-predicate
    (``detail["failed"]`` names it).
    """
    A = as_matrix(A)
    pre = is_strictly_ultrametric(A, tol)
    if not pre.holds:
        raise ArgumentError(f"input is not strictly ultrametric ({pre.detail.get('failed')} fails at "
                            f"rows {pre.witness.rows}, cols {pre.witness.cols})")
    B = inverse(A)
    exact = is_exact(B)
    n = B.shape[0]
    thr = 0 if exact else tol * float(np.max(np.abs(to_float(B))))
    for i in range(n):
        for j in range(i + 1, n):
            if abs(B[i, j] - B[j, i]) > thr:
                return failed("mms_inverse", (i + 1,), (j + 1,), (B[i, j], B[j, i]), tol, failed="symmetric")
    checks = (("strictly_row_diagonally_dominant", is_diagonally_dominant(B, "row", True, tol)),
              ("M", is_m_matrix(B, tol)))
    for name, rep in checks:
        if not rep.holds:
            return ClassReport("mms_inverse", False, rep.witness, rep.tolerance_used, {"failed": name})
    return passed("mms_inverse", 0.0 if exact else tol)


# --------------------------------------------------------------------------
# Hermitian Toeplitz band built from an upper triangular factor


@dataclass(frozen=True)
class SymbolProductReport:
    """Measurements for the band ``A_k = T_k T_k^*`` with ``S(T_k) = 1 + s + c s^k``.

    ``section_block_one_norm`` is the 1-norm of the leading ``(k-1)``-block
    of the inverse of the largest section (these blocks converge to those of
    ``A_k^-1``). ``formal_block_one_norm`` is the same quantity for
    ``T_k^{*-1} T_k^{-1}`` built from the power-series inverse of the
    symbol, which equals ``k (k-1) / 2``.
    """

    c: complex
    k: int
    curve: FamilyCurve
    symbol_grid_min: float
    symbol_lower_bound: float
    nonzero_diagonals: int
    band_row_sum: float
    section_block_one_norm: float
    formal_block: np.ndarray
    formal_block_one_norm: Fraction

    def to_json(self) -> dict:
        return {
            "c": [self.c.real, self.c.imag],
            "k": self.k,
            "symbol_grid_min": self.symbol_grid_min,
            "symbol_lower_bound": self.symbol_lower_bound,
            "nonzero_diagonals": self.nonzero_diagonals,
            "band_row_sum": self.band_row_sum,
            "section_block_one_norm": self.section_block_one_norm,
            "formal_block_one_norm": str(self.formal_block_one_norm),
            "orders": list(self.curve.orders),
        }


def product_band(c, k: int) -> dict:
    """Diagonals of ``T_k T_k^*``: offset ``d`` maps to the entry at ``(i, i + d)``."""
    f = {0: 1, 1: 1, k: c}
    band = {}
    for a, fa in f.items():
        for b, fb in f.items():
            d = b - a
            band[d] = band.get(d, 0) + fa * np.conj(fb)
    return {d: v for d, v in band.items() if v != 0}


def product_section(c, k: int, n: int) -> np.ndarray:
    band = product_band(c, k)
    A = np.zeros((n, n), dtype=complex)
    for d, v in band.items():
        if abs(d) < n:
            A += np.diag(np.full(n - abs(d), v), d)
    return A.real.copy() if np.all(A.imag == 0) else A


def formal_inverse_block(k: int) -> np.ndarray:
    """Leading ``(k-1)``-block of ``T_k^{*-1} T_k^{-1}`` from ``1/S = 1 - s + s^2 - ...``.

    Entries ``(-1)^(i-j) min(i, j)`` as exact integers.
    """
    m = k - 1
    return np.array([[(-1) ** (i - j) * min(i, j) for j in range(1, m + 1)] for i in range(1, m + 1)],
                    dtype=object)


def symbol_product_experiment(c, k: int, orders, grid_size: int = 1024) -> SymbolProductReport:
    """Spectral gap, norm and inverse-growth measurements for ``A_{n,k}``.

    ``A_{n,k}`` is the order-``n`` leading section of ``A_k = T_k T_k^*``;
    its spectrum lies in the range of ``|1 + s + c s^k|^2`` on the unit circle.
    """
    c = complex(c)
    if not abs(c) > 2:
        raise ArgumentError(f"|c| must exceed 2 for a uniform spectral gap, got |c| = {abs(c)}")
    if k < 3:
        raise ArgumentError("k must be at least 3")
    orders = _check_orders(orders)
    s = np.exp(2j * np.pi * np.arange(grid_size) / grid_size)
    grid_min = float(np.min(np.abs(1 + s + c * s ** k) ** 2))
    rows = []
    last_inv = None
    for n in orders:
        A = product_section(c, k, n)
        A_inv = np.linalg.inv(A)
        rows.append(_measure(A, A_inv))
        last_inv = A_inv
    band = product_band(c, k)
    block = np.abs(last_inv[: k - 1, : k - 1])
    formal = formal_inverse_block(k)
    formal_norm = Fraction(max(sum(abs(v) for v in formal[:, j]) for j in range(k - 1)))
    return SymbolProductReport(
        c, k, FamilyCurve("symbol_product", orders, *zip(*rows), parameters={"c": c, "k": k}),
        grid_min, (abs(c) - 2) ** 2, len(band), float(sum(abs(v) for v in band.values())),
        float(block.sum(axis=0).max()), formal, formal_norm,
    )


# --------------------------------------------------------------------------
# off-diagonal decay


@dataclass(frozen=True)
class DecayFit:
    """``|inv(i, j)| <= K r^|i-j|`` with the largest violation ``max_residual``."""

    K: float
    r: float
    max_residual: float
    holds: bool
    band_width: int

    def to_json(self) -> dict:
        return {"K": self.K, "r": self.r, "max_residual": self.max_residual, "holds": self.holds,
                "band_width": self.band_width}


def band_width(A) -> int:
    F = to_float(as_matrix(A))
    i, j = np.nonzero(F)
    return int(np.max(np.abs(i - j))) if i.size else 0


def demko_decay_check(A, w: int, floor: float = 1e-14) -> DecayFit:
    """Fit exponential off-diagonal decay of ``A^-1`` for a band matrix of width ``w``.

    ``log|inv(i,j)|`` is regressed on ``|i-j|`` over entries above ``floor``;
    ``K`` is then the smallest constant making the bound hold entrywise for
    the fitted ``r``. The fit fails (``holds=False``) when ``r >= 1``.
    """
    A = as_matrix(A)
    F = to_float(A)
    if band_width(F) > w:
        raise ArgumentError(f"matrix is not banded with width {w} (actual width {band_width(F)})")
    inv = np.abs(to_float(inverse(A)))
    n = F.shape[0]
    dist = np.abs(np.arange(n)[:, None] - np.arange(n)[None, :])
    mask = (inv > floor) & (dist > 0)
    if not np.any(mask):
        r = 0.5
    else:
        x = dist[mask].astype(float)
        yv = np.log(inv[mask])
        slope = np.polyfit(x, yv, 1)[0] if np.ptp(x) > 0 else math.log(0.5)
        r = float(math.exp(slope))
    if not r < 1:
        return DecayFit(float(inv.max()), r, math.inf, False, w)
    scale = r ** dist.astype(float)
    K = float(np.max(inv / scale))
    resid = float(np.max(inv - K * scale))
    return DecayFit(K, r, resid, resid <= 1e-12 * K, w)


# --------------------------------------------------------------------------
# oscillatory and totally nonnegative bounds


@dataclass(frozen=True)
class InverseBound:
    bound: float
    actual: float
    holds: bool

    def to_json(self) -> dict:
        return {"bound": self.bound, "actual": self.actual, "holds": self.holds}


def min_eigenvector(A, tol: float = 1e-12, max_iter: int = 500) -> tuple[float, np.ndarray]:
    """Least eigenvalue and unit eigenvector of a Hermitian positive definite matrix.

    Inverse iteration seeded with the alternating vector ``(1, -1, 1, ...)``
    and shifted just below the LAPACK estimate of ``lambda_min``, so close
    eigenvalue pairs do not stall it; stops once
    ``||A v - lambda v||_inf <= tol * ||A||_inf``.
    """
    F = to_float(as_matrix(A))
    n = F.shape[0]
    estimate = float(np.linalg.eigvalsh(F)[0])
    shift = estimate - 1e-6 * max(abs(estimate), 1e-300)
    lu = scipy.linalg.lu_factor(F - shift * np.eye(n))
    v = (-1.0) ** np.arange(n)
    v /= np.linalg.norm(v)
    scale = float(p_norm(F, "inf"))
    for _ in range(max_iter):
        v = scipy.linalg.lu_solve(lu, v)
        v /= np.linalg.norm(v)
        lam = float(np.real(v.conj() @ F @ v))
        if vector_inf_norm(F @ v - lam * v) <= tol * scale:
            break
    else:
        raise NumericalError(f"inverse iteration did not reach residual {tol} in {max_iter} steps")
    if v[0].real < 0:
        v = -v
    return lam, v


def oscillatory_inverse_bound(A, tol: float = 1e-10) -> InverseBound:
    """``||A^-1||_inf <= ||A||_inf / lambda_min^2`` for oscillatory Hermitian ``A``."""
    A = as_matrix(A)
    if not is_hermitian(A, tol=1e-12):
        raise ArgumentError("input is not Hermitian")
    osc = is_oscillatory(A, tol)
    if not osc.holds:
        raise ArgumentError(f"input is not oscillatory ({osc.detail.get('failed', 'TN')} fails at "
                            f"rows {osc.witness.rows}, cols {osc.witness.cols})")
    F = to_float(A)
    lam = float(np.linalg.eigvalsh(F)[0])
    bound = float(p_norm(F, "inf")) / lam ** 2
    actual = float(p_norm(inverse(F), "inf"))
    return InverseBound(bound, actual, actual <= bound * (1 + 1e-9))


def deboor_lemma_bound(A, x, y, tol: float = 1e-10, check_limit: int = 50) -> float:
    """``||x||_inf / min|y|``, an upper bound for ``||A^-1||_inf`` when ``A`` is TN.

    Requires ``A x = y`` and strictly alternating signs
    ``sign x(i) = sign y(i) = (-1)^(i-1)``. For orders up to
    ``check_limit`` the bound is compared with the direct inverse and a
    :class:`ConsistencyError` is raised if it fails.
    """
    A = as_matrix(A)
    F = to_float(A)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = F.shape[0]
    if x.shape != (n,) or y.shape != (n,):
        raise ArgumentError("x and y must be vectors of the matrix order")
    for name, v in (("x", x), ("y", y)):
        for i, val in enumerate(v):
            if not val * (-1) ** i > 0:
                raise ArgumentError(f"sign pattern of {name} fails at index {i + 1}")
    resid = vector_inf_norm(F @ x - y)
    if resid > tol * (float(p_norm(F, "inf")) * vector_inf_norm(x) + vector_inf_norm(y)):
        raise ArgumentError(f"A x = y fails with residual {resid:.3e}")
    tn = is_totally_nonnegative(A, tol)
    if not tn.holds:
        raise ArgumentError(f"input is not totally nonnegative (minor rows {tn.witness.rows}, "
                            f"cols {tn.witness.cols})")
    try:
        A_inv = inverse(A)
    except SingularMatrixError as exc:
        raise ArgumentError("input is singular") from exc
    bound = vector_inf_norm(x) / float(np.min(np.abs(y)))
    if n <= check_limit:
        actual = float(p_norm(A_inv, "inf"))
        if actual > bound * (1 + 1e-9):
            raise ConsistencyError(f"bound {bound} below the direct inverse norm {actual}")
    return bound


def theorem_pipeline(A) -> tuple[float, float, InverseBound]:
    """Feed the least eigenpair into the de Boor bound.

    With ``v`` the eigenvector of ``lambda_min`` (alternating signs for an
    oscillatory matrix), ``x = v`` and ``y = lambda_min v`` give
    ``||v||_inf / (lambda_min min|v|)``. Returns that bound, the eigenvalue,
    and the ``||A||_inf / lambda_min^2`` report.
    """
    lam, v = min_eigenvector(A)
    return deboor_lemma_bound(A, v, lam * v), lam, oscillatory_inverse_bound(A)


def sign_changes(v, tol: float = 0.0) -> int:
    signs = [x > 0 for x in v if abs(x) > tol]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


# --------------------------------------------------------------------------
# perturbation


@dataclass(frozen=True)
class NeumannBound:
    bound: float
    actual: float
    applicable: bool

    @property
    def holds(self) -> bool:
        return self.applicable and self.actual <= self.bound * (1 + 1e-9)


def neumann_inverse_bound(A, B, p="inf") -> NeumannBound:
    """``||A^-1|| <= ||B^-1|| / (1 - ||A - B|| ||B^-1||)`` when ``||A - B|| ||B^-1|| < 1``."""
    A = to_float(as_matrix(A))
    B = to_float(as_matrix(B))
    if A.shape != B.shape:
        raise ArgumentError("A and B must have the same shape")
    B_inv = np.linalg.inv(B)
    q = float(p_norm(A - B, p)) * float(p_norm(B_inv, p))
    if not q < 1:
        return NeumannBound(math.inf, float(p_norm(np.linalg.inv(A), p)), False)
    return NeumannBound(float(p_norm(B_inv, p)) / (1 - q), float(p_norm(np.linalg.inv(A), p)), True)
