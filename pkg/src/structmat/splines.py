"""B-spline Gram matrices of the least-squares spline projector.

For a knot sequence ``t_1 <= ... <= t_(n+k)`` and order ``k`` the matrix is
``G(i, j) = k / (t_(i+k) - t_i) * integral B_ik B_jk``. It is banded,
totally nonnegative and diagonally similar to a symmetric matrix.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .core import p_norm
from .exceptions import ArgumentError


@dataclass(frozen=True)
class KnotSequence:
    """Nondegenerate knots for splines of order ``k``: ``t_i < t_(i+k)``."""

    knots: tuple
    k: int

    def __post_init__(self):
        t = tuple(float(v) for v in self.knots)
        object.__setattr__(self, "knots", t)
        if self.k < 1:
            raise ArgumentError("order k must be positive")
        if len(t) < self.k + 1:
            raise ArgumentError(f"need at least k+1 = {self.k + 1} knots, got {len(t)}")
        if any(b < a for a, b in zip(t, t[1:])):
            raise ArgumentError("knots must be nondecreasing")
        for i in range(len(t) - self.k):
            if not t[i] < t[i + self.k]:
                raise ArgumentError(f"degenerate knots: t_{i + 1} = t_{i + 1 + self.k} = {t[i]}")

    @property
    def n(self) -> int:
        return len(self.knots) - self.k

    @property
    def array(self) -> np.ndarray:
        return np.array(self.knots)

    @classmethod
    def from_json(cls, text_or_obj, k: int | None = None) -> "KnotSequence":
        """Accept a JSON array of knots (``k`` then required) or ``{"knots": [...], "k": k}``."""
        obj = json.loads(text_or_obj) if isinstance(text_or_obj, str) else text_or_obj
        if isinstance(obj, dict):
            return cls(tuple(obj["knots"]), int(obj.get("k", k)))
        if k is None:
            raise ArgumentError("order k is required for a bare knot array")
        return cls(tuple(obj), k)

    def to_json(self) -> dict:
        return {"knots": list(self.knots), "k": self.k}


def uniform_knots(n: int, k: int) -> KnotSequence:
    """Integer knots ``0, 1, ..., n+k-1``."""
    return KnotSequence(tuple(range(n + k)), k)


def wild_knots(n: int, k: int, rng: np.random.Generator, stress: float = 5.0) -> KnotSequence:
    """Knots on ``[0, 1]`` with spacings ``exp(u * stress)``, ``u`` uniform on ``[-1, 1]``."""
    if not 0 <= stress <= 10:
        raise ArgumentError("stress must lie in [0, 10]")
    gaps = np.exp(rng.uniform(-1.0, 1.0, size=n + k - 1) * stress)
    t = np.concatenate([[0.0], np.cumsum(gaps)])
    return KnotSequence(tuple(t / t[-1]), k)


# --------------------------------------------------------------------------
# evaluation


def _basis_at(t: np.ndarray, k: int, x: np.ndarray, left: np.ndarray) -> np.ndarray:
    """All order-``k`` B-splines at ``x``; shape ``(len(x), len(t) - k)``.

    ``left[p]`` selects left-continuous order-1 indicators at point ``p``.
    """
    x = np.asarray(x, dtype=float)
    m = len(t) - 1
    lo, hi = t[:-1][None, :], t[1:][None, :]
    xc = x[:, None]
    right_cont = (lo <= xc) & (xc < hi)
    left_cont = (lo < xc) & (xc <= hi)
    B = np.where(left[:, None], left_cont, right_cont).astype(float)
    for r in range(2, k + 1):
        cols = m - r + 1
        new = np.zeros((x.size, cols))
        for i in range(cols):
            d1 = t[i + r - 1] - t[i]
            d2 = t[i + r] - t[i + 1]
            if d1 > 0:
                new[:, i] += (x - t[i]) / d1 * B[:, i]
            if d2 > 0:
                new[:, i] += (t[i + r] - x) / d2 * B[:, i + 1]
        B = new
    return B


def basis_matrix(knots: KnotSequence, x) -> np.ndarray:
    """``B_jk(x_p)`` for every point and every ``j``; points must lie in ``[t_1, t_(n+k)]``.

    At the right end of the basic interval ``t_(n+1)`` and at the last knot
    the order-1 indicators are taken left-continuous, so the partition of
    unity holds on the closed interval ``[t_k, t_(n+1)]``.
    """
    t = knots.array
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x < t[0]) or np.any(x > t[-1]):
        raise ArgumentError(f"points must lie in [{t[0]}, {t[-1]}]")
    left = (x == t[knots.n]) | (x == t[-1])
    return _basis_at(t, knots.k, x, left)


def bspline_eval(knots: KnotSequence, i: int, x) -> float:
    """Value of the ``i``-th (1-based) B-spline of order ``knots.k`` at ``x``."""
    if not 1 <= i <= knots.n:
        raise ArgumentError(f"index i must lie in 1..{knots.n}")
    return float(basis_matrix(knots, [x])[0, i - 1])


# --------------------------------------------------------------------------
# Gram matrices


@dataclass(frozen=True)
class GramMatrix:
    matrix: np.ndarray
    knots: KnotSequence
    row_scale: np.ndarray

    @property
    def k(self) -> int:
        return self.knots.k

    @property
    def unscaled(self) -> np.ndarray:
        """``integral B_ik B_jk`` without the row scaling."""
        return self.matrix / self.row_scale[:, None]


def gram_matrix(knots: KnotSequence) -> GramMatrix:
    """``k / (t_(i+k) - t_i) * integral B_ik B_jk`` by Gauss-Legendre quadrature.

    ``k`` nodes per knot interval integrate the degree ``2k-2`` products
    exactly.
    """
    k, n, t = knots.k, knots.n, knots.array
    nodes, weights = np.polynomial.legendre.leggauss(k)
    M = np.zeros((n, n))
    for j in range(len(t) - 1):
        a, b = t[j], t[j + 1]
        if b <= a:
            continue
        x = (a + b) / 2 + (b - a) / 2 * nodes
        w = (b - a) / 2 * weights
        B = _basis_at(t, k, x, np.zeros(x.size, bool))
        M += (B * w[:, None]).T @ B
    # exact zeros outside the band
    idx = np.arange(n)
    M[np.abs(idx[:, None] - idx[None, :]) >= k] = 0.0
    scale = k / (t[k:k + n] - t[:n])
    return GramMatrix(scale[:, None] * M, knots, scale)


def symmetrize(G: GramMatrix) -> tuple[np.ndarray, np.ndarray]:
    """``D`` positive diagonal and symmetric ``H`` with ``G = D H D^-1``.

    ``D(i, i) = sqrt(k / (t_(i+k) - t_i))``.
    """
    d = np.sqrt(G.row_scale)
    H = G.matrix / d[:, None] * d[None, :]
    H = (H + H.T) / 2
    return np.diag(d), H


# --------------------------------------------------------------------------
# experiment


@dataclass(frozen=True)
class SplineSample:
    seed: int
    n: int
    k: int
    inv_norm_inf: float
    lambda_min: float
    symmetric_bound: float
    symmetric_inv_norm_inf: float


@dataclass(frozen=True)
class DeBoorExperiment:
    """Per-sample inverse norms and least eigenvalues of wild-mesh Gram matrices.

    ``symmetric_bound`` is ``||H||_inf / lambda_min(H)^2``, which bounds
    ``||H^-1||_inf`` but not ``||G^-1||_inf``: the similarity ``D`` is not
    uniformly conditioned, so the symmetric route gives no uniform bound
    for ``G``.
    """

    k: int
    samples: tuple

    @property
    def max_inv_norm(self) -> float:
        return max(s.inv_norm_inf for s in self.samples)

    @property
    def min_lambda(self) -> float:
        return min(s.lambda_min for s in self.samples)

    @property
    def symmetric_bound_misses(self) -> int:
        """Samples where ``||G^-1||_inf`` exceeds the bound obtained for ``H``."""
        return sum(1 for s in self.samples if s.inv_norm_inf > s.symmetric_bound)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["seed", "n", "k", "inv_norm_inf", "lambda_min"])
        for s in self.samples:
            w.writerow([s.seed, s.n, s.k, repr(s.inv_norm_inf), repr(s.lambda_min)])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {"k": self.k, "samples": len(self.samples), "max_inv_norm_inf": self.max_inv_norm,
                "min_lambda_min": self.min_lambda, "symmetric_bound_misses": self.symmetric_bound_misses}


def sample_gram(knots: KnotSequence, seed: int = 0) -> SplineSample:
    G = gram_matrix(knots)
    _, H = symmetrize(G)
    lam = float(np.linalg.eigvalsh(H)[0])
    inv_G = float(p_norm(np.linalg.inv(G.matrix), "inf"))
    inv_H = float(p_norm(np.linalg.inv(H), "inf"))
    bound = float(p_norm(H, "inf")) / lam ** 2
    return SplineSample(seed, knots.n, knots.k, inv_G, lam, bound, inv_H)


def deboor_conjecture_experiment(k: int, knot_samples: int, n_max: int, seed: int = 0,
                                 stress: float = 5.0) -> DeBoorExperiment:
    """Sweep ``knot_samples`` seeded wild meshes with dimensions up to ``n_max``.

    Sample ``s`` draws from ``numpy.random.default_rng(seed + s)`` and is
    labelled with that seed; its dimension is uniform on ``[k, n_max]``.
    """
    if k not in (1, 2, 3, 4):
        raise ArgumentError("order k must be 1, 2, 3 or 4")
    if n_max < k:
        raise ArgumentError("n_max must be at least k")
    out = []
    for s in range(knot_samples):
        rng = np.random.default_rng(seed + s)
        n = int(rng.integers(k, n_max + 1))
        out.append(sample_gram(wild_knots(n, k, rng, stress), seed=seed + s))
    return DeBoorExperiment(k, tuple(out))
