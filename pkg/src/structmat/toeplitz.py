"""Banded Toeplitz operators: symbols, winding-number spectra, limit sets of
finite sections, and Gohberg-Semencul inversion.

Conventions: the Toeplitz matrix of a band has entry ``tau(i - j)`` at
``(i, j)`` and symbol ``S(s) = sum_j tau(-j) s^j``. Polynomials are stored
as ascending coefficient arrays.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np
import scipy.linalg

from .core import as_matrix, is_exact, to_float, vector_inf_norm, p_norm
from .exceptions import ArgumentError, ConsistencyError, DegenerateDegreeError, NumericalError, PreconditionError
from .spectral import eigenvalues


# --------------------------------------------------------------------------
# bands and symbols


@dataclass(frozen=True)
class ToeplitzBand:
    """Finite-band Toeplitz operator given by ``tau(j)`` for a few offsets ``j``."""

    coefficients: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(j): v for j, v in self.coefficients.items() if v != 0}
        object.__setattr__(self, "coefficients", clean)

    @classmethod
    def from_hessenberg_row(cls, first_row) -> "ToeplitzBand":
        """Band with ``tau(1) = 1`` and ``tau(-j) = first_row[j]``."""
        coeffs = {-j: a for j, a in enumerate(first_row)}
        coeffs[1] = 1
        return cls(coeffs)

    @property
    def width(self) -> int:
        return max((abs(j) for j in self.coefficients), default=0)

    def __call__(self, s):
        s = np.asarray(s, dtype=complex)
        out = np.zeros_like(s)
        for j, v in self.coefficients.items():
            out = out + complex(v) * s ** (-j)
        return out

    def section(self, n: int) -> np.ndarray:
        """The order-``n`` finite section (exact when all coefficients are rational)."""
        exact = all(isinstance(v, (int, Fraction)) for v in self.coefficients.values())
        if exact:
            T = np.full((n, n), Fraction(0), dtype=object)
        else:
            T = np.zeros((n, n), dtype=complex if any(isinstance(v, complex) for v in self.coefficients.values())
                         else float)
        for j, v in self.coefficients.items():
            for i in range(max(0, j), min(n, n + j)):
                T[i, i - j] = Fraction(v) if exact else v
        return T


@dataclass(frozen=True)
class RationalSymbol:
    """Symbol ``F(s) / (G(s) H(s))``; ``p = deg G``.

    The limit set of the finite sections is the set of ``lambda`` for which
    the ``p``-th and ``(p+1)``-th roots of ``F - lambda G H`` (ordered by
    modulus) have equal modulus.
    """

    F: tuple
    G: tuple
    H: tuple

    def __post_init__(self):
        for name in ("F", "G", "H"):
            coeffs = list(getattr(self, name))
            while len(coeffs) > 1 and coeffs[-1] == 0:
                coeffs.pop()
            if not coeffs or all(c == 0 for c in coeffs):
                raise ArgumentError(f"polynomial {name} must be nonzero")
            object.__setattr__(self, name, tuple(coeffs))

    @property
    def p(self) -> int:
        return len(self.G) - 1

    def GH(self) -> np.ndarray:
        return np.convolve(np.array(self.G, dtype=complex), np.array(self.H, dtype=complex))

    def __call__(self, s):
        s = np.asarray(s, dtype=complex)
        f = np.polynomial.polynomial.polyval(s, np.array(self.F, dtype=complex))
        g = np.polynomial.polynomial.polyval(s, self.GH())
        return f / g

    def shares_factor(self, tol: float = 1e-9) -> bool:
        """True when ``F`` and ``G H`` have a common root (to ``tol``)."""
        if len(self.F) < 2:
            return False
        rf = polynomial_roots(self.F)
        rg = polynomial_roots(self.GH())
        return bool(any(np.min(np.abs(rg - r)) <= tol * max(1.0, abs(r)) for r in rf)) if rg.size else False


@dataclass(frozen=True)
class CurveSamples:
    theta: np.ndarray
    points: np.ndarray

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["theta", "re", "im"])
        for th, z in zip(self.theta, self.points):
            w.writerow([repr(float(th)), repr(float(z.real)), repr(float(z.imag))])
        return buf.getvalue()


def symbol_curve(T, grid_size: int = 512) -> CurveSamples:
    """Image of the unit circle under the symbol, on a uniform closed grid.

    ``T`` is a :class:`ToeplitzBand`, a :class:`RationalSymbol` or any
    vectorized callable. The grid has ``grid_size + 1`` parameters with the
    last equal to ``2 pi``.
    """
    if grid_size < 8:
        raise ArgumentError("grid_size must be at least 8")
    theta = np.linspace(0.0, 2 * np.pi, grid_size + 1)
    theta[-1] = 2 * np.pi
    s = np.exp(1j * theta)
    s[-1] = s[0]
    return CurveSamples(theta, np.asarray(T(s), dtype=complex))


def _segment_distance(z, a, b):
    d = b - a
    L2 = np.abs(d) ** 2
    u = np.where(L2 > 0, np.real((z - a) * np.conj(d)) / np.where(L2 > 0, L2, 1.0), 0.0)
    u = np.clip(u, 0.0, 1.0)
    return np.abs(a + u * d - z)


def winding_number(T, lam, tol: float = 1e-9, start: int = 256, max_samples: int = 1 << 22):
    """Winding number of ``S(e^{i theta}) - lambda`` about the origin.

    Returns ``None`` when ``lambda`` lies within ``tol`` of the curve. The
    grid is doubled until every argument step is below ``pi/4``.
    """
    n = start
    while n <= max_samples:
        theta = np.linspace(0.0, 2 * np.pi, n + 1)
        s = np.exp(1j * theta)
        s[-1] = s[0]
        z = np.asarray(T(s), dtype=complex)
        if not np.all(np.isfinite(z)):
            raise NumericalError("symbol is not finite on the unit circle")
        dist = _segment_distance(lam, z[:-1], z[1:])
        if np.min(dist) <= tol * max(1.0, abs(lam)):
            return None
        w = z - lam
        steps = np.angle(w[1:] / w[:-1])
        if np.max(np.abs(steps)) < np.pi / 4:
            return int(round(np.sum(steps) / (2 * np.pi)))
        n *= 2
    raise NumericalError(f"winding number did not resolve with {max_samples} samples")


def winding_spectrum_member(T, lam, tol: float = 1e-9) -> bool:
    """Spectrum membership for the infinite Toeplitz operator: on the curve or nonzero winding."""
    w = winding_number(T, complex(lam), tol)
    return True if w is None else w != 0


# --------------------------------------------------------------------------
# limit sets of finite sections


def polynomial_roots(coeffs) -> np.ndarray:
    """Roots of an ascending-coefficient polynomial from its balanced companion matrix."""
    c = np.array(coeffs, dtype=complex)
    nz = np.nonzero(c)[0]
    if nz.size == 0:
        raise ArgumentError("zero polynomial has no roots")
    c = c[: nz[-1] + 1]
    low = nz[0]
    d = len(c) - 1
    if d == 0:
        return np.zeros(0, dtype=complex)
    C = np.zeros((d, d), dtype=complex)
    C[0, :] = -c[-2::-1] / c[-1]
    if d > 1:
        C[1:, :-1] = np.eye(d - 1)
    B, _ = scipy.linalg.matrix_balance(C, permute=False)
    roots = np.linalg.eigvals(B)
    # exact zeros from trailing factor s^low
    if low:
        order = np.argsort(np.abs(roots))
        roots[order[:low]] = 0.0
    if np.all(c.imag == 0):
        roots = np.where(np.abs(roots.imag) <= 1e-15 * np.maximum(1.0, np.abs(roots)), roots.real, roots)
    return roots


@dataclass(frozen=True)
class DayMembership:
    is_member: bool
    gap: float
    moduli: tuple


def day_limit_member(sym: RationalSymbol, lam, tol: float = 1e-8) -> DayMembership:
    """Limit-set membership of ``lambda`` for the finite sections of ``sym``.

    Roots ``r_1, r_2, ...`` of ``F - lambda G H`` ordered by modulus;
    ``lambda`` is a member when ``||r_p| - |r_(p+1)|| <= tol * max(1, |r_p|)``.
    The reported ``gap`` is ``|r_(p+1)| - |r_p|``.
    """
    lam = complex(lam)
    F = np.array(sym.F, dtype=complex)
    GH = sym.GH()
    m = max(len(F), len(GH))
    R = np.zeros(m, dtype=complex)
    R[: len(F)] += F
    R[: len(GH)] -= lam * GH
    scale = float(np.max(np.abs(np.concatenate([F, lam * GH])))) or 1.0
    small = np.abs(R) <= 1e-14 * scale
    R[small] = 0
    nz = np.nonzero(R)[0]
    if nz.size == 0:
        raise DegenerateDegreeError(f"F - lambda G H vanishes identically at lambda={lam}")
    deg = int(nz[-1])
    p = sym.p
    if deg < p + 1:
        raise DegenerateDegreeError(f"degree of F - lambda G H drops to {deg} < p+1 = {p + 1} at lambda={lam}")
    roots = polynomial_roots(R[: deg + 1])
    mods = np.sort(np.abs(roots))
    rp, rq = mods[p - 1], mods[p]
    gap = float(rq - rp)
    return DayMembership(bool(abs(gap) <= tol * max(1.0, rp)), gap, tuple(float(x) for x in mods))


def day_gap(sym: RationalSymbol, lam) -> float:
    return day_limit_member(sym, lam).gap


@dataclass(frozen=True)
class NegativeAxisScan:
    """Limit-set gaps of the counterexample symbol along a stretch of the negative real axis."""

    k: int
    t: float
    lambdas: tuple
    gaps: tuple
    tol: float

    @property
    def members(self) -> tuple:
        return tuple(lam for lam, g in zip(self.lambdas, self.gaps) if abs(g) <= self.tol * max(1.0, abs(lam)))

    @property
    def min_gap(self) -> float:
        return min(self.gaps)

    def to_json(self) -> dict:
        i = int(np.argmin(self.gaps))
        return {"k": self.k, "t": self.t, "points": len(self.lambdas), "lambda_min": self.lambdas[0],
                "min_gap": self.gaps[i], "argmin_lambda": self.lambdas[i], "members": list(self.members)}


def negative_axis_scan(k: int, t, lam_min: float = -1.0, points: int = 400,
                       tol: float = 1e-8) -> NegativeAxisScan:
    """Probe ``(lam_min, 0)`` on a uniform grid for limit points of the counterexample sections.

    Reports the gaps only; whether the limit set meets the negative axis
    for small ``t`` is an open question the scan explores.
    """
    from .counterexample import counterexample_symbol

    if not lam_min < 0:
        raise ArgumentError("lam_min must be negative")
    if points < 2:
        raise ArgumentError("need at least two probe points")
    sym = counterexample_symbol(k, t)
    lams = lam_min * (1 - np.arange(points) / points)
    gaps = []
    for lam in lams:
        try:
            gaps.append(day_gap(sym, lam))
        except DegenerateDegreeError:
            gaps.append(math.nan)
    keep = [(float(lam), g) for lam, g in zip(lams, gaps) if not math.isnan(g)]
    return NegativeAxisScan(k, float(t), tuple(l for l, _ in keep), tuple(g for _, g in keep), tol)


@dataclass(frozen=True)
class BiernackiStar:
    p: int
    q: int
    radius_max: float
    ray_roots_of_unity_count: int

    @property
    def rays(self) -> np.ndarray:
        m = self.ray_roots_of_unity_count
        return np.exp(2j * np.pi * np.arange(m) / m)

    def contains(self, lam, tol: float = 1e-9) -> bool:
        lam = complex(lam)
        if abs(lam) > self.radius_max * (1 + tol) + tol:
            return False
        if abs(lam) <= tol:
            return True
        ang = np.angle(lam * np.conj(self.rays))
        return bool(np.min(np.abs(ang)) * abs(lam) <= tol * max(1.0, abs(lam)))


def biernacki_star(p: int, q: int) -> BiernackiStar:
    """Star ``{eps * r : 0 <= r <= (p+q) p^(-p/(p+q)) q^(-q/(p+q)), eps^(p+q) = 1}``."""
    if p < 1 or q < 1:
        raise ArgumentError("p and q must be positive")
    if gcd(p, q) != 1:
        raise ArgumentError(f"p={p} and q={q} are not coprime")
    m = p + q
    radius = m * p ** (-p / m) * q ** (-q / m)
    return BiernackiStar(p, q, radius, m)


# --------------------------------------------------------------------------
# finite-section sweeps


@dataclass(frozen=True)
class SweepResult:
    orders: tuple
    spectra: dict

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["order", "re", "im"])
        for n in self.orders:
            for z in self.spectra[n]:
                w.writerow([n, repr(float(z.real)), repr(float(z.imag))])
        return buf.getvalue()

    def order_csv(self, n: int) -> str:
        return SweepResult((n,), {n: self.spectra[n]}).to_csv()


def _section_builder(T):
    from .counterexample import counterexample_matrix

    if isinstance(T, ToeplitzBand):
        return lambda n: to_float(T.section(n))
    if isinstance(T, tuple) and len(T) == 2:
        k, t = T
        return lambda n: counterexample_matrix(n, k, t, exact=False)
    if callable(T):
        return T
    raise ArgumentError("sweep target must be a ToeplitzBand, a (k, t) pair or a section builder")


def finite_section_sweep(T, orders) -> SweepResult:
    """Eigenvalues of the finite sections of ``T`` for ascending ``orders``.

    ``T`` is a :class:`ToeplitzBand` or a ``(k, t)`` pair of counterexample
    parameters.
    """
    orders = tuple(int(n) for n in orders)
    if not orders or any(n < 1 for n in orders):
        raise ArgumentError("orders must be positive")
    if any(b <= a for a, b in zip(orders, orders[1:])):
        raise ArgumentError("orders must be strictly ascending")
    build = _section_builder(T)
    return SweepResult(orders, {n: eigenvalues(build(n)) for n in orders})


def day_gap_statistic(sym: RationalSymbol, eigs) -> float:
    """Median over ``eigs`` of the limit-set gap ``|r_(p+1)| - |r_p|``.

    Points where the degree of ``F - lambda G H`` drops are skipped.
    """
    gaps = []
    for lam in eigs:
        try:
            gaps.append(day_gap(sym, lam))
        except DegenerateDegreeError:
            continue
    if not gaps:
        raise NumericalError("no eigenvalue admits a limit-set gap")
    return float(np.median(gaps))


# --------------------------------------------------------------------------
# Gohberg-Semencul inversion


def _lower_toeplitz(col, exact):
    n = len(col)
    if exact:
        M = np.full((n, n), Fraction(0), dtype=object)
    else:
        M = np.zeros((n, n), dtype=complex if np.iscomplexobj(np.asarray(col)) else float)
    for i in range(n):
        for j in range(i + 1):
            M[i, j] = col[i - j]
    return M


def gohberg_semencul_inverse(T, x, y, tol: float = 1e-10) -> np.ndarray:
    """Inverse of a Toeplitz matrix from the solutions of ``T x = e_1`` and ``T y = e_n``.

    ``y`` is the solution vector in natural order, i.e.
    ``(y_(-n+1), ..., y_(-1), y_0)``. The result is
    ``x_0^-1 [L(x) U(y) - L0(y) U0(x)]`` with triangular Toeplitz factors:
    ``L(x)`` lower with first column ``x``, ``U(y)`` upper with first row
    ``(y_0, y_(-1), ..., y_(-n+1))``, ``L0(y)`` strictly lower with first
    column ``(0, y_(-n+1), ..., y_(-1))`` and ``U0(x)`` strictly upper with
    first row ``(0, x_(n-1), ..., x_1)``.
    """
    T = as_matrix(T)
    n = T.shape[0]
    exact = is_exact(T) and all(isinstance(v, (int, Fraction)) for v in list(x) + list(y))
    if exact:
        x = [Fraction(v) for v in x]
        y = [Fraction(v) for v in y]
        e1 = [Fraction(int(i == 0)) for i in range(n)]
        en = [Fraction(int(i == n - 1)) for i in range(n)]
        if list(T.dot(np.array(x, dtype=object))) != e1 or list(T.dot(np.array(y, dtype=object))) != en:
            raise ArgumentError("x and y must solve T x = e_1 and T y = e_n")
        if x[0] == 0:
            raise PreconditionError("x_0 = 0: the Gohberg-Semencul formula does not apply")
    else:
        Tf = to_float(T)
        x = np.asarray(x, dtype=complex if np.iscomplexobj(Tf) or np.iscomplexobj(x) else float)
        y = np.asarray(y, dtype=x.dtype)
        scale = float(p_norm(Tf, "inf")) * max(vector_inf_norm(x), vector_inf_norm(y)) + 1.0
        r1 = Tf @ x
        r1[0] -= 1
        r2 = Tf @ y
        r2[-1] -= 1
        if max(vector_inf_norm(r1), vector_inf_norm(r2)) > tol * scale:
            raise ArgumentError("x and y must solve T x = e_1 and T y = e_n to tolerance")
        if abs(x[0]) < 1e-12:
            raise PreconditionError("x_0 is numerically zero: the Gohberg-Semencul formula does not apply")
    zero = Fraction(0) if exact else 0.0
    y_rev = list(y[::-1])                       # y_0, y_-1, ..., y_-(n-1)
    Lx = _lower_toeplitz(list(x), exact)
    Uy = _lower_toeplitz(y_rev, exact).T
    L0y = _lower_toeplitz([zero] + list(y[: n - 1]), exact)
    U0x = _lower_toeplitz([zero] + list(x[:0:-1]), exact).T
    M = Lx.dot(Uy) - L0y.dot(U0x)
    return M / x[0] if not exact else np.vectorize(lambda v: v / x[0], otypes=[object])(M)


def counterexample_xy(n: int, k: int, t) -> tuple[list, list]:
    """Closed-form solutions of ``A x = e_1`` and ``A y = e_n`` for the counterexample family.

    With ``s = 1/t``: ``x_l = (-1)^l s^(l+1)`` for ``l <= n-k-2`` and
    ``(-1)^l s^(n-k-1)`` beyond; ``y_0 = s``, ``y_l = (-1)^(l+1) (1-s)`` for
    ``-k-1 <= l <= -1`` and zero below. ``y`` is returned in natural order
    ``(y_(-n+1), ..., y_0)``. Both are checked against the matrix before
    returning.
    """
    from .counterexample import _check_k, _check_n, _check_t, counterexample_matrix

    n, k, t = _check_n(n), _check_k(k), _check_t(t)
    if n < k + 2:
        raise ArgumentError(f"closed forms need n >= k+2, got n={n}, k={k}")
    s = 1 / t
    def sign(e):
        return 1 if e % 2 == 0 else -1

    x = [sign(l) * s ** (l + 1) if l <= n - k - 2 else sign(l) * s ** (n - k - 1) for l in range(n)]
    yl = {0: s}
    for l in range(-1, -n, -1):
        yl[l] = sign(l + 1) * (1 - s) if l >= -k - 1 else 0 * s
    y = [yl[l] for l in range(-n + 1, 1)]
    A = counterexample_matrix(n, k, t)
    if is_exact(A):
        r1 = A.dot(np.array(x, dtype=object))
        r2 = A.dot(np.array(y, dtype=object))
        ok = list(r1) == [int(i == 0) for i in range(n)] and list(r2) == [int(i == n - 1) for i in range(n)]
    else:
        r1 = A @ np.array(x) - np.eye(n)[0]
        r2 = A @ np.array(y) - np.eye(n)[-1]
        scale = float(p_norm(A, "inf")) * max(vector_inf_norm(x), vector_inf_norm(y))
        ok = max(vector_inf_norm(r1), vector_inf_norm(r2)) <= 1e-9 * scale
    if not ok:
        raise ConsistencyError(f"closed-form x/y fail the residual check for n={n}, k={k}, t={t}")
    return x, y
