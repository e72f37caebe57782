"""Toeplitz upper-Hessenberg counterexample family and its closed forms.

The family ``A(n, k, t)`` is the order-``n`` section of an infinite Toeplitz
matrix with ones on the first subdiagonal, zeros below it, and first row
``a_0, a_1, ...`` chosen so that the leading principal minors are
``d_m = t**max(m - k - 1, 0)``. Its limit as ``t -> 0`` at order ``2k+2`` is
available from :func:`build_limit`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .core import as_matrix, minor
from .exceptions import ArgumentError, PoleError
from .predicates import hurwitz_matrix


def parse_parameter(t):
    """Accept a Fraction, an int, a ``"p/q"`` or decimal string (kept exact) or a float."""
    if isinstance(t, bool):
        raise ArgumentError("parameter must be a number")
    if isinstance(t, Fraction):
        return t
    if isinstance(t, (int, np.integer)):
        return Fraction(int(t))
    if isinstance(t, str):
        try:
            return Fraction(t.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ArgumentError(f"cannot parse {t!r} as a rational number") from exc
    if isinstance(t, (float, np.floating)):
        return float(t)
    raise ArgumentError(f"unsupported parameter type {type(t).__name__}")


def _check_k(k):
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 1:
        raise ArgumentError(f"k must be a positive integer, got {k!r}")
    return int(k)


def _check_n(n):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise ArgumentError(f"order must be a positive integer, got {n!r}")
    return int(n)


def _check_t(t):
    t = parse_parameter(t)
    if not 0 < t < 1:
        raise ArgumentError(f"t must lie in (0, 1), got {t}")
    return t


# --------------------------------------------------------------------------
# construction


@dataclass(frozen=True)
class ToeplitzHessenberg:
    """Toeplitz matrix with first row ``first_row``, ones on the subdiagonal, zeros below."""

    first_row: tuple
    order: int

    def __post_init__(self):
        if len(self.first_row) != self.order:
            raise ArgumentError("first row length must equal the order")

    @property
    def exact(self) -> bool:
        return all(isinstance(a, (Fraction, int)) for a in self.first_row)

    def to_array(self, exact: bool | None = None) -> np.ndarray:
        """Dense matrix; exact (Fraction object array) when the entries are rational."""
        n = self.order
        use_exact = self.exact if exact is None else exact
        if use_exact:
            A = np.full((n, n), Fraction(0), dtype=object)
            row = [Fraction(a) for a in self.first_row]
            one = Fraction(1)
        else:
            A = np.zeros((n, n))
            row = [float(a) for a in self.first_row]
            one = 1.0
        for i in range(n):
            for j in range(i, n):
                A[i, j] = row[j - i]
            if i + 1 < n:
                A[i + 1, i] = one
        return A

    def leading_minors(self) -> list:
        """``d_1 .. d_n`` from the Hessenberg minor recurrence."""
        d = [Fraction(1) if self.exact else 1.0]
        for m in range(1, self.order + 1):
            d.append(sum((-1) ** (j - 1) * self.first_row[j - 1] * d[m - j] for j in range(1, m + 1)))
        return d[1:]


def entries_from_minors(d) -> list:
    """First row ``a_0 .. a_(n-1)`` realizing prescribed leading minors ``d_1 .. d_n``.

    Solves ``d_m = sum_{j=1}^m (-1)^(j-1) a_(j-1) d_(m-j)`` (with ``d_0 = 1``)
    for ``a_(m-1)``; the system is unit lower triangular, so the solution
    always exists and is unique.

    Examples
    --------
    >>> entries_from_minors([1, 1, Fraction(1, 2)])
    [Fraction(1, 1), Fraction(0, 1), Fraction(-1, 2)]
    """
    d = [parse_parameter(v) if not isinstance(v, (float, complex)) else v for v in d]
    full = [Fraction(1) if all(isinstance(v, Fraction) for v in d) else 1.0] + list(d)
    a = []
    for m in range(1, len(d) + 1):
        rest = sum((-1) ** (j - 1) * a[j - 1] * full[m - j] for j in range(1, m))
        a.append((-1) ** (m - 1) * (full[m] - rest))
    return a


def counterexample_minors(n: int, k: int, t) -> list:
    """Target leading minors ``t**max(m-k-1, 0)`` for m = 1..n."""
    return [t ** max(m - k - 1, 0) for m in range(1, n + 1)]


def build_counterexample(n: int, k: int, t) -> ToeplitzHessenberg:
    """The order-``n`` section of the counterexample family for parameters ``k`` and ``t``.

    ``t`` may be a Fraction or ``"p/q"`` string (exact construction) or a
    float.
    """
    n, k, t = _check_n(n), _check_k(k), _check_t(t)
    a = entries_from_minors(counterexample_minors(n, k, t))
    return ToeplitzHessenberg(tuple(a), n)


def counterexample_matrix(n: int, k: int, t, exact: bool | None = None) -> np.ndarray:
    return build_counterexample(n, k, t).to_array(exact)


def build_limit(k: int) -> ToeplitzHessenberg:
    """Order ``2k+2`` limit of the family as ``t -> 0``.

    First row ``(1, 0 x k, (-1)^k, (-1)^k, 0 x (k-1))``.
    """
    k = _check_k(k)
    sign = (-1) ** k
    row = [1] + [0] * k + [sign, sign] + [0] * (k - 1)
    return ToeplitzHessenberg(tuple(row), 2 * k + 2)


# --------------------------------------------------------------------------
# symbol and characteristic polynomials


def symbol_denominator_poly(k: int, t) -> list:
    """Ascending coefficients of ``1 + (1-t) sum_{j=1}^{k+1} (-s)^j``."""
    return [1] + [(1 - t) * (-1) ** j for j in range(1, k + 2)]


def counterexample_symbol(k: int, t):
    """Rational symbol ``(1 + t s) / (s * H(s))`` in the ``F / (G H)`` form used for limit sets."""
    from .toeplitz import RationalSymbol

    k = _check_k(k)
    t = parse_parameter(t)
    if not 0 <= t < 1:
        raise ArgumentError(f"t must lie in [0, 1), got {t}")
    return RationalSymbol(F=[1, t], G=[0, 1], H=symbol_denominator_poly(k, t))


def symbol_eval(k: int, t, s):
    """Symbol of the infinite counterexample matrix at ``s``.

    ``(1 + t s) / (s (1 + (1-t) sum_{j=1}^{k+1} (-s)^j))``. Exact when both
    ``t`` and ``s`` are rational.
    """
    k = _check_k(k)
    t = parse_parameter(t)
    exact = isinstance(t, Fraction) and isinstance(s, (int, Fraction)) and not isinstance(s, bool)
    if exact:
        s = Fraction(s)
    h = sum(c * (s ** j) for j, c in enumerate(symbol_denominator_poly(k, t)))
    den = s * h
    scale = max(1.0, abs(complex(s)) ** (k + 2))
    if den == 0 or (not exact and abs(complex(den)) <= 1e-14 * scale):
        raise PoleError(s)
    num = 1 + t * s
    return num / den if exact else complex(num) / complex(den)


def negative_point(k: int, t):
    """Value of the symbol at ``s = -1``: ``-(1-t) / (k + 2 - (k+1) t)``."""
    t = parse_parameter(t)
    return -(1 - t) / (k + 2 - (k + 1) * t)


def d_poly_eval(k: int, t, j: int, lam):
    """``D_j(lambda) = det(A(j, k, t) - lambda I)`` by the three-term-style recurrence.

    ``D_j = (1-lambda)^j`` for ``j <= k+1``; for ``j >= k+2``
    ``D_j = -(lambda - t) D_(j-1) - lambda (1-t) sum_{l=2}^{k+2} D_(j-l)``.
    """
    k = _check_k(k)
    t = parse_parameter(t)
    if j < 0:
        raise ArgumentError("index j must be nonnegative")
    D = [(1 - lam) ** i for i in range(min(j, k + 1) + 1)]
    for i in range(k + 2, j + 1):
        tail = sum(D[i - l] for l in range(2, k + 3))
        D.append(-(lam - t) * D[i - 1] - lam * (1 - t) * tail)
    return D[j]


def psi_eta_polys(k: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Descending integer coefficients of ``psi_k`` and its reversal ``eta_k``.

    ``psi_k(x) = (1+x)^(k+3) - (k+1)(1+x) + k`` has zero constant term, so
    ``eta_k(x) = x^(k+3) psi_k(1/x)`` has degree ``k+2``:
    ``eta_k = 2 x^(k+2) + sum_{j=2}^{k+3} C(k+3, j) x^(k+3-j)``.
    """
    k = _check_k(k)
    m = k + 3
    asc = [comb(m, j) for j in range(m + 1)]
    asc[0] -= (k + 1) - k
    asc[1] -= k + 1
    psi = tuple(reversed(asc))
    eta = tuple(asc)
    while eta and eta[0] == 0:
        eta = eta[1:]
    return psi, eta


def instability_closed_form(k: int) -> Fraction:
    """Closed form of the Hurwitz minor on rows and columns 2..5 for ``eta_k``."""
    cubic = 3 * k ** 3 - 49 * k ** 2 - 210 * k - 318
    return Fraction(-1, 132300) * cubic * (k + 4) ** 2 * (k + 5) * comb(k + 3, 2) * comb(k + 3, 4) * comb(k + 3, 6)


@dataclass(frozen=True)
class InstabilityCertificate:
    k: int
    minor_value: Fraction
    closed_form_value: Fraction

    @property
    def negative(self) -> bool:
        return self.minor_value < 0

    @property
    def agrees(self) -> bool:
        return self.minor_value == self.closed_form_value

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "minor_value": str(self.minor_value),
            "closed_form_value": str(self.closed_form_value),
            "negative": self.negative,
            "agrees": self.agrees,
        }


def instability_certificate(k: int) -> InstabilityCertificate:
    """Exact Hurwitz minor ``H[2:5]`` of ``eta_k`` next to its closed form.

    A negative value means the Hurwitz matrix is not totally nonnegative, so
    ``eta_k`` has a root in the open right half-plane.
    """
    k = _check_k(k)
    _, eta = psi_eta_polys(k)
    H = hurwitz_matrix(eta, size=max(len(eta) - 1, 5))
    value = minor(H.matrix, (2, 3, 4, 5), (2, 3, 4, 5))
    return InstabilityCertificate(k, Fraction(value), instability_closed_form(k))
