"""Exact characteristic polynomials and certified real roots.

Floating-point eigenvalues of strongly non-normal matrices (the Toeplitz
Hessenberg sections in particular) can be wrong in the second digit, which
is useless for deciding where the least real eigenvalue sits. For exact
input the characteristic polynomial is formed in rational arithmetic and
its real roots are located by Sturm sequences over the integers, so every
reported root comes with an isolating interval.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .core import as_matrix, is_exact


def hessenberg_form_exact(A) -> list[list[Fraction]]:
    """Upper Hessenberg matrix similar to ``A`` (elimination with row/column swaps)."""
    A = as_matrix(A, exact=True)
    n = A.shape[0]
    H = [[Fraction(x) for x in row] for row in A]
    for j in range(n - 2):
        r = next((r for r in range(j + 1, n) if H[r][j] != 0), None)
        if r is None:
            continue
        if r != j + 1:
            H[r], H[j + 1] = H[j + 1], H[r]
            for row in H:
                row[r], row[j + 1] = row[j + 1], row[r]
        piv = H[j + 1][j]
        for i in range(j + 2, n):
            m = H[i][j] / piv
            if m == 0:
                continue
            Hi, Hp = H[i], H[j + 1]
            for c in range(n):
                Hi[c] -= m * Hp[c]
            for row in H:
                row[j + 1] += m * row[i]
    return H


def _poly_sub(a, b):
    if len(a) < len(b):
        a = a + [0] * (len(b) - len(a))
    out = list(a)
    for i, v in enumerate(b):
        out[i] -= v
    return out


def leading_charpolys(H) -> list[list[Fraction]]:
    """``det(xI - H[1..m])`` for m = 0..n of an upper Hessenberg ``H``.

    Coefficients are in ascending powers. Uses expansion along the last
    column, so all leading sections come out of a single pass.
    """
    n = len(H)
    polys = [[Fraction(1)]]
    for m in range(n):
        new = _poly_sub([Fraction(0)] + polys[m], [H[m][m] * c for c in polys[m]])
        prod = Fraction(1)
        for j in range(m - 1, -1, -1):
            prod *= H[j + 1][j]
            if prod == 0:
                break
            f = H[j][m] * prod
            if f:
                new = _poly_sub(new, [f * c for c in polys[j]])
        polys.append(new)
    return polys


def char_poly_exact(A) -> list[Fraction]:
    """Monic characteristic polynomial, descending coefficients, exact."""
    H = hessenberg_form_exact(A)
    return list(reversed(leading_charpolys(H)[-1]))


# --------------------------------------------------------------------------
# integer polynomials (descending coefficients) and Sturm sequences


def to_integer_primitive(coeffs) -> list[int]:
    """Positive-content integer multiple of a rational polynomial, leading zeros stripped."""
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    if not coeffs:
        return []
    L = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * L) for c in coeffs]
    g = math.gcd(*ints)
    return [v // g for v in ints]


def _derivative(p):
    d = len(p) - 1
    return [c * (d - i) for i, c in enumerate(p[:-1])]


def _primitive(p):
    while p and p[0] == 0:
        p = p[1:]
    if not p:
        return p
    g = math.gcd(*p)
    return [v // g for v in p]


def _neg_prem(a, b):
    """A positive multiple of ``-(a mod b)`` in integers."""
    a = list(a)
    lb = b[0]
    db = len(b) - 1
    delta = len(a) - len(b)
    if delta < 0:
        return [-v for v in a]
    mult_sign = 1
    for _ in range(delta + 1):
        if len(a) - 1 < db:
            break
        la = a[0]
        # a <- lb*a - la*x^k*b
        a = [lb * v for v in a]
        for i, v in enumerate(b):
            a[i] -= la * v
        a = a[1:]
        if lb < 0:
            mult_sign = -mult_sign
    # a is now (lb^s) * (a mod b) up to the leftover power
    return [-mult_sign * v for v in a]


def sturm_sequence(p: list[int]) -> list[list[int]]:
    """Sturm sequence of an integer polynomial (each element rescaled by a positive factor)."""
    p = _primitive(p)
    seq = [p]
    if len(p) <= 1:
        return seq
    seq.append(_primitive(_derivative(p)))
    while len(seq[-1]) > 1:
        r = _primitive(_neg_prem(seq[-2], seq[-1]))
        if not r:
            break
        seq.append(r)
    return seq


def _eval_scaled(p, num, den):
    """``den**deg * p(num/den)`` as an exact integer (``den > 0``)."""
    acc = 0
    q = 1
    for c in p:
        acc = acc * num + c * q
        q *= den
    return acc


def _variations(values):
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


class SturmCounter:
    """Count distinct real roots of a rational polynomial in half-open intervals."""

    def __init__(self, coeffs):
        self.poly = to_integer_primitive(coeffs)
        self.seq = sturm_sequence(self.poly) if self.poly else []
        ends = [(c[0] > 0, (len(c) - 1) % 2 == 0) for c in self.seq]
        self.v_minus = _variations([1 if (pos == even) else -1 for pos, even in ends])
        self.v_plus = _variations([1 if pos else -1 for pos, _ in ends])

    @property
    def total(self) -> int:
        return self.v_minus - self.v_plus

    def count_at_most(self, x: Fraction) -> int:
        """Number of distinct real roots ``<= x``."""
        x = Fraction(x)
        vals = [_eval_scaled(c, x.numerator, x.denominator) for c in self.seq]
        return self.v_minus - _variations(vals)

    def root_bound(self) -> Fraction:
        """Cauchy bound: every root satisfies ``|r| < bound``."""
        lead = abs(self.poly[0])
        return 1 + Fraction(max((abs(c) for c in self.poly[1:]), default=0), lead)


def smallest_real_root(coeffs, rel_tol: float = 1e-18) -> tuple[Fraction, Fraction] | None:
    """Isolating interval ``(lo, hi]`` for the least real root, or ``None``.

    The interval contains exactly one distinct root and has width at most
    ``rel_tol * max(|hi|, 2**-1000)``.
    """
    sc = SturmCounter(coeffs)
    if len(sc.poly) <= 1 or sc.total == 0:
        return None
    B = Fraction(2) ** max(0, math.ceil(math.log2(sc.root_bound())))
    if sc.count_at_most(Fraction(0)) >= 1:
        if sc.poly[-1] == 0 and sc.count_at_most(Fraction(0)) == 1:
            return Fraction(0), Fraction(0)
        lo, hi = -B, Fraction(0)
    else:
        # roots are positive; bracket the least one from below
        lo, hi = Fraction(0), Fraction(1, 2 ** 60)
        while hi < B and sc.count_at_most(hi) == 0:
            lo, hi = hi, hi * 16
        hi = min(hi, B)
    tol = Fraction(rel_tol)
    floor = Fraction(1, 2 ** 1000)
    while hi - lo > tol * max(abs(hi), floor):
        mid = (lo + hi) / 2
        if sc.count_at_most(mid) >= 1:
            hi = mid
        else:
            lo = mid
    return lo, hi


def real_root_count(coeffs) -> int:
    return SturmCounter(coeffs).total


def polyval_descending(coeffs, x):
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def coefficients_to_float(coeffs) -> np.ndarray:
    return np.array([float(c) for c in coeffs])


def exact_input(A) -> bool:
    return is_exact(as_matrix(A))
