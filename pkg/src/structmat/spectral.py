"""Eigenvalues and the spectral predicates built on them.

Floating-point spectra come from LAPACK (``geev``: balancing, Hessenberg
reduction and shifted QR). The least real eigenvalue ``l(A)`` of an exact
matrix is instead located on the exact characteristic polynomial, see
:mod:`structmat.exactpoly`.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import exactpoly
from . import minors as mn
from .core import as_matrix, is_exact, p_norm, to_float, is_hermitian
from .exceptions import ArgumentError, CapabilityError, NumericalError, PreconditionError
from .predicates import is_p_matrix
from .reports import ClassReport, failed, passed, scalar_to_json

OMEGA_EXHAUSTIVE_LIMIT = 12
IMAG_CUT = 1e-8


def eigenvalues(A) -> np.ndarray:
    """Full spectrum, sorted by real part then imaginary part.

    Real input returns exact conjugate pairs.

    Examples
    --------
    >>> eigenvalues([[0, -1], [1, 0]])
    array([0.-1.j, 0.+1.j])
    """
    F = to_float(as_matrix(A))
    try:
        if is_hermitian(F, tol=0.0):
            ev = np.linalg.eigvalsh(F).astype(complex)
        else:
            ev = np.linalg.eigvals(F).astype(complex)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigenvalue iteration failed to converge: {exc}") from exc
    if not np.all(np.isfinite(ev)):
        raise NumericalError("eigenvalue iteration produced non-finite values")
    order = np.lexsort((ev.imag, ev.real))
    return ev[order]


def imag_cut(A) -> float:
    """Threshold below which an eigenvalue counts as real: ``1e-8 * ||A||_inf``."""
    return IMAG_CUT * float(p_norm(as_matrix(A), "inf"))


def _exact_least_real(A):
    A = as_matrix(A)
    poly = exactpoly.char_poly_exact(A)
    iv = exactpoly.smallest_real_root(poly)
    if iv is None:
        return math.inf
    return float(iv[1])


def min_real_eigenvalue(A, tol_imag: float | None = None, exact: bool | None = None) -> float:
    """``l(A)``: the least real eigenvalue, ``inf`` when there is none.

    Exact input (unless ``exact=False``) is decided on the exact
    characteristic polynomial; the returned float is the upper end of an
    isolating interval of relative width 1e-18. Float input uses the
    LAPACK spectrum with the ``tol_imag`` cut (default ``1e-8 * ||A||_inf``).
    """
    A = as_matrix(A)
    if exact is None:
        exact = is_exact(A)
    if exact:
        return _exact_least_real(as_matrix(A, exact=True))
    ev = eigenvalues(A)
    cut = imag_cut(A) if tol_imag is None else tol_imag
    real = ev.real[np.abs(ev.imag) <= cut]
    return float(real.min()) if real.size else math.inf


def char_poly(A) -> list:
    """Monic characteristic polynomial ``det(xI - A)``, descending coefficients.

    Exact input gives exact Fractions (Hessenberg reduction in rational
    arithmetic). Float input uses the product form over the eigenvalues;
    real matrices get real coefficients.
    """
    A = as_matrix(A)
    if is_exact(A):
        return exactpoly.char_poly_exact(A)
    ev = eigenvalues(A)
    coeffs = np.poly(ev)
    if not np.iscomplexobj(A):
        coeffs = coeffs.real
    return list(coeffs)


# --------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: tuple
    min_real_eigenvalue: float
    positive_stable: bool
    min_real_part: float
    kellogg_margin: float

    def to_json(self) -> dict:
        return {
            "eigenvalues": [[z.real, z.imag] for z in self.eigenvalues],
            "min_real_eigenvalue": scalar_to_json(self.min_real_eigenvalue),
            "positive_stable": self.positive_stable,
            "min_real_part": self.min_real_part,
            "kellogg_margin": self.kellogg_margin,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, obj) -> "SpectrumReport":
        if isinstance(obj, str):
            obj = json.loads(obj)
        l = obj["min_real_eigenvalue"]
        return cls(tuple(complex(re, im) for re, im in obj["eigenvalues"]),
                   math.inf if l == "inf" else float(l), bool(obj["positive_stable"]),
                   float(obj["min_real_part"]), float(obj["kellogg_margin"]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["re", "im"])
        for z in self.eigenvalues:
            w.writerow([repr(float(z.real)), repr(float(z.imag))])
        return buf.getvalue()


def kellogg_margin(ev, n: int) -> float:
    """``pi - pi/n - max |arg lambda|``."""
    return math.pi - math.pi / n - float(np.max(np.abs(np.angle(ev))))


def spectrum_report(A) -> SpectrumReport:
    A = as_matrix(A)
    ev = eigenvalues(A)
    n = A.shape[0]
    return SpectrumReport(
        tuple(complex(z) for z in ev),
        min_real_eigenvalue(A),
        bool(np.min(ev.real) > 0),
        float(np.min(ev.real)),
        kellogg_margin(ev, n),
    )


def kellogg_wedge_check(A) -> ClassReport:
    """Every eigenvalue of a P-matrix satisfies ``|arg lambda| < pi - pi/n``.

    The witness of a failure is the whole index set with the offending
    eigenvalue. Orders below 2 are rejected: the wedge is empty for n = 1.
    """
    A = as_matrix(A)
    n = A.shape[0]
    if n < 2:
        raise ArgumentError("the forbidden wedge is only meaningful for order >= 2")
    p = is_p_matrix(A)
    if not p.holds:
        raise PreconditionError(f"input is not a P-matrix: principal minor {p.witness.rows} = {p.witness.values[0]}")
    ev = eigenvalues(A)
    bound = math.pi - math.pi / n
    margin = kellogg_margin(ev, n)
    if margin > 0:
        return passed("kellogg_wedge", 0.0, margin=margin)
    worst = ev[int(np.argmax(np.abs(np.angle(ev))))]
    idx = tuple(range(1, n + 1))
    return failed("kellogg_wedge", idx, idx, (complex(worst), bound), 0.0, margin=margin)


# --------------------------------------------------------------------------
# eigenvalue monotonicity


@dataclass(frozen=True)
class OmegaTauReport:
    omega: ClassReport
    tau: ClassReport

    def to_json(self) -> dict:
        return {"omega": self.omega.to_json(), "tau": self.tau.to_json()}


def _leq(a, b, rel):
    return a <= b + rel * max(1.0, abs(b))


def _leading_least_real(A, exact):
    """``l(A(1..m))`` for every m."""
    n = A.shape[0]
    if exact:
        H = [list(row) for row in A] if mn.is_upper_hessenberg(A) else None
        if H is not None:
            polys = exactpoly.leading_charpolys(H)
            out = []
            for m in range(1, n + 1):
                iv = exactpoly.smallest_real_root(list(reversed(polys[m])))
                out.append(math.inf if iv is None else float(iv[1]))
            return out
        return [_exact_least_real(A[:m, :m]) for m in range(1, n + 1)]
    return [min_real_eigenvalue(A[:m, :m], exact=False) for m in range(1, n + 1)]


def is_omega_tau(A, mode: str = "exhaustive", rel_tol: float | None = None,
                 limit: int = OMEGA_EXHAUSTIVE_LIMIT) -> OmegaTauReport:
    """Eigenvalue monotonicity ``l(A(a)) <= l(A(b)) < inf`` for ``b`` inside ``a``.

    ``mode="exhaustive"`` checks every principal submatrix; by transitivity
    it suffices to compare each set with the sets obtained by removing one
    index. ``mode="leading_principal"`` only compares consecutive leading
    sections. The tau report additionally requires ``l(A) >= 0``.

    Comparisons allow a relative slack ``rel_tol`` (1e-12 for exact input,
    whose least real eigenvalues are certified to 1e-18, and 1e-8 for float
    input).
    """
    A = as_matrix(A)
    n = A.shape[0]
    exact = is_exact(A)
    rel = rel_tol if rel_tol is not None else (1e-12 if exact else 1e-8)
    if mode == "leading_principal":
        ls = _leading_least_real(A, exact)
        omega = None
        for m in range(1, n + 1):
            if math.isinf(ls[m - 1]):
                idx = tuple(range(1, m + 1))
                omega = failed("omega", idx, idx, (math.inf,), rel, mode=mode)
                break
            if m > 1 and not _leq(ls[m - 1], ls[m - 2], rel):
                omega = failed("omega", tuple(range(1, m + 1)), tuple(range(1, m)),
                               (ls[m - 1], ls[m - 2]), rel, mode=mode)
                break
        l_full = ls[-1]
    elif mode == "exhaustive":
        if n > limit:
            raise CapabilityError(f"exhaustive eigenvalue-monotonicity test on order {n} exceeds "
                                  f"the limit {limit} (2^n eigenvalue problems)")
        ls = {}
        for mask in range(1, 1 << n):
            idx = [i - 1 for i in mn.mask_to_tuple(mask)]
            sub = A[np.ix_(idx, idx)]
            ls[mask] = _exact_least_real(sub) if exact else min_real_eigenvalue(sub, exact=False)
        rank = mn.lex_rank(n)
        N = 1 << n
        best = None
        for mask, l in ls.items():
            if math.isinf(l):
                key = rank[mask] * N + rank[mask]
                cand = (key, mask, mask)
            else:
                cand = None
                for i in range(n):
                    if mask >> i & 1 and mask != 1 << i:
                        sub = mask & ~(1 << i)
                        if not _leq(l, ls[sub], rel):
                            key = rank[mask] * N + rank[sub]
                            if cand is None or key < cand[0]:
                                cand = (key, mask, sub)
            if cand is not None and (best is None or cand[0] < best[0]):
                best = cand
        omega = None
        if best is not None:
            _, a, b = best
            ta, tb = mn.mask_to_tuple(a), mn.mask_to_tuple(b)
            vals = (ls[a],) if a == b else (ls[a], ls[b])
            omega = failed("omega", ta, tb, vals, rel, mode=mode)
        l_full = ls[(1 << n) - 1]
    else:
        raise ArgumentError(f"unknown mode {mode!r}")
    if omega is None:
        omega = passed("omega", rel, mode=mode, least_real_eigenvalue=l_full)
    if not omega.holds:
        tau = ClassReport("tau", False, omega.witness, rel, {"failed": "omega", "mode": mode})
    elif l_full < 0:
        idx = tuple(range(1, n + 1))
        tau = failed("tau", idx, idx, (l_full,), rel, failed="sign", mode=mode)
    else:
        tau = passed("tau", rel, mode=mode, least_real_eigenvalue=l_full)
    return OmegaTauReport(omega, tau)
