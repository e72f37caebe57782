"""Membership tests for the matrix classes: P, GKK, sign symmetry, total
positivity, M-matrices, ultrametric matrices and a few structural patterns.

Every test returns a :class:`~structmat.reports.ClassReport`. When the
class test fails the report carries the lexicographically first violating
index sets (1-based) together with the offending minor values.

Exact input (integers or Fractions) is decided in exact arithmetic. Float
input is compared against ``tol`` times the largest minor magnitude met
during the scan.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from . import minors as mn
from .core import as_matrix, det, is_exact, matrix_power, minor, to_float
from .exceptions import ArgumentError, CapabilityError
from .reports import ClassReport, failed, passed

EXHAUSTIVE_LIMIT = 16
HADAMARD_FISHER_LIMIT = 13
DEFAULT_TOL = 1e-10


def _check_limit(n, limit, what, cost):
    if n > limit:
        raise CapabilityError(f"{what} on order {n} exceeds the exhaustive limit {limit} "
                              f"(cost grows like {cost})")


def _scaled(value, L, size):
    """Undo the ``L**size`` scaling of an exact integer minor."""
    if L is None:
        return value
    return Fraction(value, L ** size)


def _tol(A, tol):
    return 0.0 if is_exact(A) else tol


# --------------------------------------------------------------------------
# P-matrices


def _hessenberg_orientation(A):
    if mn.is_upper_hessenberg(A):
        return A
    if mn.is_upper_hessenberg(A.T):
        return np.ascontiguousarray(A.T)
    return None


def is_p_matrix(A, exhaustive_limit: int = EXHAUSTIVE_LIMIT, tol: float = DEFAULT_TOL) -> ClassReport:
    """All principal minors positive.

    Hessenberg input (upper or lower) is decided from the minors on
    consecutive index runs only, at any order: a principal submatrix of a
    Hessenberg matrix on a union of separated runs is block triangular, so its
    determinant is the product of the run minors. Other input is scanned
    exhaustively.

    Examples
    --------
    >>> is_p_matrix([[0, 1], [1, 1]]).witness.rows
    (1,)
    """
    A = as_matrix(A)
    n = A.shape[0]
    H = _hessenberg_orientation(A)
    if H is not None:
        runs = mn.hessenberg_run_minors(H)
        scale = max(abs(v) for v in runs.values())
        thr = 0 if is_exact(A) else tol * scale
        bad = [(i, j) for (i, j), v in runs.items() if not _real_above(v, thr)]
        if not bad:
            return passed("P", _tol(A, tol), method="hessenberg-runs")
        if n > exhaustive_limit:
            i, j = min(bad, key=lambda ij: tuple(range(ij[0], ij[1] + 1)))
            idx = tuple(range(i, j + 1))
            return failed("P", idx, idx, (runs[(i, j)],), _tol(A, tol), method="hessenberg-runs")
    _check_limit(n, exhaustive_limit, "P-matrix test", "2^n principal minors")
    return _p_exhaustive(A, tol)


def _real_above(v, thr):
    if isinstance(v, (complex, np.complexfloating)):
        if abs(v.imag) > max(thr, 0.0):
            return False
        v = v.real
    return v > thr


def _p_exhaustive(A, tol):
    n = A.shape[0]
    vals, L = mn.principal_minor_table(A)
    exact = L is not None
    N = 1 << n
    if exact:
        ok = np.array([v > 0 for v in vals[1:]], dtype=bool)
        thr = 0
    else:
        scale = float(np.max(np.abs(vals[1:])))
        thr = tol * scale
        ok = (vals[1:].real > thr) & (np.abs(vals[1:].imag) <= thr) if np.iscomplexobj(vals) else vals[1:] > thr
    bad = np.nonzero(~ok)[0] + 1
    if bad.size == 0:
        return passed("P", _tol(A, tol), method="exhaustive")
    rank = mn.lex_rank(n)
    mask = int(bad[np.argmin(rank[bad])])
    alpha = mn.mask_to_tuple(mask)
    value = _scaled(vals[mask], L, len(alpha))
    return failed("P", alpha, alpha, (value,), _tol(A, tol), method="exhaustive")


def principal_minors(A) -> dict[tuple[int, ...], object]:
    """Every nonempty principal minor keyed by its 1-based index tuple."""
    A = as_matrix(A)
    _check_limit(A.shape[0], EXHAUSTIVE_LIMIT, "principal minor table", "2^n")
    vals, L = mn.principal_minor_table(A)
    return {mn.mask_to_tuple(m): _scaled(vals[m], L, bin(m).count("1")) for m in range(1, len(vals))}


# --------------------------------------------------------------------------
# Hadamard-Fisher inequalities and GKK


def hadamard_fisher_check(A, exhaustive_limit: int = HADAMARD_FISHER_LIMIT, tol: float = DEFAULT_TOL) -> ClassReport:
    """Generalized Hadamard-Fisher inequalities ``A[a]A[b] >= A[a|b]A[a&b]``.

    Requires a P-matrix; a non-P input yields a failing report carrying the
    P-matrix witness (``detail["failed"] == "P"``). The witness of a genuine
    violation has ``rows = a``, ``cols = b`` and values
    ``(A[a], A[b], A[a|b], A[a&b])``.
    """
    A = as_matrix(A)
    n = A.shape[0]
    _check_limit(n, exhaustive_limit, "Hadamard-Fisher check", "4^n pairs of principal minors")
    p = is_p_matrix(A, exhaustive_limit=max(exhaustive_limit, EXHAUSTIVE_LIMIT), tol=tol)
    if not p.holds:
        return failed("hadamard_fisher", p.witness.rows, p.witness.cols, p.witness.values,
                      p.tolerance_used, failed="P")
    vals, L = mn.principal_minor_table(A)
    exact = L is not None
    if not exact:
        vals = vals.real.astype(float)
        thr = tol * float(np.max(np.abs(vals))) ** 2
    N = 1 << n
    rank = mn.lex_rank(n)
    best = None
    all_masks = np.arange(N, dtype=np.int64)
    for a in range(1, N):
        b = all_masks[a + 1:]
        # comparable pairs give equality and can be skipped
        keep = ((a & b) != a) & ((a & b) != b)
        b = b[keep]
        if b.size == 0:
            continue
        lhs = vals[a] * vals[b]
        rhs = vals[a | b] * vals[a & b]
        diff = lhs - rhs
        bad = np.nonzero(np.array([d < 0 for d in diff]) if exact else diff < -thr)[0]
        if bad.size == 0:
            continue
        bb = b[bad]
        keys = np.minimum(rank[a] * N + rank[bb], rank[bb] * N + rank[a])
        pos = int(np.argmin(keys))
        cand = (int(keys[pos]), a, int(bb[pos]))
        if best is None or cand < best:
            best = cand
    if best is None:
        return passed("hadamard_fisher", _tol(A, tol))
    key, a, b = best
    if rank[a] * N + rank[b] != key:
        a, b = b, a
    alpha, beta = mn.mask_to_tuple(a), mn.mask_to_tuple(b)
    values = tuple(_scaled(vals[m], L, bin(m).count("1")) for m in (a, b, a | b, a & b))
    return failed("hadamard_fisher", alpha, beta, values, _tol(A, tol))


def is_weakly_sign_symmetric(A, exhaustive_limit: int = EXHAUSTIVE_LIMIT, tol: float = DEFAULT_TOL) -> ClassReport:
    """``A[a,b] A[b,a] >= 0`` for every almost principal pair ``(a, b)``.

    Almost principal means ``#a = #b = #(a|b) - 1``. The witness reports
    ``(A[a,b], A[b,a])``.
    """
    A = as_matrix(A)
    n = A.shape[0]
    _check_limit(n, exhaustive_limit, "weak sign-symmetry test", "n^2 2^n almost principal minors")
    N = 1 << n
    rank = mn.lex_rank(n)
    candidates = []
    if is_exact(A):
        upper = np.triu(np.ones((n, n), dtype=bool), 1)

        def visit(mask, state):
            free = np.array([not mask >> i & 1 for i in range(n)])
            sel = upper & free[:, None] & free[None, :]
            if not sel.any():
                return
            ii, jj = np.nonzero(sel)
            prod = state[ii, jj] * state[jj, ii]
            for k in np.nonzero(np.array([p < 0 for p in prod]))[0]:
                candidates.append((mask, int(ii[k]), int(jj[k])))

        mn.ExactSchurTable(A, visit=visit)
        thr = 0.0
    else:
        F = to_float(A)
        batches = list(mn.float_almost_principal_products(F))
        scale = max((float(np.max(np.abs(np.concatenate([ab, ba])))) for _, _, _, ab, ba in batches), default=0.0)
        thr = tol * scale ** 2
        for gms, ii, jj, ab, ba in batches:
            prod = (ab * ba).real
            for k in np.nonzero(prod < -thr)[0]:
                candidates.append((int(gms[k]), int(ii[k]), int(jj[k])))
    if not candidates:
        return passed("weakly_sign_symmetric", _tol(A, tol))
    best = None
    for g, i, j in candidates:
        a, b = g | (1 << i), g | (1 << j)
        for rows, cols in ((a, b), (b, a)):
            key = rank[rows] * N + rank[cols]
            if best is None or key < best[0]:
                best = (key, rows, cols)
    _, rows, cols = best
    r, c = mn.mask_to_tuple(rows), mn.mask_to_tuple(cols)
    return failed("weakly_sign_symmetric", r, c, (minor(A, r, c), minor(A, c, r)), _tol(A, tol))


def is_gkk(A, exhaustive_limit: int = EXHAUSTIVE_LIMIT, tol: float = DEFAULT_TOL) -> ClassReport:
    """P-matrix and weakly sign-symmetric."""
    p = is_p_matrix(A, exhaustive_limit, tol)
    if not p.holds:
        return ClassReport("GKK", False, p.witness, p.tolerance_used, {"failed": "P"})
    w = is_weakly_sign_symmetric(A, exhaustive_limit, tol)
    if not w.holds:
        return ClassReport("GKK", False, w.witness, w.tolerance_used, {"failed": "weakly_sign_symmetric"})
    return passed("GKK", w.tolerance_used)


# --------------------------------------------------------------------------
# scans over all minors


def _level_threshold(level, exact, tol):
    if exact:
        return 0
    return tol * float(np.max(np.abs(level))) if level.size else 0.0


def _scan_all_minors(A, tol, violates, limit=mn.ALL_MINOR_LIMIT, what="all-minor scan"):
    """Lex-first ``(rows, cols, value)`` over all minors for which ``violates`` is true.

    ``violates(m, masks, level, thr)`` returns a boolean array shaped like
    ``level``. The threshold is re-derived per order from the largest minor
    of that order.
    """
    n = A.shape[0]
    _check_limit(n, limit, what, "binom(2n, n) minors")
    exact = is_exact(A)
    L = mn.integer_scaled(A)[1] if exact else None
    N = 1 << n
    rank = mn.lex_rank(n)
    best = None
    for m, masks, level in mn.minor_levels(A):
        thr = _level_threshold(level, exact, tol)
        bad = violates(m, masks, level, thr)
        rr, cc = np.nonzero(bad)
        if rr.size == 0:
            continue
        keys = rank[masks[rr]] * N + rank[masks[cc]]
        pos = int(np.argmin(keys))
        cand = (int(keys[pos]), int(masks[rr[pos]]), int(masks[cc[pos]]), level[rr[pos], cc[pos]], m)
        if best is None or cand[0] < best[0]:
            best = cand
    if best is None:
        return None
    _, rmask, cmask, value, m = best
    return mn.mask_to_tuple(rmask), mn.mask_to_tuple(cmask), _scaled(value, L, m)


def _as_bool(arr, exact, pred):
    if exact:
        return np.vectorize(pred, otypes=[bool])(arr) if arr.size else np.zeros(arr.shape, bool)
    return pred(arr)


def sign_symmetry_up_to_dispersal(A, d: int, tol: float = DEFAULT_TOL, limit: int = mn.ALL_MINOR_LIMIT) -> ClassReport:
    """``A[a,b] A[b,a] >= 0`` for equal-size pairs of dispersal ``#a - #(a&b) <= d``.

    ``d = n`` gives full sign symmetry. The scan covers every minor, so orders
    above ``limit`` (default 14, set by the memory for the middle order)
    raise :class:`CapabilityError`.
    """
    A = as_matrix(A)
    if d < 0:
        raise ArgumentError("dispersal bound must be nonnegative")
    n = A.shape[0]
    exact = is_exact(A)
    pc = mn.popcounts(n) if n <= limit else None

    def violates(m, masks, level, thr):
        prod = level * level.T
        if exact:
            neg = _as_bool(prod, True, lambda x: x < 0)
        else:
            neg = prod.real < -thr * float(np.max(np.abs(level)))
        if d >= m:
            return neg
        near = (m - pc[masks[:, None] & masks[None, :]]) <= d
        return neg & near

    hit = _scan_all_minors(A, tol, violates, limit, "sign-symmetry scan")
    name = "sign_symmetric" if d >= n else f"sign_symmetric_dispersal_{d}"
    if hit is None:
        return passed(name, _tol(A, tol), dispersal=d)
    rows, cols, value = hit
    return failed(name, rows, cols, (value, minor(A, cols, rows)), _tol(A, tol), dispersal=d)


def is_sign_symmetric(A, tol: float = DEFAULT_TOL, limit: int = mn.ALL_MINOR_LIMIT) -> ClassReport:
    """``A[a,b] A[b,a] >= 0`` for all equal-size index sets."""
    A = as_matrix(A)
    return sign_symmetry_up_to_dispersal(A, A.shape[0], tol, limit)


def contiguous_tp_failure(A, tol: float = DEFAULT_TOL):
    """First contiguous minor that is not positive, or ``None``.

    By Fekete's criterion a matrix whose minors on consecutive rows and
    consecutive columns are all positive is totally positive.
    """
    cm = mn.contiguous_minors(A)
    exact = is_exact(A)
    scale = max(abs(v) for v in cm.values())
    thr = 0 if exact else tol * scale
    bad = [key for key, v in cm.items() if not _real_above(v, thr)]
    if not bad:
        return None
    key = min(bad, key=lambda k: (tuple(range(k[0], k[0] + k[2])), tuple(range(k[1], k[1] + k[2]))))
    i, j, m = key
    return tuple(range(i, i + m)), tuple(range(j, j + m)), cm[key]


def is_totally_positive(A, tol: float = DEFAULT_TOL, limit: int = mn.ALL_MINOR_LIMIT) -> ClassReport:
    """All minors positive.

    The verdict comes from the contiguous minors (Fekete's criterion) at any
    order. On failure the witness is the lexicographically first nonpositive
    minor when the order allows an exhaustive scan, otherwise the first
    failing contiguous minor.
    """
    A = as_matrix(A)
    _require_real(A, "total positivity")
    fail = contiguous_tp_failure(A, tol)
    if fail is None:
        return passed("TP", _tol(A, tol), method="contiguous")
    if A.shape[0] > limit:
        rows, cols, value = fail
        return failed("TP", rows, cols, (value,), _tol(A, tol), method="contiguous")
    exact = is_exact(A)
    hit = _scan_all_minors(A, tol, lambda m, masks, level, thr:
                           _as_bool(level, exact, lambda x: x <= 0) if exact else level <= thr,
                           limit, "total positivity scan")
    rows, cols, value = hit
    return failed("TP", rows, cols, (value,), _tol(A, tol), method="exhaustive")


def is_totally_nonnegative(A, tol: float = DEFAULT_TOL, limit: int = mn.ALL_MINOR_LIMIT) -> ClassReport:
    """All minors nonnegative (a totally positive matrix is accepted without a full scan)."""
    A = as_matrix(A)
    _require_real(A, "total nonnegativity")
    if contiguous_tp_failure(A, tol) is None:
        return passed("TN", _tol(A, tol), method="contiguous")
    if is_tridiagonal(A):
        return _tridiagonal_tn(A, tol)
    exact = is_exact(A)
    hit = _scan_all_minors(A, tol, lambda m, masks, level, thr:
                           _as_bool(level, exact, lambda x: x < 0) if exact else level < -thr,
                           limit, "total nonnegativity scan")
    if hit is None:
        return passed("TN", _tol(A, tol), method="exhaustive")
    rows, cols, value = hit
    return failed("TN", rows, cols, (value,), _tol(A, tol), method="exhaustive")


def is_tridiagonal(A) -> bool:
    n = A.shape[0]
    return all(A[i, j] == 0 for i in range(n) for j in range(n) if abs(i - j) > 1)


def _tridiagonal_tn(A, tol):
    """TN test for tridiagonal input at any order.

    Every minor of a tridiagonal matrix is a product of entries and
    contiguous principal minors, so those decide the verdict. The witness is
    the lexicographically first failing entry or contiguous principal minor.
    """
    exact = is_exact(A)
    runs = mn.hessenberg_run_minors(A)
    F = to_float(A)
    scale = max([float(np.max(np.abs(F)))] + [abs(complex(v)) for v in runs.values()])
    thr = 0 if exact else tol * scale
    bad = []
    n = A.shape[0]
    for i in range(n):
        for j in range(max(0, i - 1), min(n, i + 2)):
            if i != j and A[i, j] != 0 and not _real_above(A[i, j], -thr):
                bad.append(((i + 1,), (j + 1,), A[i, j]))
    for (i, j), v in runs.items():
        if not (_real_above(v, -thr) or v == 0):
            idx = tuple(range(i, j + 1))
            bad.append((idx, idx, v))
    if not bad:
        return passed("TN", _tol(A, tol), method="tridiagonal")
    rows, cols, value = min(bad, key=lambda b: (b[0], b[1]))
    return failed("TN", rows, cols, (value,), _tol(A, tol), method="tridiagonal")


def is_oscillatory(A, tol: float = DEFAULT_TOL, method: str = "criterion",
                   limit: int = mn.ALL_MINOR_LIMIT) -> ClassReport:
    """Oscillatory: totally nonnegative with a totally positive power.

    ``method="criterion"`` uses the Gantmacher-Krein characterization: a TN
    matrix is oscillatory iff it is nonsingular and its first super- and
    subdiagonal entries are positive. ``method="power"`` tests ``A^(n-1)``
    for total positivity instead.
    """
    A = as_matrix(A)
    n = A.shape[0]
    tn = is_totally_nonnegative(A, tol, limit)
    if not tn.holds:
        return ClassReport("oscillatory", False, tn.witness, tn.tolerance_used, {"failed": "TN"})
    d = det(A)
    scale = float(np.max(np.abs(to_float(A))))
    if not abs(d) > (0 if is_exact(A) else tol * scale ** n):
        idx = tuple(range(1, n + 1))
        return failed("oscillatory", idx, idx, (d,), _tol(A, tol), failed="nonsingular")
    if method == "power":
        P = matrix_power(A, max(n - 1, 1))
        tp = is_totally_positive(P, tol, limit)
        if not tp.holds:
            return ClassReport("oscillatory", False, tp.witness, tp.tolerance_used,
                               {"failed": "power", "power": n - 1})
        return passed("oscillatory", _tol(A, tol), method="power")
    if method != "criterion":
        raise ArgumentError(f"unknown oscillatory method {method!r}")
    thr = 0 if is_exact(A) else tol * scale
    for i in range(n - 1):
        for r, c in ((i, i + 1), (i + 1, i)):
            if not A[r, c] > thr:
                return failed("oscillatory", (r + 1,), (c + 1,), (A[r, c],), _tol(A, tol),
                              failed="adjacent-diagonals")
    return passed("oscillatory", _tol(A, tol), method="criterion")


# --------------------------------------------------------------------------
# entrywise classes


def _require_real(A, what):
    if np.iscomplexobj(A) and np.any(A.imag != 0):
        raise ArgumentError(f"{what} is defined for real matrices")


def _real(A):
    if is_exact(A):
        return A
    return A.real if np.iscomplexobj(A) else A


def is_m_matrix(A, tol: float = DEFAULT_TOL) -> ClassReport:
    """``A = rI - P`` with ``P >= 0`` and spectral radius of ``P`` below ``r``.

    ``r`` is the largest diagonal entry. The witness of a spectral failure
    spans the whole matrix and records ``(rho(P), r)``.
    """
    A = as_matrix(A)
    _require_real(A, "the M-matrix property")
    A = _real(A)
    n = A.shape[0]
    F = to_float(A)
    thr = 0 if is_exact(A) else tol * float(np.max(np.abs(F)))
    for i in range(n):
        for j in range(n):
            if i != j and A[i, j] > thr:
                return failed("M", (i + 1,), (j + 1,), (A[i, j],), _tol(A, tol), failed="sign pattern")
    r = float(np.max(np.diag(F)))
    P = r * np.eye(n) - F
    rho = float(np.max(np.abs(np.linalg.eigvals(P))))
    if rho < r - tol * max(1.0, abs(r)):
        return passed("M", tol, spectral_radius=rho, r=r)
    idx = tuple(range(1, n + 1))
    return failed("M", idx, idx, (rho, r), tol, failed="spectral radius")


def _symmetric_failure(A, thr):
    n = A.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            if abs(A[i, j] - A[j, i]) > thr:
                return i, j
    return None


def _ultrametric(A, strict, tol):
    A = as_matrix(A)
    _require_real(A, "the ultrametric property")
    A = _real(A)
    n = A.shape[0]
    exact = is_exact(A)
    scale = float(np.max(np.abs(to_float(A))))
    thr = 0 if exact else tol * scale
    name = "strictly_ultrametric" if strict else "ultrametric"
    sym = _symmetric_failure(A, thr)
    if sym is not None:
        i, j = sym
        return failed(name, (i + 1,), (j + 1,), (A[i, j], A[j, i]), _tol(A, tol), failed="symmetry")
    for i in range(n):
        for j in range(n):
            if A[i, j] < -thr:
                return failed(name, (i + 1,), (j + 1,), (A[i, j],), _tol(A, tol), failed="nonnegativity")
    # a(i,j) >= max_k min(a(i,k), a(k,j))
    W = A if exact else to_float(A)
    for i in range(n):
        row = W[i]
        best = np.max(np.minimum(row[:, None], W), axis=0) if not exact else \
            [max(min(row[k], W[k, j]) for k in range(n)) for j in range(n)]
        for j in range(n):
            if W[i, j] < best[j] - thr:
                k = next(k for k in range(n) if min(row[k], W[k, j]) - thr > W[i, j])
                return failed(name, (i + 1,), (j + 1,), (A[i, j], A[i, k], A[k, j]), _tol(A, tol),
                              failed="triangle", k=k + 1)
    for i in range(n):
        off = max((A[i, j] for j in range(n) if j != i), default=0)
        if strict and not A[i, i] > off + thr:
            return failed(name, (i + 1,), (i + 1,), (A[i, i], off), _tol(A, tol), failed="strict diagonal")
        if not A[i, i] >= off - thr:
            return failed(name, (i + 1,), (i + 1,), (A[i, i], off), _tol(A, tol), failed="diagonal")
    return passed(name, _tol(A, tol))


def is_ultrametric(A, tol: float = DEFAULT_TOL) -> ClassReport:
    """Symmetric, nonnegative, ``a(i,j) >= min(a(i,k), a(k,j))`` and ``a(i,i) >= max_{k != i} a(i,k)``."""
    return _ultrametric(A, False, tol)


def is_strictly_ultrametric(A, tol: float = DEFAULT_TOL) -> ClassReport:
    """Ultrametric with ``a(i,i) > max_{k != i} a(i,k)`` for every row."""
    return _ultrametric(A, True, tol)


def is_diagonally_dominant(A, mode: str = "row", strict: bool = False, tol: float = DEFAULT_TOL) -> ClassReport:
    """``|a(i,i)| >= sum_{j != i} |a(i,j)|`` per row (or per column)."""
    A = as_matrix(A)
    if mode not in ("row", "column"):
        raise ArgumentError(f"mode must be 'row' or 'column', got {mode!r}")
    B = A if mode == "row" else A.T
    n = B.shape[0]
    exact = is_exact(A)
    thr = 0 if exact else tol * float(np.max(np.abs(to_float(A))))
    name = f"{'strictly_' if strict else ''}{mode}_diagonally_dominant"
    for i in range(n):
        diag = abs(B[i, i])
        off = sum(abs(B[i, j]) for j in range(n) if j != i)
        ok = diag - off > thr if strict else diag - off >= -thr
        if not ok:
            return failed(name, (i + 1,), (i + 1,), (diag, off), _tol(A, tol))
    return passed(name, _tol(A, tol))


def is_checkerboard(A, tol: float | None = None) -> ClassReport:
    """Every entry with ``|a(i,j)| > tol`` has sign ``(-1)^(i-j)``.

    ``tol`` defaults to ``1e-10`` times the largest entry for float input and
    to zero for exact input. Imaginary parts must stay below ``tol``.
    """
    A = as_matrix(A)
    n = A.shape[0]
    if tol is None:
        tol = 0 if is_exact(A) else DEFAULT_TOL * float(np.max(np.abs(A)))
    for i in range(n):
        for j in range(n):
            v = A[i, j]
            if isinstance(v, (complex, np.complexfloating)):
                if abs(v.imag) > tol:
                    return failed("checkerboard", (i + 1,), (j + 1,), (v,), tol)
                v = v.real
            if abs(v) <= tol:
                continue
            want = 1 if (i - j) % 2 == 0 else -1
            if (v > 0) != (want > 0):
                return failed("checkerboard", (i + 1,), (j + 1,), (A[i, j],), tol)
    return passed("checkerboard", tol)


# --------------------------------------------------------------------------
# Hurwitz matrices and Newton's inequalities


@dataclass(frozen=True)
class HurwitzMatrix:
    """Hurwitz matrix of ``a_0 x^d + a_1 x^(d-1) + ... + a_d``.

    Entry ``(i, j)`` (1-based) is ``a_(2j-i)``, zero outside ``0..d``.
    """

    coefficients: tuple
    matrix: np.ndarray

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def minor(self, rows, cols=None):
        return minor(self.matrix, rows, rows if cols is None else cols)


def hurwitz_matrix(coeffs, size: int | None = None) -> HurwitzMatrix:
    """Hurwitz matrix from coefficients in descending powers.

    ``size`` defaults to the degree. A larger size keeps extending the same
    pattern with zero coefficients, which is what a minor reaching past the
    degree of a small polynomial needs.

    Examples
    --------
    >>> hurwitz_matrix([1, 2, 1]).matrix.tolist()
    [[Fraction(2, 1), Fraction(0, 1)], [Fraction(1, 1), Fraction(1, 1)]]
    """
    coeffs = list(coeffs)
    if not coeffs or all(c == 0 for c in coeffs):
        raise ArgumentError("the zero polynomial has no Hurwitz matrix")
    if coeffs[0] == 0:
        raise ArgumentError("leading coefficient must be nonzero")
    d = len(coeffs) - 1
    if d < 1:
        raise ArgumentError("Hurwitz matrix needs degree at least 1")
    size = d if size is None else int(size)
    exact = all(isinstance(c, (int, Fraction, np.integer)) for c in coeffs)
    if exact:
        coeffs = [Fraction(c) for c in coeffs]
        H = np.full((size, size), Fraction(0), dtype=object)
    else:
        H = np.zeros((size, size), dtype=complex if any(isinstance(c, complex) for c in coeffs) else float)
    for i in range(1, size + 1):
        for j in range(1, size + 1):
            idx = 2 * j - i
            if 0 <= idx <= d:
                H[i - 1, j - 1] = coeffs[idx]
    return HurwitzMatrix(tuple(coeffs), H)


@dataclass(frozen=True)
class NewtonReport:
    """Normalized characteristic coefficients ``c_j = b_j / C(n, j)`` and Newton gaps.

    ``rows`` holds ``(j, c_j, c_j^2 - c_(j-1) c_(j+1))`` for ``j = 1..n-1``.
    """

    coefficients: tuple
    rows: tuple

    @property
    def violations(self):
        return tuple(r for r in self.rows if r[2] < 0)

    def to_json(self) -> dict:
        from .reports import scalar_to_json
        return {
            "coefficients": [scalar_to_json(c) for c in self.coefficients],
            "rows": [{"j": j, "c": scalar_to_json(c), "gap": scalar_to_json(g)} for j, c, g in self.rows],
            "violations": [j for j, _, _ in self.violations],
        }


def newton_inequality_report(A) -> NewtonReport:
    """Newton-inequality gaps for the elementary symmetric functions of the spectrum.

    ``b_j`` is the sum of the principal minors of order ``j``, read off the
    characteristic polynomial (exact for exact input).
    """
    from .spectral import char_poly

    A = as_matrix(A)
    n = A.shape[0]
    poly = char_poly(A)
    # det(xI - A) = sum_j (-1)^j b_j x^(n-j)
    b = [poly[j] * (-1) ** j for j in range(n + 1)]
    if not is_exact(A):
        b = [complex(x).real if abs(complex(x).imag) <= 1e-9 * max(1.0, abs(x)) else complex(x) for x in b]
    c = [b[j] / comb(n, j) for j in range(n + 1)]
    rows = tuple((j, c[j], c[j] * c[j] - c[j - 1] * c[j + 1]) for j in range(1, n))
    return NewtonReport(tuple(c), rows)
