"""Exact integer and rational linear algebra primitives.

All matrices and vectors are numpy object arrays holding Python ints, so
every operation is exact at any magnitude; rationals are
``fractions.Fraction`` (always reduced, positive denominator).  There is no
floating point anywhere in this module.
"""

from __future__ import annotations

import math
import operator
from fractions import Fraction
from typing import NamedTuple

import numpy as np

Vec2 = tuple[int, int]

gcd = math.gcd  # gcd of absolute values; gcd(0, 0) == 0


def as_int_matrix(data) -> np.ndarray:
    """Coerce nested sequences or arrays to a 2-D object array of Python ints.

    Rejects empty or ragged input and non-integer entries.
    """
    if isinstance(data, np.ndarray) and data.dtype == object and data.ndim == 2:
        rows = data.tolist()
    else:
        rows = [list(r) for r in data]
    if not rows or not rows[0]:
        raise ValueError("matrix must have at least one row and one column")
    width = len(rows[0])
    out = np.empty((len(rows), width), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ValueError(
                f"ragged matrix: row {i} has {len(row)} entries, expected {width}"
            )
        for j, x in enumerate(row):
            out[i, j] = operator.index(x)
    return out


def as_int_vector(data) -> np.ndarray:
    """Coerce a sequence to a 1-D object array of Python ints."""
    items = [operator.index(x) for x in data]
    if not items:
        raise ValueError("vector must be nonempty")
    out = np.empty(len(items), dtype=object)
    out[:] = items
    return out


def identity_matrix(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    np.fill_diagonal(out, 1)
    return out


def matrices_equal(a, b) -> bool:
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    return a.shape == b.shape and bool((a == b).all())


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: return (g, x, y) with a*x + b*y == g == gcd(|a|, |b|).

    Raises ValueError on (0, 0), where no Bezout certificate exists.
    """
    if a == 0 and b == 0:
        raise ValueError("ext_gcd(0, 0) is undefined")
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def primitive(v) -> np.ndarray:
    """Divide an integer vector by the gcd of its entries.

    The result spans the same ray and has entry gcd 1.  The zero vector is
    rejected: it lies on no ray.
    """
    v = as_int_vector(v)
    g = 0
    for x in v:
        g = math.gcd(g, x)
    if g == 0:
        raise ValueError("cannot primitivize the zero vector")
    return v // g


def primitive_point(p: Vec2) -> Vec2:
    """Tuple form of :func:`primitive` for plane points."""
    g = math.gcd(p[0], p[1])
    if g == 0:
        raise ValueError("cannot primitivize the zero vector")
    return (p[0] // g, p[1] // g)


def cross2(p: Vec2, q: Vec2) -> int:
    """Signed area p.x*q.y - p.y*q.x; the exact angular comparator."""
    return p[0] * q[1] - p[1] * q[0]


def rank_exact(A) -> int:
    """Rank over the rationals, by fraction-free (Bareiss) elimination.

    Division by the previous pivot is exact, so intermediate entries stay
    integer (they are minors of the input) and never blow up the way plain
    cross-multiplication elimination would.
    """
    M = [[int(x) for x in row] for row in as_int_matrix(A)]
    n, m = len(M), len(M[0])
    rank = 0
    prev = 1
    for col in range(m):
        if rank == n:
            break
        piv = next((r for r in range(rank, n) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][col]
        row_p = M[rank]
        for r in range(rank + 1, n):
            q = M[r][col]
            row_r = M[r]
            if q != 0:
                for c in range(col + 1, m):
                    row_r[c] = (row_r[c] * p - q * row_p[c]) // prev
                row_r[col] = 0
        prev = p
        rank += 1
    return rank


def det_exact(A) -> int:
    """Exact determinant of a square integer matrix (Bareiss)."""
    M = [[int(x) for x in row] for row in as_int_matrix(A)]
    n = len(M)
    if len(M[0]) != n:
        raise ValueError("determinant requires a square matrix")
    sign = 1
    prev = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            sign = -sign
        p = M[col][col]
        row_p = M[col]
        for r in range(col + 1, n):
            q = M[r][col]
            row_r = M[r]
            for c in range(col + 1, n):
                row_r[c] = (row_r[c] * p - q * row_p[c]) // prev
            row_r[col] = 0
        prev = p
    return sign * M[n - 1][n - 1]


def is_unimodular(A) -> bool:
    return abs(det_exact(A)) == 1


class SnfResult(NamedTuple):
    S: np.ndarray  # n x n unimodular
    D: np.ndarray  # n x m nonnegative diagonal with d_i | d_{i+1}
    T: np.ndarray  # m x m unimodular


def smith_normal_form(A) -> SnfResult:
    """Smith decomposition A = S @ D @ T, exact and deterministic.

    Pivot strategy (fixed so repeated runs agree bit for bit): at step k the
    pivot is the first nonzero entry of the trailing submatrix in row-major
    order, moved to (k, k) by a row and a column swap.  The pivot row and
    column are then cleared alternately with extended-gcd 2x2 transforms
    (plain subtraction when the pivot already divides the target entry)
    until both are zero off the diagonal.  Afterwards the diagonal is fixed
    up to satisfy the divisibility chain and made nonnegative.
    """
    A = as_int_matrix(A)
    n, m = A.shape
    D = A.copy()
    S = identity_matrix(n)
    T = identity_matrix(m)

    def row_clear(k: int, i: int) -> None:
        # Zero D[i, k] against the pivot D[k, k]; D <- E @ D, S <- S @ E^-1.
        a, b = D[k, k], D[i, k]
        if b == 0:
            return
        if a != 0 and b % a == 0:
            q = b // a
            D[i, :] = D[i, :] - q * D[k, :]
            S[:, k] = S[:, k] + q * S[:, i]
            return
        g, x, y = ext_gcd(a, b)
        u, v = a // g, b // g
        rk = x * D[k, :] + y * D[i, :]
        ri = -v * D[k, :] + u * D[i, :]
        D[k, :], D[i, :] = rk, ri
        ck = u * S[:, k] + v * S[:, i]
        ci = -y * S[:, k] + x * S[:, i]
        S[:, k], S[:, i] = ck, ci

    def col_clear(k: int, j: int) -> None:
        # Zero D[k, j] against the pivot D[k, k]; D <- D @ N, T <- N^-1 @ T.
        a, b = D[k, k], D[k, j]
        if b == 0:
            return
        if a != 0 and b % a == 0:
            q = b // a
            D[:, j] = D[:, j] - q * D[:, k]
            T[k, :] = T[k, :] + q * T[j, :]
            return
        g, x, y = ext_gcd(a, b)
        u, v = a // g, b // g
        ck = x * D[:, k] + y * D[:, j]
        cj = -v * D[:, k] + u * D[:, j]
        D[:, k], D[:, j] = ck, cj
        rk = u * T[k, :] + v * T[j, :]
        rj = -y * T[k, :] + x * T[j, :]
        T[k, :], T[j, :] = rk, rj

    def settle(k: int, rows: range, cols: range) -> None:
        while True:
            for i in rows:
                row_clear(k, i)
            if all(D[k, j] == 0 for j in cols):
                break
            for j in cols:
                col_clear(k, j)
            if all(D[i, k] == 0 for i in rows):
                break

    r = 0
    for k in range(min(n, m)):
        piv = next(
            (
                (i, j)
                for i in range(k, n)
                for j in range(k, m)
                if D[i, j] != 0
            ),
            None,
        )
        if piv is None:
            break
        pi, pj = piv
        if pi != k:
            D[[k, pi], :] = D[[pi, k], :]
            S[:, [k, pi]] = S[:, [pi, k]]
        if pj != k:
            D[:, [k, pj]] = D[:, [pj, k]]
            T[[k, pj], :] = T[[pj, k], :]
        settle(k, range(k + 1, n), range(k + 1, m))
        r += 1

    # Divisibility chain: fold d_{i+1} into column i and re-settle the pair.
    changed = True
    while changed:
        changed = False
        for i in range(r - 1):
            a, b = D[i, i], D[i + 1, i + 1]
            if a != 0 and b % a != 0:
                D[:, i] = D[:, i] + D[:, i + 1]
                T[i + 1, :] = T[i + 1, :] - T[i, :]
                settle(i, range(i + 1, i + 2), range(i + 1, i + 2))
                changed = True

    for i in range(r):
        if D[i, i] < 0:
            D[i, :] = -D[i, :]
            S[:, i] = -S[:, i]

    return SnfResult(S, D, T)


def _dot(u: np.ndarray, v: np.ndarray) -> int:
    return int(u @ v)


def _independent(v1: np.ndarray, v2: np.ndarray) -> bool:
    i0 = next((i for i in range(len(v1)) if v1[i] != 0), None)
    if i0 is None:
        return False
    return any(v1[i0] * v2[j] != v2[i0] * v1[j] for j in range(len(v2)))


def _sign_normalized(v: np.ndarray) -> np.ndarray:
    for x in v:
        if x != 0:
            return -v if x < 0 else v
    return v


def reduce_basis_rank2(v1, v2) -> tuple[np.ndarray, np.ndarray]:
    """Lagrange-Gauss reduction of a rank-2 lattice basis in Z^k.

    Returns (a1, a2) generating the same lattice as (v1, v2), with
    ||a1|| <= ||a2|| and ||a2 +- a1|| >= ||a2||.  Output signs and order are
    normalized (first nonzero entry positive; shorter vector first, ties
    lexicographic) so the function is deterministic.
    """
    b1 = as_int_vector(v1)
    b2 = as_int_vector(v2)
    if len(b1) != len(b2):
        raise ValueError("basis vectors must have equal length")
    if not _independent(b1, b2):
        raise ValueError("basis vectors must be linearly independent")
    if _dot(b1, b1) > _dot(b2, b2):
        b1, b2 = b2, b1
    while True:
        num = _dot(b1, b2)
        den = _dot(b1, b1)
        mu = (2 * num + den) // (2 * den)  # nearest integer to num/den
        if mu != 0:
            b2 = b2 - mu * b1
        if _dot(b2, b2) < _dot(b1, b1):
            b1, b2 = b2, b1
        else:
            break
    b1 = _sign_normalized(b1)
    b2 = _sign_normalized(b2)
    key1 = (_dot(b1, b1), tuple(b1))
    key2 = (_dot(b2, b2), tuple(b2))
    if key2 < key1:
        b1, b2 = b2, b1
    return b1, b2


def solve2(B, y) -> tuple[Fraction, Fraction] | None:
    """Exact rational solution of B @ x = y for an n x 2 matrix B of rank 2.

    Returns None when the system is inconsistent; raises ValueError when B
    is rank-deficient.
    """
    B = as_int_matrix(B)
    y = as_int_vector(y)
    n, w = B.shape
    if w != 2:
        raise ValueError("solve2 expects an n x 2 matrix")
    if len(y) != n:
        raise ValueError("dimension mismatch between matrix and right-hand side")
    i0 = next((i for i in range(n) if B[i, 0] != 0 or B[i, 1] != 0), None)
    pair = None
    if i0 is not None:
        for j in range(n):
            d = B[i0, 0] * B[j, 1] - B[i0, 1] * B[j, 0]
            if d != 0:
                pair = (i0, j, d)
                break
    if pair is None:
        raise ValueError("solve2 requires a rank-2 matrix")
    i, j, d = pair
    x0 = Fraction(y[i] * B[j, 1] - y[j] * B[i, 1], d)
    x1 = Fraction(B[i, 0] * y[j] - B[j, 0] * y[i], d)
    for k in range(n):
        if B[k, 0] * x0 + B[k, 1] * x1 != y[k]:
            return None
    return (x0, x1)


def solve2_int(B, y) -> Vec2 | None:
    """Like :func:`solve2` but only accepts integer solutions."""
    sol = solve2(B, y)
    if sol is None:
        return None
    x0, x1 = sol
    if x0.denominator != 1 or x1.denominator != 1:
        return None
    return (int(x0), int(x1))
