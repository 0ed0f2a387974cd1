"""Decision procedure for nonnegative integer rank 2.

Working on the canonical diagram, the cone spanned by the data points is
wedged between the ambient cone's extreme rays (1,0) and c.  Any generating
pair (a, b) must flank the data: a below the lowest data direction u, b
above the highest one v.  Some multiple k*a of the lower generator then
lands in the bounded triangle K₋ ∩ (u − K₊), so enumerating the triangle's
lattice points and pairing each candidate with the forced direction of b
gives a finite, complete search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .diagram import CanonicalDiagram, Diagram, build_diagram, canonicalize
from .linalg import (
    Vec2,
    as_int_matrix,
    primitive,
    primitive_point,
    rank_exact,
)

RANK2 = "rank2"
NOT_RANK2 = "not_rank2"
RANK_LE_1 = "rank_le_1"


@dataclass(frozen=True)
class ConeDecomposition:
    """Split of the ambient cone into K₋ ∪ cone(u, v) ∪ K₊.

    u, v are the primitive directions of the angularly lowest and highest
    nonzero data points; u_point / v_point are the data points themselves;
    c is the second canonical cone generator.
    """

    u: Vec2
    v: Vec2
    c: Vec2
    u_point: Vec2
    v_point: Vec2


@dataclass(frozen=True)
class CandidatePair:
    a: Vec2  # primitive, in the lower flank K₋
    b: Vec2  # primitive, in the upper flank K₊


@dataclass(frozen=True)
class PairRejection:
    pair: CandidatePair
    index: int  # first column whose coefficients fail
    coeffs: tuple[Fraction, Fraction]


@dataclass
class Rank2Certificate:
    F1: np.ndarray  # n x 2, nonnegative
    F2: np.ndarray  # 2 x m, nonnegative
    pair: CandidatePair
    W: list[Vec2]


@dataclass
class SolveOutcome:
    verdict: str
    certificate: Rank2Certificate | None = None
    pairs_examined: int = 0
    rank1_factors: tuple[np.ndarray, np.ndarray] | None = None
    rejections: list[PairRejection] | None = None


def decompose(cd: CanonicalDiagram) -> ConeDecomposition:
    """Find the angular extremes u and v of the nonzero data points.

    Ties between parallel points are broken toward the smaller Euclidean
    norm, then lexicographically, so the result is deterministic.  Raises
    ValueError when fewer than two non-parallel nonzero points exist (the
    matrix then has rank < 2).
    """
    pts = [p for p in cd.points if p != (0, 0)]
    if not pts:
        raise ValueError("no nonzero points: matrix has rank 0")

    def better_tie(p: Vec2, q: Vec2) -> bool:
        np2 = p[0] * p[0] + p[1] * p[1]
        nq2 = q[0] * q[0] + q[1] * q[1]
        return (np2, p) < (nq2, q)

    u_pt = v_pt = pts[0]
    for p in pts[1:]:
        cu = p[0] * u_pt[1] - p[1] * u_pt[0]
        if cu > 0 or (cu == 0 and better_tie(p, u_pt)):
            u_pt = p
        cv = p[0] * v_pt[1] - p[1] * v_pt[0]
        if cv < 0 or (cv == 0 and better_tie(p, v_pt)):
            v_pt = p

    u = primitive_point(u_pt)
    v = primitive_point(v_pt)
    if u[0] * v[1] - u[1] * v[0] == 0:
        raise ValueError("all points are parallel: matrix has rank 1")
    return ConeDecomposition(
        u=u, v=v, c=cd.cone_gens[1], u_point=u_pt, v_point=v_pt
    )


def iter_triangle_points(dec: ConeDecomposition) -> Iterator[Vec2]:
    """Lattice points of the triangle K₋ ∩ (u_point − K₊), lexicographic.

    The four half-plane conditions (boundary included, origin excluded):

        cross((1,0), p) >= 0        cross(p, u_point)       >= 0
        cross(v, u_point - p) >= 0  cross(u_point - p, c)   >= 0

    Columns of constant x are scanned between the exact rational vertex
    abscissae, with the per-column y-range from the same inequalities; no
    floating point is involved.
    """
    ux, uy = dec.u_point
    vx, vy = dec.v
    cx, cy = dec.c
    # vertices: u_point and the two x-axis hits of the rays u - t*v, u - t*c
    cross_uv = ux * vy - uy * vx
    cross_uc = ux * cy - uy * cx
    xs = [Fraction(ux), Fraction(cross_uv, vy), Fraction(cross_uc, cy)]
    x_lo = max(0, math.ceil(min(xs)))
    x_hi = math.floor(max(xs))
    # constraints as alpha*x + beta*y + delta >= 0
    constraints = (
        (0, 1, 0),
        (uy, -ux, 0),
        (vy, -vx, vx * uy - vy * ux),
        (-cy, cx, cross_uc),
    )
    for x in range(x_lo, x_hi + 1):
        lo, hi = 0, None
        feasible = True
        for al, be, de in constraints:
            s = al * x + de
            if be == 0:
                if s < 0:
                    feasible = False
                    break
            elif be > 0:
                lo = max(lo, -(s // be))
            else:
                bound = s // (-be)
                hi = bound if hi is None else min(hi, bound)
        if not feasible or hi is None:
            continue
        for y in range(lo, hi + 1):
            if x == 0 and y == 0:
                continue
            yield (x, y)


def triangle_points(dec: ConeDecomposition) -> list[Vec2]:
    """Materialized :func:`iter_triangle_points`."""
    return list(iter_triangle_points(dec))


def check_pair(
    pair: CandidatePair, points
) -> tuple[list[Vec2] | None, PairRejection | None]:
    """Coefficients of every point in the candidate basis, if they exist.

    Point p has coefficients w = (cross(p, b)/D, cross(a, p)/D) with
    D = cross(a, b).  Succeeds when every w is a pair of nonnegative
    integers, returning the coefficient list; otherwise returns the
    rejection carrying the first offending index and its exact rational
    coefficients.
    """
    ax, ay = pair.a
    bx, by = pair.b
    D = ax * by - ay * bx
    if D == 0:
        raise ValueError("candidate pair must not be parallel")
    W: list[Vec2] = []
    for i, (px, py) in enumerate(points):
        n1 = px * by - py * bx
        n2 = ax * py - ay * px
        q1, r1 = divmod(n1, D)
        q2, r2 = divmod(n2, D)
        if r1 != 0 or r2 != 0 or q1 < 0 or q2 < 0:
            return None, PairRejection(pair, i, (Fraction(n1, D), Fraction(n2, D)))
        W.append((q1, q2))
    return W, None


def _in_ambient(q: Vec2, c: Vec2) -> bool:
    # membership in cone((1,0), c) for canonical coordinates
    return q[1] >= 0 and q[0] * c[1] - q[1] * c[0] >= 0


def search(cd: CanonicalDiagram, collect_rejections: bool = False) -> SolveOutcome:
    """Run the bounded generator search on a canonical diagram.

    Candidates k*a are the triangle's lattice points in lexicographic
    order.  When k*a != u_point the direction of b is forced to
    u_point - k*a; when k*a == u_point, b sweeps the directions
    v_point - k'*a for k' = 0, 1, ... while they stay in the ambient cone.
    The first pair generating every point wins; the outcome is fully
    deterministic.
    """
    dec = decompose(cd)
    pts = cd.points
    u_pt = dec.u_point
    v_pt = dec.v_point
    rejections: list[PairRejection] | None = [] if collect_rejections else None
    pairs = 0

    def note(rej: PairRejection) -> None:
        if rejections is not None:
            rejections.append(rej)

    for ka in iter_triangle_points(dec):
        a = primitive_point(ka)
        rem = (u_pt[0] - ka[0], u_pt[1] - ka[1])
        if rem != (0, 0):
            pair = CandidatePair(a, primitive_point(rem))
            pairs += 1
            W, rej = check_pair(pair, pts)
            if W is not None:
                cert = assemble(cd, pair, W)
                return SolveOutcome(RANK2, cert, pairs, rejections=rejections)
            note(rej)
        else:
            k2 = 0
            while True:
                q = (v_pt[0] - k2 * a[0], v_pt[1] - k2 * a[1])
                if not _in_ambient(q, dec.c):
                    break
                pair = CandidatePair(a, primitive_point(q))
                pairs += 1
                W, rej = check_pair(pair, pts)
                if W is not None:
                    cert = assemble(cd, pair, W)
                    return SolveOutcome(RANK2, cert, pairs, rejections=rejections)
                note(rej)
                k2 += 1
            # the sweep leaves the cone after at most max(v_point) + 1 steps
            assert k2 <= 1 + max(v_pt)
    return SolveOutcome(NOT_RANK2, None, pairs, rejections=rejections)


def assemble(
    cd: CanonicalDiagram, pair: CandidatePair, W: list[Vec2]
) -> Rank2Certificate:
    """Certificate matrices from a successful pair.

    F1 holds the preimages of a and b in the original space (columns of the
    stored basis times the generators); F2 stacks the coefficient pairs.
    Both must come out nonnegative: a and b lie in the ambient cone, so
    their preimages lie in col(A) ∩ Z⁺ⁿ.
    """
    gen_mat = as_int_matrix([[pair.a[0], pair.b[0]], [pair.a[1], pair.b[1]]])
    F1 = cd.basis @ gen_mat
    if (F1 < 0).any():
        raise RuntimeError(
            "internal error: generator preimage has a negative entry"
        )
    m = len(W)
    F2 = np.empty((2, m), dtype=object)
    for i, (w0, w1) in enumerate(W):
        F2[0, i] = w0
        F2[1, i] = w1
        p = cd.points[i]
        assert (
            pair.a[0] * w0 + pair.b[0] * w1 == p[0]
            and pair.a[1] * w0 + pair.b[1] * w1 == p[1]
        )
    return Rank2Certificate(F1=F1, F2=F2, pair=pair, W=list(W))


def verify_factorization(A, F1, F2) -> bool:
    """True iff F1 (n x 2) times F2 (2 x m) reproduces A exactly with
    nonnegative integer entries throughout.  Never raises."""
    try:
        A = as_int_matrix(A)
        F1 = as_int_matrix(F1)
        F2 = as_int_matrix(F2)
    except (ValueError, TypeError):
        return False
    n, m = A.shape
    if F1.shape != (n, 2) or F2.shape != (2, m):
        return False
    if (F1 < 0).any() or (F2 < 0).any():
        return False
    return bool((F1 @ F2 == A).all())


def _rank1_factors(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Factor a rank <= 1 nonnegative matrix as (n x 1) @ (1 x m)."""
    n, m = A.shape
    j0 = next((j for j in range(m) if any(A[i, j] != 0 for i in range(n))), None)
    F1 = np.zeros((n, 1), dtype=object)
    F2 = np.zeros((1, m), dtype=object)
    if j0 is None:
        return F1, F2
    g = primitive(A[:, j0])
    i0 = next(i for i in range(n) if g[i] != 0)
    for i in range(n):
        F1[i, 0] = g[i]
    for j in range(m):
        k = A[i0, j] // g[i0]
        if any(A[i, j] != k * g[i] for i in range(n)):
            raise ValueError("matrix does not have rank <= 1")
        F2[0, j] = k
    return F1, F2


def solve(A, r: int = 1, collect_rejections: bool = False) -> SolveOutcome:
    """Top-level decision: does A have nonnegative integer rank <= 2?

    Validates the input (integer, nonnegative, rank <= 2), answers rank <= 1
    directly with a single-generator factorization, and otherwise runs the
    canonical-diagram search with canonization index ``r``.  Every rank2
    verdict is gated through :func:`verify_factorization` before return.
    """
    A = as_int_matrix(A)
    if (A < 0).any():
        raise ValueError("matrix must be nonnegative")
    rk = rank_exact(A)
    if rk > 2:
        raise ValueError(f"matrix must have rank <= 2, got rank {rk}")
    if rk <= 1:
        return SolveOutcome(RANK_LE_1, rank1_factors=_rank1_factors(A))
    cd = canonicalize(build_diagram(A), r)
    out = search(cd, collect_rejections=collect_rejections)
    if out.verdict == RANK2:
        cert = out.certificate
        if not verify_factorization(A, cert.F1, cert.F2):
            raise RuntimeError("internal error: certificate failed verification")
    return out


def solve_diagram(d: Diagram, r: int = 1, collect_rejections: bool = False) -> SolveOutcome:
    """Run the search from an existing diagram instead of a matrix."""
    return search(canonicalize(d, r), collect_rejections=collect_rejections)
