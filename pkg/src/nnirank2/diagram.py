"""Planar picture of a rank-2 nonnegative integer matrix.

A rank-2 matrix A is drawn in the plane by choosing a basis of the
saturated column lattice col(A) ∩ Z^n: every column becomes an integer
point, and the cone col(A) ∩ R⁺ⁿ becomes a pointed planar cone cut out by
the rows of the basis.  A unimodular change of plane coordinates then
normalizes the cone so that one extreme ray is (1, 0) and the other is
(c, d) with 0 <= c < d; that canonical form is what the solver consumes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    Vec2,
    as_int_matrix,
    cross2,
    ext_gcd,
    primitive,
    primitive_point,
    smith_normal_form,
)


@dataclass(frozen=True)
class Diagram:
    """Plane representation of a rank-2 nonnegative matrix.

    basis       n x 2; columns generate col(A) ∩ Z^n (saturated).
    points      plane coordinates of the columns, in column order.
    cone_gens   primitive coordinates of the two extreme rays of
                col(A) ∩ R⁺ⁿ, ordered by ascending vanishing-row index.
    source_dims (n, m) of the source matrix.
    """

    basis: np.ndarray
    points: tuple[Vec2, ...]
    cone_gens: tuple[Vec2, Vec2]
    source_dims: tuple[int, int]


@dataclass(frozen=True)
class CanonicalDiagram:
    """A Diagram normalized so the cone is spanned by (1,0) and (c,d), 0<=c<d.

    ``transform`` is the 2x2 unimodular map sending the pre-canonical
    coordinates (generators and points alike) to the stored ones;
    ``canon_index`` records which cone generator (1 or 2) went to (1, 0).
    """

    diagram: Diagram
    transform: np.ndarray
    canon_index: int

    @property
    def points(self) -> tuple[Vec2, ...]:
        return self.diagram.points

    @property
    def cone_gens(self) -> tuple[Vec2, Vec2]:
        return self.diagram.cone_gens

    @property
    def basis(self) -> np.ndarray:
        return self.diagram.basis


def column_lattice_basis(A) -> np.ndarray:
    """Basis (n x 2) of the saturated lattice col(A) ∩ Z^n.

    From A = S D T with S unimodular and exactly two nonzero invariant
    factors, the first two columns of S generate every integer vector of
    the column span, so the gcd of the 2x2 minors of the result is 1.
    """
    A = as_int_matrix(A)
    S, D, _ = smith_normal_form(A)
    r = sum(1 for i in range(min(A.shape)) if D[i, i] != 0)
    if r != 2:
        raise ValueError(f"matrix must have rank 2, got rank {r}")
    return S[:, :2].copy()


def point_coordinates(A, basis) -> list[Vec2]:
    """Integer coordinates x_i with basis @ x_i = (column i of A).

    Raises ValueError when some column has no integer coordinates, which
    means the given basis does not span a lattice containing the columns.
    """
    A = as_int_matrix(A)
    B = as_int_matrix(basis)
    n, m = A.shape
    if B.shape != (n, 2):
        raise ValueError("basis must be n x 2 for an n-row matrix")
    i0 = next((i for i in range(n) if B[i, 0] != 0 or B[i, 1] != 0), None)
    pair = None
    if i0 is not None:
        for j in range(n):
            d = B[i0, 0] * B[j, 1] - B[i0, 1] * B[j, 0]
            if d != 0:
                pair = (i0, j, d)
                break
    if pair is None:
        raise ValueError("basis must have rank 2")
    i, j, d = pair
    pts: list[Vec2] = []
    for col in range(m):
        yi, yj = A[i, col], A[j, col]
        n0 = yi * B[j, 1] - yj * B[i, 1]
        n1 = B[i, 0] * yj - B[j, 0] * yi
        x0, r0 = divmod(n0, d)
        x1, r1 = divmod(n1, d)
        if r0 != 0 or r1 != 0:
            raise ValueError(
                f"column {col} has non-integer coordinates in the given basis"
            )
        for k in range(n):
            if B[k, 0] * x0 + B[k, 1] * x1 != A[k, col]:
                raise ValueError(
                    f"column {col} is outside the span of the given basis"
                )
        pts.append((int(x0), int(x1)))
    return pts


def cone_from_constraint_rows(rows) -> tuple[Vec2, Vec2] | None:
    """Extreme rays of {p in R^2 : r . p >= 0 for every row r}.

    Zero rows are ignored.  Returns the two primitive ray directions, or
    None when the constraint set does not cut out a pointed two-dimensional
    cone (so it has no well-defined ray pair).
    """
    rs = [(int(r[0]), int(r[1])) for r in rows]
    rs = [r for r in rs if r != (0, 0)]
    if not rs:
        return None
    found: list[Vec2] = []
    for a, b in rs:
        for d in ((b, -a), (-b, a)):
            dp = primitive_point(d)
            if dp in found:
                continue
            if all(r0 * dp[0] + r1 * dp[1] >= 0 for r0, r1 in rs):
                found.append(dp)
    if len(found) != 2:
        return None
    return (found[0], found[1])


def _plane_cone(basis: np.ndarray, n_rows: int) -> tuple[tuple[Vec2, int], tuple[Vec2, int]]:
    """Extreme rays of {p : basis @ p >= 0} with their vanishing rows.

    Each ray is paired with the smallest index of a nonzero basis row whose
    form vanishes on it; the two pairs are returned sorted by that index.
    """
    rows = [
        (i, (int(basis[i, 0]), int(basis[i, 1])))
        for i in range(n_rows)
        if basis[i, 0] != 0 or basis[i, 1] != 0
    ]
    rays = cone_from_constraint_rows([r for _, r in rows])
    if rays is None:
        raise ValueError("column cone is not pointed and two-dimensional")

    def vanishing_row(d: Vec2) -> int:
        return min(i for i, (r0, r1) in rows if r0 * d[0] + r1 * d[1] == 0)

    tagged = sorted(((vanishing_row(d), d) for d in rays))
    return ((tagged[0][1], tagged[0][0]), (tagged[1][1], tagged[1][0]))


def extreme_rays(A) -> tuple[tuple[np.ndarray, int], tuple[np.ndarray, int]]:
    """The two extreme rays of col(A) ∩ R⁺ⁿ, each with a vanishing row.

    Rays are primitive integer n-vectors; the paired index is the smallest
    (0-based) nonzero row of A whose coordinate vanishes on the ray.  Pairs
    are ordered by ascending vanishing-row index.  Zero rows of A never
    appear as vanishing rows.
    """
    A = as_int_matrix(A)
    if (A < 0).any():
        raise ValueError("matrix must be nonnegative")
    basis = column_lattice_basis(A)
    (d1, k1), (d2, k2) = _plane_cone(basis, A.shape[0])
    r1 = primitive(basis @ as_col(d1))
    r2 = primitive(basis @ as_col(d2))
    return ((r1, k1), (r2, k2))


def as_col(p: Vec2) -> np.ndarray:
    out = np.empty(2, dtype=object)
    out[0], out[1] = p[0], p[1]
    return out


def build_diagram(A) -> Diagram:
    """Construct the full plane diagram of a rank-2 nonnegative matrix."""
    A = as_int_matrix(A)
    if (A < 0).any():
        raise ValueError("matrix must be nonnegative")
    basis = column_lattice_basis(A)
    pts = point_coordinates(A, basis)
    (d1, _), (d2, _) = _plane_cone(basis, A.shape[0])
    return Diagram(
        basis=basis,
        points=tuple(pts),
        cone_gens=(d1, d2),
        source_dims=(int(A.shape[0]), int(A.shape[1])),
    )


def _apply(M: tuple[tuple[int, int], tuple[int, int]], p: Vec2) -> Vec2:
    return (M[0][0] * p[0] + M[0][1] * p[1], M[1][0] * p[0] + M[1][1] * p[1])


def _inv2(M: tuple[tuple[int, int], tuple[int, int]]) -> np.ndarray:
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    if det not in (1, -1):
        raise ValueError("matrix is not unimodular")
    # adjugate divided by det; det is +-1 so this stays integer
    return as_int_matrix(
        [[M[1][1] * det, -M[0][1] * det], [-M[1][0] * det, M[0][0] * det]]
    )


def canonicalize(d: Diagram, r: int = 1) -> CanonicalDiagram:
    """Canonical form of a diagram: cone spanned by (1,0) and (c,d), 0<=c<d.

    ``r`` selects which cone generator is sent to (1, 0).  The transform is
    the composition of a Bezout map taking that generator to (1, 0), a sign
    flip making the second generator's y-coordinate positive, and the
    smallest shear making its x-coordinate nonnegative (hence < d).
    """
    if r not in (1, 2):
        raise ValueError("canonization index must be 1 or 2")
    g = d.cone_gens[r - 1]
    other = d.cone_gens[2 - r]
    a, b = g
    _, x, y = ext_gcd(a, b)
    M = ((x, y), (-b, a))  # unimodular, sends (a, b) to (1, 0)
    c1, d1 = _apply(M, other)
    if d1 < 0:
        M = (M[0], (-M[1][0], -M[1][1]))
        d1 = -d1
    gamma = -(c1 // d1)  # smallest integer with c1 + gamma*d1 >= 0
    T = (
        (M[0][0] + gamma * M[1][0], M[0][1] + gamma * M[1][1]),
        M[1],
    )
    new_other = _apply(T, other)
    assert _apply(T, g) == (1, 0)
    assert 0 <= new_other[0] < new_other[1]
    new_points = tuple(_apply(T, p) for p in d.points)
    new_basis = d.basis @ _inv2(T)
    inner = Diagram(
        basis=new_basis,
        points=new_points,
        cone_gens=((1, 0), new_other),
        source_dims=d.source_dims,
    )
    return CanonicalDiagram(
        diagram=inner, transform=as_int_matrix(T), canon_index=r
    )


def in_cone(p: Vec2, g1: Vec2, g2: Vec2) -> bool:
    """Membership of p in the cone spanned by g1, g2 (either orientation)."""
    orient = cross2(g1, g2)
    if orient > 0:
        return cross2(g1, p) >= 0 and cross2(p, g2) >= 0
    if orient < 0:
        return cross2(g2, p) >= 0 and cross2(p, g1) >= 0
    raise ValueError("cone generators must not be parallel")
