"""Reduction of any rank-2 instance to an equivalent 3 x 3 instance.

Two matrices with the same column count are *equivalent* when they share
their row space, their row lattice, and their nonnegativity cone
{x : Ax >= 0}; equivalent matrices have nonnegative integer rank 2
together or not at all.  An equivalent 3 x m matrix is built from any
rank-2 nonnegative A by taking the two rows that vanish on the extreme
rays of the column cone (made primitive inside the row lattice) plus one
completion row that restores the full row lattice, shifted into the cone
of the first two.  Applying the construction again to the transpose yields
a 3 x 3 matrix deciding the original instance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .diagram import cone_from_constraint_rows, extreme_rays
from .linalg import (
    Vec2,
    as_int_matrix,
    as_int_vector,
    ext_gcd,
    rank_exact,
    smith_normal_form,
    solve2,
    reduce_basis_rank2,
)


@dataclass
class StageTrace:
    """Record of one 3 x m construction."""

    row_choices: tuple[int, int]  # vanishing-row indices used for b1, b2
    basis: tuple[tuple[int, ...], tuple[int, ...]]  # reduced row-lattice basis
    b1_coords: Vec2  # coordinates (p, q) of b1 in that basis
    bezout: Vec2  # (r, s) with r*p - s*q = 1
    shift_multipliers: Vec2  # nonnegative multiples of (b1, b2) added to b3
    primitivized: bool  # whether the final b3 was divided down


@dataclass
class ReductionTrace:
    input: np.ndarray
    three_by_m: np.ndarray
    three_by_three: np.ndarray | None
    stages: tuple[StageTrace, ...]

    @property
    def row_choices(self) -> tuple[int, int]:
        return self.stages[0].row_choices

    @property
    def b3_construction(self) -> StageTrace:
        return self.stages[0]


@dataclass
class EquivalenceReport:
    row_space: bool
    row_lattice: bool
    cone: bool

    @property
    def ok(self) -> bool:
        return self.row_space and self.row_lattice and self.cone

    def __bool__(self) -> bool:  # pragma: no cover - convenience
        return self.ok


def row_lattice_basis(A) -> tuple[np.ndarray, np.ndarray]:
    """Reduced basis of the lattice generated by the rows of A.

    This is the lattice spanned by the rows themselves, not its saturation:
    with A = S D T and S unimodular, the rows of A and of D T generate the
    same lattice, and the nonzero rows of D T are d_1 t_1, d_2 t_2.
    """
    A = as_int_matrix(A)
    S, D, T = smith_normal_form(A)
    r = sum(1 for i in range(min(A.shape)) if D[i, i] != 0)
    if r != 2:
        raise ValueError(f"matrix must have rank 2, got rank {r}")
    a1 = D[0, 0] * T[0, :]
    a2 = D[1, 1] * T[1, :]
    return reduce_basis_rank2(a1, a2)


def lattice_coords(basis: tuple[np.ndarray, np.ndarray], v) -> tuple[Fraction, Fraction] | None:
    """Rational coordinates of v in the given rank-2 basis, or None."""
    a1, a2 = basis
    B = np.stack([a1, a2], axis=1)
    return solve2(B, as_int_vector(v))


def integer_lattice_coords(basis, v) -> Vec2 | None:
    sol = lattice_coords(basis, v)
    if sol is None or sol[0].denominator != 1 or sol[1].denominator != 1:
        return None
    return (int(sol[0]), int(sol[1]))


def primitivize_in_lattice(v, basis) -> np.ndarray:
    """Divide v by the largest positive integer keeping it in the lattice.

    Expressed in basis coordinates this is division by the coordinate gcd;
    the result is a primitive lattice element on the same ray.
    """
    v = as_int_vector(v)
    coords = integer_lattice_coords(basis, v)
    if coords is None:
        raise ValueError("vector is not in the lattice")
    g = math.gcd(coords[0], coords[1])
    if g == 0:
        raise ValueError("cannot primitivize the zero vector")
    return v // g


def _generation_certificate(coords: list[Vec2]) -> bool:
    # The vectors generate the full lattice iff the gcd of all 2x2
    # determinants of their coordinate pairs is 1.
    g = 0
    for i in range(len(coords)):
        for j in range(i + 1, len(coords)):
            det = coords[i][0] * coords[j][1] - coords[i][1] * coords[j][0]
            g = math.gcd(g, det)
    return g == 1


def build_3xm(A) -> tuple[np.ndarray, StageTrace]:
    """Equivalent 3 x m matrix for a rank-2 nonnegative integer A.

    Rows: b1, b2 are the extreme-ray vanishing rows of A primitivized in
    the row lattice (ordered by ascending vanishing-row index); b3 extends
    b1 to a lattice basis via a Bezout pair on b1's coordinates, is shifted
    by the smallest nonnegative multiples of b1, b2 that make it a
    nonnegative combination of them, and is primitivized afterwards when
    that preserves lattice generation.
    """
    A = as_int_matrix(A)
    (_, i1), (_, i2) = extreme_rays(A)
    basis = row_lattice_basis(A)
    a1, a2 = basis
    b1 = primitivize_in_lattice(A[i1, :], basis)
    b2 = primitivize_in_lattice(A[i2, :], basis)

    p, q = integer_lattice_coords(basis, b1)
    g, x, y = ext_gcd(p, q)
    assert g == 1  # b1 is primitive in the lattice
    r_, s_ = x, -y  # r*p - s*q == 1
    b3 = s_ * a1 + r_ * a2

    alpha, beta = lattice_coords((b1, b2), b3)
    m1 = math.ceil(max(0, -alpha))
    m2 = math.ceil(max(0, -beta))
    b3 = b3 + m1 * b1 + m2 * b2
    if not (b3 != 0).any():
        # the completion was an integer combination of b1, b2 and the shift
        # cancelled it exactly; b1, b2 then already generate the lattice and
        # any positive combination restores a valid third row
        m1, m2 = m1 + 1, m2 + 1
        b3 = b1 + b2

    c1 = integer_lattice_coords(basis, b1)
    c2 = integer_lattice_coords(basis, b2)
    c3 = integer_lattice_coords(basis, b3)
    assert _generation_certificate([c1, c2, c3])

    primitivized = False
    b3p = primitivize_in_lattice(b3, basis)
    if not (b3p == b3).all():
        c3p = integer_lattice_coords(basis, b3p)
        if _generation_certificate([c1, c2, c3p]):
            b3 = b3p
            primitivized = True

    B = np.stack([b1, b2, b3], axis=0)
    assert (B >= 0).all()
    trace = StageTrace(
        row_choices=(int(i1), int(i2)),
        basis=(tuple(int(t) for t in a1), tuple(int(t) for t in a2)),
        b1_coords=(p, q),
        bezout=(r_, s_),
        shift_multipliers=(m1, m2),
        primitivized=primitivized,
    )
    return B, trace


def reduce_to_3x3(A) -> tuple[np.ndarray, ReductionTrace]:
    """Equivalent 3 x 3 instance: the 3 x m construction applied twice.

    The second application runs on the transpose of the first result, so
    the output's columns correspond to the three rows produced by stage 1.
    """
    A = as_int_matrix(A)
    B1, st1 = build_3xm(A)
    C, st2 = build_3xm(B1.T)
    assert rank_exact(C) == 2
    trace = ReductionTrace(
        input=A, three_by_m=B1, three_by_three=C, stages=(st1, st2)
    )
    return C, trace


def _plane_rays_of(P_rows: list[tuple[int, int]]) -> frozenset[Vec2] | None:
    rays = cone_from_constraint_rows(P_rows)
    if rays is None:
        return None
    return frozenset(rays)


def _coords_as_int_rows(M: np.ndarray, basis) -> list[tuple[int, int]] | None:
    """Rows of M in the given row basis, scaled to integer pairs."""
    rows = []
    for i in range(M.shape[0]):
        sol = lattice_coords(basis, M[i, :])
        if sol is None:
            return None
        den = sol[0].denominator * sol[1].denominator // math.gcd(
            sol[0].denominator, sol[1].denominator
        )
        rows.append((int(sol[0] * den), int(sol[1] * den)))
    return rows


def validate_equivalence(A, B) -> EquivalenceReport:
    """Check the three equivalence conditions between A (n x m) and B (k x m).

    (i)   equal row spaces: the stacked matrix still has rank 2;
    (ii)  equal row lattices: each basis has integer coordinates in the
          other with change-of-basis determinant +-1;
    (iii) equal nonnegativity cones: writing A = P R and B = Q R over a
          common row basis R, the planar cones {y : P y >= 0} and
          {y : Q y >= 0} have the same extreme rays.

    Raises ValueError on unequal column counts or rank != 2 inputs.
    """
    A = as_int_matrix(A)
    B = as_int_matrix(B)
    if A.shape[1] != B.shape[1]:
        raise ValueError("matrices must have the same column count")
    if rank_exact(A) != 2 or rank_exact(B) != 2:
        raise ValueError("both matrices must have rank 2")

    stacked = np.concatenate([A, B], axis=0)
    cond_row_space = rank_exact(stacked) == 2

    cond_lattice = False
    cond_cone = False
    if cond_row_space:
        basis_a = row_lattice_basis(A)
        basis_b = row_lattice_basis(B)
        cb1 = integer_lattice_coords(basis_a, basis_b[0])
        cb2 = integer_lattice_coords(basis_a, basis_b[1])
        if cb1 is not None and cb2 is not None:
            det = cb1[0] * cb2[1] - cb1[1] * cb2[0]
            cond_lattice = abs(det) == 1

        P = _coords_as_int_rows(A, basis_a)
        Q = _coords_as_int_rows(B, basis_a)
        if P is not None and Q is not None:
            rays_p = _plane_rays_of(P)
            rays_q = _plane_rays_of(Q)
            cond_cone = rays_p is not None and rays_p == rays_q

    return EquivalenceReport(
        row_space=cond_row_space, row_lattice=cond_lattice, cone=cond_cone
    )
