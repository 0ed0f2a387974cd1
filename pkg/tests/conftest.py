import pytest

from nnirank2.linalg import as_int_matrix, solve2

# 3x3 matrix of rank 2 whose nonnegative integer rank is 3
BEASLEY = [[2, 0, 3], [1, 1, 4], [1, 3, 9]]

# 5x5 worked reduction example and its printed reductions
M55 = [
    [2, 4, 6, 4, 2],
    [4, 7, 10, 5, 2],
    [5, 8, 11, 4, 1],
    [2, 6, 10, 10, 6],
    [3, 7, 11, 9, 5],
]
PRINTED_B35 = [[5, 8, 11, 4, 1], [1, 3, 5, 5, 3], [1, 2, 3, 2, 1]]
PRINTED_C33 = [[5, 1, 3], [1, 3, 2], [1, 1, 1]]

# 3x4 matrix that is not rank2 although every 3-column submatrix is
SUBMATRIX_4COL = [[0, 6, 10, 15], [1, 3, 5, 8], [5, 9, 15, 25]]


def same_lattice(basis_a, basis_b) -> bool:
    """Do the columns of two n x 2 integer matrices generate one lattice?"""
    basis_a = as_int_matrix(basis_a)
    basis_b = as_int_matrix(basis_b)
    coords = []
    for j in range(2):
        sol = solve2(basis_a, basis_b[:, j])
        if sol is None or sol[0].denominator != 1 or sol[1].denominator != 1:
            return False
        coords.append((int(sol[0]), int(sol[1])))
    det = coords[0][0] * coords[1][1] - coords[0][1] * coords[1][0]
    return abs(det) == 1


@pytest.fixture
def beasley():
    return as_int_matrix(BEASLEY)


@pytest.fixture
def m55():
    return as_int_matrix(M55)
