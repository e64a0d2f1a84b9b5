import random
from fractions import Fraction

import pytest

from qdesign.linalg import (
    hermite_with_transform,
    integer_kernel_basis,
    pseudo_inverse,
    row_space_equal,
    rref,
    solve_exact,
    transpose,
)
from oracle_utils import box_kernel_points, integer_combination


def _det(m):
    # cofactor expansion; only used on the small transforms in these tests
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1 :] for row in m[1:]]
            total += (-1) ** j * m[0][j] * _det(minor)
    return total


def _matmul(a, b):
    return [
        [sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a
    ]


def _random_matrix(rng, rows, cols, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def test_hermite_transform_properties():
    rng = random.Random(11)
    for _ in range(150):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        M = _random_matrix(rng, rows, cols)
        H, U = hermite_with_transform(M)
        assert _matmul(U, M) == H
        assert _det(U) in (1, -1)
        # echelon: pivot columns strictly increase, pivots positive,
        # entries above each pivot reduced
        last = -1
        for row in H:
            piv = next((j for j, a in enumerate(row) if a), None)
            if piv is None:
                continue
            assert piv > last
            last = piv
            assert row[piv] > 0
        for i, row in enumerate(H):
            piv = next((j for j, a in enumerate(row) if a), None)
            if piv is not None:
                for above in range(i):
                    assert 0 <= H[above][piv] < row[piv]


def test_kernel_basis_annihilates_and_saturates():
    rng = random.Random(23)
    for _ in range(120):
        rows = rng.randint(1, 3)
        cols = rng.randint(2, 5)
        A = _random_matrix(rng, rows, cols)
        basis = integer_kernel_basis(A)
        for v in basis:
            assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)
            lead = next((x for x in v if x), 0)
            assert lead > 0
        # saturation: every small integer kernel point is an integer
        # combination of the basis
        points = box_kernel_points(A, [4] * cols)
        if basis:
            for x in points:
                assert integer_combination(basis, x), (A, x)
        else:
            assert points == []


def test_kernel_rank_matches_rational_nullity():
    rng = random.Random(5)
    for _ in range(80):
        A = _random_matrix(rng, rng.randint(1, 4), rng.randint(2, 6))
        _, pivots = rref([[Fraction(a) for a in row] for row in A])
        assert len(integer_kernel_basis(A)) == len(A[0]) - len(pivots)


def test_kernel_matches_sympy():
    sympy = pytest.importorskip("sympy")
    rng = random.Random(37)
    for _ in range(25):
        A = _random_matrix(rng, rng.randint(1, 3), rng.randint(2, 5))
        basis = integer_kernel_basis(A)
        null = sympy.Matrix(A).nullspace()
        if not null:
            assert basis == []
            continue
        scaled = []
        for v in null:
            denom = sympy.lcm([sympy.fraction(x)[1] for x in v])
            scaled.append([int(x * denom) for x in v])
        assert row_space_equal(basis, scaled)


def test_rref_basics():
    rows = [[Fraction(2), Fraction(4)], [Fraction(1), Fraction(2)]]
    reduced, pivots = rref(rows)
    assert reduced == [[Fraction(1), Fraction(2)]]
    assert pivots == [0]
    again, _ = rref(reduced)
    assert again == reduced


def test_row_space_equal():
    assert row_space_equal([[1, 2], [3, 4]], [[3, 4], [1, 2]])
    assert row_space_equal([[2, 4]], [[1, 2]])
    assert not row_space_equal([[1, 0]], [[0, 1]])


def test_pseudo_inverse_left_inverse():
    rng = random.Random(41)
    checked = 0
    while checked < 40:
        A = _random_matrix(rng, rng.randint(1, 3), rng.randint(3, 6))
        basis = integer_kernel_basis(A)
        if not basis:
            continue
        bp = pseudo_inverse(basis)
        r = len(basis)
        prod = [
            [sum(bp[i][t] * basis[j][t] for t in range(len(basis[0]))) for j in range(r)]
            for i in range(r)
        ]
        assert prod == [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]
        checked += 1


def test_solve_exact_singular():
    one = Fraction(1)
    with pytest.raises(ValueError):
        solve_exact([[one, one], [one, one]], [[one], [one]])


def test_transpose():
    assert transpose([[1, 2, 3], [4, 5, 6]]) == [[1, 4], [2, 5], [3, 6]]
    assert transpose([]) == []
