"""Exact linear algebra helpers: integer normal forms and field elimination.

All routines work on plain lists of Python ints or of exact field elements
(``fractions.Fraction`` or anything with the same arithmetic protocol), so
results are bit-exact at any size.
"""
from __future__ import annotations

from fractions import Fraction


def transpose(rows):
    if not rows:
        return []
    return [list(col) for col in zip(*rows)]


def hermite_with_transform(matrix):
    """Row-style Hermite reduction with its unimodular transform.

    Returns (H, U) with U @ matrix == H, U unimodular over the integers and H
    in row echelon form with positive pivots and reduced entries above them.
    Implemented with Euclidean row operations only, so it is exact.
    """
    H = [list(row) for row in matrix]
    nrows = len(H)
    ncols = len(H[0]) if nrows else 0
    U = [[int(i == j) for j in range(nrows)] for i in range(nrows)]

    pivot_row = 0
    for col in range(ncols):
        if pivot_row >= nrows:
            break
        # Chase the column's entries below pivot_row down to a single nonzero.
        while True:
            nonzero = [i for i in range(pivot_row, nrows) if H[i][col]]
            if not nonzero:
                break
            best = min(nonzero, key=lambda i: abs(H[i][col]))
            if best != pivot_row:
                H[best], H[pivot_row] = H[pivot_row], H[best]
                U[best], U[pivot_row] = U[pivot_row], U[best]
            if len(nonzero) == 1:
                break
            p = H[pivot_row][col]
            for i in nonzero:
                if i == pivot_row:
                    continue
                q = H[i][col] // p
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[pivot_row])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[pivot_row])]
        if H[pivot_row][col] == 0:
            continue
        if H[pivot_row][col] < 0:
            H[pivot_row] = [-a for a in H[pivot_row]]
            U[pivot_row] = [-a for a in U[pivot_row]]
        p = H[pivot_row][col]
        for i in range(pivot_row):
            q = H[i][col] // p
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[pivot_row])]
                U[i] = [a - q * b for a, b in zip(U[i], U[pivot_row])]
        pivot_row += 1
    return H, U


def integer_kernel_basis(matrix):
    """Basis of the saturated integer kernel lattice {x : matrix @ x = 0}.

    Hermite-reduce the transpose with its transform: the transform rows that
    map to zero rows span exactly the integer kernel (every integer kernel
    point is an integer combination of them, not just a finite-index
    sublattice).  Returned vectors are normalized to a positive first nonzero
    entry and sorted by first-support position.
    """
    ncols = len(matrix[0]) if matrix else 0
    if not matrix:
        return []
    H, U = hermite_with_transform(transpose(matrix))
    basis = [U[i] for i in range(len(H)) if not any(H[i])]
    normalized = []
    for vec in basis:
        lead = next((v for v in vec if v), 0)
        normalized.append([-a for a in vec] if lead < 0 else list(vec))
    normalized.sort(key=lambda v: next((i for i, a in enumerate(v) if a), ncols))
    return normalized


def rref(rows):
    """Reduced row echelon form over an exact field.

    Entries must support +, -, *, /, bool() and equality; Fractions and the
    Gaussian rationals used by the verification oracles both qualify.
    Returns (reduced_rows, pivot_columns); zero rows are dropped.
    """
    R = [list(row) for row in rows]
    nrows = len(R)
    ncols = len(R[0]) if nrows else 0
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, nrows) if R[i][col]), None)
        if pivot is None:
            continue
        R[rank], R[pivot] = R[pivot], R[rank]
        inv = R[rank][col]
        R[rank] = [a / inv for a in R[rank]]
        for i in range(nrows):
            if i != rank and R[i][col]:
                f = R[i][col]
                R[i] = [a - f * b for a, b in zip(R[i], R[rank])]
        pivots.append(col)
        rank += 1
    return R[:rank], pivots


def fraction_rows(matrix):
    return [[Fraction(a) for a in row] for row in matrix]


def row_space_equal(a, b) -> bool:
    """Whether two integer matrices have the same rational row space."""
    ra, _ = rref(fraction_rows(a))
    rb, _ = rref(fraction_rows(b))
    return ra == rb


def solve_exact(A, B):
    """Solve A @ X = B exactly for square invertible A over a field.

    A is n x n, B is n x m; returns X as lists.  Raises ValueError when A is
    singular.
    """
    n = len(A)
    m = len(B[0]) if B else 0
    aug = [list(A[i]) + list(B[i]) for i in range(n)]
    reduced, pivots = rref(aug)
    if len(pivots) < n or pivots[:n] != list(range(n)):
        raise ValueError("singular system")
    return [row[n : n + m] for row in reduced[:n]]


def pseudo_inverse(columns):
    """Moore-Penrose pseudo-inverse of a full-column-rank integer matrix.

    ``columns`` is the matrix given as a list of its columns (each a list of
    ints).  Returns B+ = (B^T B)^{-1} B^T as Fraction rows, one row per
    column of B, satisfying B+ @ B = I.
    """
    r = len(columns)
    gram = [
        [Fraction(sum(ci * cj for ci, cj in zip(columns[i], columns[j])))
         for j in range(r)]
        for i in range(r)
    ]
    bt = [[Fraction(a) for a in col] for col in columns]
    return solve_exact(gram, bt)
