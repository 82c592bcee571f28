"""Small exact matrix helpers, generic over any commutative-ring-like
elements supporting +, * and unary -.  Matrices are tuples of tuples.
Determinants and adjugates use cofactor expansion (sizes here are <= 4),
and inverses go through the adjugate with a caller-supplied inversion of
the determinant, so no division structure is assumed."""

from __future__ import annotations


def mat(rows):
    return tuple(tuple(r) for r in rows)


def mat_mul(A, B):
    n, m, k = len(A), len(B[0]), len(B)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = A[i][0] * B[0][j]
            for t in range(1, k):
                acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(A, v):
    out = []
    for i in range(len(A)):
        acc = A[i][0] * v[0]
        for t in range(1, len(v)):
            acc = acc + A[i][t] * v[t]
        out.append(acc)
    return tuple(out)


def mat_add(A, B):
    return tuple(
        tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B)
    )


def mat_neg(A):
    return tuple(tuple(-a for a in row) for row in A)


def mat_transpose(A):
    return tuple(tuple(A[i][j] for i in range(len(A))) for j in range(len(A[0])))


def mat_identity(n, one, zero):
    return tuple(
        tuple(one if i == j else zero for j in range(n)) for i in range(n)
    )


def mat_scale(s, A):
    return tuple(tuple(s * a for a in row) for row in A)


def _minor(A, i, j):
    return tuple(
        tuple(A[r][c] for c in range(len(A)) if c != j)
        for r in range(len(A))
        if r != i
    )


def mat_det(A):
    n = len(A)
    if n == 1:
        return A[0][0]
    if n == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    acc = None
    for j in range(n):
        term = A[0][j] * mat_det(_minor(A, 0, j))
        if j % 2 == 1:
            term = -term
        acc = term if acc is None else acc + term
    return acc


def mat_adjugate(A, one):
    n = len(A)
    if n == 1:
        return ((one,),)
    cof = []
    for i in range(n):
        row = []
        for j in range(n):
            m = mat_det(_minor(A, i, j))
            if (i + j) % 2 == 1:
                m = -m
            row.append(m)
        cof.append(tuple(row))
    return mat_transpose(tuple(cof))


def mat_inverse(A, one, invert_det):
    """Inverse via adjugate; `invert_det` inverts the determinant."""
    det_inv = invert_det(mat_det(A))
    return mat_scale(det_inv, mat_adjugate(A, one))


def mat_eq(A, B):
    return len(A) == len(B) and all(
        len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb))
        for ra, rb in zip(A, B)
    )
