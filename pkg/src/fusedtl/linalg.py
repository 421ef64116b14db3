"""Dense exact linear algebra over a cyclotomic field.

Matrices are lists of rows. Elimination uses Gauss-Jordan with the first
nonzero pivot in each column, so results are deterministic.
"""
from __future__ import annotations

from typing import Sequence

from .scalars import CycScalar, FieldCtx

Matrix = list  # list[list[CycScalar]]


def identity(n: int, ctx: FieldCtx) -> Matrix:
    return [[ctx.one if i == j else ctx.zero for j in range(n)] for i in range(n)]


def zeros(r: int, c: int, ctx: FieldCtx) -> Matrix:
    return [[ctx.zero] * c for _ in range(r)]


def transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)]


def matmul(A: Matrix, B: Matrix, ctx: FieldCtx) -> Matrix:
    Bt = transpose(B)
    out = []
    for row in A:
        nz = [(k, a) for k, a in enumerate(row) if a]
        new = []
        for col in Bt:
            s = ctx.zero
            for k, a in nz:
                b = col[k]
                if b:
                    s = s + a * b
            new.append(s)
        out.append(new)
    return out


def matvec(A: Matrix, x: Sequence[CycScalar], ctx: FieldCtx) -> list[CycScalar]:
    out = []
    for row in A:
        s = ctx.zero
        for a, b in zip(row, x):
            if a and b:
                s = s + a * b
        out.append(s)
    return out


def vecmat(x: Sequence[CycScalar], A: Matrix, ctx: FieldCtx) -> list[CycScalar]:
    return matvec(transpose(A), x, ctx)


def mat_add(A: Matrix, B: Matrix, c: CycScalar | int = 1) -> Matrix:
    return [[a + b * c for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A: Matrix, c) -> Matrix:
    return [[a * c for a in row] for row in A]


def is_zero_matrix(A: Matrix) -> bool:
    return not any(x for row in A for x in row)


def rref(A: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = [list(r) for r in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = M[r][c].inverse()
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M, pivots


def rank(A: Matrix) -> int:
    return len(rref(A)[1])


def nullspace(A: Matrix, ctx: FieldCtx) -> list[list[CycScalar]]:
    """Basis of {x : A x = 0}, one vector per free column."""
    if not A:
        return []
    cols = len(A[0])
    R, pivots = rref(A)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [ctx.zero] * cols
        x[f] = ctx.one
        for row, p in zip(R, pivots):
            if row[f]:
                x[p] = -row[f]
        basis.append(x)
    return basis


def left_nullspace(A: Matrix, ctx: FieldCtx) -> list[list[CycScalar]]:
    return nullspace(transpose(A), ctx)


def det(A: Matrix, ctx: FieldCtx) -> CycScalar:
    """Determinant by Bareiss fraction-free elimination."""
    n = len(A)
    if n == 0:
        return ctx.one
    M = [list(r) for r in A]
    sign = 1
    prev = ctx.one
    for k in range(n - 1):
        if not M[k][k]:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return ctx.zero
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return d if sign > 0 else -d
