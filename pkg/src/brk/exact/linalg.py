"""Exact linear algebra on constant matrices (lists of rows) over Q."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .poly import norm_coeff

Matrix = list[list]


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[norm_coeff(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if A and B and len(A[0]) != len(B):
        raise ValueError(f"shape mismatch {len(A)}x{len(A[0])} * {len(B)}x{len(B[0])}")
    cols = len(B[0]) if B else 0
    Bt = list(zip(*B)) if B else [()] * cols
    out = []
    for row in A:
        nz = [(k, a) for k, a in enumerate(row) if a]
        out.append([norm_coeff(sum(a * col[k] for k, a in nz)) for col in Bt])
    return out


def transpose(A: Matrix) -> Matrix:
    return [list(r) for r in zip(*A)] if A else []


def rref(A: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    M = [[Fraction(x) for x in row] for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        pr = M[r]
        inv = 1 / pr[c]
        if inv != 1:
            M[r] = pr = [x * inv for x in pr]
        nzc = [j for j in range(c, cols) if pr[j]]
        for i in range(rows):
            if i != r:
                f = M[i][c]
                if f:
                    Mi = M[i]
                    for j in nzc:
                        Mi[j] -= f * pr[j]
        pivots.append(c)
        r += 1
    return [[norm_coeff(x) for x in row] for row in M[:r]], pivots


def rank(A: Matrix) -> int:
    """Rank over Q, by fraction-free elimination on integer rows."""
    if not A or not A[0]:
        return 0
    # clear denominators row by row so elimination stays in Z
    M = []
    for row in A:
        den = 1
        for x in row:
            if type(x) is not int:
                den = den * Fraction(x).denominator // _gcd(den, Fraction(x).denominator)
        M.append([int(x * den) for x in row] if den != 1 else list(row))
    rows, cols = len(M), len(M[0])
    r = 0
    prev = 1
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        pr = M[r]
        for i in range(r + 1, rows):
            Mi = M[i]
            f = Mi[c]
            for j in range(c + 1, cols):
                Mi[j] = (piv * Mi[j] - f * pr[j]) // prev
            Mi[c] = 0
        # rows above stay untouched; entries left of c are zero by construction
        prev = piv
        r += 1
    return r


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def nullspace(A: Matrix, ncols: int | None = None) -> Matrix:
    """Basis (as rows) of the right kernel {v : A v = 0}, in canonical form."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    R, piv = rref(A) if A else ([], [])
    free = [j for j in range(ncols) if j not in set(piv)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, p in zip(R, piv):
            v[p] = norm_coeff(-row[f])
        basis.append(v)
    return basis


def left_nullspace(A: Matrix) -> Matrix:
    return nullspace(transpose(A), len(A))


def inverse(A: Matrix) -> Matrix:
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("inverse of a non-square matrix")
    aug = [list(A[i]) + identity(n)[i] for i in range(n)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(R) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def det(A: Matrix):
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            return 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        inv = 1 / M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] * inv
            if f:
                for j in range(c, n):
                    M[i][j] -= f * M[c][j]
    return norm_coeff(d)


def row_space_basis(A: Matrix) -> Matrix:
    return rref(A)[0]


def intersect_rowspaces(A: Matrix, B: Matrix, n: int) -> Matrix:
    """Basis of rowspace(A) ∩ rowspace(B) for vectors of length n."""
    if not A or not B:
        return []
    # v = x A = y B  <=>  [A; -B]^T [x; y] = 0
    stacked = [list(r) for r in A] + [[-x for x in r] for r in B]
    coeffs = nullspace(transpose(stacked), len(stacked))
    out = [[norm_coeff(sum(c[i] * A[i][j] for i in range(len(A)))) for j in range(n)] for c in coeffs]
    return rref(out)[0] if out else []


def in_rowspace(v: Sequence, A: Matrix) -> bool:
    return rank([list(v)] + [list(r) for r in A]) == rank(A) if A else not any(v)


def complete_basis(rows: Matrix, n: int) -> Matrix:
    """Extend independent ``rows`` by standard basis vectors to a basis of Q^n."""
    basis = [list(r) for r in rows]
    for i in range(n):
        e = [0] * n
        e[i] = 1
        if rank(basis + [e]) > len(basis):
            basis.append(e)
        if len(basis) == n:
            break
    return basis
