"""Tensor invariants: symmetry Lie algebras, kernel vectors and border rank lower bounds."""
from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb
from itertools import combinations
from typing import Sequence

from .exact import linalg
from .exact.gcd import poly_gcd
from .exact.matrix import PolyMatrix, adjugate, exact_rank
from .tensor import Tensor3, factor_index, slice_space

# -- symmetry Lie algebra ----------------------------------------------------


@dataclass(frozen=True)
class SymmetryReport:
    dim_extended: int
    dim_actual: int
    basis: tuple[tuple, ...]  # each vector lists X (a*a), then Y (b*b), then Z (c*c), row-major

    def split(self, vec: Sequence, dims: tuple[int, int, int]):
        a, b, c = dims
        flat = list(vec)
        X = [flat[i * a : (i + 1) * a] for i in range(a)]
        off = a * a
        Y = [flat[off + j * b : off + (j + 1) * b] for j in range(b)]
        off += b * b
        Z = [flat[off + k * c : off + (k + 1) * c] for k in range(c)]
        return X, Y, Z


def _action_matrix(T: Tensor3) -> list[list]:
    """Rows: entries (i, j, k) of (X, Y, Z).T; columns: the unknown entries of X, Y, Z."""
    a, b, c = T.dims
    ncols = a * a + b * b + c * c
    offY, offZ = a * a, a * a + b * b
    rows: dict[tuple[int, int, int], dict[int, object]] = {}

    def bump(key, col, v):
        r = rows.setdefault(key, {})
        r[col] = r.get(col, 0) + v

    for (i0, j0, k0), v in T.entries.items():
        for i in range(a):  # X[i, i0] T[i0, j, k] contributes to entry (i, j0, k0)
            bump((i, j0, k0), i * a + i0, v)
        for j in range(b):
            bump((i0, j, k0), offY + j * b + j0, v)
        for k in range(c):
            bump((i0, j0, k), offZ + k * c + k0, v)
    return [[r.get(col, 0) for col in range(ncols)] for r in rows.values()]


def symmetry_algebra(T: Tensor3) -> SymmetryReport:
    """Triples (X, Y, Z) with ``(X (x) I (x) I + I (x) Y (x) I + I (x) I (x) Z) . T = 0``."""
    a, b, c = T.dims
    ncols = a * a + b * b + c * c
    rows = _action_matrix(T)
    basis = linalg.nullspace(rows, ncols) if rows else linalg.identity(ncols)
    n = len(basis)
    return SymmetryReport(n, n - 2 if not T.is_zero() else n, tuple(tuple(v) for v in basis))


def act(T: Tensor3, X, Y, Z) -> Tensor3:
    """The Lie algebra action ``(X, Y, Z) . T``."""
    a, b, c = T.dims
    out: dict[tuple[int, int, int], object] = {}
    for (i0, j0, k0), v in T.entries.items():
        for i in range(a):
            if X[i][i0]:
                out[i, j0, k0] = out.get((i, j0, k0), 0) + X[i][i0] * v
        for j in range(b):
            if Y[j][j0]:
                out[i0, j, k0] = out.get((i0, j, k0), 0) + Y[j][j0] * v
        for k in range(c):
            if Z[k][k0]:
                out[i0, j0, k] = out.get((i0, j0, k), 0) + Z[k][k0] * v
    return Tensor3(T.dims, out)


# -- kernels of corank one and two spaces ------------------------------------


@dataclass(frozen=True)
class KernelPair:
    right: PolyMatrix  # columns span the right kernel
    left: PolyMatrix  # rows span the left kernel
    degrees: tuple[int, int]  # (right, left) total degrees of the generators

    @property
    def c1(self) -> tuple[int, int]:
        return self.degrees


def _primitive(polys):
    """Divide a vector of polynomials by the gcd of its entries."""
    nz = [p for p in polys if not p.is_zero()]
    g = nz[0]
    for p in nz[1:]:
        g = poly_gcd(g, p)
    return [p.exact_div(g) if not p.is_zero() else p for p in polys]


def corank1_kernel(M: PolyMatrix, seed: int = 0) -> KernelPair:
    """Generators of the kernels of a square matrix of corank one.

    The adjugate has rank one, so any nonzero column spans the right kernel
    and any nonzero row the left kernel; dividing by the content of the
    entries gives the reduced generators.
    """
    n, m = M.shape
    if n != m:
        raise ValueError("corank1_kernel needs a square matrix")
    r = exact_rank(M, seed)
    if r != n - 1:
        raise ValueError(f"matrix has corank {n - r}, expected 1")
    adj = adjugate(M)
    col = next(j for j in range(n) if any(not adj[i, j].is_zero() for i in range(n)))
    row = next(i for i in range(n) if any(not adj[i, j].is_zero() for j in range(n)))
    right = _primitive([adj[i, col] for i in range(n)])
    left = _primitive([adj[row, j] for j in range(n)])
    R = PolyMatrix([[p] for p in right], M.nvars)
    L = PolyMatrix([left], M.nvars)
    return KernelPair(R, L, (max(p.degree() for p in right), max(p.degree() for p in left)))


@dataclass(frozen=True)
class KernelCheck:
    right_ok: bool
    left_ok: bool
    ranks: tuple[int, int, int]  # (right, M, left)

    @property
    def ok(self) -> bool:
        return self.right_ok and self.left_ok

    @property
    def exact(self) -> bool:
        """Generic exactness: the kernels have the full expected dimension."""
        rr, rm, rl = self.ranks
        return self.ok and rr == self.expected[0] and rl == self.expected[1]

    expected: tuple[int, int] = (0, 0)  # (cols of M - rank, rows of M - rank)


def verify_kernel_pair(M: PolyMatrix, right: PolyMatrix, left: PolyMatrix, seed: int = 0) -> KernelCheck:
    if right.rows != M.cols or left.cols != M.rows:
        raise ValueError("kernel matrices have incompatible shapes")
    rm = exact_rank(M, seed)
    return KernelCheck(
        right_ok=(M @ right).is_zero(),
        left_ok=(left @ M).is_zero(),
        ranks=(exact_rank(right, seed), rm, exact_rank(left, seed)),
        expected=(M.cols - rm, M.rows - rm),
    )


# -- lower bounds ------------------------------------------------------------


def _random_matrix(rows: int, cols: int, rng: random.Random, bound: int = 97) -> list[list[int]]:
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


def restrict(T: Tensor3, P: Sequence[Sequence], factor: str | int = "A") -> Tensor3:
    """Apply the linear map ``P`` (new_dim x old_dim) to one factor."""
    f = factor_index(factor)
    dims = list(T.dims)
    dims[f] = len(P)
    out: dict[tuple[int, int, int], object] = {}
    for idx, v in T.entries.items():
        for new, row in enumerate(P):
            x = row[idx[f]]
            if x:
                key = idx[:f] + (new,) + idx[f + 1 :]
                out[key] = out.get(key, 0) + x * v
    return Tensor3(dims, out)


def koszul_flattening(T: Tensor3, p: int) -> list[list]:
    """The map ``Λ^p A (x) B* -> Λ^{p+1} A (x) C``, as a matrix."""
    a, b, c = T.dims
    src = list(combinations(range(a), p))
    dst = list(combinations(range(a), p + 1))
    dst_index = {s: n for n, s in enumerate(dst)}
    M = [[0] * (len(src) * b) for _ in range(len(dst) * c)]
    for (i, j, k), v in T.entries.items():
        for n, omega in enumerate(src):
            if i in omega:
                continue
            wedge = tuple(sorted(omega + (i,)))
            sign = -1 if sum(1 for x in omega if x < i) % 2 else 1  # a_i moved into place
            row = dst_index[wedge] * c + k
            col = n * b + j
            M[row][col] += sign * v
    return M


@dataclass(frozen=True)
class KoszulReport:
    bound: int
    rank: int
    shape: tuple[int, int]


def koszul_bound(T: Tensor3, p: int = 1, restrict_dim: int | None = None, seed: int = 0) -> KoszulReport:
    """Border rank lower bound from the rank of a Koszul flattening.

    A is first projected onto a random ``restrict_dim``-dimensional quotient;
    the bound is ``ceil(rank / binom(restrict_dim - 1, p))``.
    """
    a = T.dims[0]
    ap = a if restrict_dim is None else restrict_dim
    if p < 1:
        raise ValueError("p must be at least 1")
    if not (2 * p + 1 <= ap <= a):
        raise ValueError(f"restrict_dim must lie in [{2 * p + 1}, {a}], got {ap}")
    rng = random.Random(seed)
    Tp = T if ap == a else restrict(T, _random_matrix(ap, a, rng), "A")
    M = koszul_flattening(Tp, p)
    rho = linalg.rank(M)
    q = comb(ap - 1, p)
    return KoszulReport(-(-rho // q), rho, (len(M), len(M[0]) if M else 0))


def _square_slices(T: Tensor3, factor) -> list[list[list]]:
    E = slice_space(T, factor)
    if E.shape[0] != E.shape[1]:
        raise ValueError(f"slices of factor {factor} are not square: {E.shape}")
    return E.slices()


def _combine(slices, coeffs):
    m = len(slices[0])
    return [[sum(c * S[r][s] for c, S in zip(coeffs, slices) if c) for s in range(m)] for r in range(m)]


def commutator_rank(slices: Sequence, seed: int = 0, pairs: int = 10) -> int | None:
    """Largest rank of ``[X0^-1 M, X0^-1 M']`` over seeded random choices.

    Returns None when no invertible element turns up.
    """
    m = len(slices[0])
    rng = random.Random(seed)
    for _ in range(20):
        X0 = _combine(slices, [rng.randint(-97, 97) for _ in slices])
        if linalg.rank(X0) == m:
            break
    else:
        return None
    inv = linalg.inverse(X0)
    best = 0
    for _ in range(pairs):
        A = linalg.matmul(inv, _combine(slices, [rng.randint(-97, 97) for _ in slices]))
        B = linalg.matmul(inv, _combine(slices, [rng.randint(-97, 97) for _ in slices]))
        AB, BA = linalg.matmul(A, B), linalg.matmul(B, A)
        best = max(best, linalg.rank([[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(AB, BA)]))
        if best == m:
            break
    return best


@dataclass(frozen=True)
class StrassenReport:
    bound: int
    m: int
    commutator_rank: int


def strassen_bound(T: Tensor3, factor: str = "A", seed: int = 0, pairs: int = 10) -> StrassenReport:
    """``m + ceil(rank [X0^-1 M, X0^-1 M'] / 2)`` for the m x m slices of one factor."""
    slices = _square_slices(T, factor)
    m = len(slices[0])
    r = commutator_rank(slices, seed, pairs)
    if r is None:
        raise ValueError(f"no invertible element found among the {factor} slices")
    return StrassenReport(m + -(-r // 2), m, r)


def hyperplane_restriction(slices: Sequence, covector: Sequence) -> list:
    """The slices spanning ``{sum x_i S_i : covector . x = 0}``."""
    if len(covector) != len(slices):
        raise ValueError("covector length must equal the number of slices")
    if not any(covector):
        return list(slices)
    return [_combine(slices, x) for x in linalg.nullspace([list(covector)], len(slices))]


@dataclass(frozen=True)
class SubstitutionReport:
    strassen: int
    ranks: tuple[int, ...]  # commutator rank after each restriction
    m: int

    @property
    def all_full(self) -> bool:
        return bool(self.ranks) and all(r == self.m for r in self.ranks)

    @property
    def bound(self) -> int:
        return self.strassen + 1 if self.all_full else self.strassen


def border_substitution_check(
    T: Tensor3, factor: str, hyperplanes: Sequence[Sequence], seed: int = 0, pairs: int = 10
) -> SubstitutionReport:
    """Recompute the commutator rank on each hyperplane of the chosen slice space.

    When the commutator keeps full rank on every listed hyperplane the
    Strassen bound improves by one.
    """
    base = strassen_bound(T, factor, seed, pairs)
    slices = _square_slices(T, factor)
    ranks = []
    for h in hyperplanes:
        sub = hyperplane_restriction(slices, h)
        r = commutator_rank(sub, seed, pairs) if sub else 0
        ranks.append(r or 0)  # no invertible element on the hyperplane: nothing to gain
    return SubstitutionReport(base.bound, tuple(ranks), base.m)


def coordinate_covector(n: int, i: int) -> list[int]:
    return [1 if j == i else 0 for j in range(n)]
