"""Matrices of polynomials and exact linear algebra over the polynomial ring."""
from __future__ import annotations

import itertools
import random
from typing import Callable, Iterable, Iterator, Sequence

from . import linalg
from .poly import MultiPoly, default_names, norm_coeff

RatPoint = tuple


class PolyMatrix:
    """Rectangular matrix of MultiPoly entries sharing one variable set."""

    __slots__ = ("rows", "cols", "nvars", "entries")

    def __init__(self, entries: Sequence[Sequence[MultiPoly]], nvars: int | None = None):
        rows = [tuple(r) for r in entries]
        if nvars is None:
            if not rows or not rows[0]:
                raise ValueError("cannot infer variable count of an empty matrix; pass nvars")
            nvars = rows[0][0].nvars
        width = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != width:
                raise ValueError("ragged matrix")
            for p in r:
                if p.nvars != nvars:
                    raise ValueError(f"entry has {p.nvars} variables, expected {nvars}")
        self.rows = len(rows)
        self.cols = width
        self.nvars = nvars
        self.entries = tuple(rows)

    # -- construction -----------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int, nvars: int) -> "PolyMatrix":
        z = MultiPoly.zero(nvars)
        return cls([[z] * cols for _ in range(rows)], nvars)

    @classmethod
    def identity(cls, n: int, nvars: int) -> "PolyMatrix":
        one, z = MultiPoly.constant(nvars, 1), MultiPoly.zero(nvars)
        return cls([[one if i == j else z for j in range(n)] for i in range(n)], nvars)

    @classmethod
    def constant(cls, rows: Sequence[Sequence], nvars: int) -> "PolyMatrix":
        return cls([[MultiPoly.constant(nvars, x) for x in r] for r in rows], nvars)

    @classmethod
    def from_slices(cls, slices: Sequence[Sequence[Sequence]], rows: int | None = None, cols: int | None = None) -> "PolyMatrix":
        """Matrix of linear forms ``sum_i a_i * slices[i]``."""
        n = len(slices)
        if n:
            rows, cols = len(slices[0]), len(slices[0][0]) if slices[0] else 0
        if rows is None or cols is None:
            raise ValueError("shape required for an empty slice list")
        return cls(
            [[MultiPoly.linear([slices[i][r][c] for i in range(n)]) for c in range(cols)] for r in range(rows)],
            n,
        )

    @classmethod
    def from_strings(cls, grid: Sequence[Sequence[str]], names: Sequence[str]) -> "PolyMatrix":
        from .poly import parse_poly

        return cls([[parse_poly(s, names) for s in row] for row in grid], len(names))

    # -- basic access -----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> MultiPoly:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[MultiPoly, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[MultiPoly, ...]:
        return tuple(r[j] for r in self.entries)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyMatrix)
            and self.shape == other.shape
            and self.nvars == other.nvars
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.shape, self.entries))

    def map(self, f: Callable[[MultiPoly], MultiPoly], nvars: int | None = None) -> "PolyMatrix":
        return PolyMatrix([[f(p) for p in r] for r in self.entries], self.nvars if nvars is None else nvars)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([list(c) for c in zip(*self.entries)] if self.rows else [], self.nvars) if self.rows and self.cols else PolyMatrix.zeros(self.cols, self.rows, self.nvars)

    T = property(transpose)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        if not rows or not cols:
            return PolyMatrix.zeros(len(rows), len(cols), self.nvars)
        return PolyMatrix([[self.entries[i][j] for j in cols] for i in rows], self.nvars)

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "PolyMatrix":
        return self.submatrix(range(r0, r1), range(c0, c1))

    def is_zero(self) -> bool:
        return all(not p for r in self.entries for p in r)

    def is_linear(self) -> bool:
        """Every entry homogeneous linear (or zero)."""
        return all(p.is_linear_form() for r in self.entries for p in r)

    def max_degree(self) -> int:
        return max((p.degree() for r in self.entries for p in r), default=-1)

    def format(self, names: Sequence[str] | None = None) -> str:
        cells = [[p.format(names, compact=True) for p in r] for r in self.entries]
        w = max((len(s) for r in cells for s in r), default=1)
        return "\n".join(" ".join(s.rjust(w) for s in r) for r in cells)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"PolyMatrix({self.rows}x{self.cols}, nvars={self.nvars})"

    # -- arithmetic -------------------------------------------------------

    def _check_same(self, other: "PolyMatrix") -> None:
        if self.shape != other.shape or self.nvars != other.nvars:
            raise ValueError(f"shape/ring mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_same(other)
        return PolyMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.nvars
        )

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_same(other)
        return PolyMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.nvars
        )

    def __neg__(self) -> "PolyMatrix":
        return self.map(lambda p: -p)

    def scale(self, c) -> "PolyMatrix":
        if isinstance(c, MultiPoly):
            return self.map(lambda p: p * c)
        return self.map(lambda p: p.scale(c))

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        if self.nvars != other.nvars:
            raise ValueError("ring mismatch")
        z = MultiPoly.zero(self.nvars)
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = []
        for r in self.entries:
            nz = [(k, p) for k, p in enumerate(r) if p]
            row = []
            for col in cols:
                acc = z
                for k, p in nz:
                    q = col[k]
                    if q:
                        acc = acc + p * q
                row.append(acc)
            out.append(row)
        return PolyMatrix(out, self.nvars) if out and other.cols else PolyMatrix.zeros(self.rows, other.cols, self.nvars)

    def const_mul_left(self, C: Sequence[Sequence]) -> "PolyMatrix":
        """``C @ self`` for a constant matrix C."""
        z = MultiPoly.zero(self.nvars)
        out = []
        for crow in C:
            nz = [(k, norm_coeff(c)) for k, c in enumerate(crow) if c]
            row = []
            for j in range(self.cols):
                acc = z
                for k, c in nz:
                    p = self.entries[k][j]
                    if p:
                        acc = acc + p.scale(c)
                row.append(acc)
            out.append(row)
        return PolyMatrix(out, self.nvars) if out and self.cols else PolyMatrix.zeros(len(C), self.cols, self.nvars)

    def const_mul_right(self, C: Sequence[Sequence]) -> "PolyMatrix":
        """``self @ C`` for a constant matrix C."""
        return self.transpose().const_mul_left(linalg.transpose([list(r) for r in C])).transpose()

    @staticmethod
    def hstack(blocks: Sequence["PolyMatrix"]) -> "PolyMatrix":
        rows = blocks[0].rows
        if any(b.rows != rows for b in blocks):
            raise ValueError("hstack row mismatch")
        return PolyMatrix([sum((list(b.entries[i]) for b in blocks), []) for i in range(rows)], blocks[0].nvars)

    @staticmethod
    def vstack(blocks: Sequence["PolyMatrix"]) -> "PolyMatrix":
        cols = blocks[0].cols
        if any(b.cols != cols for b in blocks):
            raise ValueError("vstack column mismatch")
        return PolyMatrix([list(r) for b in blocks for r in b.entries], blocks[0].nvars)

    @staticmethod
    def block_matrix(blocks: Sequence[Sequence["PolyMatrix"]]) -> "PolyMatrix":
        return PolyMatrix.vstack([PolyMatrix.hstack(list(r)) for r in blocks])

    # -- linear-form view -------------------------------------------------

    def slices(self) -> list[list[list]]:
        """Coefficient matrices of a matrix of linear forms, one per variable."""
        if not self.is_linear():
            raise ValueError("matrix entries are not all linear forms")
        n = self.nvars
        out = [[[0] * self.cols for _ in range(self.rows)] for _ in range(n)]
        for i, r in enumerate(self.entries):
            for j, p in enumerate(r):
                for v, c in enumerate(p.linear_coeffs()):
                    if c:
                        out[v][i][j] = c
        return out

    def eval(self, pt: Sequence) -> list[list]:
        if len(pt) != self.nvars:
            raise ValueError(f"point has {len(pt)} coordinates, matrix has {self.nvars} variables")
        return [[p.eval(pt) for p in r] for r in self.entries]

    def substitute(self, images: Sequence[MultiPoly]) -> "PolyMatrix":
        m = images[0].nvars if images else self.nvars
        return PolyMatrix([[p.substitute(images) for p in r] for r in self.entries], m)

    def embed(self, nvars: int, offset: int = 0) -> "PolyMatrix":
        return PolyMatrix([[p.embed(nvars, offset) for p in r] for r in self.entries], nvars)


# -- randomness -----------------------------------------------------------

COORD_RANGE = 97


def random_point(nvars: int, rng: random.Random) -> tuple[int, ...]:
    """Integer point with coordinates uniform in [-97, 97]."""
    return tuple(rng.randint(-COORD_RANGE, COORD_RANGE) for _ in range(nvars))


def poly_eval(p: MultiPoly, pt: Sequence):
    return p.eval(pt)


# -- fraction-free elimination ---------------------------------------------

def _bareiss(M: PolyMatrix, full_pivot: bool = True) -> tuple[int, int, list[list[MultiPoly]]]:
    """Fraction-free elimination with pivoting.

    Returns ``(rank, sign, A)`` where, after the run, ``A[rank-1][rank-1]`` is
    (up to ``sign``) a rank-sized minor and all divisions were exact.
    """
    A = [list(r) for r in M.entries]
    m, n = M.rows, M.cols
    one = MultiPoly.constant(M.nvars, 1)
    prev = one
    sign = 1
    k = 0
    while k < min(m, n):
        best = None
        cand_cols = range(k, n) if full_pivot else [k]
        for i in range(k, m):
            Ai = A[i]
            for j in cand_cols:
                p = Ai[j]
                if p and (best is None or len(p) < best[0]):
                    best = (len(p), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != k:
            A[k], A[i] = A[i], A[k]
            sign = -sign
        if j != k:
            for r in A:
                r[k], r[j] = r[j], r[k]
            sign = -sign
        piv = A[k][k]
        Ak = A[k]
        for i in range(k + 1, m):
            Ai = A[i]
            f = Ai[k]
            for j in range(k + 1, n):
                if f and Ak[j]:
                    num = piv * Ai[j] - f * Ak[j]
                elif Ai[j]:
                    num = piv * Ai[j]
                else:
                    continue
                Ai[j] = num if prev is one else num.exact_div(prev)
            Ai[k] = MultiPoly.zero(M.nvars)
        prev = piv
        k += 1
    return k, sign, A


def exact_rank(M: PolyMatrix, seed: int = 0) -> int:
    """Rank over the fraction field of the polynomial ring.

    A full-rank evaluation settles the answer immediately (rank at a point
    never exceeds the generic rank); otherwise fraction-free elimination
    decides it exactly.
    """
    if M.rows == 0 or M.cols == 0:
        return 0
    full = min(M.rows, M.cols)
    rng = random.Random(seed)
    if rank_at(M, random_point(M.nvars, rng)) == full:
        return full
    return _bareiss(M)[0]


def det(M: PolyMatrix) -> MultiPoly:
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return MultiPoly.constant(M.nvars, 1)
    r, sign, A = _bareiss(M)
    if r < n:
        return MultiPoly.zero(M.nvars)
    d = A[n - 1][n - 1]
    return -d if sign < 0 else d


def minors(M: PolyMatrix, k: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], MultiPoly]]:
    for rs in itertools.combinations(range(M.rows), k):
        for cs in itertools.combinations(range(M.cols), k):
            yield rs, cs, det(M.submatrix(rs, cs))


def all_minors_vanish(M: PolyMatrix, k: int) -> bool:
    """True iff every k x k minor is the zero polynomial."""
    if not 1 <= k <= min(M.rows, M.cols):
        raise ValueError(f"minor size {k} out of range for a {M.rows}x{M.cols} matrix")
    for _, _, d in minors(M, k):
        if d:
            return False
    return True


def adjugate(M: PolyMatrix) -> PolyMatrix:
    """Transposed matrix of signed cofactors: ``M @ adj(M) == det(M) * I``."""
    if M.rows != M.cols:
        raise ValueError("adjugate of a non-square matrix")
    n = M.rows
    if n == 1:
        return PolyMatrix.identity(1, M.nvars)
    idx = list(range(n))
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c = det(M.submatrix([r for r in idx if r != i], [c for c in idx if c != j]))
            out[j][i] = -c if (i + j) % 2 else c
    return PolyMatrix(out, M.nvars)


def rank_at(M: PolyMatrix, pt: Sequence) -> int:
    """Rank of the constant matrix M(pt); never exceeds exact_rank(M)."""
    return linalg.rank(M.eval(pt))


def generic_rank_lower_bound(M: PolyMatrix, seed: int = 0, samples: int = 3) -> int:
    rng = random.Random(seed)
    return max(rank_at(M, random_point(M.nvars, rng)) for _ in range(samples))


def constant_matrix_kernel(C: Sequence[Sequence]) -> list[list]:
    return linalg.nullspace([list(r) for r in C], len(C[0]) if C else 0)


def matrix_power_chain(x: PolyMatrix, start: PolyMatrix, count: int, left: bool) -> list[PolyMatrix]:
    """``[start, start@x, start@x@x, ...]`` (left=True) or ``[start, x@start, ...]``."""
    out = [start]
    for _ in range(count - 1):
        out.append(out[-1] @ x if left else x @ out[-1])
    return out
