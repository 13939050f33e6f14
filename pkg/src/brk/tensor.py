"""Order-3 tensors and the dictionary between tensors and spaces of matrices.

A tensor ``T`` in ``A (x) B (x) C`` gives three spaces of matrices, one per
factor.  For factor A the space is ``T(A*)``, the ``b x c`` matrix whose
``(j, k)`` entry is ``sum_i T[i, j, k] * a_i``; factors B and C keep the two
remaining index positions, in their natural order, as the matrix shape.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .exact import linalg
from .exact.matrix import PolyMatrix, exact_rank
from .exact.poly import MultiPoly, default_names, norm_coeff

FACTORS = ("A", "B", "C")


def factor_index(factor: str | int) -> int:
    if isinstance(factor, int):
        if factor not in (0, 1, 2):
            raise ValueError(f"factor index {factor} out of range")
        return factor
    try:
        return FACTORS.index(factor.upper())
    except ValueError:
        raise ValueError(f"factor must be one of A, B, C, got {factor!r}") from None


class Tensor3:
    """Sparse tensor with rational entries, indices 0-based."""

    __slots__ = ("dims", "entries")

    def __init__(self, dims: Sequence[int], entries: Mapping[tuple[int, int, int], object] | None = None):
        dims = tuple(int(d) for d in dims)
        if len(dims) != 3 or any(d < 0 for d in dims):
            raise ValueError(f"bad dims {dims}")
        clean: dict[tuple[int, int, int], object] = {}
        for idx, v in (entries or {}).items():
            idx = tuple(idx)
            if len(idx) != 3 or any(not 0 <= x < d for x, d in zip(idx, dims)):
                raise IndexError(f"index {idx} outside dims {dims}")
            v = norm_coeff(v)
            if v:
                clean[idx] = v
        self.dims = dims
        self.entries = clean

    @classmethod
    def from_terms(cls, dims: Sequence[int], terms: Iterable[tuple[tuple[int, int, int], object]]) -> "Tensor3":
        """Sum of weighted basis tensors; repeated indices accumulate."""
        acc: dict[tuple[int, int, int], object] = {}
        for idx, v in terms:
            acc[tuple(idx)] = acc.get(tuple(idx), 0) + v
        return cls(dims, acc)

    @classmethod
    def from_rank_ones(cls, terms: Iterable[tuple[Sequence, Sequence, Sequence]]) -> "Tensor3":
        terms = list(terms)
        u0, v0, w0 = terms[0]
        dims = (len(u0), len(v0), len(w0))
        acc: dict[tuple[int, int, int], object] = {}
        for u, v, w in terms:
            for i, x in enumerate(u):
                if not x:
                    continue
                for j, y in enumerate(v):
                    if not y:
                        continue
                    for k, z in enumerate(w):
                        if z:
                            acc[i, j, k] = acc.get((i, j, k), 0) + x * y * z
        return cls(dims, acc)

    def __getitem__(self, idx: tuple[int, int, int]):
        return self.entries.get(tuple(idx), 0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Tensor3) and self.dims == other.dims and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.dims, frozenset(self.entries.items())))

    def __repr__(self) -> str:
        return f"Tensor3(dims={self.dims}, nnz={len(self.entries)})"

    def __add__(self, other: "Tensor3") -> "Tensor3":
        if self.dims != other.dims:
            raise ValueError("dimension mismatch")
        acc = dict(self.entries)
        for k, v in other.entries.items():
            acc[k] = acc.get(k, 0) + v
        return Tensor3(self.dims, acc)

    def scale(self, c) -> "Tensor3":
        return Tensor3(self.dims, {k: v * c for k, v in self.entries.items()})

    def __neg__(self) -> "Tensor3":
        return self.scale(-1)

    def __sub__(self, other: "Tensor3") -> "Tensor3":
        return self + (-other)

    def is_zero(self) -> bool:
        return not self.entries

    def permute(self, perm: Sequence[int]) -> "Tensor3":
        """Reorder factors: factor ``t`` of the result is factor ``perm[t]`` of self."""
        dims = tuple(self.dims[p] for p in perm)
        return Tensor3(dims, {tuple(idx[p] for p in perm): v for idx, v in self.entries.items()})

    def flattening(self, factor: str | int) -> list[list]:
        """Matrix of the map X* -> (other two factors), one row per basis vector of X."""
        f = factor_index(factor)
        others = [t for t in range(3) if t != f]
        d1 = self.dims[others[1]]
        rows = [[0] * (self.dims[others[0]] * d1) for _ in range(self.dims[f])]
        for idx, v in self.entries.items():
            rows[idx[f]][idx[others[0]] * d1 + idx[others[1]]] = v
        return rows

    def support_size(self) -> int:
        return len(self.entries)


# -- spaces of matrices ------------------------------------------------------


@dataclass(frozen=True)
class SpaceOfMatrices:
    """A linear space of matrices, written as a matrix of linear forms.

    ``names`` labels the variables for printing and parsing.
    """

    matrix: PolyMatrix
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.matrix.is_linear():
            raise ValueError("a space of matrices needs homogeneous linear entries")
        if not self.names:
            object.__setattr__(self, "names", default_names(self.matrix.nvars))
        if len(self.names) != self.matrix.nvars:
            raise ValueError("one name per variable required")

    @property
    def dim(self) -> int:
        return self.matrix.nvars

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    @classmethod
    def from_strings(cls, grid: Sequence[Sequence[str]], names: Sequence[str]) -> "SpaceOfMatrices":
        return cls(PolyMatrix.from_strings(grid, names), tuple(names))

    @classmethod
    def from_slices(cls, slices: Sequence[Sequence[Sequence]], names: Sequence[str] = ()) -> "SpaceOfMatrices":
        return cls(PolyMatrix.from_slices(slices), tuple(names))

    def slices(self) -> list[list[list]]:
        return self.matrix.slices()

    def rank(self, seed: int = 0) -> int:
        return exact_rank(self.matrix, seed)

    def transpose(self) -> "SpaceOfMatrices":
        return SpaceOfMatrices(self.matrix.transpose(), self.names)

    def rename(self, names: Sequence[str]) -> "SpaceOfMatrices":
        return SpaceOfMatrices(self.matrix, tuple(names))

    def format(self) -> str:
        return self.matrix.format(self.names)

    def __str__(self) -> str:
        return self.format()


def slice_space(T: Tensor3, factor: str | int = "A") -> SpaceOfMatrices:
    """The space ``T(X*)`` for X the chosen factor."""
    f = factor_index(factor)
    others = [t for t in range(3) if t != f]
    n = T.dims[f]
    rows, cols = T.dims[others[0]], T.dims[others[1]]
    coeffs: list[list[dict[int, object]]] = [[{} for _ in range(cols)] for _ in range(rows)]
    for idx, v in T.entries.items():
        coeffs[idx[others[0]]][idx[others[1]]][idx[f]] = v
    grid = [
        [MultiPoly.linear([cell.get(i, 0) for i in range(n)]) for cell in row]
        for row in coeffs
    ]
    if rows and cols:
        M = PolyMatrix(grid, n)
    else:
        M = PolyMatrix.zeros(rows, cols, n)
    return SpaceOfMatrices(M, default_names(n, "abc"[f]))


def space_to_tensor(E: SpaceOfMatrices) -> Tensor3:
    """Inverse of ``slice_space(., "A")``."""
    b, c = E.shape
    a = E.dim
    entries = {}
    for j in range(b):
        for k in range(c):
            for i, x in enumerate(E.matrix[j, k].linear_coeffs()):
                if x:
                    entries[i, j, k] = x
    return Tensor3((a, b, c), entries)


def is_concise(T: Tensor3) -> tuple[bool, bool, bool]:
    return tuple(linalg.rank(T.flattening(f)) == T.dims[f] if T.dims[f] else True for f in range(3))


def kronecker(T: Tensor3, T2: Tensor3) -> Tensor3:
    """Kronecker product with row-major pairing ``(i, i') -> i * a' + i'``."""
    a2, b2, c2 = T2.dims
    dims = (T.dims[0] * a2, T.dims[1] * b2, T.dims[2] * c2)
    out = {}
    for (i, j, k), v in T.entries.items():
        for (i2, j2, k2), v2 in T2.entries.items():
            out[i * a2 + i2, j * b2 + j2, k * c2 + k2] = v * v2
    return Tensor3(dims, out)


def base_change(T: Tensor3, gA, gB, gC) -> Tensor3:
    """Apply ``gA (x) gB (x) gC``: the new entry is sum gA[i,i0] gB[j,j0] gC[k,k0] T[i0,j0,k0]."""
    for g, d in zip((gA, gB, gC), T.dims):
        if len(g) != d or any(len(r) != d for r in g):
            raise ValueError("base change matrices must be square of matching size")
        if d and linalg.rank(g) < d:
            raise ValueError("base change matrix is singular")
    gAt, gBt, gCt = (linalg.transpose(g) for g in (gA, gB, gC))
    out: dict[tuple[int, int, int], object] = {}
    # contract one factor at a time to keep the work proportional to nnz
    cur = dict(T.entries)
    for axis, gt in enumerate((gAt, gBt, gCt)):
        nxt: dict[tuple[int, int, int], object] = {}
        for idx, v in cur.items():
            for new, g in enumerate(gt[idx[axis]]):
                if g:
                    key = idx[:axis] + (new,) + idx[axis + 1 :]
                    nxt[key] = nxt.get(key, 0) + g * v
        cur = {k: v for k, v in nxt.items() if v}
    out = cur
    return Tensor3(T.dims, out)


def direct_sum(T: Tensor3, T2: Tensor3) -> Tensor3:
    a, b, c = T.dims
    dims = (a + T2.dims[0], b + T2.dims[1], c + T2.dims[2])
    out = dict(T.entries)
    for (i, j, k), v in T2.entries.items():
        out[i + a, j + b, k + c] = v
    return Tensor3(dims, out)


def relabel(T: Tensor3, perms: Sequence[Sequence[int]], signs: Sequence[Sequence[int]] | None = None) -> Tensor3:
    """Signed reindexing: the new entry ``[i, j, k]`` is
    ``sA[i] sB[j] sC[k] * T[pA[i], pB[j], pC[k]]``."""
    for p, d in zip(perms, T.dims):
        if sorted(p) != list(range(d)):
            raise ValueError(f"{p} is not a permutation of range({d})")
    if signs is None:
        signs = [[1] * d for d in T.dims]
    inv = [{old: new for new, old in enumerate(p)} for p in perms]
    out = {}
    for (i, j, k), v in T.entries.items():
        ni, nj, nk = inv[0][i], inv[1][j], inv[2][k]
        out[ni, nj, nk] = v * signs[0][ni] * signs[1][nj] * signs[2][nk]
    return Tensor3(T.dims, out)
