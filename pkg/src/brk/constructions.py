"""Building larger spaces of bounded rank: blow-up by commuting matrices and Kronecker products."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .exact import linalg
from .exact.matrix import PolyMatrix, exact_rank
from .exact.poly import MultiPoly, default_names
from .tensor import SpaceOfMatrices, Tensor3, kronecker, slice_space


@dataclass(frozen=True)
class CommutingFamily:
    """k x k matrices ``G_1, ..., G_a`` of linear forms in a common set of variables.

    ``G_i`` is what the i-th basis element of the space gets replaced by.  A
    family of constant matrices ``F_i`` is encoded as ``G_i = a_i F_i``; the
    families with parameters in the blocks (e.g. ``[[a3, a5],
    [a4, a6]]``) are encoded directly.  Pairwise commutation ``G_i G_j = G_j G_i``
    is checked as a polynomial identity.
    """

    k: int
    mats: tuple[PolyMatrix, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.mats:
            raise ValueError("empty family")
        n = self.mats[0].nvars
        for G in self.mats:
            if G.shape != (self.k, self.k):
                raise ValueError(f"family member has shape {G.shape}, expected {(self.k, self.k)}")
            if G.nvars != n:
                raise ValueError("family members use different variable sets")
        for i, G in enumerate(self.mats):
            for H in self.mats[i + 1 :]:
                if G @ H != H @ G:
                    raise ValueError("family is not commuting")
        if not self.names:
            object.__setattr__(self, "names", default_names(n))

    @property
    def nvars(self) -> int:
        return self.mats[0].nvars

    @classmethod
    def constant(cls, mats: Sequence[Sequence[Sequence]]) -> "CommutingFamily":
        """Constant matrices F_i, the i-th one scaled by a fresh variable a_i."""
        a = len(mats)
        k = len(mats[0])
        return cls(
            k,
            tuple(PolyMatrix.constant(F, a).scale(MultiPoly.var(a, i)) for i, F in enumerate(mats)),
        )

    @classmethod
    def from_strings(cls, grids: Sequence[Sequence[Sequence[str]]], names: Sequence[str]) -> "CommutingFamily":
        mats = tuple(PolyMatrix.from_strings(g, names) for g in grids)
        return cls(mats[0].rows, mats, tuple(names))


FAMILY_A = (
    [["a1", "0"], ["0", "a1"]],
    [["a2", "0"], ["0", "a2"]],
    [["a3", "a5"], ["a4", "a6"]],
)
FAMILY_B = (
    [["a1", "a2"], ["0", "a1"]],
    [["a3", "a4"], ["0", "a3"]],
    [["a5", "a6"], ["0", "a5"]],
)


def family_a() -> CommutingFamily:
    return CommutingFamily.from_strings(FAMILY_A, default_names(6))


def family_b() -> CommutingFamily:
    return CommutingFamily.from_strings(FAMILY_B, default_names(6))


def blowup(E: SpaceOfMatrices, F: CommutingFamily) -> SpaceOfMatrices:
    """Replace each entry ``sum_i c_i a_i`` of E by the block ``sum_i c_i G_i``.

    Block ``(i, j)`` of the output comes from entry ``(i, j)`` of E.
    """
    if len(F.mats) != E.dim:
        raise ValueError(f"family has {len(F.mats)} members but the space has dimension {E.dim}")
    k, n = F.k, F.nvars
    zero = PolyMatrix.zeros(k, k, n)
    blocks = []
    for i in range(E.shape[0]):
        row = []
        for j in range(E.shape[1]):
            acc = zero
            for v, c in enumerate(E.matrix[i, j].linear_coeffs()):
                if c:
                    acc = acc + F.mats[v].scale(c)
            row.append(acc)
        blocks.append(row)
    return SpaceOfMatrices(PolyMatrix.block_matrix(blocks), F.names)


def random_commuting_family(a: int, k: int, rng: random.Random, bound: int = 3) -> CommutingFamily:
    """Polynomials in one random k x k integer matrix: always a commuting family."""
    M = [[rng.randint(-bound, bound) for _ in range(k)] for _ in range(k)]
    powers = [linalg.identity(k)]
    for _ in range(k - 1):
        powers.append(linalg.matmul(powers[-1], M))
    mats = []
    for _ in range(a):
        coeffs = [rng.randint(-bound, bound) for _ in powers]
        F = [[sum(c * P[r][s] for c, P in zip(coeffs, powers)) for s in range(k)] for r in range(k)]
        mats.append(F)
    return CommutingFamily.constant(mats)


def commuting_family_from_tensor(T: Tensor3, factor: str = "B", seed: int = 0) -> CommutingFamily:
    """Slices of ``T(X*)`` made into endomorphisms by an invertible slice.

    With ``S_0`` an invertible element of the slice space, the family is
    ``S_i S_0^{-1}``; it commutes when T is X-generic of minimal border rank.
    """
    E = slice_space(T, factor)
    slices = E.slices()
    k = E.shape[0]
    if E.shape[0] != E.shape[1]:
        raise ValueError("slices must be square")
    rng = random.Random(seed)
    for _ in range(50):
        coeffs = [rng.randint(-97, 97) for _ in slices]
        S0 = [[sum(c * S[r][s] for c, S in zip(coeffs, slices)) for s in range(k)] for r in range(k)]
        if linalg.rank(S0) == k:
            break
    else:
        raise ValueError(f"no invertible element in T({factor}*)")
    inv = linalg.inverse(S0)
    return CommutingFamily.constant([linalg.matmul(S, inv) for S in slices])


def commuting_family_from_space(E: SpaceOfMatrices) -> CommutingFamily:
    """The coefficient slices of E taken as they are (they must commute)."""
    return CommutingFamily.constant(E.slices())


@dataclass(frozen=True)
class KronReport:
    r: int  # bounded rank of T(A*)
    m: int  # dimension of T2 (first factor)
    rank: int  # bounded rank of (T kron T2)(A*)
    shape: tuple[int, int]

    @property
    def bound(self) -> int:
        return self.r * self.m

    @property
    def within_bound(self) -> bool:
        return self.rank <= self.bound


def kron_bounded_report(T: Tensor3, T2: Tensor3, seed: int = 0) -> KronReport:
    E = slice_space(T, "A")
    K = slice_space(kronecker(T, T2), "A")
    return KronReport(
        r=exact_rank(E.matrix, seed),
        m=T2.dims[0],
        rank=exact_rank(K.matrix, seed),
        shape=K.shape,
    )
