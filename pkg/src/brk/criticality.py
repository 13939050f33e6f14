"""Rank neutral directions and the rank-criticality certificate.

For a space E of bounded rank r, ``RND(E)`` is the set of matrices X with
``X(ker Y) ⊆ im Y`` for every rank-r element Y of E.  It always contains E;
when the two are equal, E cannot be enlarged without raising the rank.
Intersecting the conditions of finitely many sampled Y gives a space that
contains ``RND(E)``, so equality with E at any finite stage is a proof.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .exact import linalg
from .exact.matrix import exact_rank, poly_eval
from .tensor import SpaceOfMatrices


@dataclass(frozen=True)
class RndResult:
    dim_E: int
    dim_intersection: int
    samples_used: int
    contains_E: bool

    @property
    def certified_critical(self) -> bool:
        return self.contains_E and self.dim_intersection == self.dim_E


def rnd_conditions(Y: list[list]) -> list[list]:
    """Linear conditions ``l X k = 0`` on ``vec(X)`` (row-major) for one constant Y."""
    b, c = len(Y), len(Y[0])
    left = linalg.left_nullspace(Y)
    right = linalg.nullspace(Y, c)
    return [[l[p] * k[q] for p in range(b) for q in range(c)] for l in left for k in right]


def rnd_space(E: SpaceOfMatrices, seed: int = 0, max_samples: int = 30, stable: int = 3) -> RndResult:
    """Sample maximal-rank elements of E until the intersection stops shrinking."""
    r = exact_rank(E.matrix, seed)
    b, c = E.shape
    slices = E.slices()
    flat_slices = [[x for row in S for x in row] for S in slices]
    dim_E = linalg.rank(flat_slices) if flat_slices else 0
    if dim_E == 0:
        raise ValueError("rnd_space needs a nonzero space")
    rng = random.Random(seed)
    conditions: list[list] = []
    dim = b * c
    streak = used = attempts = 0
    while used < max_samples and streak < stable:
        attempts += 1
        if attempts > 20 * max_samples:
            raise ValueError("could not sample elements of maximal rank")
        pt = [rng.randint(-97, 97) for _ in range(E.dim)]
        Y = [[poly_eval(E.matrix[i, j], pt) for j in range(c)] for i in range(b)]
        if linalg.rank(Y) != r:
            continue
        used += 1
        conditions = linalg.row_space_basis(conditions + rnd_conditions(Y))
        new_dim = b * c - len(conditions)
        streak = streak + 1 if new_dim == dim else 0
        dim = new_dim
    contains = all(sum(x * y for x, y in zip(row, s)) == 0 for row in conditions for s in flat_slices)
    return RndResult(dim_E, dim, used, contains)
