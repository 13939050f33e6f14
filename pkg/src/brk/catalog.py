"""Named spaces of bounded rank and named tensors.

Every constructor returns either a :class:`~brk.tensor.SpaceOfMatrices` or a
:class:`~brk.tensor.Tensor3`; :func:`build` dispatches on a name plus an
integer parameter list.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Sequence

from .exact.matrix import PolyMatrix
from .exact.poly import MultiPoly, default_names, norm_coeff
from .tensor import SpaceOfMatrices, Tensor3, kronecker, relabel


def _space(grid: Sequence[Sequence[str]], names: Sequence[str]) -> SpaceOfMatrices:
    return SpaceOfMatrices.from_strings(grid, names)


def _perm_sign(p: Sequence[int]) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


# -- classical spaces ------------------------------------------------------


def compression(k1: int, k2: int, b: int, c: int) -> SpaceOfMatrices:
    """Maximal (k1, k2)-compression space: zero block in rows >= k1, columns >= k2."""
    if not (0 <= k1 <= b and 0 <= k2 <= c):
        raise ValueError(f"need 0 <= k1 <= b and 0 <= k2 <= c, got {(k1, k2, b, c)}")
    if k1 + k2 >= min(b, c):
        raise ValueError("k1 + k2 must be below min(b, c) for a bounded-rank space")
    cells = [(i, j) for i in range(b) for j in range(c) if i < k1 or j < k2]
    n = len(cells)
    grid = [[MultiPoly.zero(n)] * c for _ in range(b)]
    for v, (i, j) in enumerate(cells):
        grid[i][j] = MultiPoly.var(n, v)
    return SpaceOfMatrices(PolyMatrix(grid, n))


def skew(n: int) -> SpaceOfMatrices:
    """All n x n skew-symmetric matrices (n odd); variable order follows pairs i < j."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"skew needs an odd size >= 3, got {n}")
    pairs = list(itertools.combinations(range(n), 2))
    m = len(pairs)
    grid = [[MultiPoly.zero(m)] * n for _ in range(n)]
    for v, (i, j) in enumerate(pairs):
        grid[i][j] = MultiPoly.var(m, v)
        grid[j][i] = MultiPoly.var(m, v, -1)
    return SpaceOfMatrices(PolyMatrix(grid, m))


def koszul(a: int) -> SpaceOfMatrices:
    """``e -> (v -> e ^ v)`` as an ``a x C(a,2)`` matrix, columns indexed by pairs i < j."""
    if a < 2:
        raise ValueError("koszul needs a >= 2")
    pairs = list(itertools.combinations(range(a), 2))
    grid = [[MultiPoly.zero(a)] * len(pairs) for _ in range(a)]
    for col, (i, j) in enumerate(pairs):
        # coefficient of e_i ^ e_j in e ^ e_i is -a_j, and in e ^ e_j it is a_i
        grid[i][col] = MultiPoly.var(a, j, -1)
        grid[j][col] = MultiPoly.var(a, i)
    return SpaceOfMatrices(PolyMatrix(grid, a))


A6 = default_names(6)

CASE3_GRID = [
    ["a1", "0", "0", "0", "-a3", "-a5"],
    ["0", "a1", "0", "0", "-a4", "-a6"],
    ["0", "0", "a1", "0", "a2", "0"],
    ["0", "0", "0", "a1", "0", "a2"],
    ["a2", "0", "a3", "a5", "0", "0"],
    ["0", "a2", "a4", "a6", "0", "0"],
]

CASE4_GRID = [
    ["a1", "a2", "0", "0", "-a5", "-a6"],
    ["0", "a1", "0", "0", "0", "-a5"],
    ["0", "0", "a1", "a2", "a3", "a4"],
    ["0", "0", "0", "a1", "0", "a3"],
    ["a3", "a4", "a5", "a6", "0", "0"],
    ["0", "a3", "0", "a5", "0", "0"],
]


def case3() -> SpaceOfMatrices:
    return _space(CASE3_GRID, A6)


def case4() -> SpaceOfMatrices:
    return _space(CASE4_GRID, A6)


def case1() -> SpaceOfMatrices:
    return skew(5)


def case2() -> SpaceOfMatrices:
    return koszul(5)


# -- tensors -----------------------------------------------------------------


def unit(m: int) -> Tensor3:
    if m < 0:
        raise ValueError("unit tensor needs m >= 0")
    return Tensor3((m, m, m), {(j, j, j): 1 for j in range(m)})


def wstate() -> Tensor3:
    return Tensor3((2, 2, 2), {(0, 0, 1): 1, (0, 1, 0): 1, (1, 0, 0): 1})


def matmul(n: int) -> Tensor3:
    """``sum x_ij (x) y_jk (x) z_ki`` with flat index ``i*n + j``."""
    if n < 1:
        raise ValueError("matmul needs n >= 1")
    ent = {}
    for i, j, k in itertools.product(range(n), repeat=3):
        ent[i * n + j, j * n + k, k * n + i] = 1
    return Tensor3((n * n,) * 3, ent)


def skewcw2() -> Tensor3:
    """The totally skew tensor in the third exterior power of a 3-space."""
    return Tensor3((3, 3, 3), {p: _perm_sign(p) for p in itertools.permutations(range(3))})


SKEWCW2_NORMAL_GRID = [
    ["a1", "0", "-a3"],
    ["0", "a1", "a2"],
    ["a2", "a3", "0"],
]


def skewcw2_normal_form() -> SpaceOfMatrices:
    """A presentation of the skewcw2 space (3x3 skew matrices) in Atkinson normal form."""
    return _space(SKEWCW2_NORMAL_GRID, default_names(3))


def sextonion_general(k: int) -> Tensor3:
    """``w_U w_V w_W + w_U w_W + w_V w_W`` with dim U = dim V = dim W = 2k.

    A = U(x)V + W, B = V(x)W + U, C = W(x)U + V.  Tensor-product factors are
    flattened row-major, the first-named space first; the symplectic form
    pairs ``e_i`` with ``e_{k+i}`` with value +1.
    """
    if k < 1:
        raise ValueError("sextonion_general needs k >= 1")
    n = 2 * k
    om = {}
    for i in range(k):
        om[i, k + i] = 1
        om[k + i, i] = -1
    pairs = list(om.items())
    d = n * n + n
    ent: dict[tuple[int, int, int], object] = {}

    def add(idx, v):
        ent[idx] = ent.get(idx, 0) + v

    # w_U (x) w_V (x) w_W: u_i v_j in A, v_j' w_l in B, w_l' u_i' in C
    for (u, u2), su in pairs:
        for (v, v2), sv in pairs:
            for (w, w2), sw in pairs:
                add((u * n + v, v2 * n + w, w2 * n + u2), su * sv * sw)
    # w_U (x) w_W: w in A (summand), u in B (summand), w' u' in C
    for (u, u2), su in pairs:
        for (w, w2), sw in pairs:
            add((n * n + w, n * n + u, w2 * n + u2), su * sw)
    # w_V (x) w_W: w in A, v w' in B, v' in C
    for (v, v2), sv in pairs:
        for (w, w2), sw in pairs:
            add((n * n + w, v * n + w2, n * n + v2), sv * sw)
    return Tensor3((d, d, d), ent)


def sextonion_algebra() -> Tensor3:
    """Structure tensor of ``(X, m)(X', m') = (XX', (tr X - X) m' + X' m)``.

    Basis ``E11, E12, E21, E22, m1, m2``; entry ``[i, j, k]`` is the
    coefficient of ``e_i`` in ``e_j * e_k``.
    """
    def split(v):
        return [[v[0], v[1]], [v[2], v[3]]], [v[4], v[5]]

    def mul(p, q):
        X, m = split(p)
        Y, n = split(q)
        XY = [[sum(X[i][l] * Y[l][j] for l in range(2)) for j in range(2)] for i in range(2)]
        tr = X[0][0] + X[1][1]
        adj = [[tr - X[0][0], -X[0][1]], [-X[1][0], tr - X[1][1]]]
        mu = [sum(adj[i][l] * n[l] for l in range(2)) + sum(Y[i][l] * m[l] for l in range(2)) for i in range(2)]
        return [XY[0][0], XY[0][1], XY[1][0], XY[1][1], mu[0], mu[1]]

    basis = [[1 if i == j else 0 for i in range(6)] for j in range(6)]
    ent = {}
    for j in range(6):
        for k in range(6):
            for i, c in enumerate(mul(basis[j], basis[k])):
                if c:
                    ent[i, j, k] = c
    return Tensor3((6, 6, 6), ent)


# -- 1-degenerate minimal border rank examples in C^5 (x) C^5 (x) C^5 -------

X5 = default_names(5, "x")

JPLEX_GRIDS = {
    58: [
        ["x1", "0", "x2", "x3", "x5"],
        ["x5", "x1", "x4", "-x2", "0"],
        ["0", "0", "x1", "0", "0"],
        ["0", "0", "-x5", "x1", "0"],
        ["0", "0", "0", "x5", "0"],
    ],
    57: [
        ["x1", "0", "x2", "x3", "x5"],
        ["0", "x1", "x4", "-x2", "0"],
        ["0", "0", "x1", "0", "0"],
        ["0", "0", "0", "x1", "0"],
        ["0", "0", "0", "x5", "0"],
    ],
    56: [
        ["x1", "0", "x2", "x3", "x5"],
        ["0", "x1+x5", "0", "x4", "0"],
        ["0", "0", "x1", "0", "0"],
        ["0", "0", "0", "x1", "0"],
        ["0", "0", "0", "x5", "0"],
    ],
    55: [
        ["x1", "0", "x2", "x3", "x5"],
        ["0", "x1", "x5", "x4", "0"],
        ["0", "0", "x1", "0", "0"],
        ["0", "0", "0", "x1", "0"],
        ["0", "0", "0", "x5", "0"],
    ],
    54: [
        ["x1", "0", "x2", "x3", "x5"],
        ["0", "x1", "0", "x4", "0"],
        ["0", "0", "x1", "0", "0"],
        ["0", "0", "0", "x1", "0"],
        ["0", "0", "0", "x5", "0"],
    ],
}


def jplex(label: int) -> SpaceOfMatrices:
    if label not in JPLEX_GRIDS:
        raise ValueError(f"jplex label must be one of {sorted(JPLEX_GRIDS)}")
    return _space(JPLEX_GRIDS[label], X5)


# -- families generalizing the rank-four cases ------------------------------


def family_twoL1(b: int) -> SpaceOfMatrices:
    """The ``b x (2b-6)`` corank-two family of bounded rank ``b-2`` in 2(b-3) variables."""
    if b < 5:
        raise ValueError("family_twoL1 needs b >= 5")
    p = b - 3
    n = 2 * p
    r = b - 2
    cols = 2 * b - 6
    z = MultiPoly.zero(n)
    a = [MultiPoly.var(n, i) for i in range(n)]
    grid = [[z] * cols for _ in range(b)]
    for i in range(r):
        grid[i][i] = a[0]
    w = p - 1  # number of W columns
    for t in range(w):
        grid[0][r + t] = -a[2 + 2 * t]
        grid[1][r + t] = -a[3 + 2 * t]
        grid[2 + t][r + t] = a[1]
    # U rows
    grid[r][0] = -a[1]
    grid[r + 1][1] = -a[1]
    for t in range(w):
        grid[r][2 + t] = -a[2 + 2 * t]
        grid[r + 1][2 + t] = -a[3 + 2 * t]
    return SpaceOfMatrices(PolyMatrix(grid, n))


def family_3k(k: int, X: PolyMatrix | None = None, names: Sequence[str] | None = None) -> SpaceOfMatrices:
    """``[[a1 I, 0, -X], [0, a1 I, a2 I], [a2 I, X, 0]]``, bounded rank 2k.

    Without ``X`` the k x k block is filled with fresh variables
    ``x11, x12, ...`` following a1, a2.
    """
    if k < 1:
        raise ValueError("family_3k needs k >= 1")
    if X is None:
        n = 2 + k * k
        names = ("a1", "a2") + tuple(f"x{i + 1}{j + 1}" for i in range(k) for j in range(k))
        X = PolyMatrix([[MultiPoly.var(n, 2 + i * k + j) for j in range(k)] for i in range(k)], n)
    else:
        n = X.nvars
        if X.shape != (k, k):
            raise ValueError("X must be k x k")
        if names is None:
            names = default_names(n)
    a1, a2 = MultiPoly.var(n, 0), MultiPoly.var(n, 1)
    I = PolyMatrix.identity(k, n)
    Z = PolyMatrix.zeros(k, k, n)
    M = PolyMatrix.block_matrix(
        [
            [I.scale(a1), Z, -X],
            [Z, I.scale(a1), I.scale(a2)],
            [I.scale(a2), X, Z],
        ]
    )
    return SpaceOfMatrices(M, tuple(names))


C3_DEGENERATE_GRID = [["a1", "a2", "a3"], ["0", "a1", "0"], ["0", "a3", "0"]]


def c3_degenerate() -> SpaceOfMatrices:
    return _space(C3_DEGENERATE_GRID, default_names(3))


# -- Kronecker pencil blocks -------------------------------------------------


def pencil_block(kind: str, k: int, lam=0) -> SpaceOfMatrices:
    """Blocks of the Kronecker normal form, written as 2-row spaces of linear forms.

    ``L``: 2 x (k+1) in a1..ak; ``Lt``: 2 x k in a1..a(k+1);
    ``Jor``: 2 x k in a1..ak with eigenvalue ``lam``.
    """
    if k < 1:
        raise ValueError("pencil blocks need k >= 1")
    lam = norm_coeff(Fraction(lam))
    if kind == "L":
        n = k
        a = [MultiPoly.var(n, i) for i in range(n)]
        z = MultiPoly.zero(n)
        rows = [a + [z], [z] + a]
    elif kind == "Lt":
        n = k + 1
        a = [MultiPoly.var(n, i) for i in range(n)]
        rows = [a[:k], a[1:]]
    elif kind == "Jor":
        n = k
        a = [MultiPoly.var(n, i) for i in range(n)]
        second = [a[0].scale(lam)] + [a[i].scale(lam) + a[i - 1] for i in range(1, k)]
        rows = [a, second]
    else:
        raise ValueError(f"unknown pencil block kind {kind!r}; use L, Lt or Jor")
    return SpaceOfMatrices(PolyMatrix(rows, n))


def side_by_side(*spaces: SpaceOfMatrices) -> SpaceOfMatrices:
    """Concatenate blocks horizontally with disjoint variable sets."""
    total = sum(s.dim for s in spaces)
    blocks, offset = [], 0
    for s in spaces:
        blocks.append(s.matrix.embed(total, offset))
        offset += s.dim
    return SpaceOfMatrices(PolyMatrix.hstack(blocks))


# -- the two tensors with shipped border rank certificates, in the certificates' bases --

# skewcw2 (x) W with the Kronecker index (i, i') ordered with i' slowest:
# (0,0), (1,0), (2,0), (0,1), (1,1), (2,1).
CASE4_TENSOR_ORDER = (0, 2, 4, 1, 3, 5)


def skewcw2_kron_w() -> Tensor3:
    """``skewcw2 (x) W`` in row-major Kronecker order."""
    return kronecker(skewcw2(), wstate())


def case4_tensor() -> Tensor3:
    """``skewcw2 (x) W`` in the basis used by the shipped border rank nine certificate."""
    p = CASE4_TENSOR_ORDER
    return relabel(skewcw2_kron_w(), (p, p, p))


# signed permutations taking sextonion_general(1) to the basis of the
# border rank ten certificate
SEXTONION_PERMS = ((4, 5, 0, 1, 2, 3), (3, 1, 4, 5, 2, 0), (4, 5, 3, 2, 1, 0))
SEXTONION_SIGNS = ((1, 1, 1, 1, 1, 1), (1, -1, -1, -1, -1, 1), (-1, -1, -1, 1, 1, -1))


def sextonion() -> Tensor3:
    """The sextonion tensor T_S (Case III) in the basis of the shipped certificate."""
    return relabel(sextonion_general(1), SEXTONION_PERMS, SEXTONION_SIGNS)


# -- kernel complexes of the two corank-two cases ----------------------------

KERNEL_GRIDS = {
    # entry (4, 2) is -a2: with +a2 the product with Case III leaves 2*a1*a2 behind
    "case3_d3": [["a3", "a5"], ["a4", "a6"], ["-a2", "0"], ["0", "-a2"], ["a1", "0"], ["0", "a1"]],
    "case3_d1": [["-a2", "0", "-a3", "-a5", "a1", "0"], ["0", "-a2", "-a4", "-a6", "0", "a1"]],
    "case4_d3": [["a5", "a6"], ["0", "a5"], ["-a3", "-a4"], ["0", "-a3"], ["a1", "a2"], ["0", "a1"]],
    "case4_d1": [["-a3", "-a4", "-a5", "-a6", "a1", "a2"], ["0", "-a3", "0", "-a5", "0", "a1"]],
}


def kernel_matrix(name: str) -> PolyMatrix:
    """Right (``*_d3``) or left (``*_d1``) kernel generators of Case III / IV."""
    return PolyMatrix.from_strings(KERNEL_GRIDS[name], default_names(6))


# Coordinate hyperplanes v2 = 0 and y22 = 0 on the C factor of sextonion(),
# where C = W(x)U + V, y_ij = u_i (x) w_j and v2 is the second basis vector of V.
SEXTONION_HYPERPLANES = {
    "v2": (0, 1, 0, 0, 0, 0),
    "y22": (0, 0, 1, 0, 0, 0),
}


# -- dispatch ----------------------------------------------------------------


BUILDERS: dict[str, tuple[Callable, int, str]] = {
    "compression": (compression, 4, "k1,k2,b,c"),
    "skew": (skew, 1, "odd size n"),
    "koszul": (koszul, 1, "a"),
    "case1": (case1, 0, ""),
    "case2": (case2, 0, ""),
    "case3": (case3, 0, ""),
    "case4": (case4, 0, ""),
    "unit": (unit, 1, "m"),
    "wstate": (wstate, 0, ""),
    "matmul": (matmul, 1, "n"),
    "skewcw2": (skewcw2, 0, ""),
    "skewcw2_nf": (skewcw2_normal_form, 0, ""),
    "sextonion_general": (sextonion_general, 1, "k"),
    "sextonion_algebra": (sextonion_algebra, 0, ""),
    "sextonion": (sextonion, 0, ""),
    "skewcw2_kron_w": (skewcw2_kron_w, 0, ""),
    "case4_tensor": (case4_tensor, 0, ""),
    "jplex_O54": (lambda: jplex(54), 0, ""),
    "jplex_O55": (lambda: jplex(55), 0, ""),
    "jplex_O56": (lambda: jplex(56), 0, ""),
    "jplex_O57": (lambda: jplex(57), 0, ""),
    "jplex_O58": (lambda: jplex(58), 0, ""),
    "family_twoL1": (family_twoL1, 1, "b"),
    "family_3k": (family_3k, 1, "k"),
    "c3_degenerate": (c3_degenerate, 0, ""),
}


def names() -> list[str]:
    return sorted(BUILDERS)


def build(name: str, params: Sequence[int] = ()) -> SpaceOfMatrices | Tensor3:
    try:
        f, arity, _ = BUILDERS[name]
    except KeyError:
        raise ValueError(f"unknown catalog name {name!r}") from None
    if len(params) != arity:
        raise ValueError(f"{name} takes {arity} parameter(s), got {len(params)}")
    return f(*params)
