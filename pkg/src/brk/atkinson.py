"""Atkinson normal form, Atkinson numbers and annihilator computations.

A space of bounded rank r is brought to the block shape

    [[x, W],
     [U, 0]]

by choosing an element of rank r (the pivot) and changing bases so that the
pivot reads diag(Id_r, 0).  Bounded rank r then forces ``U x^k W = 0`` for
all k, and conversely those identities certify bounded rank r.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import linalg
from .exact.matrix import PolyMatrix, exact_rank, random_point, rank_at
from .exact.poly import MultiPoly, norm_coeff, pack
from .tensor import SpaceOfMatrices

PIVOT_STRATEGIES = ("generic", "sparse")
MAX_PIVOT_TRIES = 50


@dataclass(frozen=True)
class AtkinsonForm:
    r: int
    x: PolyMatrix
    W: PolyMatrix
    U: PolyMatrix
    P: tuple  # rows of the left base change
    Q: tuple  # rows of the right base change
    pivot_point: tuple
    names: tuple[str, ...] = field(default=())

    @property
    def nvars(self) -> int:
        return self.x.nvars

    @property
    def shape(self) -> tuple[int, int]:
        return self.r + self.U.rows, self.r + self.W.cols

    def matrix(self) -> PolyMatrix:
        """The full blocked matrix ``[[x, W], [U, 0]]``."""
        b, c = self.shape
        zero = PolyMatrix.zeros(b - self.r, c - self.r, self.nvars)
        return PolyMatrix.block_matrix([[self.x, self.W], [self.U, zero]])

    def space(self) -> SpaceOfMatrices:
        return SpaceOfMatrices(self.matrix(), self.names)


# -- pivots and base change -----------------------------------------------------


def _combine(slices, coeffs) -> list[list]:
    rows, cols = len(slices[0]), len(slices[0][0])
    out = [[0] * cols for _ in range(rows)]
    for s, c in zip(slices, coeffs):
        if c:
            for i in range(rows):
                si, oi = s[i], out[i]
                for j in range(cols):
                    if si[j]:
                        oi[j] += c * si[j]
    return out


def _sparse_pivot(slices, r: int, rng: random.Random):
    """Greedy 0/1 combination of slices reaching rank r, or None."""
    order = list(range(len(slices)))
    rng.shuffle(order)
    coeffs = [0] * len(slices)
    cur_rank = 0
    for i in order:
        trial = list(coeffs)
        trial[i] = 1
        rk = linalg.rank(_combine(slices, trial))
        if rk > cur_rank:
            coeffs, cur_rank = trial, rk
            if rk == r:
                return tuple(coeffs)
    return None


def find_pivot(E: SpaceOfMatrices, r: int, seed: int = 0, strategy: str = "generic") -> tuple:
    """Coefficient vector of an element of E whose constant rank is r."""
    if strategy not in PIVOT_STRATEGIES:
        raise ValueError(f"pivot strategy must be one of {PIVOT_STRATEGIES}")
    slices = E.slices()
    rng = random.Random(seed)
    for _ in range(MAX_PIVOT_TRIES):
        if strategy == "sparse":
            pt = _sparse_pivot(slices, r, rng)
            if pt is not None:
                return pt
        else:
            pt = random_point(E.dim, rng)
            if linalg.rank(_combine(slices, pt)) == r:
                return pt
    raise RuntimeError(f"no element of rank {r} found after {MAX_PIVOT_TRIES} tries; degenerate presentation?")


def _adapted_bases(Y: list[list], r: int):
    """Invertible P, Q with P Y Q = diag(Id_r, 0); returned as row lists."""
    b, c = len(Y), len(Y[0])
    _, col_piv = linalg.rref(Y)
    _, row_piv = linalg.rref(linalg.transpose(Y))
    K = linalg.nullspace(Y, c)  # right kernel, one vector per row
    L = linalg.left_nullspace(Y)  # left kernel rows
    M0 = [[Y[i][j] for j in col_piv] for i in row_piv]
    M0inv = linalg.inverse(M0)
    P1 = [[0] * b for _ in range(r)]
    for s in range(r):
        for t, i in enumerate(row_piv):
            if M0inv[s][t]:
                P1[s][i] = M0inv[s][t]
    P = P1 + [list(v) for v in L]
    # Q has columns e_{col_piv} followed by the kernel vectors
    Qcols = []
    for j in col_piv:
        e = [0] * c
        e[j] = 1
        Qcols.append(e)
    Qcols += [list(v) for v in K]
    Q = linalg.transpose(Qcols)
    return P, Q


def to_normal_form(E: SpaceOfMatrices, seed: int = 0, strategy: str = "generic") -> AtkinsonForm:
    """Put E in Atkinson normal form relative to a seeded pivot of maximal rank.

    ``strategy="generic"`` samples pivots with random integer coefficients;
    ``"sparse"`` grows a 0/1 combination of slices greedily, which keeps the
    blocks sparse and the certificate check cheap on large spaces.
    """
    if E.matrix.is_zero():
        raise ValueError("the zero space has no normal form")
    r = exact_rank(E.matrix, seed)
    pivot = find_pivot(E, r, seed, strategy)
    Y = _combine(E.slices(), pivot)
    P, Q = _adapted_bases(Y, r)
    X = E.matrix.const_mul_left(P).const_mul_right(Q)
    b, c = X.shape
    corner = X.block(r, b, r, c)
    if not corner.is_zero():
        raise RuntimeError("bottom-right block is nonzero: the space does not have bounded rank r")
    return AtkinsonForm(
        r=r,
        x=X.block(0, r, 0, r),
        W=X.block(0, r, r, c),
        U=X.block(r, b, 0, r),
        P=tuple(tuple(row) for row in P),
        Q=tuple(tuple(row) for row in Q),
        pivot_point=tuple(pivot),
        names=E.names,
    )


def form_from_blocks(x: PolyMatrix, W: PolyMatrix, U: PolyMatrix, names: Sequence[str] = ()) -> AtkinsonForm:
    """Wrap blocks that are already in normal form (identity base change)."""
    r = x.rows
    if x.cols != r or W.rows != r or U.cols != r:
        raise ValueError("block shapes do not fit [[x, W], [U, 0]]")
    b, c = r + U.rows, r + W.cols
    return AtkinsonForm(
        r, x, W, U,
        P=tuple(tuple(row) for row in linalg.identity(b)),
        Q=tuple(tuple(row) for row in linalg.identity(c)),
        pivot_point=(),
        names=tuple(names),
    )


def split_blocks(E: SpaceOfMatrices, r: int) -> AtkinsonForm:
    """Read a space already printed in normal form, with the top-left r x r block as x."""
    M = E.matrix
    b, c = M.shape
    if not M.block(r, b, r, c).is_zero():
        raise ValueError("bottom-right block is not zero")
    return form_from_blocks(M.block(0, r, 0, r), M.block(0, r, r, c), M.block(r, b, 0, r), E.names)


# -- certificate ------------------------------------------------------------------


def certificate_products(f: AtkinsonForm) -> list[PolyMatrix]:
    """``[U W, U x W, ..., U x^(r-1) W]``, multiplying from the cheaper side."""
    if f.U.rows == 0 or f.W.cols == 0:
        return []
    out = []
    if f.U.rows <= f.W.cols:
        V = f.U
        for k in range(f.r):
            out.append(V @ f.W)
            if k + 1 < f.r:
                V = V @ f.x
    else:
        V = f.W
        for k in range(f.r):
            out.append(f.U @ V)
            if k + 1 < f.r:
                V = f.x @ V
    return out


def verify_normal_form(f: AtkinsonForm) -> bool:
    """True iff ``U x^k W = 0`` identically for ``0 <= k < r``."""
    if f.U.rows == 0 or f.W.cols == 0:
        return True
    if f.U.rows <= f.W.cols:
        V = f.U
        for k in range(f.r):
            if not (V @ f.W).is_zero():
                return False
            if k + 1 < f.r:
                V = V @ f.x
    else:
        V = f.W
        for k in range(f.r):
            if not (f.U @ V).is_zero():
                return False
            if k + 1 < f.r:
                V = f.x @ V
    return True


def stacked_left(f: AtkinsonForm) -> PolyMatrix:
    """``At_L = (U; U x; ...; U x^(r-1))``."""
    blocks, V = [], f.U
    for k in range(f.r):
        blocks.append(V)
        if k + 1 < f.r:
            V = V @ f.x
    return PolyMatrix.vstack(blocks) if f.U.rows else PolyMatrix.zeros(0, f.r, f.nvars)


def stacked_right(f: AtkinsonForm) -> PolyMatrix:
    """``At_R = (W, x W, ..., x^(r-1) W)``."""
    blocks, V = [], f.W
    for k in range(f.r):
        blocks.append(V)
        if k + 1 < f.r:
            V = f.x @ V
    return PolyMatrix.hstack(blocks) if f.W.cols else PolyMatrix.zeros(f.r, 0, f.nvars)


def _stacked_at(f: AtkinsonForm, pt) -> tuple[int, int]:
    """Ranks of At_L and At_R evaluated at a point, using constant matrices only."""
    x = f.x.eval(pt)
    U = f.U.eval(pt)
    W = f.W.eval(pt)
    left, right = [], []
    V = U
    for _ in range(f.r):
        left.extend(V)
        V = linalg.matmul(V, x) if V else V
    V = W
    cols = []
    for _ in range(f.r):
        cols.append(V)
        V = linalg.matmul(x, V)
    right = [sum((c[i] for c in cols), []) for i in range(f.r)] if f.W.cols else []
    lrank = linalg.rank(left) if left else 0
    rrank = linalg.rank(right) if right and right[0] else 0
    return lrank, rrank


def atkinson_numbers(f: AtkinsonForm, seed: int = 0, samples: int = 4) -> tuple[int, int]:
    """``(at_L, at_R)``: generic ranks of At_L and At_R.

    The identities ``At_L At_R = 0`` (valid whenever the space has bounded
    rank r) give ``rank At_L(p) + rank At_R(p) <= r`` at every point, hence
    ``at_L + at_R <= r``.  When point evaluations already reach a pair of
    ranks summing to r, each is therefore the generic rank.  Otherwise the
    stacked matrices are ranked symbolically.
    """
    rng = random.Random(seed)
    lo_l = lo_r = 0
    for _ in range(samples):
        l, r_ = _stacked_at(f, random_point(f.nvars, rng))
        lo_l, lo_r = max(lo_l, l), max(lo_r, r_)
        if lo_l + lo_r == f.r:
            return lo_l, lo_r
    at_l = exact_rank(stacked_left(f), seed) if f.U.rows else 0
    at_r = exact_rank(stacked_right(f), seed) if f.W.cols else 0
    return at_l, at_r


# -- d invariants ---------------------------------------------------------------


def _form_coefficients(M: PolyMatrix) -> list[list]:
    return [p.linear_coeffs() for row in M.entries for p in row]


def _span_dim(rows: list[list]) -> int:
    rows = [r for r in rows if any(r)]
    return linalg.rank(rows) if rows else 0


def d_invariants(f: AtkinsonForm) -> tuple[int, int, int]:
    """Dimensions of the spans of the linear forms filling U, W, and both together."""
    u = _form_coefficients(f.U)
    w = _form_coefficients(f.W)
    return _span_dim(u), _span_dim(w), _span_dim(u + w)


# -- annihilators -------------------------------------------------------------------


def _monomials(nvars: int, d: int) -> list[tuple[int, ...]]:
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=pack, reverse=True)
    return out


@dataclass(frozen=True)
class Annihilator:
    """A basis of annihilating column vectors, each a tuple of polynomials."""

    degree: int
    vectors: tuple[tuple[MultiPoly, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def as_columns(self, nvars: int) -> PolyMatrix:
        if not self.vectors:
            raise ValueError("empty annihilator")
        return PolyMatrix([list(r) for r in zip(*self.vectors)], nvars)


def _solve_degree(M: PolyMatrix, d: int) -> tuple[list[tuple[int, ...]], list[list]]:
    """Coordinates (in monomial basis) of all degree-d vectors v with M v = 0."""
    n, q = M.nvars, M.cols
    monos = _monomials(n, d)
    nm = len(monos)
    # equation index: (row i, monomial of degree d+1); unknown index: column j, monomial
    eq_index: dict[tuple[int, int], int] = {}
    rows: list[dict[int, object]] = []
    for j in range(q):
        for t, mono in enumerate(monos):
            key_m = pack(mono)
            unknown = j * nm + t
            for i in range(M.rows):
                p = M[i, j]
                for k, c in p.terms.items():
                    e = (i, k + key_m)
                    idx = eq_index.get(e)
                    if idx is None:
                        idx = eq_index[e] = len(rows)
                        rows.append({})
                    rows[idx][unknown] = rows[idx].get(unknown, 0) + c
    total = q * nm
    dense = [[row.get(u, 0) for u in range(total)] for row in rows]
    basis = linalg.nullspace(dense, total) if dense else [
        [1 if u == v else 0 for u in range(total)] for v in range(total)
    ]
    return monos, basis


def _vector_from_coords(coords: Sequence, monos, q: int, n: int) -> tuple[MultiPoly, ...]:
    nm = len(monos)
    return tuple(
        MultiPoly.from_dict(n, {monos[t]: coords[j * nm + t] for t in range(nm) if coords[j * nm + t]})
        for j in range(q)
    )


def linear_annihilator(M: PolyMatrix) -> Annihilator:
    """All column vectors v of linear forms with ``M v = 0`` identically (RREF basis)."""
    monos, basis = _solve_degree(M, 1)
    R = linalg.rref(basis)[0] if basis else []
    return Annihilator(1, tuple(_vector_from_coords(v, monos, M.cols, M.nvars) for v in R))


def _coords_of(vec: Sequence[MultiPoly], monos, n: int) -> list:
    index = {m: t for t, m in enumerate(monos)}
    nm = len(monos)
    out = [0] * (len(vec) * nm)
    for j, p in enumerate(vec):
        for e, c in p.to_dict().items():
            out[j * nm + index[e]] = c
    return out


def graded_annihilator(M: PolyMatrix, d: int) -> Annihilator:
    """Primitive degree-d annihilating vectors.

    The result is a canonical complement, inside all degree-d annihilators,
    of the span of ``m * s`` with ``s`` an annihilator of degree ``e`` in
    ``1..d-1`` and ``m`` a monomial of degree ``d - e``.
    """
    if d < 1:
        raise ValueError("degree must be at least 1")
    n, q = M.nvars, M.cols
    monos, sols = _solve_degree(M, d)
    if not sols:
        return Annihilator(d, ())
    sub = []
    for e in range(1, d):
        lower_monos, lower = _solve_degree(M, e)
        for coords in lower:
            vec = _vector_from_coords(coords, lower_monos, q, n)
            for mono in _monomials(n, d - e):
                m = MultiPoly.from_dict(n, {mono: 1})
                sub.append(_coords_of([p * m for p in vec], monos, n))
    S, spiv = linalg.rref(sub) if sub else ([], [])
    reduced = []
    for v in sols:
        v = list(v)
        for row, p in zip(S, spiv):
            c = v[p]
            if c:
                v = [norm_coeff(a - c * b) for a, b in zip(v, row)]
        if any(v):
            reduced.append(v)
    R = linalg.rref(reduced)[0] if reduced else []
    return Annihilator(d, tuple(_vector_from_coords(v, monos, q, n) for v in R))


def reduce_modulo_lower(M: PolyMatrix, d: int, vectors: Sequence[Sequence[MultiPoly]]) -> list[list]:
    """Coordinates of ``vectors`` modulo the lower-degree-generated part (for comparisons)."""
    n, q = M.nvars, M.cols
    monos = _monomials(n, d)
    sub = []
    for e in range(1, d):
        lower_monos, lower = _solve_degree(M, e)
        for coords in lower:
            vec = _vector_from_coords(coords, lower_monos, q, n)
            for mono in _monomials(n, d - e):
                m = MultiPoly.from_dict(n, {mono: 1})
                sub.append(_coords_of([p * m for p in vec], monos, n))
    S, spiv = linalg.rref(sub) if sub else ([], [])
    out = []
    for vec in vectors:
        v = _coords_of(vec, monos, n)
        for row, p in zip(S, spiv):
            c = v[p]
            if c:
                v = [norm_coeff(a - c * b) for a, b in zip(v, row)]
        out.append(v)
    return out


# -- screens ----------------------------------------------------------------------


def _column_span_dim(M: PolyMatrix) -> int:
    """Dimension of the span of the columns of M viewed as vectors of linear forms."""
    vecs = []
    for j in range(M.cols):
        v = []
        for i in range(M.rows):
            v.extend(M[i, j].linear_coeffs())
        vecs.append(v)
    return _span_dim(vecs)


@dataclass(frozen=True)
class ImprimitivityReport:
    d_U: int
    d_W: int
    corank_one_U: bool  # r = c - 1 and d_U = 1
    corank_one_W: bool  # r = b - 1 and d_W = 1
    U_single_column: bool
    W_single_row: bool

    @property
    def flagged(self) -> bool:
        return self.corank_one_U or self.corank_one_W or self.U_single_column or self.W_single_row


def imprimitivity_screen(f: AtkinsonForm) -> ImprimitivityReport:
    b, c = f.shape
    dU, dW, _ = d_invariants(f)
    u_cols = _column_span_dim(f.U) if f.U.rows else 0
    w_rows = _column_span_dim(f.W.transpose()) if f.W.cols else 0
    return ImprimitivityReport(
        d_U=dU,
        d_W=dW,
        corank_one_U=f.r == c - 1 and dU == 1,
        corank_one_W=f.r == b - 1 and dW == 1,
        U_single_column=f.U.rows > 0 and u_cols <= 1,
        W_single_row=f.W.cols > 0 and w_rows <= 1,
    )


@dataclass(frozen=True)
class ExpandabilityReport:
    at_L: int
    ann_W_dim: int
    target: int  # b - r + 1

    @property
    def fires(self) -> bool:
        return self.at_L == self.ann_W_dim == self.target


def intrinsic_forms(M: PolyMatrix) -> PolyMatrix:
    """Rewrite a matrix of linear forms in coordinates on the span of its own entries.

    If the entries span a d-dimensional space of forms, the result is the
    same matrix written in d new variables (the RREF basis of that span), so
    that annihilators only involve the forms actually present in M.
    """
    coeffs = _form_coefficients(M)
    basis, pivots = linalg.rref([c for c in coeffs if any(c)]) if any(any(c) for c in coeffs) else ([], [])
    d = len(basis)
    grid = []
    for i in range(M.rows):
        row = []
        for j in range(M.cols):
            c = M[i, j].linear_coeffs()
            # an element of the row space of an RREF matrix is determined by its pivot entries
            row.append(MultiPoly.linear([c[p] for p in pivots]) if d else MultiPoly.zero(0))
        grid.append(row)
    return PolyMatrix(grid, d) if grid and grid[0] else PolyMatrix.zeros(M.rows, M.cols, d)


def expandability_screen(f: AtkinsonForm, seed: int = 0) -> ExpandabilityReport:
    """Compare ``at_L``, the linear row annihilator of W, and ``b - r + 1``."""
    b, _ = f.shape
    at_l, _ = atkinson_numbers(f, seed)
    ann = linear_annihilator(intrinsic_forms(f.W).transpose()).dim if f.W.cols else 0
    return ExpandabilityReport(at_L=at_l, ann_W_dim=ann, target=b - f.r + 1)
