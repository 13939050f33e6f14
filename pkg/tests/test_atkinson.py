import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from brk import atkinson as atk
from brk import catalog
from brk.exact import linalg
from brk.exact.matrix import PolyMatrix, exact_rank
from brk.exact.poly import MultiPoly, parse_poly
from brk.tensor import SpaceOfMatrices

from conftest import bounded_rank_spaces

SPACES = bounded_rank_spaces()
ids = [label for label, _ in SPACES]


@pytest.mark.parametrize("label,E", SPACES, ids=ids)
def test_normal_form_certificate(label, E):
    f = atk.to_normal_form(E, 0, "sparse")
    assert f.r == exact_rank(E.matrix)
    assert atk.verify_normal_form(f)
    at_l, at_r = atk.atkinson_numbers(f, 0)
    assert at_l + at_r <= f.r


@pytest.mark.parametrize("label,E", SPACES, ids=ids)
def test_atkinson_numbers_seed_invariant(label, E):
    seen = {atk.atkinson_numbers(atk.to_normal_form(E, s, "sparse"), s) for s in range(5)}
    assert len(seen) == 1


@pytest.mark.parametrize("label", ["case3", "case4", "skew(5)", "koszul(4)", "family_3k(2)"])
def test_generic_pivot_also_certifies(label):
    E = dict(SPACES)[label]
    f = atk.to_normal_form(E, 3, "generic")
    assert atk.verify_normal_form(f)
    assert atk.atkinson_numbers(f) == atk.atkinson_numbers(atk.to_normal_form(E, 0, "sparse"))


def test_normal_form_is_equivalent_to_input():
    E = catalog.case4()
    f = atk.to_normal_form(E, 0, "sparse")
    P = [list(r) for r in f.P]
    Q = [list(r) for r in f.Q]
    assert E.matrix.const_mul_left(P).const_mul_right(Q) == f.matrix()


def test_certificate_rejects_full_rank_presentation():
    names = ("a1", "a2", "a3")
    E = SpaceOfMatrices.from_strings([["a1", "a2", "a3"], ["a2", "a1", "a1"], ["a3", "a2", "0"]], names)
    assert exact_rank(E.matrix) == 3
    assert not atk.verify_normal_form(atk.split_blocks(E, 2))
    with pytest.raises(ValueError):
        atk.split_blocks(E, 1)


def test_unknown_pivot_strategy():
    with pytest.raises(ValueError):
        atk.to_normal_form(catalog.skew(3), 0, "best")


@pytest.mark.parametrize("k1,k2", [(1, 2), (2, 1), (2, 2)])
def test_compression_numbers(k1, k2):
    f = atk.to_normal_form(catalog.compression(k1, k2, 5, 5), 0, "sparse")
    assert atk.atkinson_numbers(f) == (k2, k1)


def test_case_numbers_and_d_invariants():
    for name in ("case3", "case4"):
        f = atk.to_normal_form(catalog.build(name), 0, "sparse")
        assert atk.atkinson_numbers(f) == (2, 2)
    # the printed blocks: U of Case III uses a2..a6, Case IV uses a3..a6
    assert atk.d_invariants(atk.split_blocks(catalog.case3(), 4))[:2] == (5, 5)
    assert atk.d_invariants(atk.split_blocks(catalog.case4(), 4))[:2] == (4, 4)
    f = atk.to_normal_form(catalog.jplex(54), 0, "sparse")
    assert atk.d_invariants(f)[0] == 1


def test_d_invariants_of_zero_block():
    x = PolyMatrix.from_strings([["a1"]], ["a1"])
    U = PolyMatrix.zeros(1, 1, 1)
    W = PolyMatrix.zeros(1, 1, 1)
    assert atk.d_invariants(atk.form_from_blocks(x, W, U)) == (0, 0, 0)


# -- annihilators ------------------------------------------------------------------


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_linear_annihilator_of_independent_forms(k):
    row = PolyMatrix([[MultiPoly.var(k, i) for i in range(k)]], k)
    ann = atk.linear_annihilator(row)
    assert ann.dim == comb(k, 2)
    assert (row @ ann.as_columns(k)).is_zero()


@st.composite
def two_by_four(draw):
    coeff = st.integers(-2, 2)
    return PolyMatrix(
        [[MultiPoly.linear([draw(coeff) for _ in range(3)]) for _ in range(4)] for _ in range(2)], 3
    )


@given(two_by_four())
def test_graded_degree_one_is_linear(M):
    lin = atk.linear_annihilator(M)
    gr = atk.graded_annihilator(M, 1)
    assert lin.dim == gr.dim
    if lin.dim:
        a = [[c for p in v for c in p.linear_coeffs()] for v in lin.vectors]
        b = [[c for p in v for c in p.linear_coeffs()] for v in gr.vectors]
        assert linalg.rank(a) == linalg.rank(a + b) == linalg.rank(b)


def _pair(x, y):
    return catalog.side_by_side(x, y).matrix


L = lambda k: catalog.pencil_block("L", k)  # noqa: E731
Lt = lambda k: catalog.pencil_block("Lt", k)  # noqa: E731
J = lambda k, lam=0: catalog.pencil_block("Jor", k, lam)  # noqa: E731


@pytest.mark.parametrize(
    "blocks,dim",
    [
        ((L(1), L(1)), 2),
        ((L(1), J(2)), 2),
        ((J(2), J(2)), 2),
        ((L(2), J(1)), 1),
        ((L(1), J(1)), 1),
        ((J(3), J(1)), 1),
        ((J(2), J(1)), 1),
        ((Lt(1), Lt(2)), 0),
        ((J(1, 3), J(2)), 0),
    ],
)
def test_pair_table_in_two_by_four(blocks, dim):
    assert atk.linear_annihilator(_pair(*blocks)).dim == dim


def _in_span(vec, ann):
    rows = [[c for p in v for c in p.linear_coeffs()] for v in ann.vectors]
    return linalg.in_rowspace([c for p in vec for c in p.linear_coeffs()], rows)


@pytest.mark.parametrize("q", [1, 2, 3, 4])
def test_pair_table_l1_with_lt(q):
    M = _pair(L(1), Lt(q))
    ann = atk.linear_annihilator(M)
    assert ann.dim == q
    n = M.nvars  # a = x0, b_j = x_j
    var = lambda i: MultiPoly.var(n, i)  # noqa: E731
    zero = MultiPoly.zero(n)
    for j in range(1, q + 1):
        vec = [-var(j), -var(j + 1)] + [var(0) if i == j - 1 else zero for i in range(q)]
        assert _in_span(vec, ann)


@pytest.mark.parametrize("q", [1, 2, 3])
def test_pair_table_l1_with_jordan(q):
    lam = 2
    M = _pair(L(1), J(q, lam))
    ann = atk.linear_annihilator(M)
    assert ann.dim == q
    n = M.nvars
    var = lambda i: MultiPoly.var(n, i)  # noqa: E731
    zero = MultiPoly.zero(n)
    for j in range(1, q + 1):
        second = -var(j).scale(lam) - (var(j - 1) if j > 1 else zero)
        vec = [-var(j), second] + [var(0) if i == j - 1 else zero for i in range(q)]
        assert _in_span(vec, ann)


def test_pair_table_two_dimensional_vectors():
    M = _pair(L(1), J(2))  # a | b1 b2
    ann = atk.linear_annihilator(M)
    a, b1, b2 = (MultiPoly.var(3, i) for i in range(3))
    z = MultiPoly.zero(3)
    assert _in_span([-b1, z, a, z], ann)
    assert _in_span([-b2, -b1, z, a], ann)


U_NAMES = tuple(f"u{i}" for i in range(1, 7))


def test_primitive_degree_two_annihilator():
    U = PolyMatrix.from_strings([["u1", "u2", "u3", "u4"], ["0", "0", "u5", "u6"]], U_NAMES)
    printed = [
        ["0", "-u4*u5 + u3*u6", "-u2*u6", "u2*u5"],
        ["-u4*u5 + u3*u6", "0", "-u1*u6", "u1*u5"],
    ]
    gens = [[parse_poly(s, U_NAMES) for s in v] for v in printed]
    for g in gens:
        assert (U @ PolyMatrix([[p] for p in g], 6)).is_zero()
    ann = atk.graded_annihilator(U, 2)
    assert ann.dim == 2
    mine = atk.reduce_modulo_lower(U, 2, ann.vectors)
    theirs = atk.reduce_modulo_lower(U, 2, gens)
    assert linalg.rank(mine) == linalg.rank(theirs) == linalg.rank(mine + theirs) == 2


def test_graded_annihilator_rejects_degree_zero():
    with pytest.raises(ValueError):
        atk.graded_annihilator(PolyMatrix.identity(2, 1), 0)


# -- screens -------------------------------------------------------------------------


def test_imprimitivity_screen():
    assert atk.imprimitivity_screen(atk.to_normal_form(catalog.jplex(54), 0, "sparse")).flagged
    assert not atk.imprimitivity_screen(atk.to_normal_form(catalog.case3(), 0, "sparse")).flagged
    # W a single nonzero column
    names = ("a1", "a2")
    x = PolyMatrix.from_strings([["a1", "0"], ["0", "a1"]], names)
    W = PolyMatrix.from_strings([["a2"], ["0"]], names)
    U = PolyMatrix.from_strings([["0", "a2"]], names)
    assert atk.imprimitivity_screen(atk.form_from_blocks(x, W, U, names)).W_single_row


def test_expandability_screen():
    for name in ("case3", "case4"):
        assert not atk.expandability_screen(atk.to_normal_form(catalog.build(name), 0, "sparse")).fires
    rep = atk.expandability_screen(atk.to_normal_form(catalog.compression(1, 2, 4, 4), 0, "sparse"))
    assert rep.fires and rep.at_L == rep.ann_W_dim == rep.target == 2


def test_random_seeds_give_identical_forms():
    E = catalog.case3()
    assert atk.to_normal_form(E, 11).matrix() == atk.to_normal_form(E, 11).matrix()
    rng = random.Random(0)
    assert atk.find_pivot(E, 4, rng.randint(0, 100))
