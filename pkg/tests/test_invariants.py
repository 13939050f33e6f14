import pytest

from brk import atkinson as atk
from brk import borderrank as br
from brk import catalog
from brk import invariants as inv
from brk.exact.matrix import PolyMatrix, adjugate, exact_rank
from brk.exact.poly import default_names
from brk.io import load_cert
from brk.tensor import Tensor3, is_concise

from conftest import bounded_rank_spaces, catalog_tensors

TENSORS = catalog_tensors()
tids = [label for label, _ in TENSORS]


# -- symmetry algebra ------------------------------------------------------------


def test_symmetry_dimensions():
    assert inv.symmetry_algebra(catalog.sextonion()).dim_extended == 20
    assert inv.symmetry_algebra(catalog.skewcw2_kron_w()).dim_extended == 21
    assert inv.symmetry_algebra(catalog.wstate()).dim_extended == 5


@pytest.mark.parametrize("label,T", TENSORS, ids=tids)
def test_actual_is_extended_minus_two(label, T):
    assert all(is_concise(T))
    rep = inv.symmetry_algebra(T)
    assert rep.dim_actual == rep.dim_extended - 2


@pytest.mark.parametrize("label,T", TENSORS[:6], ids=tids[:6])
def test_symmetry_basis_annihilates(label, T):
    rep = inv.symmetry_algebra(T)
    for vec in rep.basis:
        assert inv.act(T, *rep.split(vec, T.dims)).is_zero()


def test_unit_symmetry():
    # diagonal torus (3m) minus nothing: (X, Y, Z) diagonal with x_i + y_i + z_i = 0
    assert inv.symmetry_algebra(catalog.unit(2)).dim_extended == 4


# -- kernels -------------------------------------------------------------------------


JPLEX_DEGREES = {54: (1, 1), 55: (1, 1), 56: (1, 1), 57: (1, 1), 58: (2, 2)}


@pytest.mark.parametrize("label", sorted(JPLEX_DEGREES))
def test_jplex_kernel_degrees(label):
    M = catalog.jplex(label).matrix
    kp = inv.corank1_kernel(M)
    assert kp.degrees == JPLEX_DEGREES[label]
    assert (M @ kp.right).is_zero() and (kp.left @ M).is_zero()


def test_skew5_kernel_degree():
    assert inv.corank1_kernel(catalog.skew(5).matrix).degrees == (2, 2)


def test_kernel_outer_product_divides_adjugate():
    M = catalog.jplex(58).matrix
    kp = inv.corank1_kernel(M)
    adj = adjugate(M)
    outer = kp.right @ kp.left
    # adj = g * outer for one polynomial g
    i, j = next((i, j) for i in range(5) for j in range(5) if not outer[i, j].is_zero())
    g = adj[i, j].exact_div(outer[i, j])
    assert adj == outer.map(lambda p: p * g)


def test_corank1_kernel_rejects_other_coranks():
    with pytest.raises(ValueError):
        inv.corank1_kernel(catalog.case3().matrix)
    with pytest.raises(ValueError):
        inv.corank1_kernel(catalog.koszul(4).matrix)


@pytest.mark.parametrize("case", ["case3", "case4"])
def test_kernel_complexes(case):
    M = catalog.build(case).matrix
    rep = inv.verify_kernel_pair(M, catalog.kernel_matrix(f"{case}_d3"), catalog.kernel_matrix(f"{case}_d1"))
    assert rep.ok and rep.exact
    assert rep.ranks == (2, 4, 2)


def test_crossed_kernel_pairs_fail():
    M = catalog.case3().matrix
    rep = inv.verify_kernel_pair(M, catalog.kernel_matrix("case4_d3"), catalog.kernel_matrix("case4_d1"))
    assert not rep.ok


def test_printed_case3_d3_is_not_a_kernel():
    """Entry (4, 2) of the printed d3 carries +a2; the product with the matrix is then nonzero."""
    names = default_names(6)
    printed = PolyMatrix.from_strings(
        [["a3", "a5"], ["a4", "a6"], ["-a2", "0"], ["0", "a2"], ["a1", "0"], ["0", "a1"]], names
    )
    assert not (catalog.case3().matrix @ printed).is_zero()


CORANK_ONE = [(label, E) for label, E in bounded_rank_spaces()
              if E.shape[0] == E.shape[1] and exact_rank(E.matrix) == E.shape[0] - 1]


@pytest.mark.parametrize("label,E", CORANK_ONE, ids=[label for label, _ in CORANK_ONE])
def test_kernel_degree_bounded_by_atkinson(label, E):
    kp = inv.corank1_kernel(E.matrix)
    at_l, at_r = atk.atkinson_numbers(atk.to_normal_form(E, 0, "sparse"))
    assert kp.degrees[0] <= at_r
    assert kp.degrees[1] <= at_l


# -- lower bounds -------------------------------------------------------------------------


def test_koszul_bounds():
    rep = inv.koszul_bound(catalog.skewcw2_kron_w(), 1, 3)
    assert rep.bound == 9 and rep.shape == (18, 18)
    assert inv.koszul_bound(catalog.unit(3), 1).bound == 3
    single = Tensor3((3, 3, 3), {(0, 0, 0): 1})
    assert inv.koszul_bound(single, 1).bound == 1


def test_koszul_validation():
    with pytest.raises(ValueError):
        inv.koszul_bound(catalog.unit(3), 1, 2)
    with pytest.raises(ValueError):
        inv.koszul_bound(catalog.unit(3), 0)


def test_strassen_bounds():
    assert inv.strassen_bound(catalog.sextonion(), "B").bound == 9
    assert inv.strassen_bound(catalog.sextonion(), "C").bound == 9
    assert inv.strassen_bound(catalog.unit(4)).bound == 4
    assert inv.strassen_bound(catalog.matmul(2)).bound == 6
    with pytest.raises(ValueError):
        inv.strassen_bound(catalog.sextonion(), "A")


@pytest.mark.parametrize("label,T", TENSORS, ids=tids)
def test_bounds_seed_stable(label, T):
    a = T.dims[0]
    if a >= 3:  # p = 1 needs dim A >= 3
        assert len({inv.koszul_bound(T, 1, None, s).bound for s in range(5)}) == 1
        assert len({inv.koszul_bound(T, 1, 3, s).bound for s in range(5)}) == 1
    for f in "ABC":
        try:
            vals = {inv.strassen_bound(T, f, s).bound for s in range(5)}
        except ValueError:
            continue
        assert len(vals) == 1


def test_koszul_below_verified_certificates():
    for tensor, cert in ((catalog.case4_tensor(), "caseIV_br9.cert"), (catalog.sextonion(), "sextonion_br10.cert")):
        upper = br.check_decomposition(load_cert(cert), tensor)
        assert upper.verified
        for d in range(3, 7):
            assert inv.koszul_bound(tensor, 1, d).bound <= upper.terms


def test_border_substitution_degenerate_inputs():
    T = catalog.sextonion()
    rep = inv.border_substitution_check(T, "C", [])
    assert rep.bound == rep.strassen == 9
    # the hyperplane x1 = x2 of unit(2) keeps only the identity slice
    rep = inv.border_substitution_check(catalog.unit(2), "A", [[1, -1]])
    assert rep.ranks == (0,) and rep.bound == rep.strassen
    assert inv.border_substitution_check(catalog.unit(2), "A", [[1, 0]]).ranks == (0,)


def test_border_substitution_on_sextonions():
    T = catalog.sextonion()
    hyper = [catalog.SEXTONION_HYPERPLANES["v2"], catalog.SEXTONION_HYPERPLANES["y22"]]
    rep = inv.border_substitution_check(T, "C", hyper)
    assert rep.ranks[0] == 6
    # recorded behaviour: the second hyperplane drops the commutator to rank 3
    assert rep.ranks[1] == 3


def test_hyperplane_restriction():
    slices = [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]
    assert len(inv.hyperplane_restriction(slices, [1, 0])) == 1
    with pytest.raises(ValueError):
        inv.hyperplane_restriction(slices, [1])
