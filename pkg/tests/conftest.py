"""Shared helpers: sympy conversions (used only as an oracle) and catalog lists."""
from __future__ import annotations

import sympy
from hypothesis import HealthCheck, settings

from brk import catalog
from brk.exact.matrix import PolyMatrix
from brk.exact.poly import MultiPoly, default_names
from brk.tensor import slice_space

settings.register_profile(
    "brk", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("brk")


def to_sympy(p: MultiPoly, names=None):
    syms = sympy.symbols(names or default_names(p.nvars)) if p.nvars else ()
    expr = sympy.Integer(0)
    for exps, c in p.to_dict().items():
        term = sympy.Rational(c.numerator, c.denominator) if hasattr(c, "denominator") else sympy.Integer(c)
        for s, e in zip(syms, exps):
            term *= s**e
        expr += term
    return expr


def matrix_to_sympy(M: PolyMatrix) -> sympy.Matrix:
    return sympy.Matrix(M.rows, M.cols, lambda i, j: to_sympy(M[i, j]))


def bounded_rank_spaces():
    """(label, space) for the spaces of bounded rank in the catalog."""
    out = [("case1", catalog.case1()), ("case2", catalog.case2()), ("case3", catalog.case3()), ("case4", catalog.case4())]
    out += [(f"skew({n})", catalog.skew(n)) for n in (3, 5, 7)]
    out += [(f"koszul({a})", catalog.koszul(a)) for a in (3, 4, 5)]
    out += [(f"family_twoL1({b})", catalog.family_twoL1(b)) for b in range(5, 9)]
    out += [(f"family_3k({k})", catalog.family_3k(k)) for k in (2, 3)]
    out += [(f"jplex_O{n}", catalog.jplex(n)) for n in range(54, 59)]
    out += [(f"compression{p}", catalog.compression(*p, 5, 5)) for p in ((1, 2), (2, 1), (2, 2))]
    out += [
        ("skewcw2_nf", catalog.skewcw2_normal_form()),
        ("c3_degenerate", catalog.c3_degenerate()),
        ("sextonion(A)", slice_space(catalog.sextonion(), "A")),
    ]
    return out


def catalog_tensors():
    """(label, tensor) for the tensors in the catalog (fixed small parameters)."""
    return [
        ("unit(2)", catalog.unit(2)),
        ("unit(3)", catalog.unit(3)),
        ("wstate", catalog.wstate()),
        ("matmul(2)", catalog.matmul(2)),
        ("skewcw2", catalog.skewcw2()),
        ("skewcw2_kron_w", catalog.skewcw2_kron_w()),
        ("sextonion", catalog.sextonion()),
        ("sextonion_algebra", catalog.sextonion_algebra()),
    ]


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
