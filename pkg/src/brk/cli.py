"""Command-line interface: ``brk <subcommand> ...``.

Inputs are files (``.space``, ``.tensor``, ``.cert``; names of files shipped
with the package also work) or catalog entries written ``catalog:NAME`` or
``catalog:NAME:p1,p2``.  Exit status: 0 when the checked statement holds,
1 when a certificate or check fails, 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import random
import sys
from typing import Sequence

from . import __version__, catalog
from . import atkinson as atk
from . import borderrank as br
from . import constructions as cons
from . import criticality, invariants
from .exact.matrix import PolyMatrix, all_minors_vanish, exact_rank
from .io import FormatError, format_space, format_tensor, load_any, load_cert
from .tensor import SpaceOfMatrices, Tensor3, slice_space, space_to_tensor

OK, FAILED, USAGE = 0, 1, 2

# certificates known for catalog tensors, tried by ``brk bounds``
KNOWN_CERTS = {
    "case4_tensor": "caseIV_br9.cert",
    "sextonion": "sextonion_br10.cert",
    "skewcw2": "skewcw2_br5.cert",
    "wstate": "wstate_br2.cert",
}


class UsageError(Exception):
    pass


def _load(spec: str):
    if spec.startswith("catalog:"):
        parts = spec.split(":")
        name = parts[1]
        params = [int(p) for p in parts[2].split(",")] if len(parts) > 2 and parts[2] else []
        if name in catalog.KERNEL_GRIDS:
            return catalog.kernel_matrix(name)
        try:
            return catalog.build(name, params)
        except (ValueError, TypeError) as e:
            raise UsageError(str(e)) from None
    try:
        return load_any(spec)
    except FileNotFoundError:
        raise UsageError(f"no such file: {spec}") from None
    except (FormatError, ValueError) as e:
        raise UsageError(f"{spec}: {e}") from None


def _space(spec: str) -> SpaceOfMatrices:
    obj = _load(spec)
    if isinstance(obj, Tensor3):
        return slice_space(obj, "A")
    if isinstance(obj, PolyMatrix):
        return SpaceOfMatrices(obj)
    if not isinstance(obj, SpaceOfMatrices):
        raise UsageError(f"{spec} is not a space of matrices")
    return obj


def _tensor(spec: str) -> Tensor3:
    obj = _load(spec)
    if isinstance(obj, SpaceOfMatrices):
        return space_to_tensor(obj)
    if not isinstance(obj, Tensor3):
        raise UsageError(f"{spec} is not a tensor")
    return obj


def _matrix(spec: str) -> PolyMatrix:
    obj = _load(spec)
    if isinstance(obj, SpaceOfMatrices):
        return obj.matrix
    if not isinstance(obj, PolyMatrix):
        raise UsageError(f"{spec} is not a matrix of forms")
    return obj


# -- subcommands -------------------------------------------------------------


def cmd_catalog(args) -> int:
    if not args.name:
        for n in catalog.names():
            _, arity, doc = catalog.BUILDERS[n]
            print(f"{n}" + (f" ({doc})" if arity else ""))
        return OK
    obj = _load("catalog:" + args.name)
    if isinstance(obj, Tensor3):
        print(format_tensor(obj), end="")
    elif isinstance(obj, SpaceOfMatrices):
        print(format_space(obj), end="")
    else:
        print(obj.format())
    return OK


def cmd_rank(args) -> int:
    E = _space(args.input)
    r = exact_rank(E.matrix, args.seed)
    b, c = E.shape
    if r == min(b, c):
        print(f"generic rank: {r} (full)")
        return OK
    if not all_minors_vanish(E.matrix, r + 1):
        print(f"rank computation inconsistent: some {r + 1}-minor is nonzero")
        return FAILED
    print(f"bounded rank: {r} (certified by vanishing of all {r + 1}-minors)")
    return OK


def cmd_atkinson(args) -> int:
    E = _space(args.input)
    f = atk.to_normal_form(E, args.seed, args.pivot)
    cert = atk.verify_normal_form(f)
    at_l, at_r = atk.atkinson_numbers(f, args.seed)
    ok = at_l + at_r <= f.r
    print(f"at_L={at_l} at_R={at_r} r={f.r}; at_L+at_R ≤ r: {'OK' if ok else 'VIOLATED'}")
    print(f"normal form certificate U x^k W = 0: {'verified' if cert else 'FAILED'}")
    dU, dW, dx = atk.d_invariants(f)
    print(f"d_U={dU} d_W={dW} d_x={dx}")
    imp = atk.imprimitivity_screen(f)
    print(f"imprimitivity screen: {'flagged' if imp.flagged else 'not flagged'}")
    exp = atk.expandability_screen(f, args.seed)
    print(
        f"expandability screen: at_L={exp.at_L} dim Ann(W)={exp.ann_W_dim} b-r+1={exp.target}: "
        + ("fires" if exp.fires else "does not fire")
    )
    if args.show:
        print(f.space().format())
    return OK if ok and cert else FAILED


def cmd_annihilator(args) -> int:
    M = _matrix(args.input)
    if args.transpose:
        M = M.transpose()
    ann = atk.linear_annihilator(M) if args.degree == 1 else atk.graded_annihilator(M, args.degree)
    kind = "linear" if args.degree == 1 else f"primitive degree {args.degree}"
    print(f"{kind} annihilator: dimension {ann.dim}")
    for vec in ann.vectors:
        print("  (" + ", ".join(p.format() for p in vec) + ")")
    return OK


def cmd_blowup(args) -> int:
    E = _space(args.input)
    if args.family == "a":
        F = cons.family_a()
    elif args.family == "b":
        F = cons.family_b()
    elif args.family.startswith("random:"):
        k = int(args.family.split(":")[1])
        F = cons.random_commuting_family(E.dim, k, random.Random(args.seed))
    elif args.family.startswith("tensor:"):
        F = cons.commuting_family_from_tensor(_tensor(args.family[len("tensor:") :]), args.factor, args.seed)
    else:
        raise UsageError("family must be a, b, random:K or tensor:SPEC")
    B = cons.blowup(E, F)
    r0 = exact_rank(E.matrix, args.seed)
    r = exact_rank(B.matrix, args.seed)
    print(format_space(B), end="")
    ok = r <= F.k * r0
    print(f"# blow-up {B.shape[0]}x{B.shape[1]}: rank {r} ≤ k·r = {F.k * r0}: {'OK' if ok else 'VIOLATED'}")
    return OK if ok else FAILED


def cmd_kron(args) -> int:
    rep = cons.kron_bounded_report(_tensor(args.first), _tensor(args.second), args.seed)
    ok = rep.within_bound
    print(f"Kronecker product {rep.shape[0]}x{rep.shape[1]}: rank {rep.rank} ≤ r·m = {rep.r}·{rep.m} = {rep.bound}: "
          + ("OK" if ok else "VIOLATED"))
    return OK if ok else FAILED


def cmd_symmetry(args) -> int:
    rep = invariants.symmetry_algebra(_tensor(args.input))
    print(f"dim extended symmetry algebra: {rep.dim_extended}")
    print(f"dim symmetry algebra: {rep.dim_actual}")
    return OK


def cmd_kernel(args) -> int:
    M = _matrix(args.input)
    if args.right or args.left:
        if not (args.right and args.left):
            raise UsageError("--right and --left go together")
        rep = invariants.verify_kernel_pair(M, _matrix(args.right), _matrix(args.left), args.seed)
        print(f"phi·right = 0: {rep.right_ok}")
        print(f"left·phi = 0: {rep.left_ok}")
        print("generic ranks (right, phi, left): {}/{}/{}".format(*rep.ranks))
        return OK if rep.exact else FAILED
    try:
        kp = invariants.corank1_kernel(M, args.seed)
    except ValueError as e:
        raise UsageError(str(e)) from None
    print("right kernel: (" + ", ".join(kp.right[i, 0].format() for i in range(kp.right.rows)) + ")")
    print("left kernel: (" + ", ".join(kp.left[0, j].format() for j in range(kp.left.cols)) + ")")
    print("degrees (right, left): ({}, {})".format(*kp.degrees))
    return OK


def cmd_koszul(args) -> int:
    T = _tensor(args.input)
    try:
        rep = invariants.koszul_bound(T, args.p, args.restrict_dim, args.seed)
    except ValueError as e:
        raise UsageError(str(e)) from None
    print(f"Koszul flattening {rep.shape[0]}x{rep.shape[1]} of rank {rep.rank}: border rank ≥ {rep.bound}")
    return OK


def cmd_strassen(args) -> int:
    T = _tensor(args.input)
    try:
        rep = invariants.strassen_bound(T, args.factor, args.seed)
    except ValueError as e:
        raise UsageError(str(e)) from None
    print(f"commutator rank {rep.commutator_rank} on {rep.m}x{rep.m} slices: border rank ≥ {rep.bound}")
    if args.hyperplane:
        covs = [[int(x) for x in h.split(",")] for h in args.hyperplane]
        sub = invariants.border_substitution_check(T, args.factor, covs, args.seed)
        for h, r in zip(args.hyperplane, sub.ranks):
            print(f"  hyperplane ({h}): commutator rank {r}" + (" (full)" if r == sub.m else ""))
        print(f"border substitution: border rank ≥ {sub.bound}")
    return OK


def cmd_rnd(args) -> int:
    res = criticality.rnd_space(_space(args.input), args.seed, args.samples)
    print(f"dim E = {res.dim_E}, dim of sampled RND intersection = {res.dim_intersection} "
          f"({res.samples_used} samples)")
    print("E ⊆ intersection: " + ("verified" if res.contains_E else "FAILED"))
    print("rank critical: " + ("certified (RND(E) = E)" if res.certified_critical else "not certified"))
    return OK if res.certified_critical else FAILED


def cmd_border_check(args) -> int:
    d = _load(args.cert)
    if not isinstance(d, br.Decomposition):
        raise UsageError(f"{args.cert} is not a certificate")
    T = _tensor(args.tensor)
    try:
        rep = br.check_decomposition(d, T, args.scale)
    except ValueError as e:
        raise UsageError(str(e)) from None
    print(rep.format())
    return OK if rep.verified else FAILED


def cmd_bounds(args) -> int:
    T = _tensor(args.input)
    certs = []
    if args.input.startswith("catalog:"):
        name = args.input.split(":")[1]
        if name in KNOWN_CERTS:
            certs.append((KNOWN_CERTS[name], load_cert(KNOWN_CERTS[name])))
    for c in args.cert or ():
        d = _load(c)
        if not isinstance(d, br.Decomposition):
            raise UsageError(f"{c} is not a certificate")
        certs.append((c, d))
    print(br.bounds_report(T, certs, seed=args.seed).format())
    return OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="brk", description="Exact checks for spaces of matrices of bounded rank.")
    p.add_argument("--version", action="version", version=f"brk {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, seeded=True):
        sp = sub.add_parser(name, help=help_)
        if seeded:
            sp.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
        sp.set_defaults(func=func)
        return sp

    sp = add("catalog", cmd_catalog, "list catalog entries or print one", seeded=False)
    sp.add_argument("name", nargs="?", help="NAME or NAME:p1,p2")

    sp = add("rank", cmd_rank, "exact generic rank, certified by minors")
    sp.add_argument("input")

    sp = add("atkinson", cmd_atkinson, "Atkinson normal form, numbers and screens")
    sp.add_argument("input")
    sp.add_argument("--pivot", choices=atk.PIVOT_STRATEGIES, default="generic")
    sp.add_argument("--show", action="store_true", help="print the normal form")

    sp = add("annihilator", cmd_annihilator, "linear or graded annihilator of a matrix of forms", seeded=False)
    sp.add_argument("input")
    sp.add_argument("--degree", type=int, default=1)
    sp.add_argument("--transpose", action="store_true", help="annihilate rows instead of columns")

    sp = add("blowup", cmd_blowup, "substitute a commuting family into a space")
    sp.add_argument("input")
    sp.add_argument("--family", default="a", help="a, b, random:K or tensor:SPEC")
    sp.add_argument("--factor", choices="ABC", default="B")

    sp = add("kron", cmd_kron, "bounded rank of a Kronecker product")
    sp.add_argument("first")
    sp.add_argument("second")

    sp = add("symmetry", cmd_symmetry, "dimension of the symmetry Lie algebra", seeded=False)
    sp.add_argument("input")

    sp = add("kernel", cmd_kernel, "kernel generators or a kernel-pair check")
    sp.add_argument("input")
    sp.add_argument("--right")
    sp.add_argument("--left")

    sp = add("koszul", cmd_koszul, "Koszul flattening lower bound")
    sp.add_argument("input")
    sp.add_argument("--p", type=int, default=1)
    sp.add_argument("--restrict-dim", type=int, default=None)

    sp = add("strassen", cmd_strassen, "Strassen commutator lower bound")
    sp.add_argument("input")
    sp.add_argument("--factor", choices="ABC", default="A")
    sp.add_argument("--hyperplane", action="append", help="comma-separated covector; repeatable")

    sp = add("rnd", cmd_rnd, "rank criticality via rank neutral directions")
    sp.add_argument("input")
    sp.add_argument("--samples", type=int, default=30)

    sp = add("border-check", cmd_border_check, "verify a border rank certificate", seeded=False)
    sp.add_argument("cert")
    sp.add_argument("tensor")
    sp.add_argument("--scale", type=int, default=None)

    sp = add("bounds", cmd_bounds, "best lower and verified upper bounds on border rank")
    sp.add_argument("input")
    sp.add_argument("--cert", action="append")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"brk: error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
