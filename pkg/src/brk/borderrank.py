"""Checking border-rank decompositions written as limits in a parameter t.

A certificate is a list of rank-one terms ``t^shift * u(t) (x) v(t) (x) w(t)``
whose sum, divided by ``t^scale``, tends to the target tensor as ``t -> 0``.
Vector entries are polynomials in t with rational coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

from .exact.poly import MultiPoly, parse_poly
from .tensor import Tensor3

T_NAMES = ("t",)


def tpoly(text_or_value) -> MultiPoly:
    """A polynomial in the single variable t, from a string or a number."""
    if isinstance(text_or_value, MultiPoly):
        if text_or_value.nvars != 1:
            raise ValueError("expected a polynomial in t alone")
        return text_or_value
    if isinstance(text_or_value, str):
        return parse_poly(text_or_value, T_NAMES)
    return MultiPoly.constant(1, text_or_value)


def _coeffs(p: MultiPoly) -> dict[int, object]:
    """Exponent of t -> coefficient."""
    return {e[0]: c for e, c in p.to_dict().items()}


@dataclass(frozen=True)
class Term:
    u: tuple[MultiPoly, ...]
    v: tuple[MultiPoly, ...]
    w: tuple[MultiPoly, ...]
    shift: int = 0

    @classmethod
    def of(cls, u: Sequence, v: Sequence, w: Sequence, shift: int = 0) -> "Term":
        return cls(tuple(map(tpoly, u)), tuple(map(tpoly, v)), tuple(map(tpoly, w)), shift)

    @property
    def dims(self) -> tuple[int, int, int]:
        return len(self.u), len(self.v), len(self.w)

    def rotate(self) -> "Term":
        """The term with factor roles moved one step: (u, v, w) -> (w, u, v)."""
        return Term(self.w, self.u, self.v, self.shift)


@dataclass(frozen=True)
class Decomposition:
    terms: tuple[Term, ...]
    scale: int
    cyclic: bool = False
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.terms:
            raise ValueError("a decomposition needs at least one term")
        dims = self.terms[0].dims
        for t in self.terms:
            if t.dims != dims:
                raise ValueError(f"term dimensions {t.dims} differ from {dims}")
            if t.shift < 0:
                raise ValueError("term shifts must be non-negative")
        if self.cyclic and len(set(dims)) != 1:
            raise ValueError("cyclic expansion needs equal factor dimensions")
        if self.scale < 0:
            raise ValueError("scale must be non-negative")

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.terms[0].dims

    @property
    def size(self) -> int:
        """Number of rank-one terms after any cyclic expansion."""
        return len(self.terms) * (3 if self.cyclic else 1)


def orbit_expand(d: Decomposition) -> Decomposition:
    """Replace each term by its three cyclic rotations."""
    if not d.cyclic:
        return d
    out = []
    for t in d.terms:
        r1 = t.rotate()
        out.extend((t, r1, r1.rotate()))
    return replace(d, terms=tuple(out), cyclic=False)


def expand(d: Decomposition) -> dict[int, Tensor3]:
    """The sum of all terms as a polynomial in t with tensor coefficients.

    Returns ``{k: coefficient of t^k}``; zero coefficients are omitted.
    """
    d = orbit_expand(d)
    dims = d.dims
    acc: dict[int, dict[tuple[int, int, int], object]] = {}
    for term in d.terms:
        cu = [_coeffs(p) for p in term.u]
        cv = [_coeffs(p) for p in term.v]
        cw = [_coeffs(p) for p in term.w]
        for i, pu in enumerate(cu):
            for eu, xu in pu.items():
                for j, pv in enumerate(cv):
                    for ev, xv in pv.items():
                        xuv = xu * xv
                        for k, pw in enumerate(cw):
                            for ew, xw in pw.items():
                                e = eu + ev + ew + term.shift
                                slot = acc.setdefault(e, {})
                                slot[i, j, k] = slot.get((i, j, k), 0) + xuv * xw
    out = {}
    for e, ent in acc.items():
        T = Tensor3(dims, ent)
        if not T.is_zero():
            out[e] = T
    return out


def limit(d: Decomposition) -> Tensor3:
    """The coefficient of ``t^scale``, i.e. the limit when lower orders vanish."""
    return expand(d).get(d.scale, Tensor3(d.dims))


@dataclass(frozen=True)
class CheckReport:
    verified: bool
    terms: int
    scale: int
    witness: tuple | None = None  # (order, index, got, expected) of the first mismatch
    message: str = ""

    def format(self) -> str:
        if self.verified:
            return f"certificate VERIFIED: R̄ ≤ {self.terms} at scale t^{self.scale}"
        return f"certificate FAILED: {self.message}"


def check_decomposition(d: Decomposition, T: Tensor3, s: int | None = None) -> CheckReport:
    """Verify that ``lim t^-s * sum(terms) = T`` exactly.

    Every coefficient of ``t^k`` with ``k < s`` must vanish and the coefficient
    of ``t^s`` must equal T.  ``s`` defaults to the decomposition's own scale.
    """
    s = d.scale if s is None else s
    if d.dims != T.dims:
        raise ValueError(f"decomposition has dims {d.dims} but the tensor has dims {T.dims}")
    n = d.size
    coeffs = expand(d)
    for k in sorted(coeffs):
        if k >= s:
            break
        idx, val = min(coeffs[k].entries.items())
        return CheckReport(False, n, s, (k, idx, val, 0), f"order t^{k} does not vanish at entry {idx}: {val}")
    got = coeffs.get(s, Tensor3(T.dims))
    if got != T:
        diff = got - T
        idx = min(diff.entries)
        return CheckReport(
            False, n, s, (s, idx, got[idx], T[idx]),
            f"order t^{s} entry {idx} is {got[idx]}, expected {T[idx]}",
        )
    return CheckReport(True, n, s)


def rank_decomposition(T: Tensor3) -> Decomposition:
    """The trivial certificate: one term per nonzero entry (scale 0)."""
    a, b, c = T.dims
    terms = []
    for (i, j, k), x in sorted(T.entries.items()):
        u = [x if p == i else 0 for p in range(a)]
        v = [1 if p == j else 0 for p in range(b)]
        w = [1 if p == k else 0 for p in range(c)]
        terms.append(Term.of(u, v, w))
    return Decomposition(tuple(terms), 0)


# -- combined report ---------------------------------------------------------


@dataclass(frozen=True)
class BoundsReport:
    lower: int
    lower_source: str
    upper: int
    upper_source: str

    @property
    def equal(self) -> bool:
        return self.lower == self.upper

    def format(self) -> str:
        verdict = "border rank determined" if self.equal else "gap remains"
        return (
            f"lower bound: {self.lower} ({self.lower_source})\n"
            f"upper bound: {self.upper} ({self.upper_source})\n"
            f"{verdict}: {self.lower} ≤ R̄ ≤ {self.upper}"
        )


def bounds_report(
    T: Tensor3,
    certificates: Sequence[tuple[str, Decomposition]] = (),
    hyperplanes: tuple[str, Sequence[Sequence]] | None = None,
    seed: int = 0,
) -> BoundsReport:
    """Best lower bound from flattenings and commutators, best verified upper bound.

    Lower bounds: p=1 Koszul flattenings with every factor in the first slot and
    every admissible restriction, Strassen's commutator bound on every factor
    with square invertible slices, and, if ``hyperplanes = (factor, covectors)``
    is given, the border substitution improvement.  Upper bounds: the given
    certificates that verify, else the number of nonzero entries.
    """
    from . import invariants as inv

    lower, lower_src = (1 if not T.is_zero() else 0), "nonzero tensor"
    for f, perm in (("A", (0, 1, 2)), ("B", (1, 0, 2)), ("C", (2, 0, 1))):
        Tp = T.permute(perm)
        for d in range(3, Tp.dims[0] + 1):
            rep = inv.koszul_bound(Tp, 1, d, seed)
            if rep.bound > lower:
                lower, lower_src = rep.bound, f"Koszul flattening, factor {f}, restriction {d}"
        try:
            rep = inv.strassen_bound(T, f, seed)
        except ValueError:
            continue
        if rep.bound > lower:
            lower, lower_src = rep.bound, f"Strassen commutator, factor {f}"
    if hyperplanes is not None:
        f, covs = hyperplanes
        sub = inv.border_substitution_check(T, f, covs, seed)
        if sub.bound > lower:
            lower, lower_src = sub.bound, f"border substitution, factor {f}"
    upper, upper_src = T.support_size(), "entries of the tensor"
    for name, d in certificates:
        if d.dims != T.dims:
            continue
        rep = check_decomposition(d, T)
        if rep.verified and rep.terms < upper:
            upper, upper_src = rep.terms, f"verified certificate {name}"
    return BoundsReport(lower, lower_src, upper, upper_src)
