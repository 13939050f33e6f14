"""Multivariate gcd by recursive content extraction and subresultant PRS."""
from __future__ import annotations

from fractions import Fraction

from .poly import FIELD, MultiPoly, _MASK


def _split(p: MultiPoly, v: int) -> dict[int, MultiPoly]:
    """View ``p`` as a polynomial in variable ``v``: degree -> coefficient."""
    n = p.nvars
    shift = FIELD * (n - 1 - v)
    dshift = FIELD * n
    out: dict[int, dict[int, object]] = {}
    for k, c in p.terms.items():
        e = (k >> shift) & _MASK
        kk = k - (e << shift) - (e << dshift)
        out.setdefault(e, {})[kk] = c
    return {e: MultiPoly(n, t, _trusted=True) for e, t in out.items()}


def _join(coeffs: dict[int, MultiPoly], v: int, n: int) -> MultiPoly:
    shift = FIELD * (n - 1 - v)
    dshift = FIELD * n
    terms: dict[int, object] = {}
    for e, c in coeffs.items():
        add = (e << shift) + (e << dshift)
        for k, x in c.terms.items():
            terms[k + add] = x
    return MultiPoly(n, terms, _trusted=True)


def monic(p: MultiPoly) -> MultiPoly:
    """Scale so the graded-lex leading coefficient is 1."""
    if not p:
        return p
    return p.scale(1 / Fraction(p.leading_coeff()))


def _content(coeffs: dict[int, MultiPoly]) -> MultiPoly:
    g = None
    for c in sorted(coeffs.values(), key=len):
        g = c if g is None else poly_gcd(g, c)
        if g.is_constant():
            return MultiPoly.constant(g.nvars, 1)
    return g


def _prem(a: dict[int, MultiPoly], b: dict[int, MultiPoly], n: int) -> dict[int, MultiPoly]:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b, in one variable."""
    da, db = max(a), max(b)
    lb = b[db]
    r = dict(a)
    steps = da - db + 1
    for _ in range(steps):
        if not r:
            break
        dr = max(r)
        if dr < db:
            r = {e: c * lb for e, c in r.items()}
            continue
        lr = r[dr]
        new = {e: c * lb for e, c in r.items() if e != dr}
        for e, c in b.items():
            if e == db:
                continue
            k = e + dr - db
            val = new.get(k, MultiPoly.zero(n)) - lr * c
            if val:
                new[k] = val
            else:
                new.pop(k, None)
        r = new
    return r


def _prs_gcd(a: dict[int, MultiPoly], b: dict[int, MultiPoly], n: int) -> dict[int, MultiPoly]:
    """Primitive gcd of two primitive polynomials (in one main variable)."""
    if max(a) < max(b):
        a, b = b, a
    one = MultiPoly.constant(n, 1)
    g = h = one
    while True:
        delta = max(a) - max(b)
        r = _prem(a, b, n)
        if not r:
            cont = _content(b)
            return {e: c.exact_div(cont) for e, c in b.items()}
        if max(r) == 0:
            return {0: one}
        a = b
        div = g * h ** delta
        b = {e: c.exact_div(div) for e, c in r.items()}
        g = a[max(a)]
        if delta == 0:
            pass  # h unchanged: h^(1-0) * g^0
        else:
            h = (g ** delta).exact_div(h ** (delta - 1))


def poly_gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Greatest common divisor, normalized to graded-lex leading coefficient 1.

    ``poly_gcd(0, 0) == 0``.
    """
    if p.nvars != q.nvars:
        raise ValueError("gcd of polynomials over different rings")
    n = p.nvars
    if not p:
        return monic(q)
    if not q:
        return monic(p)
    if p.is_constant() or q.is_constant():
        return MultiPoly.constant(n, 1)
    pv, qv = p.variables(), q.variables()
    common = pv & qv
    if not common:
        return MultiPoly.constant(n, 1)
    # a variable absent from one side can only contribute through the content
    for v in sorted(pv | qv):
        if v not in common:
            if v in pv:
                return poly_gcd(_content(_split(p, v)), q)
            return poly_gcd(p, _content(_split(q, v)))
    v = min(common)
    a, b = _split(p, v), _split(q, v)
    ca, cb = _content(a), _content(b)
    a = {e: c.exact_div(ca) for e, c in a.items()}
    b = {e: c.exact_div(cb) for e, c in b.items()}
    c = poly_gcd(ca, cb)
    g = _join(_prs_gcd(a, b, n), v, n)
    return monic(c * g)
