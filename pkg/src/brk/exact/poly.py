"""Sparse multivariate polynomials with exact rational coefficients.

Monomials are packed into a single Python int: one 16-bit field per variable
(variable 0 most significant) topped by a field holding the total degree.
Multiplying monomials is then integer addition, and comparing packed keys is
exactly graded-lexicographic order with ``a1 > a2 > ...``.

Coefficients are ``int`` whenever integral and ``Fraction`` otherwise; every
operation keeps them in that normal form.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

FIELD = 16
_MASK = (1 << FIELD) - 1
_GUARD_BIT = 1 << (FIELD - 1)
MAX_EXP = _GUARD_BIT - 1

_guard_cache: dict[int, int] = {}


def _guards(nvars: int) -> int:
    g = _guard_cache.get(nvars)
    if g is None:
        g = 0
        for i in range(nvars + 1):
            g |= _GUARD_BIT << (FIELD * i)
        _guard_cache[nvars] = g
    return g


def norm_coeff(c):
    """Return ``c`` as an ``int`` when integral, otherwise as a reduced Fraction."""
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        c = Fraction(c.numerator, c.denominator)
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):  # bool and int subclasses
        return int(c)
    raise TypeError(f"coefficient must be rational, got {type(c).__name__}")


def pack(exps: Sequence[int]) -> int:
    n = len(exps)
    key = 0
    deg = 0
    for e in exps:
        if e < 0 or e > MAX_EXP:
            raise ValueError(f"exponent {e} out of range")
        key = (key << FIELD) | e
        deg += e
    return key | (deg << (FIELD * n))


def unpack(key: int, nvars: int) -> tuple[int, ...]:
    out = [0] * nvars
    for i in range(nvars - 1, -1, -1):
        out[i] = key & _MASK
        key >>= FIELD
    return tuple(out)


def key_degree(key: int, nvars: int) -> int:
    return key >> (FIELD * nvars)


def divides(small: int, big: int, nvars: int) -> bool:
    """True iff monomial ``small`` divides monomial ``big``."""
    g = _guards(nvars)
    return ((big | g) - small) & g == g


class MultiPoly:
    """Immutable sparse polynomial in ``nvars`` variables over Q."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[int, object] | None = None, *, _trusted=False):
        self.nvars = nvars
        if terms is None:
            self.terms = {}
        elif _trusted:
            self.terms = terms
        else:
            self.terms = {k: norm_coeff(c) for k, c in terms.items() if c != 0}
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars, {}, _trusted=True)

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        c = norm_coeff(c)
        return cls(nvars, {0: c} if c else {}, _trusted=True)

    @classmethod
    def var(cls, nvars: int, i: int, coeff=1) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[i] = 1
        coeff = norm_coeff(coeff)
        return cls(nvars, {pack(exps): coeff} if coeff else {}, _trusted=True)

    @classmethod
    def from_dict(cls, nvars: int, d: Mapping[Sequence[int], object]) -> "MultiPoly":
        terms: dict[int, object] = {}
        for exps, c in d.items():
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {tuple(exps)} has length {len(exps)}, expected {nvars}")
            k = pack(exps)
            terms[k] = terms.get(k, 0) + norm_coeff(c)
        return cls(nvars, terms)

    @classmethod
    def linear(cls, coeffs: Sequence) -> "MultiPoly":
        """The linear form ``sum coeffs[i] * x_i``."""
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            c = norm_coeff(c)
            if c:
                terms[(1 << (FIELD * (n - 1 - i))) | (1 << (FIELD * n))] = c
        return cls(n, terms, _trusted=True)

    # -- inspection -------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_term(self):
        return self.terms.get(0, 0)

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.terms) >> (FIELD * self.nvars)

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {k >> (FIELD * self.nvars) for k in self.terms}
        if not degs:
            return True
        return len(degs) == 1 and (d is None or d in degs)

    def is_linear_form(self) -> bool:
        """Homogeneous of degree one, or zero."""
        return self.is_homogeneous(1)

    def to_dict(self) -> dict[tuple[int, ...], object]:
        return {unpack(k, self.nvars): c for k, c in self.terms.items()}

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        """Terms in decreasing graded-lex order."""
        return [(unpack(k, self.nvars), self.terms[k]) for k in sorted(self.terms, reverse=True)]

    def leading_key(self) -> int:
        return max(self.terms)

    def leading_coeff(self):
        return self.terms[max(self.terms)] if self.terms else 0

    def variables(self) -> set[int]:
        seen = 0
        for k in self.terms:
            seen |= k
        out = set()
        for i in range(self.nvars):
            if (seen >> (FIELD * (self.nvars - 1 - i))) & _MASK:
                out.add(i)
        return out

    def linear_coeffs(self) -> list:
        """Coefficient vector of a linear form (raises unless linear)."""
        if not self.is_linear_form():
            raise ValueError(f"not a linear form: {self}")
        n = self.nvars
        out = [0] * n
        for k, c in self.terms.items():
            e = unpack(k, n)
            out[e.index(1)] = c
        return out

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        return MultiPoly.constant(self.nvars, other)

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if len(other.terms) > len(self.terms):
            self, other = other, self
        t = dict(self.terms)
        for k, c in other.terms.items():
            v = t.get(k)
            if v is None:
                t[k] = c
            else:
                v = v + c
                if v:
                    t[k] = v if type(v) is int or v.denominator != 1 else v.numerator
                else:
                    del t[k]
        return MultiPoly(self.nvars, t, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {k: -c for k, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def scale(self, c) -> "MultiPoly":
        c = norm_coeff(c)
        if not c:
            return MultiPoly.zero(self.nvars)
        if c == 1:
            return self
        if type(c) is int:
            return MultiPoly(self.nvars, {k: v * c for k, v in self.terms.items()}, _trusted=True)
        return MultiPoly(self.nvars, {k: norm_coeff(v * c) for k, v in self.terms.items()}, _trusted=True)

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
        a, b = self.terms, other.terms
        if not a or not b:
            return MultiPoly.zero(self.nvars)
        if len(a) < len(b):
            a, b = b, a
        t: dict[int, object] = {}
        get = t.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                t[k] = get(k, 0) + ca * cb
        out = {}
        for k, c in t.items():
            if c:
                out[k] = c if type(c) is int or c.denominator != 1 else c.numerator
        return MultiPoly(self.nvars, out, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "MultiPoly":
        if e < 0:
            raise ValueError("negative exponent")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_monomial(self, key: int, c) -> "MultiPoly":
        return MultiPoly(
            self.nvars, {k + key: norm_coeff(v * c) for k, v in self.terms.items()}, _trusted=True
        )

    def divmod(self, other: "MultiPoly") -> tuple["MultiPoly", "MultiPoly"]:
        """Multivariate division by a single polynomial under graded-lex order.

        The remainder is zero exactly when ``other`` divides ``self``.
        """
        other = self._coerce(other)
        if not other.terms:
            raise ZeroDivisionError("polynomial division by zero")
        n = self.nvars
        lk = max(other.terms)
        lc = other.terms[lk]
        rest = [(k, c) for k, c in other.terms.items() if k != lk]
        r = dict(self.terms)
        q: dict[int, object] = {}
        rem: dict[int, object] = {}
        while r:
            m = max(r)
            c = r.pop(m)
            if divides(lk, m, n):
                shift = m - lk
                f = norm_coeff(Fraction(c, lc) if type(c) is int and type(lc) is int else c / lc)
                q[shift] = f
                for k, oc in rest:
                    kk = k + shift
                    v = r.get(kk, 0) - f * oc
                    if v:
                        r[kk] = norm_coeff(v)
                    else:
                        r.pop(kk, None)
            else:
                rem[m] = c
        return MultiPoly(n, q, _trusted=True), MultiPoly(n, rem, _trusted=True)

    def exact_div(self, other) -> "MultiPoly":
        """Quotient ``self / other``; raises ArithmeticError if not exact."""
        if not isinstance(other, MultiPoly):
            c = norm_coeff(other)
            if not c:
                raise ZeroDivisionError("division by zero")
            return self.scale(Fraction(1) / c)
        if other.is_constant():
            return self.exact_div(other.constant_term())
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def __truediv__(self, other) -> "MultiPoly":
        return self.exact_div(other)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            c = norm_coeff(other)
        except TypeError:
            return NotImplemented
        if not c:
            return not self.terms
        return self.terms == {0: c}

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- evaluation / substitution ----------------------------------------

    def __call__(self, *pt):
        return self.eval(pt[0] if len(pt) == 1 and isinstance(pt[0], (list, tuple)) else pt)

    def eval(self, pt: Sequence) -> object:
        """Exact value at a rational point."""
        n = self.nvars
        if len(pt) != n:
            raise ValueError(f"point has {len(pt)} coordinates, polynomial has {n} variables")
        pt = [norm_coeff(x) for x in pt]
        total = 0
        powcache: list[dict[int, object]] = [{} for _ in range(n)]
        for k, c in self.terms.items():
            v = c
            for i in range(n - 1, -1, -1):
                e = k & _MASK
                k >>= FIELD
                if e:
                    pc = powcache[i]
                    p = pc.get(e)
                    if p is None:
                        p = pc[e] = pt[i] ** e
                    v = v * p
                    if not v:
                        break
            total += v
        return norm_coeff(total)

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Replace variable ``i`` by ``images[i]`` (all in one common ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if not images:
            return self
        m = images[0].nvars
        result = MultiPoly.zero(m)
        powcache: list[dict[int, MultiPoly]] = [{} for _ in images]
        for exps, c in self.to_dict().items():
            term = MultiPoly.constant(m, c)
            for i, e in enumerate(exps):
                if e:
                    p = powcache[i].get(e)
                    if p is None:
                        p = powcache[i][e] = images[i] ** e
                    term = term * p
            result = result + term
        return result

    def embed(self, nvars: int, offset: int = 0) -> "MultiPoly":
        """Same polynomial viewed in a ring with ``nvars`` variables, shifting indices by ``offset``."""
        if offset < 0 or offset + self.nvars > nvars:
            raise ValueError("embedding does not fit")
        return MultiPoly.from_dict(
            nvars,
            {(0,) * offset + e + (0,) * (nvars - offset - self.nvars): c for e, c in self.to_dict().items()},
        )

    # -- printing ---------------------------------------------------------

    def format(self, names: Sequence[str] | None = None, compact: bool = False) -> str:
        if not self.terms:
            return "0"
        n = self.nvars
        if names is None:
            names = default_names(n)
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(exps) if e
            )
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            parts.append((sign, body))
        sep = "" if compact else " "
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f"{sep}{sign}{sep}{body}"
        return s

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {self.format()!r})"


def default_names(n: int, prefix: str = "a") -> tuple[str, ...]:
    return tuple(f"{prefix}{i + 1}" for i in range(n))


_TERM_RE = re.compile(r"([+-]?)([^+-]+)")
_FACTOR_RE = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?$")
_NUM_RE = re.compile(r"^\d+(?:/\d+)?$")


def parse_poly(text: str, names: Sequence[str]) -> MultiPoly:
    """Parse ``text`` such as ``-3/4*t^2*a3 + a1`` over the given variable names.

    Grammar: signed sum of products of rationals and ``name`` or ``name^k``.
    """
    s = text.replace(" ", "")
    n = len(names)
    index = {nm: i for i, nm in enumerate(names)}
    if not s:
        raise ValueError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    pos = 0
    result: dict[tuple[int, ...], object] = {}
    for m in _TERM_RE.finditer(s):
        if m.start() != pos:
            raise ValueError(f"cannot parse polynomial {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coeff: object = Fraction(sign)
        exps = [0] * n
        for factor in m.group(2).split("*"):
            if _NUM_RE.match(factor):
                coeff *= Fraction(factor)
                continue
            fm = _FACTOR_RE.match(factor)
            if not fm or fm.group(1) not in index:
                raise ValueError(f"unknown factor {factor!r} in {text!r}")
            exps[index[fm.group(1)]] += int(fm.group(2) or 1)
        key = tuple(exps)
        result[key] = result.get(key, 0) + coeff
    if pos != len(s):
        raise ValueError(f"cannot parse polynomial {text!r}")
    return MultiPoly.from_dict(n, result)
