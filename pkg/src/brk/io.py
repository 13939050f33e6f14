"""Plain-text formats for tensors, spaces of matrices and border rank certificates.

Tensor file::

    tensor 2 2 2
    # 1-based indices, exact rational value
    1 1 2 1/1
    1 2 1 1/1

Space file (a grid of linear forms, one matrix row per line)::

    space 3 3 3
    a1 0 -a3
    0 a1 a2
    a2 a3 0

An optional ``vars x1 x2 ...`` line after the header renames the variables.
Instead of a grid the body may consist of ``slice i`` blocks, each holding the
b x c coefficient matrix of the i-th variable.

Certificate file: JSON ``{"scale": s, "cyclic": bool, "terms": [{"u": [...],
"v": [...], "w": [...], "shift": k}]}`` where vector entries are polynomials
in ``t`` written as strings and ``shift`` (default 0) is an extra power of t.
"""
from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .borderrank import T_NAMES, Decomposition, Term, tpoly
from .exact.matrix import PolyMatrix
from .exact.poly import MultiPoly, default_names, norm_coeff, parse_poly
from .tensor import SpaceOfMatrices, Tensor3


class FormatError(ValueError):
    """A syntax or range error, reported with its 1-based line number."""

    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


def _content_lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def _header(lines, keyword: str) -> tuple[int, int, int]:
    try:
        n, line = next(lines)
    except StopIteration:
        raise FormatError(1, f"empty document, expected '{keyword} a b c'") from None
    parts = line.split()
    if len(parts) != 4 or parts[0] != keyword:
        raise FormatError(n, f"expected '{keyword} a b c', got {line!r}")
    try:
        dims = tuple(int(p) for p in parts[1:])
    except ValueError:
        raise FormatError(n, "dimensions must be integers") from None
    if any(d < 0 for d in dims):
        raise FormatError(n, "dimensions must be non-negative")
    return dims


def _rational(token: str, n: int):
    num, sep, den = token.partition("/")
    try:
        value = Fraction(int(num), int(den)) if sep else Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        raise FormatError(n, f"bad rational {token!r}") from None
    if sep and int(den) <= 0:
        raise FormatError(n, "denominator must be positive")
    return norm_coeff(value)


def _fmt_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# -- tensors -----------------------------------------------------------------


def parse_tensor(text: str) -> Tensor3:
    lines = _content_lines(text)
    dims = _header(lines, "tensor")
    entries = {}
    for n, line in lines:
        parts = line.split()
        if len(parts) != 4:
            raise FormatError(n, f"expected 'i j k value', got {line!r}")
        try:
            idx = tuple(int(p) - 1 for p in parts[:3])
        except ValueError:
            raise FormatError(n, "indices must be integers") from None
        if any(not 0 <= i < d for i, d in zip(idx, dims)):
            raise FormatError(n, f"index {tuple(i + 1 for i in idx)} outside {dims}")
        if idx in entries:
            raise FormatError(n, f"duplicate entry {tuple(i + 1 for i in idx)}")
        entries[idx] = _rational(parts[3], n)
    return Tensor3(dims, entries)


def format_tensor(T: Tensor3) -> str:
    out = ["tensor {} {} {}".format(*T.dims)]
    for (i, j, k), v in sorted(T.entries.items()):
        out.append(f"{i + 1} {j + 1} {k + 1} {_fmt_rational(v)}")
    return "\n".join(out) + "\n"


# -- spaces ------------------------------------------------------------------


def parse_space(text: str) -> SpaceOfMatrices:
    lines = list(_content_lines(text))
    it = iter(lines)
    a, b, c = _header(it, "space")
    body = list(it)
    names = default_names(a)
    if body and body[0][1].split()[0] == "vars":
        n, line = body.pop(0)
        names = tuple(line.split()[1:])
        if len(names) != a:
            raise FormatError(n, f"expected {a} variable names, got {len(names)}")
    if body and body[0][1].split()[0] == "slice":
        return _parse_slices(body, a, b, c, names)
    if len(body) != b:
        where = body[b][0] if len(body) > b else (body[-1][0] if body else 1)
        raise FormatError(where, f"expected {b} grid rows, got {len(body)}")
    grid = []
    for n, line in body:
        cells = line.split()
        if len(cells) != c:
            raise FormatError(n, f"expected {c} entries, got {len(cells)}")
        row = []
        for cell in cells:
            try:
                p = parse_poly(cell, names)
            except ValueError as e:
                raise FormatError(n, str(e)) from None
            if not p.is_linear_form():
                raise FormatError(n, f"{cell!r} is not a linear form")
            row.append(p)
        grid.append(row)
    M = PolyMatrix(grid, a) if b and c else PolyMatrix.zeros(b, c, a)
    return SpaceOfMatrices(M, names)


def _parse_slices(body, a, b, c, names) -> SpaceOfMatrices:
    slices: dict[int, list[list]] = {}
    pos = 0
    while pos < len(body):
        n, line = body[pos]
        parts = line.split()
        if len(parts) != 2 or parts[0] != "slice":
            raise FormatError(n, f"expected 'slice i', got {line!r}")
        try:
            i = int(parts[1]) - 1
        except ValueError:
            raise FormatError(n, "slice index must be an integer") from None
        if not 0 <= i < a:
            raise FormatError(n, f"slice index {i + 1} outside 1..{a}")
        if i in slices:
            raise FormatError(n, f"duplicate slice {i + 1}")
        rows = body[pos + 1 : pos + 1 + b]
        if len(rows) != b:
            raise FormatError(n, f"slice {i + 1} needs {b} rows")
        mat = []
        for rn, rline in rows:
            cells = rline.split()
            if len(cells) != c:
                raise FormatError(rn, f"expected {c} entries, got {len(cells)}")
            mat.append([_rational(x, rn) for x in cells])
        slices[i] = mat
        pos += 1 + b
    full = [slices.get(i, [[0] * c for _ in range(b)]) for i in range(a)]
    return SpaceOfMatrices.from_slices(full, names) if a else SpaceOfMatrices(PolyMatrix.zeros(b, c, 0), ())


def format_space(E: SpaceOfMatrices) -> str:
    b, c = E.shape
    out = [f"space {E.dim} {b} {c}"]
    if tuple(E.names) != default_names(E.dim):
        out.append("vars " + " ".join(E.names))
    for i in range(b):
        out.append(" ".join(E.matrix[i, j].format(E.names, compact=True) for j in range(c)))
    return "\n".join(out) + "\n"


# -- certificates ------------------------------------------------------------


def parse_cert(text: str) -> Decomposition:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(e.lineno, e.msg) from None
    if not isinstance(data, dict) or "terms" not in data or "scale" not in data:
        raise FormatError(1, "certificate needs 'scale' and 'terms'")
    terms = []
    for n, t in enumerate(data["terms"], 1):
        try:
            terms.append(Term.of(t["u"], t["v"], t["w"], int(t.get("shift", 0))))
        except (KeyError, TypeError) as e:
            raise FormatError(1, f"term {n}: missing or malformed field {e}") from None
        except ValueError as e:
            raise FormatError(1, f"term {n}: {e}") from None
    try:
        return Decomposition(tuple(terms), int(data["scale"]), bool(data.get("cyclic", False)))
    except ValueError as e:
        raise FormatError(1, str(e)) from None


def _fmt_t(p: MultiPoly) -> str:
    return p.format(T_NAMES, compact=True)


def format_cert(d: Decomposition) -> str:
    terms = []
    for t in d.terms:
        entry = {"u": [_fmt_t(p) for p in t.u], "v": [_fmt_t(p) for p in t.v], "w": [_fmt_t(p) for p in t.w]}
        if t.shift:
            entry["shift"] = t.shift
        terms.append(entry)
    body = ",\n".join("  " + json.dumps(t) for t in terms)
    head = f'{{\n "scale": {d.scale},\n "cyclic": {json.dumps(d.cyclic)},\n "terms": [\n'
    return head + body + "\n ]\n}\n"


# -- loading -----------------------------------------------------------------

DATA_FILES = ("case3.space", "case4.space", "caseIV.tensor", "sextonion.tensor",
              "caseIV_br9.cert", "sextonion_br10.cert", "skewcw2_br5.cert", "wstate_br2.cert")


def data_path(name: str) -> Path:
    """Path of a file shipped in the package's ``data`` directory."""
    return Path(str(resources.files("brk") / "data" / name))


def read_data(name: str) -> str:
    return data_path(name).read_text()


def load_any(path: str | Path):
    """Parse a file by its extension: .tensor, .space or .cert."""
    p = Path(path)
    if not p.exists() and (data_path(p.name)).exists():
        p = data_path(p.name)
    text = p.read_text()
    suffix = p.suffix
    if suffix == ".tensor":
        return parse_tensor(text)
    if suffix == ".space":
        return parse_space(text)
    if suffix == ".cert":
        return parse_cert(text)
    raise ValueError(f"unknown file type {suffix!r} (expected .tensor, .space or .cert)")


def load_cert(name: str) -> Decomposition:
    return parse_cert(read_data(name))
