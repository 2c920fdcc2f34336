"""JSON algebra files and machine reports.

Algebra file layout (indices are 0-based, rationals are strings "p/q" or "p")::

    {"name": "lie_sl2", "dim": 3, "basis": ["h", "e", "f"],
     "bracket": [{"i": 0, "j": 1, "terms": [{"k": 1, "c": "2"}]}, ...],
     "jordan": [],
     "masa": [["1", "0", "0"]]}

Bracket entries need i < j, Jordan entries i <= j; only nonzero terms are
listed.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import AlgebraSpec, MalformedAlgebra
from .exactlin import Subspace, fmt, rref

__all__ = ["MalformedInput", "parse_algebra", "load_algebra", "dump_algebra", "algebra_to_dict",
           "dumps_report", "loads_report"]


class MalformedInput(ValueError):
    pass


def _rational(x, where):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise MalformedInput("%s: rational must be a string 'p/q' or an integer, got %r" % (where, x))
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise MalformedInput("%s: cannot parse rational %r" % (where, x)) from None


def _index(x, n, where):
    if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < n:
        raise MalformedInput("%s: index %r out of range 0..%d" % (where, x, n - 1))
    return x


def _table(entries, n, strict, label):
    if not isinstance(entries, list):
        raise MalformedInput("%s must be a list" % label)
    out = {}
    for pos, e in enumerate(entries):
        where = "%s[%d]" % (label, pos)
        if not isinstance(e, dict) or set(e) - {"i", "j", "terms"} or not {"i", "j", "terms"} <= set(e):
            raise MalformedInput("%s: expected keys i, j, terms" % where)
        i, j = _index(e["i"], n, where), _index(e["j"], n, where)
        if (strict and not i < j) or (not strict and not i <= j):
            raise MalformedInput("%s: need i %s j, got (%d, %d)" % (where, "<" if strict else "<=", i, j))
        if (i, j) in out:
            raise MalformedInput("%s: duplicate entry (%d, %d)" % (where, i, j))
        terms = {}
        if not isinstance(e["terms"], list):
            raise MalformedInput("%s: terms must be a list" % where)
        for t in e["terms"]:
            if not isinstance(t, dict) or set(t) != {"k", "c"}:
                raise MalformedInput("%s: each term needs keys k and c" % where)
            k = _index(t["k"], n, where)
            if k in terms:
                raise MalformedInput("%s: duplicate output index %d" % (where, k))
            terms[k] = _rational(t["c"], where)
        out[(i, j)] = terms
    return out


def parse_algebra(data: dict) -> tuple:
    """(AlgebraSpec, MASA Subspace) from a decoded algebra file."""
    if not isinstance(data, dict):
        raise MalformedInput("top level must be an object")
    missing = {"dim", "basis", "bracket", "jordan", "masa"} - set(data)
    if missing:
        raise MalformedInput("missing keys: " + ", ".join(sorted(missing)))
    n = data["dim"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise MalformedInput("dim must be a non-negative integer")
    basis = data["basis"]
    if not isinstance(basis, list) or len(basis) != n or not all(isinstance(b, str) for b in basis):
        raise MalformedInput("basis must list %d string labels" % n)
    br = _table(data["bracket"], n, True, "bracket")
    jo = _table(data["jordan"], n, False, "jordan")
    try:
        alg = AlgebraSpec.from_terms(basis, br, jo, name=str(data.get("name", "")))
    except MalformedAlgebra as exc:
        raise MalformedInput(str(exc)) from None
    masa = data["masa"]
    if not isinstance(masa, list):
        raise MalformedInput("masa must be a list of vectors")
    rows = []
    for pos, v in enumerate(masa):
        if not isinstance(v, list) or len(v) != n:
            raise MalformedInput("masa[%d] must have %d coordinates" % (pos, n))
        rows.append(tuple(_rational(x, "masa[%d]" % pos) for x in v))
    h = rref(rows, n)
    if h.dim != len(rows):
        raise MalformedInput("masa vectors are linearly dependent")
    return alg, h


def load_algebra(path) -> tuple:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise MalformedInput("invalid JSON: %s" % exc) from None
    return parse_algebra(data)


def _terms_list(table):
    return [
        {"i": i, "j": j, "terms": [{"k": k, "c": fmt(c)} for k, c in sorted(terms.items())]}
        for (i, j), terms in sorted(table.items())
    ]


def algebra_to_dict(a: AlgebraSpec, h: Subspace) -> dict:
    return {
        "name": a.name,
        "dim": a.dim,
        "basis": list(a.basis_names),
        "bracket": _terms_list(a.bracket_terms()),
        "jordan": _terms_list(a.jordan_terms()),
        "masa": [[fmt(x) for x in v] for v in h.basis],
    }


def dump_algebra(a: AlgebraSpec, h: Subspace, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(algebra_to_dict(a, h), indent=2) + "\n")


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def loads_report(text: str) -> dict:
    return json.loads(text)
