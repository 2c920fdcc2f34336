"""Bundled algebra families, each shipped with a suggested MASA."""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .algebra import AlgebraSpec, _jordan_scan, _malcev_scan, direct_sum
from .exactlin import Subspace, kernel, unit_vec

FAMILIES = ("lie_sl2", "malcev_m7", "abelian", "jordan_probe", "solvable2")


class UnknownFamily(ValueError):
    pass


def lie_sl2():
    """sl2 in the basis (h, e, f) with zero Jordan product."""
    a = AlgebraSpec.from_terms(
        ("h", "e", "f"),
        {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}},
        {},
        name="lie_sl2",
    )
    return a, Subspace.span([unit_vec(3, 0)], 3)


def abelian(n: int):
    if n < 0:
        raise UnknownFamily("abelian dimension must be non-negative")
    a = AlgebraSpec.from_terms(tuple("z%d" % i for i in range(n)), {}, {}, name="abelian%d" % n)
    return a, Subspace.full(n)


def solvable2():
    """The 2-dimensional algebra [h, x] = x; its root system {1} is not symmetric."""
    a = AlgebraSpec.from_terms(("h", "x"), {(0, 1): {1: 1}}, {}, name="solvable2")
    return a, Subspace.span([unit_vec(2, 0)], 2)


# -- split octonions ---------------------------------------------------------
# Zorn vector matrices (a, u, v, b) with a, b scalars and u, v in K^3:
# (a,u,v,b)(a',u',v',b') = (aa' + u.v', au' + b'u + v x v', a'v + bv' - u x u', bb' + v.u')


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _dot(u, v):
    return sum((x * y for x, y in zip(u, v)), Fraction(0))


def _lin(*terms):
    return tuple(sum(c * v[i] for c, v in terms) for i in range(3))


def zorn_mul(x, y):
    a, u, v, b = x
    a2, u2, v2, b2 = y
    return (
        a * a2 + _dot(u, v2),
        _lin((a, u2), (b2, u), (1, _cross(v, v2))),
        _lin((a2, v), (b, v2), (-1, _cross(u, u2))),
        b * b2 + _dot(v, u2),
    )


def _zorn_from_coords(c):
    # traceless basis: h = (1,0,0,-1), u_i, v_i
    return (c[0], tuple(c[1:4]), tuple(c[4:7]), -c[0])


def _zorn_to_coords(x):
    a, u, v, b = x
    if a + b != 0:
        raise ArithmeticError("element is not traceless")
    return (a,) + tuple(u) + tuple(v)


def malcev_m7():
    """Traceless split octonions under the commutator xy - yx.

    The 7-dimensional simple Malcev algebra that is not Lie; Jordan product
    zero, MASA spanned by h = diag(1, -1).
    """
    n = 7
    basis = [_zorn_from_coords(unit_vec(n, i)) for i in range(n)]
    br = {}
    for i in range(n):
        for j in range(i + 1, n):
            p = zorn_mul(basis[i], basis[j])
            q = zorn_mul(basis[j], basis[i])
            comm = (p[0] - q[0], _lin((1, p[1]), (-1, q[1])), _lin((1, p[2]), (-1, q[2])), p[3] - q[3])
            coords = _zorn_to_coords(comm)
            terms = {k: c for k, c in enumerate(coords) if c}
            if terms:
                br[(i, j)] = terms
    a = AlgebraSpec.from_terms(("h", "u1", "u2", "u3", "v1", "v2", "v3"), br, {}, name="malcev_m7")
    return a, Subspace.span([unit_vec(n, 0)], n)


# -- jordan probe search ------------------------------------------------------


def _root_choices(m):
    if m == 1:
        return [(1,), (-1,), (2,), (-2,)]
    return [w for w in itertools.product((-1, 0, 1), repeat=m) if any(w)]


def _frames(dim):
    """Eigen-aligned split frames of dimension ``dim``.

    H is spanned by the first ``m`` basis vectors and acts diagonally on the
    remaining ones with the listed integer weights.  Every split algebra has
    such a basis, up to rescaling H.
    """
    for m in range(1, dim):
        for roots in itertools.combinations_with_replacement(_root_choices(m), dim - m):
            yield m, [tuple([0] * m)] * m + list(roots)


def _bracket_slots(weights, m):
    """Bracket slots among root vectors allowed by the root grading."""
    n = len(weights)
    zero = weights[0]
    slots = []
    for i in range(m, n):
        for j in range(i + 1, n):
            wi, wj = weights[i], weights[j]
            if wi == wj:
                allowed = {tuple(2 * p for p in wi), tuple(-p for p in wi)}
                targets = [k for k in range(m, n) if weights[k] in allowed]
            else:
                s = tuple(p + q for p, q in zip(wi, wj))
                targets = list(range(m)) if s == zero else [k for k in range(m, n) if weights[k] == s]
            slots.extend((i, j, k) for k in targets)
    return slots


def leibniz_jordan_space(a: AlgebraSpec, m: int) -> Subspace:
    """All Jordan tables compatible with the bracket of ``a`` via Leibniz.

    Unknowns are the constants d[i][j][k] with i <= j, excluding products
    inside H = span(e_0..e_{m-1}), which must vanish.  Leibniz is linear in
    the Jordan constants once the bracket is fixed, so the answer is a kernel.
    """
    n = a.dim
    slots = [(i, j, k) for i in range(n) for j in range(i, n) for k in range(n) if not (j < m)]
    index = {s: t for t, s in enumerate(slots)}
    col = lambda p, q, r: index.get((min(p, q), max(p, q), r))
    C = a.bracket
    rows = []
    for x in range(n):
        for y in range(n):
            for z in range(n):
                for out in range(n):
                    row = [Fraction(0)] * len(slots)
                    for k in range(n):
                        # [x, yz] - [x,y] z - y [x,z]
                        if C[x][k][out]:
                            t = col(y, z, k)
                            if t is not None:
                                row[t] += C[x][k][out]
                        if C[x][y][k]:
                            t = col(k, z, out)
                            if t is not None:
                                row[t] -= C[x][y][k]
                        if C[x][z][k]:
                            t = col(y, k, out)
                            if t is not None:
                                row[t] -= C[x][z][k]
                    if any(row):
                        rows.append(row)
    return kernel(rows, len(slots)), slots


def search_jordan_probe(dim=3, grid=(0, 1, -1, 2, -2)):
    """Search split MPJ algebras of dimension ``dim`` with nonzero Jordan product.

    Each eigen-aligned frame is combined with every bracket on the root
    vectors drawn from ``grid`` (restricted to the root grading) that passes
    the Malcev identity.  For each such bracket the full space of Leibniz
    compatible Jordan tables is computed exactly, and each of its basis tables
    is tested against the Jordan identity.  Returns (hits, brackets tried).
    """
    hits = []
    tried = 0
    for m, weights in _frames(dim):
        n = dim
        names = tuple("h%d" % i for i in range(m)) + tuple("x%d" % i for i in range(n - m))
        fixed = {}
        for i in range(m):
            for k in range(m, n):
                if weights[k][i]:
                    fixed[(i, k)] = {k: weights[k][i]}
        bslots = _bracket_slots(weights, m)
        for bvals in itertools.product(grid, repeat=len(bslots)):
            br = {key: dict(v) for key, v in fixed.items()}
            for (i, j, k), c in zip(bslots, bvals):
                if c:
                    br.setdefault((i, j), {})[k] = c
            a = AlgebraSpec.from_terms(names, br, {})
            if _malcev_scan(a.int_tensors[0])[0] is not None:
                continue
            tried += 1
            space, slots = leibniz_jordan_space(a, m)
            for v in space.basis:
                jo = {}
                for (i, j, k), c in zip(slots, v):
                    if c:
                        jo.setdefault((i, j), {})[k] = c
                cand = AlgebraSpec.from_terms(names, br, jo, name="jordan_probe")
                if _jordan_scan(cand.int_tensors[1])[0] is None:
                    masa = Subspace.span([unit_vec(n, i) for i in range(m)], n)
                    hits.append((cand, masa))
    return hits, tried


def smallest_jordan_mpj():
    """The 1-dim algebra x.x = x with zero bracket.

    It satisfies every MPJ axiom but no MASA of it is Jordan-abelian, so it is
    not split.
    """
    a = AlgebraSpec.from_terms(("x",), {}, {(0, 0): {0: 1}}, name="jordan_probe")
    return a, Subspace.full(1)


@lru_cache(maxsize=None)
def jordan_probe():
    """First split hit of the dimension-3 search, else :func:`smallest_jordan_mpj`.

    Leibniz forces H.P = 0 and then P_a.P = 0 for every root a, so the split
    search is always empty and the fallback is what gets returned.
    """
    hits, _ = search_jordan_probe(3)
    if hits:
        return hits[0]
    return smallest_jordan_mpj()


def generate(family: str, *params):
    """(AlgebraSpec, suggested MASA) for a named family.

    ``abelian`` takes the dimension; ``sum:<f1>,<f2>,...`` builds a direct sum.
    """
    if family.startswith("sum:"):
        parts = [generate(*p.split(":")) for p in family[4:].split(",")]
        return direct_sum_with_masa(*parts)
    if family == "lie_sl2":
        return lie_sl2()
    if family == "malcev_m7":
        return malcev_m7()
    if family == "jordan_probe":
        return jordan_probe()
    if family == "solvable2":
        return solvable2()
    if family == "abelian":
        if len(params) != 1:
            raise UnknownFamily("abelian needs exactly one dimension parameter")
        try:
            n = int(params[0])
        except (TypeError, ValueError):
            raise UnknownFamily("abelian dimension must be an integer") from None
        return abelian(n)
    raise UnknownFamily("unknown family %r" % family)


def direct_sum_with_masa(*pairs):
    """Direct sum of (algebra, MASA) pairs; the MASA is the sum of the MASAs."""
    algebras = [a for a, _ in pairs]
    total = direct_sum(*algebras)
    rows = []
    off = 0
    for a, h in pairs:
        for v in h.basis:
            rows.append((Fraction(0),) * off + tuple(v) + (Fraction(0),) * (total.dim - off - a.dim))
        off += a.dim
    return total, Subspace.span(rows, total.dim)
