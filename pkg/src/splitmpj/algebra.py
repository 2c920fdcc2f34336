"""Two-product algebras given by structure constants.

An :class:`AlgebraSpec` carries an anticommutative bracket ``[.,.]`` and a
commutative (Jordan) product, both as dense ``n x n x n`` tables of exact
rationals: ``[e_i, e_j] = sum_k bracket[i][j][k] e_k``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Mapping, Sequence

import numpy as np

from .exactlin import (
    Subspace,
    Vec,
    add,
    fmt,
    frac,
    is_zero,
    kernel,
    rref,
    sub,
    unit_vec,
    zero_vec,
)
from .verdict import Verdict

DEFAULT_SEED = 20211  # smoke-test RNG seed
SMOKE_SAMPLES = 32


class MalformedAlgebra(ValueError):
    pass


class NotClosed(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


def _dense_zero(n):
    return [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]


def _freeze(t):
    return tuple(tuple(tuple(frac(x) for x in row) for row in plane) for plane in t)


@dataclass(frozen=True)
class AlgebraSpec:
    basis_names: tuple
    bracket: tuple
    jordan: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = len(self.basis_names)
        object.__setattr__(self, "basis_names", tuple(str(b) for b in self.basis_names))
        object.__setattr__(self, "bracket", _freeze(self.bracket))
        object.__setattr__(self, "jordan", _freeze(self.jordan))
        if len(set(self.basis_names)) != n:
            raise MalformedAlgebra("basis names must be distinct")
        for label, t in (("bracket", self.bracket), ("jordan", self.jordan)):
            if len(t) != n or any(len(p) != n or any(len(r) != n for r in p) for p in t):
                raise MalformedAlgebra("%s table must be %d x %d x %d" % (label, n, n, n))
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.bracket[i][j][k] != -self.bracket[j][i][k]:
                        raise MalformedAlgebra("bracket is not antisymmetric at (%d,%d,%d)" % (i, j, k))
                    if self.jordan[i][j][k] != self.jordan[j][i][k]:
                        raise MalformedAlgebra("jordan product is not symmetric at (%d,%d,%d)" % (i, j, k))

    @classmethod
    def from_terms(cls, basis_names: Sequence[str], bracket: Mapping, jordan: Mapping, name: str = ""):
        """Build from sparse tables ``{(i, j): {k: c}}``.

        Bracket entries need ``i < j`` (the rest follows by antisymmetry);
        Jordan entries need ``i <= j``.
        """
        n = len(basis_names)
        c = _dense_zero(n)
        d = _dense_zero(n)
        for (i, j), terms in bracket.items():
            if not (0 <= i < j < n):
                raise MalformedAlgebra("bracket entry (%d,%d) must have 0 <= i < j < %d" % (i, j, n))
            for k, coef in terms.items():
                if not 0 <= k < n:
                    raise MalformedAlgebra("index %d out of range" % k)
                c[i][j][k] += frac(coef)
                c[j][i][k] -= frac(coef)
        for (i, j), terms in jordan.items():
            if not (0 <= i <= j < n):
                raise MalformedAlgebra("jordan entry (%d,%d) must have 0 <= i <= j < %d" % (i, j, n))
            for k, coef in terms.items():
                if not 0 <= k < n:
                    raise MalformedAlgebra("index %d out of range" % k)
                d[i][j][k] += frac(coef)
                if i != j:
                    d[j][i][k] += frac(coef)
        return cls(tuple(basis_names), c, d, name)

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    def bracket_terms(self) -> dict:
        """Nonzero bracket constants as ``{(i, j): {k: c}}`` with i < j."""
        return _upper_terms(self.bracket, strict=True)

    def jordan_terms(self) -> dict:
        return _upper_terms(self.jordan, strict=False)

    @cached_property
    def _sparse_bracket(self):
        return _sparse(self.bracket)

    @cached_property
    def _sparse_jordan(self):
        return _sparse(self.jordan)

    @cached_property
    def int_tensors(self):
        """(C, D) as integer numpy tensors, each scaled to clear denominators."""
        return _int_tensor(self.bracket), _int_tensor(self.jordan)

    def basis_vector(self, i: int) -> Vec:
        return unit_vec(self.dim, i)

    def label(self, v: Sequence) -> str:
        """Human form of a vector, e.g. ``2*e - 1/2*h``."""
        parts = []
        for c, b in zip(v, self.basis_names):
            if c:
                parts.append(b if c == 1 else ("-" + b if c == -1 else "%s*%s" % (fmt(c), b)))
        return " + ".join(parts).replace("+ -", "- ") or "0"

    def is_lie(self) -> bool:
        return jacobian_witness(self) is None


def _upper_terms(t, strict):
    n = len(t)
    out = {}
    for i in range(n):
        for j in range(i + 1 if strict else i, n):
            terms = {k: t[i][j][k] for k in range(n) if t[i][j][k]}
            if terms:
                out[(i, j)] = terms
    return out


def _sparse(t):
    n = len(t)
    out = {}
    for i in range(n):
        for j in range(n):
            terms = tuple((k, t[i][j][k]) for k in range(n) if t[i][j][k])
            if terms:
                out[(i, j)] = terms
    return out


def _int_tensor(t):
    n = len(t)
    scale_ = 1
    for plane in t:
        for row in plane:
            for x in row:
                scale_ = lcm(scale_, x.denominator)
    big = max((abs(x * scale_) for plane in t for row in plane for x in row), default=0)
    # four nested contractions at most; fall back to Python ints on overflow risk
    dtype = np.int64 if (max(n, 1) * max(big, 1)) ** 4 * 64 < 2 ** 62 else object
    arr = np.zeros((n, n, n), dtype=dtype)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if t[i][j][k]:
                    arr[i, j, k] = int(t[i][j][k] * scale_)
    return arr


def _product(table, n, u, v):
    if len(u) != n or len(v) != n:
        raise ValueError("vectors must have length %d" % n)
    out = [Fraction(0)] * n
    for i, ui in enumerate(u):
        if not ui:
            continue
        for j, vj in enumerate(v):
            if not vj:
                continue
            terms = table.get((i, j))
            if terms:
                w = ui * vj
                for k, c in terms:
                    out[k] += w * c
    return tuple(out)


def bracket(a: AlgebraSpec, u: Sequence, v: Sequence) -> Vec:
    return _product(a._sparse_bracket, a.dim, u, v)


def jordan_prod(a: AlgebraSpec, u: Sequence, v: Sequence) -> Vec:
    return _product(a._sparse_jordan, a.dim, u, v)


def jacobian(a: AlgebraSpec, x, y, z) -> Vec:
    """J(x,y,z) = [[x,y],z] - [[x,z],y] - [x,[y,z]]."""
    br = lambda p, q: bracket(a, p, q)
    return sub(sub(br(br(x, y), z), br(br(x, z), y)), br(x, br(y, z)))


def malcev_defect(a: AlgebraSpec, x, y, z) -> Vec:
    """[J(x,y,z),x] - J(x,y,[x,z]); zero for all x,y,z iff a is Malcev."""
    return sub(bracket(a, jacobian(a, x, y, z), x), jacobian(a, x, y, bracket(a, x, z)))


def malcev_linear_defect(a: AlgebraSpec, x1, x2, y, z) -> Vec:
    """Full linearization of :func:`malcev_defect` in its doubled argument."""
    j = lambda p, q, r: jacobian(a, p, q, r)
    terms = add(bracket(a, j(x1, y, z), x2), bracket(a, j(x2, y, z), x1))
    return sub(sub(terms, j(x1, y, bracket(a, x2, z))), j(x2, y, bracket(a, x1, z)))


def jordan_defect(a: AlgebraSpec, x, y) -> Vec:
    """(x^2 y) x - x^2 (y x)."""
    m = lambda p, q: jordan_prod(a, p, q)
    x2 = m(x, x)
    return sub(m(m(x2, y), x), m(x2, m(y, x)))


def jordan_linear_defect(a: AlgebraSpec, x1, x2, x3, y) -> Vec:
    m = lambda p, q: jordan_prod(a, p, q)
    out = zero_vec(a.dim)
    for p, q, r in ((x1, x2, x3), (x1, x3, x2), (x2, x3, x1)):
        pq = m(p, q)
        out = add(out, sub(m(m(pq, y), r), m(pq, m(y, r))))
    return out


def leibniz_defect(a: AlgebraSpec, x, y, z) -> Vec:
    """[x, yz] - [x,y] z - y [x,z]."""
    lhs = bracket(a, x, jordan_prod(a, y, z))
    rhs = add(jordan_prod(a, bracket(a, x, y), z), jordan_prod(a, y, bracket(a, x, z)))
    return sub(lhs, rhs)


# -- identity tensors ---------------------------------------------------------


def _jacobian_tensor(C):
    t1 = np.einsum("abk,kcm->abcm", C, C)
    t3 = np.einsum("bck,akm->abcm", C, C)
    return t1 - t1.transpose(0, 2, 1, 3) - t3


def _first_nonzero(arr):
    nz = np.argwhere(arr != 0)
    if len(nz) == 0:
        return None
    return tuple(int(i) for i in nz[0][:-1])


def _malcev_scan(C):
    """First basis tuple (x1, x2, y, z) where the linearized Malcev identity fails."""
    n = C.shape[0]
    if n == 0 or not C.any():
        return None, 0
    J = _jacobian_tensor(C)
    first, count = None, 0
    for x1 in range(n):
        a = np.einsum("yzk,kbm->byzm", J[x1], C)
        b = np.einsum("byzk,km->byzm", J, C[:, x1, :])
        c = np.einsum("bzk,ykm->byzm", C, J[x1])
        d = np.einsum("zk,bykm->byzm", C[x1], J)
        defect = a + b - c - d
        bad = np.any(defect != 0, axis=-1)
        count += int(bad.sum())
        if first is None and count:
            idx = _first_nonzero(defect)
            first = (x1,) + idx
    return first, count


def _jordan_scan(D):
    n = D.shape[0]
    if n == 0 or not D.any():
        return None, 0
    # G[p,q,y,r] = ((pq)y)r - (pq)(yr)
    pqy = np.einsum("pqk,kyl->pqyl", D, D)
    g1 = np.einsum("pqyl,lrm->pqyrm", pqy, D)
    g2 = np.einsum("pqk,yrl,klm->pqyrm", D, D, D, optimize=True)
    G = g1 - g2
    # F[x1,x2,x3,y] = G[x1,x2,y,x3] + G[x1,x3,y,x2] + G[x2,x3,y,x1]
    F = G.transpose(0, 1, 3, 2, 4) + G.transpose(0, 3, 1, 2, 4) + G.transpose(3, 0, 1, 2, 4)
    bad = np.any(F != 0, axis=-1)
    return _first_nonzero(F), int(bad.sum())


def _leibniz_scan(C, D):
    n = C.shape[0]
    if n == 0 or not D.any() or not C.any():
        return None, 0
    L = (
        np.einsum("yzk,xkm->xyzm", D, C)
        - np.einsum("xyk,kzm->xyzm", C, D)
        - np.einsum("xzk,ykm->xyzm", C, D)
    )
    bad = np.any(L != 0, axis=-1)
    return _first_nonzero(L), int(bad.sum())


def jacobian_witness(a: AlgebraSpec):
    """First basis triple with nonzero Jacobian, or None when a is Lie."""
    C, _ = a.int_tensors
    if a.dim == 0:
        return None
    return _first_nonzero(_jacobian_tensor(C))


@dataclass(frozen=True)
class AxiomReport:
    anticommutative: Verdict
    malcev_identity: Verdict
    jordan_commutative: Verdict
    jordan_identity: Verdict
    leibniz: Verdict
    smoke: Verdict
    jacobian_witness: tuple | None  # non-Lie certificate

    @property
    def passed(self) -> bool:
        return all(
            v.passed
            for v in (self.anticommutative, self.malcev_identity, self.jordan_commutative,
                      self.jordan_identity, self.leibniz, self.smoke)
        )

    def items(self):
        return [
            ("anticommutative", self.anticommutative),
            ("malcev_identity", self.malcev_identity),
            ("jordan_commutative", self.jordan_commutative),
            ("jordan_identity", self.jordan_identity),
            ("leibniz", self.leibniz),
            ("smoke", self.smoke),
        ]


def _witness(a, idx, defect):
    return {
        "indices": list(idx),
        "labels": [a.basis_names[i] for i in idx],
        "defect": [fmt(x) for x in defect],
    }


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-5, 5), rng.randint(1, 4))


def random_vector(rng: random.Random, n: int) -> Vec:
    return tuple(random_rational(rng) for _ in range(n))


def verify_axioms(a: AlgebraSpec, seed: int = DEFAULT_SEED, samples: int = SMOKE_SAMPLES) -> AxiomReport:
    """Check every MPJ axiom on basis tuples, plus a random smoke test.

    The Malcev and Jordan identities are checked through their full
    linearizations, which over a field of characteristic 0 is equivalent to
    the identities themselves.  Failure witnesses are re-evaluated on exact
    vectors so the reported defect never depends on the tensor route.
    """
    n = a.dim
    e = a.basis_vector

    anti = next(((i, j, k) for i in range(n) for j in range(n) for k in range(n)
                 if a.bracket[i][j][k] != -a.bracket[j][i][k]), None)
    anti_v = Verdict.ok() if anti is None else Verdict.fail({"indices": list(anti)})
    sym = next(((i, j, k) for i in range(n) for j in range(n) for k in range(n)
                if a.jordan[i][j][k] != a.jordan[j][i][k]), None)
    sym_v = Verdict.ok() if sym is None else Verdict.fail({"indices": list(sym)})

    C, D = a.int_tensors
    first, count = _malcev_scan(C)
    if first is None:
        malcev_v = Verdict.ok()
    else:
        defect = malcev_linear_defect(a, *(e(i) for i in first))
        assert not is_zero(defect)
        malcev_v = Verdict.fail(_witness(a, first, defect), "%d failing tuples" % count)

    first, count = _jordan_scan(D)
    if first is None:
        jordan_v = Verdict.ok()
    else:
        defect = jordan_linear_defect(a, *(e(i) for i in first))
        assert not is_zero(defect)
        jordan_v = Verdict.fail(_witness(a, first, defect), "%d failing tuples" % count)

    first, count = _leibniz_scan(C, D)
    if first is None:
        leibniz_v = Verdict.ok()
    else:
        defect = leibniz_defect(a, *(e(i) for i in first))
        assert not is_zero(defect)
        leibniz_v = Verdict.fail(_witness(a, first, defect), "%d failing triples" % count)

    rng = random.Random(seed)
    smoke_v = Verdict.ok("%d random samples, seed %d" % (samples, seed))
    for s in range(samples):
        x, y, z = (random_vector(rng, n) for _ in range(3))
        for label, d in (("malcev", malcev_defect(a, x, y, z)), ("jordan", jordan_defect(a, x, y))):
            if not is_zero(d):
                smoke_v = Verdict.fail(
                    {"identity": label, "sample": s,
                     "x": [fmt(c) for c in x], "y": [fmt(c) for c in y], "z": [fmt(c) for c in z],
                     "defect": [fmt(c) for c in d]},
                    "seed %d" % seed,
                )
                break
        if not smoke_v:
            break

    return AxiomReport(anti_v, malcev_v, sym_v, jordan_v, leibniz_v, smoke_v, jacobian_witness(a))


# -- subspaces ---------------------------------------------------------------


def bracket_span(a: AlgebraSpec, s: Subspace, t: Subspace) -> Subspace:
    """[S, T]: span of brackets of basis vectors."""
    return rref([bracket(a, u, v) for u in s.basis for v in t.basis], a.dim)


def jordan_span(a: AlgebraSpec, s: Subspace, t: Subspace) -> Subspace:
    return rref([jordan_prod(a, u, v) for u in s.basis for v in t.basis], a.dim)


def center(a: AlgebraSpec) -> Subspace:
    """Z = {v : [v, P] = vP = 0}."""
    n = a.dim
    rows = []
    for table in (a.bracket, a.jordan):
        for j in range(n):
            for m in range(n):
                row = tuple(table[i][j][m] for i in range(n))
                if any(row):
                    rows.append(row)
    return kernel(rows, n)


def ideal_closure(a: AlgebraSpec, s: Subspace) -> Subspace:
    """Smallest two-sided ideal (for both products) containing ``s``."""
    n = a.dim
    if s.ambient_dim != n:
        raise ValueError("subspace lives in dimension %d, algebra in %d" % (s.ambient_dim, n))
    basis = [a.basis_vector(j) for j in range(n)]
    current = s
    frontier = list(s.basis)
    for _ in range(n + 1):
        if not frontier:
            break
        new = []
        for v in frontier:
            for b in basis:
                # [b, v] = -[v, b]; bv = vb
                new.append(bracket(a, v, b))
                new.append(jordan_prod(a, v, b))
        grown = rref(list(current.basis) + new, n)
        frontier = [w for w in new if not current.contains(w)] if grown.dim > current.dim else []
        current = grown
    return current


def is_ideal(a: AlgebraSpec, s: Subspace):
    """None when s is an ideal, else (i, j, product) with s.basis[i] * e_j escaping."""
    for i, v in enumerate(s.basis):
        for j in range(a.dim):
            b = a.basis_vector(j)
            for prod in (bracket(a, v, b), jordan_prod(a, v, b)):
                if not s.contains(prod):
                    return (i, j, prod)
    return None


def _unique_names(names_a, names_b):
    taken = set(names_a)
    out = []
    for nm in names_b:
        cand, k = nm, 2
        while cand in taken:
            cand = "%s_%d" % (nm, k)
            k += 1
        taken.add(cand)
        out.append(cand)
    return out


def direct_sum(*algebras: AlgebraSpec) -> AlgebraSpec:
    """Block-diagonal algebra; all cross products vanish."""
    names: list = []
    offsets = []
    for alg in algebras:
        offsets.append(len(names))
        names.extend(_unique_names(names, alg.basis_names))
    n = len(names)
    c = _dense_zero(n)
    d = _dense_zero(n)
    for off, alg in zip(offsets, algebras):
        m = alg.dim
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    c[off + i][off + j][off + k] = alg.bracket[i][j][k]
                    d[off + i][off + j][off + k] = alg.jordan[i][j][k]
    label = "+".join(alg.name or "?" for alg in algebras)
    return AlgebraSpec(tuple(names), c, d, label)


def subalgebra_on_subspace(a: AlgebraSpec, s: Subspace) -> AlgebraSpec:
    """Restrict both products to ``s``, expressed in the RREF basis of ``s``.

    Basis vector ``k`` of the result is ``s.basis[k]``, named after its pivot
    column.  Raises NotClosed when a product of basis vectors leaves ``s``.
    """
    k = s.dim
    c = _dense_zero(k)
    d = _dense_zero(k)
    for p, u in enumerate(s.basis):
        for q, v in enumerate(s.basis):
            for out, prod, label in ((c, bracket(a, u, v), "bracket"), (d, jordan_prod(a, u, v), "jordan")):
                if not s.contains(prod):
                    raise NotClosed(
                        "%s of basis vectors %d, %d leaves the subspace" % (label, p, q),
                        witness={"product": label, "pair": [p, q], "value": [fmt(x) for x in prod]},
                    )
                out[p][q] = list(s.coordinates(prod))
    names = tuple(a.basis_names[piv] for piv in s.pivots)
    return AlgebraSpec(names, c, d, a.name)


def embed(s: Subspace, coords: Sequence) -> Vec:
    """Ambient vector of a coordinate vector of a subalgebra built on ``s``."""
    return s.from_coordinates(coords)


__all__ = [
    "AlgebraSpec", "AxiomReport", "MalformedAlgebra", "NotClosed", "bracket", "jordan_prod",
    "jacobian", "malcev_defect", "malcev_linear_defect", "jordan_defect", "jordan_linear_defect",
    "leibniz_defect", "verify_axioms", "center", "ideal_closure", "is_ideal", "direct_sum",
    "subalgebra_on_subspace", "bracket_span", "jordan_span", "jacobian_witness", "embed",
    "random_vector", "DEFAULT_SEED",
]
