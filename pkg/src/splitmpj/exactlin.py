"""Exact rational linear algebra.

Vectors are tuples of :class:`fractions.Fraction`, matrices are sequences of
such rows.  A :class:`Subspace` always stores the reduced row echelon basis of
its row space, so two subspaces are equal exactly when their bases are.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Vec = tuple  # tuple[Fraction, ...]


def frac(x) -> Fraction:
    """Parse ``x`` ("p/q", "p", int or Fraction) into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass 'p/q' strings")
    return Fraction(x)


def fmt(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def vec(xs: Iterable) -> Vec:
    return tuple(frac(x) for x in xs)


def zero_vec(n: int) -> Vec:
    return (Fraction(0),) * n


def unit_vec(n: int, i: int) -> Vec:
    return tuple(Fraction(int(k == i)) for k in range(n))


def is_zero(v: Sequence) -> bool:
    return not any(v)


def add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Vec) -> Vec:
    return tuple(c * a for a in v)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


def mat_vec(m: Sequence[Sequence], v: Sequence) -> Vec:
    return tuple(dot(row, v) for row in m)


def transpose(m: Sequence[Sequence], ncols: int | None = None) -> list:
    if not m:
        return [() for _ in range(ncols or 0)]
    return [tuple(col) for col in zip(*m)]


def identity(n: int) -> list:
    return [unit_vec(n, i) for i in range(n)]


class DimensionMismatch(ValueError):
    pass


class NotContained(ValueError):
    pass


def _echelon(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Gauss-Jordan elimination; returns (nonzero RREF rows, pivot columns)."""
    a = [list(map(frac, r)) for r in rows]
    for r in a:
        if len(r) != ncols:
            raise DimensionMismatch("row of length %d in a %d-column matrix" % (len(r), ncols))
    pivots = []
    top = 0
    for col in range(ncols):
        p = next((i for i in range(top, len(a)) if a[i][col]), None)
        if p is None:
            continue
        a[top], a[p] = a[p], a[top]
        piv = a[top][col]
        if piv != 1:
            a[top] = [x / piv for x in a[top]]
        prow = a[top]
        for i in range(len(a)):
            if i != top and a[i][col]:
                c = a[i][col]
                a[i] = [x - c * y for x, y in zip(a[i], prow)]
        pivots.append(col)
        top += 1
        if top == len(a):
            break
    return a[:top], pivots


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: tuple  # RREF rows, each a Vec

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        return rref(list(vectors), ambient_dim)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple(identity(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(row) if x) for row in self.basis]

    def __bool__(self):
        return bool(self.basis)

    def __len__(self):
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        return is_zero(self.reduce(v))

    def reduce(self, v: Sequence) -> Vec:
        """Residue of ``v`` after clearing every pivot column of the basis."""
        r = list(map(frac, v))
        for row, p in zip(self.basis, self.pivots):
            if r[p]:
                c = r[p]
                r = [x - c * y for x, y in zip(r, row)]
        return tuple(r)

    def coordinates(self, v: Sequence) -> Vec:
        """Coefficients of ``v`` in the RREF basis; raises if v is outside."""
        if not self.contains(v):
            raise NotContained("vector is not in the subspace")
        return tuple(frac(v[p]) for p in self.pivots)

    def from_coordinates(self, coords: Sequence) -> Vec:
        out = zero_vec(self.ambient_dim)
        for c, row in zip(coords, self.basis):
            if c:
                out = add(out, scale(c, row))
        return out

    def issubspace(self, other: "Subspace") -> bool:
        _check_same_ambient(self, other)
        return all(other.contains(v) for v in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        _check_same_ambient(self, other)
        return rref(list(self.basis) + list(other.basis), self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)


def _check_same_ambient(s: Subspace, t: Subspace):
    if s.ambient_dim != t.ambient_dim:
        raise DimensionMismatch("ambient dimensions %d and %d differ" % (s.ambient_dim, t.ambient_dim))


def sum_of(spaces: Iterable[Subspace], ambient_dim: int) -> Subspace:
    rows = []
    for s in spaces:
        rows.extend(s.basis)
    return rref(rows, ambient_dim)


def rref(m: Sequence[Sequence], ncols: int | None = None) -> Subspace:
    """Row space of ``m`` as a canonical Subspace.

    ``ncols`` is needed only when ``m`` has no rows.
    """
    if ncols is None:
        if not m:
            raise ValueError("ncols is required for an empty matrix")
        ncols = len(m[0])
    rows, _ = _echelon(m, ncols)
    return Subspace(ncols, tuple(tuple(r) for r in rows))


def rank(m: Sequence[Sequence], ncols: int | None = None) -> int:
    return rref(m, ncols).dim


def kernel(m: Sequence[Sequence], ncols: int | None = None) -> Subspace:
    """{v : m v = 0} as a canonical Subspace of K^ncols."""
    if ncols is None:
        if not m:
            raise ValueError("ncols is required for an empty matrix")
        ncols = len(m[0])
    rows, pivots = _echelon(m, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    gens = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        gens.append(v)
    return rref(gens, ncols)


def intersect(s: Subspace, t: Subspace) -> Subspace:
    """s ∩ t via the kernel of [S^T | -T^T]."""
    _check_same_ambient(s, t)
    n = s.ambient_dim
    if not s or not t:
        return Subspace.zero(n)
    k = s.dim
    # columns: coefficients a (for s basis) then b (for t basis); a.S - b.T = 0
    system = [
        tuple(s.basis[i][c] for i in range(k)) + tuple(-t.basis[j][c] for j in range(t.dim))
        for c in range(n)
    ]
    ker = kernel(system, k + t.dim)
    vecs = [s.from_coordinates(sol[:k]) for sol in ker.basis]
    return rref(vecs, n)


def complement(s: Subspace, within: Subspace) -> Subspace:
    """A complement of ``s`` inside ``within``.

    Deterministic: walk the RREF basis of ``within`` in order and keep every
    vector that grows the span of ``s`` plus the vectors already kept.
    """
    _check_same_ambient(s, within)
    if not s.issubspace(within):
        raise NotContained("s is not contained in within")
    n = s.ambient_dim
    kept = []
    current = s
    for v in within.basis:
        if not current.contains(v):
            kept.append(v)
            current = rref(list(current.basis) + [v], n)
    return rref(kept, n)


def solve_in(s: Subspace, vectors: Sequence[Sequence]) -> list[Vec]:
    return [s.coordinates(v) for v in vectors]


# -- characteristic polynomial and rational eigenvalues ----------------------


def integer_matrix(m: Sequence[Sequence]) -> tuple[list[list[int]], int]:
    """Scale ``m`` by the lcm of its denominators; returns (int matrix, scale)."""
    d = 1
    for row in m:
        for x in row:
            d = lcm(d, frac(x).denominator)
    return [[int(frac(x) * d) for x in row] for row in m], d


def charpoly(m: Sequence[Sequence]) -> list[int]:
    """Characteristic polynomial det(xI - m) of an integer matrix.

    Coefficients are returned highest degree first and are exact integers.
    Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
    """
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    coeffs = [Fraction(1)]
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # mk <- a @ mk + c_{k-1} I
        prev = coeffs[-1]
        am = [[sum((a[i][l] * mk[l][j] for l in range(n) if a[i][l] and mk[l][j]), Fraction(0))
               for j in range(n)] for i in range(n)]
        for i in range(n):
            am[i][i] += prev
        mk = am
        amk_trace = sum((a[i][l] * mk[l][i] for i in range(n) for l in range(n)), Fraction(0))
        coeffs.append(-amk_trace / k)
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise ArithmeticError("non-integral characteristic polynomial coefficient")
        out.append(int(c))
    return out


def _divisors(k: int) -> list[int]:
    k = abs(k)
    small = [d for d in range(1, int(k ** 0.5) + 1) if k % d == 0]
    return sorted(set(small + [k // d for d in small]))


def _poly_eval(coeffs: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def rational_roots(coeffs: Sequence[int]) -> list[Fraction]:
    """Distinct rational roots of an integer polynomial (highest degree first)."""
    coeffs = list(coeffs)
    roots = set()
    while len(coeffs) > 1 and coeffs[-1] == 0:
        roots.add(Fraction(0))
        coeffs.pop()
    if len(coeffs) <= 1:
        return sorted(roots)
    lead, const = coeffs[0], coeffs[-1]
    for p in _divisors(const):
        for q in _divisors(lead):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in roots and _poly_eval(coeffs, cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def rational_eigen(m: Sequence[Sequence]) -> list[tuple[Fraction, Subspace]]:
    """Rational eigenvalues of a square matrix with their eigenspaces, ascending.

    Eigenspaces are right eigenspaces: m v = λ v.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionMismatch("matrix is not square")
    if n == 0:
        return []
    im, d = integer_matrix(m)
    out = []
    for r in rational_roots(charpoly(im)):
        lam = r / d
        shifted = [[frac(m[i][j]) - (lam if i == j else 0) for j in range(n)] for i in range(n)]
        out.append((lam, kernel(shifted, n)))
    return out


def is_rationally_diagonalizable(m: Sequence[Sequence]) -> bool:
    return sum(s.dim for _, s in rational_eigen(m)) == len(m)
