"""Root space decomposition with respect to a given abelian subalgebra H.

A root is stored as the tuple of its values on the RREF basis of H.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import AlgebraSpec, bracket, bracket_span, jordan_prod, jordan_span
from .exactlin import Subspace, fmt, intersect, is_zero, rational_eigen, scale, sum_of
from .verdict import Verdict

Root = tuple  # tuple[Fraction, ...]


class SplitError(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class NotAbelian(SplitError):
    pass


class NotSplit(SplitError):
    pass


class NotMASA(SplitError):
    pass


def neg(r: Root) -> Root:
    return tuple(-x for x in r)


def radd(r: Root, s: Root) -> Root:
    return tuple(x + y for x, y in zip(r, s))


def rscale(k, r: Root) -> Root:
    return tuple(k * x for x in r)


def root_str(r: Root) -> str:
    return "(" + ", ".join(fmt(x) for x in r) + ")"


def ad_matrix(a: AlgebraSpec, h: Sequence) -> list:
    """Matrix of v -> [h, v] acting on column vectors."""
    n = a.dim
    cols = [bracket(a, h, a.basis_vector(i)) for i in range(n)]
    return [tuple(cols[i][m] for i in range(n)) for m in range(n)]


@dataclass(frozen=True)
class RootDecomposition:
    algebra: AlgebraSpec
    H: Subspace
    roots: tuple  # sorted nonzero roots
    spaces: dict  # Root -> Subspace
    zero_space: Subspace

    @property
    def zero(self) -> Root:
        return tuple(Fraction(0) for _ in range(self.H.dim))

    @property
    def roots_with_zero(self) -> list:
        return sorted(self.roots + (self.zero,))

    @property
    def pm_roots(self) -> list:
        """±Λ, sorted."""
        return sorted(set(self.roots) | {neg(r) for r in self.roots})

    @property
    def symmetric(self) -> bool:
        return all(neg(r) in self.spaces for r in self.roots)

    def space(self, r: Root) -> Subspace:
        """P_r, with P_0 = H and the zero subspace for non-roots."""
        if r in self.spaces:
            return self.spaces[r]
        if not any(r):
            return self.zero_space
        return Subspace.zero(self.algebra.dim)

    def is_root(self, r: Root) -> bool:
        return r in self.spaces

    def root_dims(self) -> dict:
        return {r: s.dim for r, s in self.spaces.items()}


def check_abelian(a: AlgebraSpec, h: Subspace):
    """None when [H,H] = HH = 0, else a witness dict."""
    for i, u in enumerate(h.basis):
        for j, v in enumerate(h.basis):
            if j >= i:
                for label, prod in (("bracket", bracket(a, u, v)), ("jordan", jordan_prod(a, u, v))):
                    if not is_zero(prod):
                        return {"product": label, "pair": [i, j], "value": a.label(prod)}
    return None


def root_decomposition(a: AlgebraSpec, h: Subspace) -> RootDecomposition:
    """Joint eigenspace decomposition of P under ad(H).

    The whole space is refined by the eigenspaces of ad(h_1), ad(h_2), ...
    in turn; each final piece is labelled by its eigenvalue tuple.
    """
    n = a.dim
    if h.ambient_dim != n:
        raise ValueError("MASA lives in dimension %d, algebra in %d" % (h.ambient_dim, n))
    w = check_abelian(a, h)
    if w is not None:
        raise NotAbelian("H is not abelian", w)
    pieces = [((), Subspace.full(n))]
    for idx, hv in enumerate(h.basis):
        eig = rational_eigen(ad_matrix(a, hv))
        refined = []
        for label, piece in pieces:
            got = 0
            for lam, space in eig:
                part = intersect(piece, space)
                if part:
                    refined.append((label + (lam,), part))
                    got += part.dim
            if got != piece.dim:
                raise NotSplit(
                    "ad of H basis vector %d is not diagonalizable over the rationals" % idx,
                    {"h_index": idx, "h": a.label(hv), "piece_dim": piece.dim, "eigen_dim": got},
                )
        pieces = refined
    zero = tuple(Fraction(0) for _ in range(h.dim))
    spaces = {}
    zero_space = Subspace.zero(n)
    for label, piece in pieces:
        if label == zero:
            zero_space = piece
        else:
            spaces[label] = piece
    if zero_space != h:
        raise NotMASA(
            "the zero root space differs from H",
            {"dim_P0": zero_space.dim, "dim_H": h.dim,
             "extra": [a.label(v) for v in zero_space.basis if not h.contains(v)][:3]},
        )
    roots = tuple(sorted(spaces))
    return RootDecomposition(a, h, roots, {r: spaces[r] for r in roots}, zero_space)


@dataclass(frozen=True)
class SplitReport:
    direct: Verdict
    spans: Verdict
    h_is_p0: Verdict
    eigen: Verdict
    symmetric: bool

    @property
    def passed(self) -> bool:
        return bool(self.direct and self.spans and self.h_is_p0 and self.eigen)

    def items(self):
        return [("direct", self.direct), ("spans", self.spans), ("h_is_p0", self.h_is_p0),
                ("eigen", self.eigen)]


def verify_split(rd: RootDecomposition) -> SplitReport:
    """Independent re-check of a decomposition; symmetry is reported, not required."""
    a = rd.algebra
    n = a.dim
    parts = [rd.H] + [rd.spaces[r] for r in rd.roots]
    total = sum_of(parts, n)
    dims = sum(p.dim for p in parts)
    direct = Verdict.ok() if total.dim == dims else Verdict.fail(
        {"sum_of_dims": dims, "dim_of_sum": total.dim})
    spans = Verdict.ok() if total.dim == n else Verdict.fail({"dim_of_sum": total.dim, "dim": n})
    h_is_p0 = Verdict.ok() if rd.zero_space == rd.H else Verdict.fail(
        {"dim_P0": rd.zero_space.dim, "dim_H": rd.H.dim})
    bad = next(
        ((r, i, v) for r in [rd.zero] + list(rd.roots) for v in rd.space(r).basis
         for i, hv in enumerate(rd.H.basis) if bracket(a, hv, v) != scale(r[i], v)),
        None,
    )
    eigen = Verdict.ok() if bad is None else Verdict.fail(
        {"root": root_str(bad[0]), "h_index": bad[1], "vector": a.label(bad[2])})
    return SplitReport(direct, spans, h_is_p0, eigen, rd.symmetric)


@dataclass(frozen=True)
class Containment:
    alpha: Root
    beta: Root
    product: str
    target: str
    passed: bool


@dataclass(frozen=True)
class ProductReport:
    checked: tuple  # Containment records
    verdict: Verdict

    @property
    def passed(self) -> bool:
        return bool(self.verdict)


def verify_rootspace_products(rd: RootDecomposition) -> ProductReport:
    """Check where products of root spaces land.

    For roots a, b in Λ ∪ {0}: [P_a, P_b] ⊆ P_{a+b} when a ≠ b,
    [P_a, P_a] ⊆ P_{2a} + P_{-a}, and P_a P_b ⊆ P_{a+b} always.
    """
    a = rd.algebra
    checked = []
    verdict = Verdict.ok()
    roots = rd.roots_with_zero
    for al in roots:
        for be in roots:
            pa, pb = rd.space(al), rd.space(be)
            if al != be:
                target = rd.space(radd(al, be))
                tdesc = "P%s" % root_str(radd(al, be))
            else:
                target = rd.space(rscale(2, al)) + rd.space(neg(al))
                tdesc = "P%s + P%s" % (root_str(rscale(2, al)), root_str(neg(al)))
            for label, prod_space, tgt, desc in (
                ("bracket", bracket_span(a, pa, pb), target, tdesc),
                ("jordan", jordan_span(a, pa, pb), rd.space(radd(al, be)), "P%s" % root_str(radd(al, be))),
            ):
                ok = prod_space.issubspace(tgt)
                checked.append(Containment(al, be, label, desc, ok))
                if not ok and verdict:
                    escaping = next(v for v in prod_space.basis if not tgt.contains(v))
                    verdict = Verdict.fail({
                        "alpha": root_str(al), "beta": root_str(be), "product": label,
                        "target": desc, "escaping": a.label(escaping),
                    })
    return ProductReport(tuple(checked), verdict)
