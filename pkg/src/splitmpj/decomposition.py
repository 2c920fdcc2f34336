"""Ideals attached to connection classes and the simplicity criterion.

For a class [a] the ideal is I = I_H + V where

    I_H = span{[P_b, P_-b] + P_b P_-b : b in [a]}  (inside H)
    V   = sum of P_b over b in [a]
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import (
    AlgebraSpec,
    bracket,
    bracket_span,
    center,
    ideal_closure,
    is_ideal,
    jordan_prod,
    jordan_span,
    subalgebra_on_subspace,
    verify_axioms,
)
from .connections import ConnectionContext, RootValue, Theta, star, theta_conditions
from .exactlin import Subspace, complement, intersect, is_zero, sum_of
from .split import (
    RootDecomposition,
    neg,
    radd,
    root_decomposition,
    root_str,
    verify_rootspace_products,
    verify_split,
)
from .verdict import Verdict

THEOREM_VERDICTS = ("ideal_property", "pairwise_annihilation", "spans_P", "direct_sum", "simple_components")


class HypothesesUnmet(ValueError):
    def __init__(self, failed):
        super().__init__("hypotheses unmet: " + ", ".join(failed))
        self.failed = list(failed)


class OraclePreconditionUnmet(HypothesesUnmet):
    pass


@dataclass(frozen=True)
class IdealData:
    class_roots: frozenset
    I_H: Subspace
    V: Subspace
    I: Subspace


def build_ideal(ctx: ConnectionContext, cls) -> IdealData:
    rd = ctx.rd
    n = ctx.algebra.dim
    ih = sum_of([ctx.pairing_brackets[b] + ctx.pairing_jordans[b] for b in cls], n)
    v = sum_of([rd.space(b) for b in cls], n)
    if not ih.issubspace(rd.H):
        raise RuntimeError("I_H is not inside H")
    if intersect(v, rd.H):
        raise RuntimeError("root spaces meet H")
    i = ih + v
    if i.dim != ih.dim + v.dim:
        raise RuntimeError("I_H + V is not direct")
    return IdealData(frozenset(cls), ih, v, i)


def build_ideals(ctx: ConnectionContext) -> list:
    return [build_ideal(ctx, c) for c in ctx.classes]


def verify_ideal_family(ctx: ConnectionContext, ideals) -> dict:
    """Each I is an ideal of P; distinct ideals annihilate each other under both products."""
    a = ctx.algebra
    ideal_v = Verdict.ok()
    for k, data in enumerate(ideals):
        esc = is_ideal(a, data.I)
        if esc is not None:
            i, j, prod = esc
            ideal_v = Verdict.fail({
                "class": k, "element": a.label(data.I.basis[i]), "times": a.basis_names[j],
                "product": a.label(prod),
            })
            break
    annih_v = Verdict.ok()
    for p in range(len(ideals)):
        for q in range(p + 1, len(ideals)):
            for u in ideals[p].I.basis:
                for v in ideals[q].I.basis:
                    for label, prod in (("bracket", bracket(a, u, v)), ("jordan", jordan_prod(a, u, v))):
                        if not is_zero(prod) and annih_v:
                            annih_v = Verdict.fail({
                                "classes": [p, q], "product": label, "u": a.label(u),
                                "v": a.label(v), "value": a.label(prod),
                            })
    return {"ideal_property": ideal_v, "pairwise_annihilation": annih_v}


def pairing_span(ctx: ConnectionContext) -> Subspace:
    """span{[P_a, P_-a] + P_a P_-a : a in Λ}."""
    return sum_of(
        [ctx.pairing_brackets[r] + ctx.pairing_jordans[r] for r in ctx.rd.roots], ctx.algebra.dim
    )


def complement_and_decompose(ctx: ConnectionContext, ideals) -> tuple:
    """(U, verdict that U + sum of the ideals is all of P)."""
    rd = ctx.rd
    n = ctx.algebra.dim
    u = complement(pairing_span(ctx), rd.H)
    total = sum_of([u] + [d.I for d in ideals], n)
    if total.dim == n:
        return u, Verdict.ok()
    missing = next(e for e in Subspace.full(n).basis if not total.contains(e))
    return u, Verdict.fail({"dim_of_sum": total.dim, "missing": ctx.algebra.label(missing)})


def h_generated(ctx: ConnectionContext) -> Verdict:
    span = pairing_span(ctx)
    if span == ctx.rd.H:
        return Verdict.ok()
    extra = next(v for v in ctx.rd.H.basis if not span.contains(v))
    return Verdict.fail({"outside_span": ctx.algebra.label(extra)})


def center_zero(a: AlgebraSpec) -> Verdict:
    z = center(a)
    return Verdict.ok() if not z else Verdict.fail({"center": [a.label(v) for v in z.basis]})


def check_direct(ctx: ConnectionContext, ideals) -> Verdict:
    """When Z(P) = 0 and H is generated, the ideals must form a direct sum equal to P."""
    n = ctx.algebra.dim
    cz, hg = center_zero(ctx.algebra), h_generated(ctx)
    if not (cz and hg):
        unmet = [nm for nm, v in (("center_zero", cz), ("H_generated", hg)) if not v]
        return Verdict.skipped("hypotheses unmet: " + ", ".join(unmet))
    dims = sum(d.I.dim for d in ideals)
    if dims != n:
        return Verdict.fail({"sum_of_dims": dims, "dim": n})
    for p in range(len(ideals)):
        others = sum_of([d.I for q, d in enumerate(ideals) if q != p], n)
        meet = intersect(ideals[p].I, others)
        if meet:
            return Verdict.fail({"class": p, "shared": ctx.algebra.label(meet.basis[0])})
    return Verdict.ok()


def is_maximal_length(rd: RootDecomposition) -> bool:
    return all(s.dim == 1 for s in rd.spaces.values())


def maximal_length_verdict(rd: RootDecomposition) -> Verdict:
    for r in rd.roots:
        if rd.spaces[r].dim != 1:
            return Verdict.fail({"root": root_str(r), "dim": rd.spaces[r].dim})
    return Verdict.ok()


def is_root_multiplicative(ctx: ConnectionContext) -> tuple:
    """(flag, witness); witness names the first offending pair."""
    a, rd = ctx.algebra, ctx.rd
    for al in rd.roots:
        for be in rd.roots:
            pa, pb = rd.space(al), rd.space(be)
            if be != neg(al) and rd.is_root(radd(al, be)):
                if not (bracket_span(a, pa, pb) and jordan_span(a, pa, pb)):
                    return False, {
                        "alpha": root_str(al), "beta": root_str(be), "rule": "sum",
                        "bracket_zero": not bracket_span(a, pa, pb),
                        "jordan_zero": not jordan_span(a, pa, pb),
                    }
            if al in ctx.omega and star(ctx, Theta(al), be) == RootValue(be):
                if not bracket_span(a, ctx.pairing_brackets[al], pb):
                    return False, {
                        "alpha": root_str(al), "beta": root_str(be), "rule": "theta",
                        "fired": list(theta_conditions(ctx, al, be)),
                    }
    return True, None


@dataclass(frozen=True)
class SimplicityVerdict:
    simple: bool  # lattice reading: only ideals 0 and P, and [P,P] != 0
    strict: bool  # additionally PP != 0
    classes: int
    h_generated: bool
    failing: tuple = ()


def criterion_hypotheses(ctx: ConnectionContext) -> list:
    failed = []
    if not is_root_multiplicative(ctx)[0]:
        failed.append("root_multiplicative")
    if not is_maximal_length(ctx.rd):
        failed.append("maximal_length")
    if not ctx.rd.symmetric:
        failed.append("symmetric")
    return failed


def _pp_nonzero(a: AlgebraSpec) -> tuple:
    full = Subspace.full(a.dim)
    return bool(bracket_span(a, full, full)), bool(jordan_span(a, full, full))


def simplicity_criterion(ctx: ConnectionContext) -> SimplicityVerdict:
    """Simple iff all roots are connected and H is spanned by the pairings.

    Applies to root-multiplicative algebras of maximal length with a
    symmetric root system; raises HypothesesUnmet otherwise.
    """
    failed = criterion_hypotheses(ctx)
    if failed:
        raise HypothesesUnmet(failed)
    k = len(ctx.classes)
    hg = bool(h_generated(ctx))
    failing = []
    if k != 1:
        failing.append("connected" if k > 1 else "no_roots")
    if not hg:
        failing.append("H_generated")
    simple = not failing
    _, jordan_nz = _pp_nonzero(ctx.algebra)
    return SimplicityVerdict(simple, simple and jordan_nz, k, hg, tuple(failing))


def oracle_is_simple(a: AlgebraSpec, rd: RootDecomposition) -> bool:
    """Brute-force simplicity (lattice reading) by ideal closures of root spaces.

    Sound and complete when every root space is a line, Z(P) = 0 and Λ is
    symmetric.  A nonzero ideal I is ad(H)-stable, hence the sum of I ∩ H
    and the I ∩ P_a.  If I ⊆ H then [I, P_a] and I P_a lie in P_a ∩ H = 0,
    so I is central and therefore zero.  Otherwise some I ∩ P_a ≠ 0, which
    is all of P_a because dim P_a = 1, and I contains the closure of P_a.
    So P is simple iff [P,P] ≠ 0 and every such closure is P.
    """
    failed = []
    if not is_maximal_length(rd):
        failed.append("maximal_length")
    if center(a):
        failed.append("center_zero")
    if not rd.symmetric:
        failed.append("symmetric")
    if failed:
        raise OraclePreconditionUnmet(failed)
    bracket_nz, _ = _pp_nonzero(a)
    if not bracket_nz or not rd.roots:
        return False
    full = Subspace.full(a.dim)
    return all(ideal_closure(a, rd.spaces[r]) == full for r in rd.roots)


def root_space_splitting(rd: RootDecomposition, ideal: Subspace) -> tuple:
    """(dim I, dim(I ∩ H) + sum of dim(I ∩ P_a)); equal for every ideal."""
    pieces = intersect(ideal, rd.H).dim + sum(intersect(ideal, s).dim for s in rd.spaces.values())
    return ideal.dim, pieces


@dataclass(frozen=True)
class ComponentReport:
    class_roots: tuple
    algebra: AlgebraSpec
    masa: Subspace
    axioms_pass: bool
    split_pass: bool
    products_pass: bool
    root_system_match: bool
    criterion: SimplicityVerdict
    oracle: bool

    @property
    def certified(self) -> bool:
        return (self.axioms_pass and self.split_pass and self.products_pass and self.root_system_match
                and self.criterion.simple and self.oracle)


@dataclass
class DecompositionReport:
    rd: RootDecomposition
    omega: frozenset
    classes: list
    ideals: list
    U: Subspace
    verdicts: dict
    components: list = field(default_factory=list)
    oracle_results: dict | None = None

    def theorem_failures(self) -> list:
        return [k for k in THEOREM_VERDICTS if k in self.verdicts and self.verdicts[k].passed is False]


def decompose(ctx: ConnectionContext) -> DecompositionReport:
    """Run every structural check that applies to the given algebra."""
    a, rd = ctx.algebra, ctx.rd
    ideals = build_ideals(ctx)
    verdicts = dict(verify_ideal_family(ctx, ideals))
    u, spans = complement_and_decompose(ctx, ideals)
    verdicts["spans_P"] = spans
    verdicts["direct_sum"] = check_direct(ctx, ideals)
    verdicts["center_zero"] = center_zero(a)
    verdicts["H_generated"] = h_generated(ctx)
    verdicts["maximal_length"] = maximal_length_verdict(rd)
    rm, witness = is_root_multiplicative(ctx)
    verdicts["root_multiplicative"] = Verdict.ok() if rm else Verdict.fail(witness)
    report = DecompositionReport(rd, ctx.omega, list(ctx.classes), ideals, u, verdicts)
    try:
        components = simple_components(ctx, ideals)
    except HypothesesUnmet as exc:
        verdicts["simple_components"] = Verdict.skipped("hypotheses unmet: " + ", ".join(exc.failed))
    else:
        report.components = components
        bad = [k for k, c in enumerate(components) if not c.certified]
        verdicts["simple_components"] = Verdict.ok() if not bad else Verdict.fail({"components": bad})
    return report


def _restricted_root(a, ideal: Subspace, masa_c: Subspace, rd: RootDecomposition, beta):
    """Values of beta on the component MASA basis, mapped back into P."""
    v = rd.spaces[beta].basis[0]
    p = next(i for i, x in enumerate(v) if x)
    vals = []
    for coords in masa_c.basis:
        h = ideal.from_coordinates(coords)
        vals.append(bracket(a, h, v)[p] / v[p])
    return tuple(vals)


def simple_components(ctx: ConnectionContext, ideals=None) -> list:
    """Extract each class ideal as an algebra and certify it simple two ways."""
    a, rd = ctx.algebra, ctx.rd
    failed = []
    if not is_root_multiplicative(ctx)[0]:
        failed.append("root_multiplicative")
    if not is_maximal_length(rd):
        failed.append("maximal_length")
    if center(a):
        failed.append("center_zero")
    if not h_generated(ctx):
        failed.append("H_generated")
    if not rd.symmetric:
        failed.append("symmetric")
    if failed:
        raise HypothesesUnmet(failed)
    if ideals is None:
        ideals = build_ideals(ctx)
    out = []
    for data in ideals:
        comp = subalgebra_on_subspace(a, data.I)
        masa_c = Subspace.span([data.I.coordinates(v) for v in data.I_H.basis], comp.dim)
        axioms = verify_axioms(comp).passed
        rd_c = root_decomposition(comp, masa_c)
        split_ok = verify_split(rd_c).passed
        prod_ok = verify_rootspace_products(rd_c).passed
        restricted = {_restricted_root(a, data.I, masa_c, rd, b): rd.spaces[b].dim for b in data.class_roots}
        match = restricted == {r: s.dim for r, s in rd_c.spaces.items()}
        ctx_c = ConnectionContext(rd_c)
        try:
            crit = simplicity_criterion(ctx_c)
        except HypothesesUnmet as exc:
            crit = SimplicityVerdict(False, False, len(ctx_c.classes), False, tuple(exc.failed))
        oracle = oracle_is_simple(comp, rd_c)
        out.append(ComponentReport(
            tuple(sorted(data.class_roots)), comp, masa_c, axioms, split_ok, prod_ok, match, crit, oracle,
        ))
    return out


__all__ = [
    "IdealData", "DecompositionReport", "ComponentReport", "SimplicityVerdict", "HypothesesUnmet",
    "OraclePreconditionUnmet", "build_ideal", "build_ideals", "verify_ideal_family",
    "complement_and_decompose", "check_direct", "is_maximal_length", "is_root_multiplicative",
    "simplicity_criterion", "oracle_is_simple", "simple_components", "decompose",
    "root_space_splitting", "pairing_span", "h_generated", "center_zero", "THEOREM_VERDICTS",
]
