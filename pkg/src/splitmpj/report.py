"""Plain-data views of pipeline results, shared by the JSON and text outputs.

Every function returns nested dicts and lists built in a fixed order, so the
serialized form is deterministic.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import AxiomReport
from .connections import ConnectionContext, star_edges, theta_conditions
from .decomposition import DecompositionReport
from .exactlin import Subspace, fmt
from .split import ProductReport, RootDecomposition, SplitReport, root_str
from .verdict import Verdict


def plain(x):
    """Recursively convert Fractions, tuples and sets into JSON-ready values."""
    if isinstance(x, Fraction):
        return fmt(x)
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return [plain(v) for v in sorted(x)]
    return x


def verdict_dict(v: Verdict) -> dict:
    out = {"pass": v.passed, "witness": plain(v.witness)}
    if v.note:
        out["note"] = v.note
    return out


def subspace_dict(a, s: Subspace) -> dict:
    return {"dim": s.dim, "basis": [a.label(v) for v in s.basis]}


def axioms_dict(a, rep: AxiomReport) -> dict:
    out = {name: verdict_dict(v) for name, v in rep.items()}
    w = rep.jacobian_witness
    out["lie"] = w is None
    out["non_lie_certificate"] = None if w is None else {
        "indices": list(w), "labels": [a.basis_names[i] for i in w],
    }
    return out


def split_dict(rd: RootDecomposition, sr: SplitReport, pr: ProductReport) -> dict:
    a = rd.algebra
    return {
        "H": subspace_dict(a, rd.H),
        "roots": [{"root": root_str(r), "dim": rd.spaces[r].dim,
                   "basis": [a.label(v) for v in rd.spaces[r].basis]} for r in rd.roots],
        "symmetric": rd.symmetric,
        "checks": {name: verdict_dict(v) for name, v in sr.items()},
        "rootspace_products": verdict_dict(pr.verdict),
    }


def _simplicity(sv) -> dict:
    return {"simple": sv.simple, "simple_strict": sv.strict, "classes": sv.classes,
            "H_generated": sv.h_generated, "failing": list(sv.failing)}


def decomposition_dict(ctx: ConnectionContext, rep: DecompositionReport) -> dict:
    a, rd = ctx.algebra, ctx.rd
    theta = []
    for al in sorted(ctx.omega):
        for be in rd.pm_roots:
            fired = theta_conditions(ctx, al, be)
            if fired:
                theta.append({"alpha": root_str(al), "beta": root_str(be), "fired": list(fired)})
    return {
        "omega": [root_str(r) for r in sorted(rep.omega)],
        "classes": [[root_str(r) for r in sorted(c)] for c in rep.classes],
        "ideals": [
            {"class": [root_str(r) for r in sorted(d.class_roots)],
             "I_H": subspace_dict(a, d.I_H), "V": subspace_dict(a, d.V), "dim": d.I.dim}
            for d in rep.ideals
        ],
        "U": subspace_dict(a, rep.U),
        "verdicts": {k: verdict_dict(v) for k, v in rep.verdicts.items()},
        "theta_fired": theta,
        "star_edges": [list(e) for e in star_edges(ctx)],
        "components": [
            {"class": [root_str(r) for r in c.class_roots], "dim": c.algebra.dim,
             "basis": list(c.algebra.basis_names), "axioms": c.axioms_pass, "split": c.split_pass,
             "rootspace_products": c.products_pass, "root_system_match": c.root_system_match,
             "criterion": _simplicity(c.criterion), "oracle": c.oracle, "certified": c.certified}
            for c in rep.components
        ],
    }


def simplicity_dict(sv, oracle=None, note="") -> dict:
    out = _simplicity(sv) if sv is not None else None
    return {"criterion": out, "oracle": oracle, "note": note}
