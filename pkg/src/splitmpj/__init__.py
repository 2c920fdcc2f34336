"""Exact structure-constant toolkit for split Malcev-Poisson-Jordan algebras."""

from .algebra import AlgebraSpec, AxiomReport, direct_sum, ideal_closure, subalgebra_on_subspace, verify_axioms
from .connections import ConnectionContext, connection_class, partition, star
from .decomposition import (
    HypothesesUnmet,
    OraclePreconditionUnmet,
    decompose,
    oracle_is_simple,
    simple_components,
    simplicity_criterion,
)
from .exactlin import Subspace
from .families import generate
from .split import NotAbelian, NotMASA, NotSplit, root_decomposition, verify_rootspace_products, verify_split
from .verdict import Verdict

__version__ = "0.1.0"

__all__ = [
    "AlgebraSpec", "AxiomReport", "ConnectionContext", "HypothesesUnmet", "NotAbelian", "NotMASA",
    "NotSplit", "OraclePreconditionUnmet", "Subspace", "Verdict", "connection_class", "decompose",
    "direct_sum", "generate", "ideal_closure", "oracle_is_simple", "partition", "root_decomposition",
    "simple_components", "simplicity_criterion", "star", "subalgebra_on_subspace", "verify_axioms",
    "verify_rootspace_products", "verify_split",
]
