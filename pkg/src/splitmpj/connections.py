"""Connections of roots.

The partial operation ``star`` combines a value from ±Λ ∪ Θ_Ω with a root
from ±Λ.  Two roots are connected when a chain of star steps, staying inside
±Λ ∪ Θ_Ω, leads from one to plus or minus the other.  Connection classes are
computed as reachability closures rather than by enumerating chains.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .algebra import bracket_span, jordan_span
from .split import Root, RootDecomposition, neg, radd, root_str


class StarDomainError(ValueError):
    pass


class EquivalenceViolation(RuntimeError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


@dataclass(frozen=True)
class RootValue:
    root: Root
    in_pm: bool = field(default=False, compare=False)

    def __str__(self):
        return root_str(self.root)


@dataclass(frozen=True)
class Theta:
    root: Root

    def __str__(self):
        return "theta" + root_str(self.root)


class _Zero:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Zero"

    __str__ = __repr__


Zero = _Zero()

THETA_CONDITIONS = ("[[Pa,P-a],Pb]", "(PaP-a)Pb", "[PaP-a,Pb]", "[Pa,P-a]Pb")


class ConnectionContext:
    """Ω, the star table and the connection classes of one decomposition."""

    def __init__(self, rd: RootDecomposition):
        self.rd = rd
        self.algebra = rd.algebra
        self.star_cache: dict = {}
        self._pm = frozenset(rd.pm_roots)
        self.omega = compute_omega(rd)

    def in_pm(self, r: Root) -> bool:
        return r in self._pm

    @cached_property
    def pairing_brackets(self) -> dict:
        """[P_a, P_-a] for every root a (zero when -a is not a root)."""
        a, rd = self.algebra, self.rd
        return {r: bracket_span(a, rd.space(r), rd.space(neg(r))) for r in rd.pm_roots}

    @cached_property
    def pairing_jordans(self) -> dict:
        a, rd = self.algebra, self.rd
        return {r: jordan_span(a, rd.space(r), rd.space(neg(r))) for r in rd.pm_roots}

    @cached_property
    def classes(self) -> list:
        return partition(self)

    def class_of(self, r: Root) -> frozenset:
        for c in self.classes:
            if r in c:
                return c
        raise KeyError(root_str(r))


def compute_omega(rd: RootDecomposition) -> frozenset:
    """Roots a with [P_a,P_-a] ≠ 0, or P_a P_-a ≠ 0, or [[P_b,P_-b],P_a] ≠ 0 for some b."""
    alg = rd.algebra
    pairs = {r: bracket_span(alg, rd.space(r), rd.space(neg(r))) for r in rd.roots}
    out = set()
    for r in rd.roots:
        if pairs[r] or jordan_span(alg, rd.space(r), rd.space(neg(r))):
            out.add(r)
            continue
        if any(bracket_span(alg, pairs[b], rd.space(r)) for b in rd.roots if pairs[b]):
            out.add(r)
    return frozenset(out)


def theta_conditions(ctx: ConnectionContext, alpha: Root, beta: Root) -> tuple:
    """Names of the nonvanishing products that make theta_alpha * beta = beta."""
    a, rd = ctx.algebra, ctx.rd
    pb = rd.space(beta)
    k = ctx.pairing_brackets[alpha]
    j = ctx.pairing_jordans[alpha]
    fired = []
    if bracket_span(a, k, pb):
        fired.append(THETA_CONDITIONS[0])
    if jordan_span(a, j, pb):
        fired.append(THETA_CONDITIONS[1])
    if bracket_span(a, j, pb):
        fired.append(THETA_CONDITIONS[2])
    if jordan_span(a, k, pb):
        fired.append(THETA_CONDITIONS[3])
    return tuple(fired)


def star(ctx: ConnectionContext, x, b: Root):
    """One star step; ``x`` is a RootValue in ±Λ or a Theta, ``b`` a root in ±Λ."""
    if not ctx.in_pm(b):
        raise StarDomainError("second argument %s is not in ±Λ" % root_str(b))
    if isinstance(x, RootValue):
        if not ctx.in_pm(x.root):
            raise StarDomainError("first argument %s is not in ±Λ" % x)
    elif isinstance(x, Theta):
        if x.root not in ctx.omega:
            raise StarDomainError("theta of %s: root not in Ω" % root_str(x.root))
    else:
        raise StarDomainError("star is undefined on %r" % (x,))
    key = (x, b)
    if key in ctx.star_cache:
        return ctx.star_cache[key]
    if isinstance(x, RootValue):
        if b == neg(x.root):
            out = Theta(x.root) if x.root in ctx.omega else Zero
        else:
            s = radd(x.root, b)
            out = RootValue(s, ctx.in_pm(s))
    else:
        out = RootValue(b, True) if theta_conditions(ctx, x.root, b) else Zero
    ctx.star_cache[key] = out
    return out


def _expandable(ctx, v) -> bool:
    if isinstance(v, RootValue):
        return ctx.in_pm(v.root)
    return isinstance(v, Theta)


def reachable(ctx: ConnectionContext, alpha: Root) -> set:
    """All prefix values reachable from alpha inside ±Λ ∪ Θ_Ω."""
    start = RootValue(alpha, True)
    seen = {start}
    queue = deque([start])
    pm = ctx.rd.pm_roots
    while queue:
        v = queue.popleft()
        for g in pm:
            w = star(ctx, v, g)
            if w not in seen and _expandable(ctx, w):
                seen.add(w)
                queue.append(w)
    return seen


def connection_class(ctx: ConnectionContext, alpha: Root) -> frozenset:
    if not ctx.rd.is_root(alpha) or not any(alpha):
        raise ValueError("%s is not a nonzero root" % root_str(alpha))
    got = {v.root for v in reachable(ctx, alpha) if isinstance(v, RootValue)}
    return frozenset(b for b in ctx.rd.roots if b in got or neg(b) in got)


def partition(ctx: ConnectionContext) -> list:
    """Connection classes sorted by least member, with the equivalence machine-checked."""
    roots = ctx.rd.roots
    cls = {r: connection_class(ctx, r) for r in roots}
    for r in roots:
        if r not in cls[r]:
            raise EquivalenceViolation("not reflexive at %s" % root_str(r), [root_str(r)])
        for s in roots:
            if (s in cls[r]) != (cls[s] == cls[r]):
                raise EquivalenceViolation(
                    "classes of %s and %s are inconsistent" % (root_str(r), root_str(s)),
                    [root_str(r), root_str(s)],
                )
    unique = {c for c in cls.values()}
    return sorted(unique, key=lambda c: min(c))


def star_edges(ctx: ConnectionContext) -> list:
    """Adjacency dump (source, step root, result) over every expandable value."""
    edges = []
    values = [RootValue(r, True) for r in ctx.rd.pm_roots] + [Theta(r) for r in sorted(ctx.omega)]
    for v in values:
        for g in ctx.rd.pm_roots:
            w = star(ctx, v, g)
            if _expandable(ctx, w):
                edges.append((str(v), root_str(g), str(w)))
    return edges
