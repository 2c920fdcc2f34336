from fractions import Fraction as F

import pytest
import sympy

from splitmpj.algebra import AlgebraSpec, bracket
from splitmpj.exactlin import Subspace, unit_vec
from splitmpj.families import abelian, direct_sum_with_masa, lie_sl2
from splitmpj.split import (
    NotAbelian,
    NotMASA,
    NotSplit,
    ad_matrix,
    root_decomposition,
    verify_rootspace_products,
    verify_split,
)


def test_sl2_roots(sl2):
    rd = root_decomposition(*sl2)
    assert rd.roots == ((F(-2),), (F(2),))
    assert rd.root_dims() == {(F(-2),): 1, (F(2),): 1}
    assert rd.zero_space == rd.H
    assert verify_split(rd).passed and verify_split(rd).symmetric


def test_abelian_has_no_roots():
    rd = root_decomposition(*abelian(3))
    assert rd.roots == () and rd.H == Subspace.full(3)
    assert verify_split(rd).symmetric


def test_m7_roots_match_sympy_eigen_oracle(m7):
    a, h = m7
    rd = root_decomposition(a, h)
    ad = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row]
                       for row in ad_matrix(a, h.basis[0])])
    oracle = {F(int(ev)): mult for ev, mult in ad.eigenvals().items()}
    assert oracle == {F(0): 1, F(2): 3, F(-2): 3}
    assert {r[0]: d for r, d in rd.root_dims().items()} == {F(2): 3, F(-2): 3}
    assert ad.is_diagonalizable()
    assert rd.zero_space == h


def test_solvable_is_not_symmetric(solv):
    rd = root_decomposition(*solv)
    assert rd.roots == ((F(1),),)
    rep = verify_split(rd)
    assert rep.passed and not rep.symmetric


def test_split_errors(sl2):
    a, _ = sl2
    with pytest.raises(NotAbelian):
        root_decomposition(a, Subspace.span([unit_vec(3, 0), unit_vec(3, 1)], 3))
    with pytest.raises(NotSplit):
        root_decomposition(a, Subspace.span([(0, 1, -1)], 3))
    with pytest.raises(NotMASA):
        root_decomposition(*direct_sum_with_masa(lie_sl2(), (abelian(1)[0], Subspace.zero(1))))
    # e is ad-nilpotent: one eigenvalue 0 with a 2-dim eigenspace in a 3-dim algebra
    with pytest.raises(NotSplit):
        root_decomposition(a, Subspace.span([unit_vec(3, 1)], 3))


def test_refinement_order_independent(sl2x2):
    a, h = sl2x2
    rd = root_decomposition(a, h)
    swapped = Subspace.span([h.basis[1], h.basis[0]], a.dim)
    assert swapped == h  # canonical basis: the order of input vectors is irrelevant
    rd2 = root_decomposition(a, Subspace.span([(1, 0, 0, 1, 0, 0), (0, 0, 0, 1, 0, 0)], 6))
    assert {s for s in rd.spaces.values()} == {s for s in rd2.spaces.values()}


def test_rootspace_products(sl2, m7):
    rd = root_decomposition(*sl2)
    assert verify_rootspace_products(rd).passed
    a, h = m7
    rd = root_decomposition(a, h)
    assert verify_rootspace_products(rd).passed
    al = (F(2),)
    pa = rd.space(al)
    prods = [bracket(a, u, v) for u in pa.basis for v in pa.basis]
    assert any(any(p) for p in prods)
    assert all(rd.space((F(-2),)).contains(p) for p in prods)


def test_rootspace_product_violation_reported():
    # [h,x]=x, [h,y]=y, [x,y]=x breaks the grading (x,y in P_1, product lands in P_1 not P_2+P_-1)
    a = AlgebraSpec.from_terms(("h", "x", "y"), {(0, 1): {1: 1}, (0, 2): {2: 1}, (1, 2): {1: 1}}, {})
    rd = root_decomposition(a, Subspace.span([unit_vec(3, 0)], 3))
    rep = verify_rootspace_products(rd)
    assert not rep.passed and rep.verdict.witness["product"] == "bracket"
