import itertools
import random
from fractions import Fraction as F

import pytest

from splitmpj.algebra import AlgebraSpec, center, verify_axioms
from splitmpj.exactlin import Subspace
from splitmpj.families import (
    UnknownFamily,
    generate,
    jordan_probe,
    leibniz_jordan_space,
    search_jordan_probe,
    smallest_jordan_mpj,
    zorn_mul,
)


def rand_zorn(rng):
    r = lambda: F(rng.randint(-3, 3), rng.randint(1, 2))
    return (r(), (r(), r(), r()), (r(), r(), r()), r())


def test_zorn_product_is_alternative():
    rng = random.Random(11)
    for _ in range(30):
        x, y = rand_zorn(rng), rand_zorn(rng)
        assert zorn_mul(zorn_mul(x, x), y) == zorn_mul(x, zorn_mul(x, y))
        assert zorn_mul(zorn_mul(y, x), x) == zorn_mul(y, zorn_mul(x, x))
    triples = [tuple(rand_zorn(rng) for _ in range(3)) for _ in range(5)]
    assert any(zorn_mul(zorn_mul(x, y), z) != zorn_mul(x, zorn_mul(y, z)) for x, y, z in triples)


def test_generate_known_families():
    a, h = generate("abelian", "2")
    assert center(a) == Subspace.full(2) and h == Subspace.full(2)
    a, h = generate("sum:lie_sl2,abelian:1")
    assert a.dim == 4 and h.dim == 2
    for fam in ("lie_sl2", "malcev_m7", "solvable2"):
        a, h = generate(fam)
        assert verify_axioms(a).passed


@pytest.mark.parametrize("args", [("nope",), ("abelian",), ("abelian", "x"), ("abelian", "-1")])
def test_generate_rejects(args):
    with pytest.raises(UnknownFamily):
        generate(*args)


def test_probe_search_finds_no_split_jordan_product():
    hits, tried = search_jordan_probe(3)
    assert hits == [] and tried > 0
    a, h = jordan_probe()
    assert (a, h) == smallest_jordan_mpj()
    assert verify_axioms(a).passed
    assert any(a.jordan[0][0])


def test_probe_search_dimension_4_is_empty():
    hits, tried = search_jordan_probe(4, grid=(0, 1, -1))
    assert hits == [] and tried > 0


def test_leibniz_forces_zero_jordan_on_sl2():
    # every Jordan table compatible with sl2 via Leibniz and vanishing on H is zero
    a, _ = generate("lie_sl2")
    space, _ = leibniz_jordan_space(a, 1)
    assert space.dim == 0


def test_leibniz_space_brute_force_small():
    # solvable2: check the kernel against direct substitution of a grid of tables
    a, _ = generate("solvable2")
    space, slots = leibniz_jordan_space(a, 1)
    for vals in itertools.product((0, 1, -1), repeat=len(slots)):
        jo = {}
        for (i, j, k), c in zip(slots, vals):
            if c:
                jo.setdefault((i, j), {})[k] = c
        b = AlgebraSpec.from_terms(a.basis_names, a.bracket_terms(), jo)
        leib = verify_axioms(b).leibniz.passed
        assert leib == space.contains(vals)
