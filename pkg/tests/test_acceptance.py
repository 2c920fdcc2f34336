"""Acceptance criteria, one test per criterion, all checked exactly.

Each test records a single PASS/FAIL line that is printed in the terminal
summary.  A FAIL line is a genuine failure of the stated target.
"""

import itertools
import json
import random
import subprocess
import sys
import time
from fractions import Fraction as F

import sympy

from splitmpj import cli
from splitmpj.algebra import AlgebraSpec, center, ideal_closure, random_vector, verify_axioms
from splitmpj.connections import ConnectionContext, partition
from splitmpj.decomposition import (
    build_ideals,
    check_direct,
    complement_and_decompose,
    criterion_hypotheses,
    oracle_is_simple,
    root_space_splitting,
    simple_components,
    simplicity_criterion,
    verify_ideal_family,
)
from splitmpj.exactlin import Subspace
from splitmpj.families import abelian, direct_sum_with_masa, generate, lie_sl2, malcev_m7, search_jordan_probe, solvable2
from splitmpj.fileformat import algebra_to_dict
from splitmpj.split import SplitError, neg, root_decomposition, rscale, verify_split, verify_rootspace_products
from splitmpj.verdict import Verdict

from .conftest import DATA

SEED = 20211

BASE = {
    "lie_sl2": lie_sl2,
    "malcev_m7": malcev_m7,
    "solvable2": solvable2,
    "abelian1": lambda: abelian(1),
    "abelian2": lambda: abelian(2),
    "abelian3": lambda: abelian(3),
}


def bundled():
    """Every bundled split input, keyed by name."""
    out = {k: f() for k, f in BASE.items()}
    out["sl2+sl2"] = direct_sum_with_masa(lie_sl2(), lie_sl2())
    out["sl2+sl2+sl2"] = direct_sum_with_masa(lie_sl2(), lie_sl2(), lie_sl2())
    out["sl2+abelian1"] = direct_sum_with_masa(lie_sl2(), abelian(1))
    return out


def random_sums(count, seed=SEED):
    rng = random.Random(seed)
    names = sorted(BASE)
    for _ in range(count):
        parts = [rng.choice(names) for _ in range(rng.randint(2, 3))]
        yield "+".join(parts), direct_sum_with_masa(*(BASE[p]() for p in parts))


def sym_jacobi_holds(a):
    """Independent Jacobi check with sympy on symbolic vectors."""
    n = a.dim
    xs = [sympy.Matrix(sympy.symbols("%s0:%d" % (c, n))) for c in "xyz"]
    C = [[[sympy.Rational(a.bracket[i][j][k].numerator, a.bracket[i][j][k].denominator)
           for k in range(n)] for j in range(n)] for i in range(n)]

    def br(u, v):
        return sympy.Matrix([sum(u[i] * v[j] * C[i][j][k] for i in range(n) for j in range(n)) for k in range(n)])

    x, y, z = xs
    jac = br(br(x, y), z) + br(br(y, z), x) + br(br(z, x), y)
    return all(sympy.expand(c) == 0 for c in jac)


# -- 1 -------------------------------------------------------------------------


def test_criterion_1_axiom_suite(record):
    t0 = time.perf_counter()
    base = [("lie_sl2", lie_sl2()), ("malcev_m7", malcev_m7())] + [("abelian%d" % n, abelian(n)) for n in range(1, 6)]
    cases = list(base)
    for (n1, p1), (n2, p2) in itertools.combinations_with_replacement(base, 2):
        cases.append(("%s+%s" % (n1, n2), direct_sum_with_masa(p1, p2)))
    failing = [name for name, (a, _) in cases if not verify_axioms(a).passed]

    a, _ = lie_sl2()
    rng = random.Random(SEED)
    detected = 0
    undetected = []
    for _ in range(200):
        i, j = sorted(rng.sample(range(3), 2))
        k = rng.randrange(3)
        c = F(0)
        while not c:
            c = F(rng.randint(-5, 5), rng.randint(1, 4))
        terms = {key: dict(v) for key, v in a.bracket_terms().items()}
        slot = terms.setdefault((i, j), {})
        slot[k] = slot.get(k, 0) + c
        b = AlgebraSpec.from_terms(a.basis_names, terms, {})
        if verify_axioms(b).passed:
            undetected.append((b, (i, j, k)))
        else:
            detected += 1
    # undetected perturbations must be genuine Lie (hence MPJ) algebras
    genuine = all(sym_jacobi_holds(b) for b, _ in undetected[:10])
    slots = sorted({s for _, s in undetected})
    elapsed = time.perf_counter() - t0
    rate = detected / 200
    ok = not failing and rate >= 0.95 and genuine and elapsed < 10
    record(1, ok, "%d algebras, %d failing; perturbations detected %d/200 (%.1f%%, target 95%%), "
              "undetected slots %s all still Lie: %s; %.1fs" % (
                  len(cases), len(failing), detected, 100 * rate, slots, genuine, elapsed))
    assert not failing and genuine and elapsed < 10
    assert rate >= 0.95, "detection rate %.3f below target" % rate


# -- 2 -------------------------------------------------------------------------


def test_criterion_2_splitness(record):
    notes = []
    rd = root_decomposition(*lie_sl2())
    sl2_ok = (len(rd.roots) == 2 and rd.roots[0] == neg(rd.roots[1])
              and sorted(rd.root_dims().values()) == [1, 1] and rd.zero_space == rd.H)
    notes.append("sl2 %s dims %s" % ([str(r[0]) for r in rd.roots], [s.dim for s in rd.spaces.values()]))

    rd = root_decomposition(*malcev_m7())
    dims = rd.root_dims()
    expected_shape = False
    for al in rd.roots:
        want = {al: 2, neg(al): 2, rscale(2, al): 1, rscale(-2, al): 1}
        if dims == want:
            expected_shape = True
    notes.append("m7 %s (expected {+-a:2, +-2a:1})" % {str(r[0]): d for r, d in sorted(dims.items())})

    h_is_p0 = True
    for name, pair in bundled().items():
        try:
            d = root_decomposition(*pair)
        except SplitError:
            continue
        h_is_p0 &= d.zero_space == d.H and verify_split(d).h_is_p0.passed
    ok = sl2_ok and expected_shape and h_is_p0
    record(2, ok, "; ".join(notes) + "; H = P_0 on every success: %s" % h_is_p0)
    assert sl2_ok and h_is_p0
    assert expected_shape, "malcev_m7 root dims are %s" % dims


# -- 3 and 4 ------------------------------------------------------------------


def test_criterion_3_rootspace_lemma(record):
    inputs = list(bundled().items()) + list(random_sums(50))
    bad = [name for name, pair in inputs if not verify_rootspace_products(root_decomposition(*pair)).passed]
    record(3, not bad, "%d inputs (%d bundled + 50 random sums), failures %s" % (len(inputs), len(bundled()), bad))
    assert not bad


def test_criterion_4_equivalence(record):
    inputs = list(bundled().items()) + list(random_sums(20, seed=SEED + 1))
    bad = []
    for name, pair in inputs:
        ctx = ConnectionContext(root_decomposition(*pair))
        classes = partition(ctx)  # raises on a reflexivity/symmetry/transitivity violation
        flat = sorted(r for c in classes for r in c)
        if flat != sorted(ctx.rd.roots):
            bad.append(name)
        for r in ctx.rd.roots:
            if ctx.rd.is_root(neg(r)) and ctx.class_of(r) != ctx.class_of(neg(r)):
                bad.append(name)
    record(4, not bad, "%d inputs partitioned, class(a) = class(-a) everywhere, failures %s" % (len(inputs), bad))
    assert not bad


# -- 5 -------------------------------------------------------------------------


def test_criterion_5_decomposition_theorems(record):
    inputs = list(bundled().items()) + [(n, p) for n, p in random_sums(20, seed=SEED + 2) if p[0].dim <= 12]
    bad = []
    direct_checked = 0
    t0 = time.perf_counter()
    for name, pair in inputs:
        ctx = ConnectionContext(root_decomposition(*pair))
        ideals = build_ideals(ctx)
        v = verify_ideal_family(ctx, ideals)
        _, spans = complement_and_decompose(ctx, ideals)
        direct = check_direct(ctx, ideals)
        direct_checked += direct.passed is not None
        if not (v["ideal_property"] and v["pairwise_annihilation"] and spans) or direct.passed is False:
            bad.append(name)
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 5
    record(5, ok, "%d inputs, direct-sum corollary applicable on %d, failures %s, %.2fs" % (
        len(inputs), direct_checked, bad, elapsed))
    assert ok


# -- 6 -------------------------------------------------------------------------


def test_criterion_6_closure_lemmas(record):
    bad = []
    total = 0
    for name, (a, h) in bundled().items():
        rd = root_decomposition(a, h)
        n = a.dim
        rng = random.Random(SEED)
        zero_center = not center(a)
        pieces = [rd.H] + list(rd.spaces.values())
        for trial in range(100):
            # alternate dense seeds with seeds drawn from one root space or from H
            if trial % 2:
                src = rng.choice(pieces)
                vecs = [src.from_coordinates(random_vector(rng, src.dim)) for _ in range(rng.randint(1, 2))]
            else:
                vecs = [random_vector(rng, n) for _ in range(rng.randint(1, 2))]
            ideal = ideal_closure(a, Subspace.span(vecs, n))
            d, p = root_space_splitting(rd, ideal)
            total += 1
            if d != p:
                bad.append((name, trial, "splitting"))
            if zero_center and ideal and ideal.issubspace(rd.H):
                bad.append((name, trial, "inside H"))
    record(6, not bad, "%d closures over %d algebras, failures %s" % (total, len(bundled()), bad[:3]))
    assert not bad


# -- 7 and 8 ------------------------------------------------------------------


def _meets_both(ctx):
    return not criterion_hypotheses(ctx) and not center(ctx.algebra)


def test_criterion_7_criterion_vs_oracle(record):
    hits, _ = search_jordan_probe(3)
    inputs = [("sl2", lie_sl2()),
              ("sl2+sl2", direct_sum_with_masa(lie_sl2(), lie_sl2())),
              ("sl2+sl2+sl2", direct_sum_with_masa(lie_sl2(), lie_sl2(), lie_sl2()))]
    inputs += [("probe%d" % k, p) for k, p in enumerate(hits)]
    inputs += list(bundled().items()) + list(random_sums(30, seed=SEED + 3))
    compared, disagree = 0, []
    for name, pair in inputs:
        ctx = ConnectionContext(root_decomposition(*pair))
        if not _meets_both(ctx):
            continue
        compared += 1
        if simplicity_criterion(ctx).simple != oracle_is_simple(ctx.algebra, ctx.rd):
            disagree.append(name)
    ok = not disagree and compared >= 3
    record(7, ok, "%d inputs met the hypotheses, disagreements %s, jordan_probe split hits %d (none exist)" % (
        compared, disagree, len(hits)))
    assert ok


def test_criterion_8_simple_components(record):
    t0 = time.perf_counter()
    counts = {}
    ok = True
    for k in (2, 3):
        ctx = ConnectionContext(root_decomposition(*direct_sum_with_masa(*[lie_sl2()] * k)))
        comps = simple_components(ctx)
        counts[k] = len(comps)
        ok &= len(comps) == k and all(c.certified and c.criterion.simple and c.oracle for c in comps)
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 5
    record(8, ok, "components per k %s, all certified by criterion and oracle: %s, %.2fs" % (counts, ok, elapsed))
    assert ok


# -- 9 -------------------------------------------------------------------------


def _exit_code(argv):
    import contextlib
    import io

    with contextlib.redirect_stdout(io.StringIO()), contextlib.redirect_stderr(io.StringIO()):
        return cli.main([str(x) for x in argv])


def test_criterion_9_cli_determinism(record, tmp_path, monkeypatch):
    files = sorted(DATA.glob("*.json"))
    differing = []
    for f in files:
        cmd = [sys.executable, "-m", "splitmpj.cli", "decompose", "--format", "machine", str(f)]
        runs = [subprocess.run(cmd, capture_output=True).stdout for _ in range(2)]
        if runs[0] != runs[1] or not runs[0]:
            differing.append(f.name)
        json.loads(runs[0])

    codes = {}
    codes[0] = _exit_code(["verify", DATA / "sl2.json"])
    broken = algebra_to_dict(*generate("lie_sl2"))
    broken["jordan"] = [{"i": 1, "j": 1, "terms": [{"k": 0, "c": "1"}]}]
    p = tmp_path / "broken.json"
    p.write_text(json.dumps(broken))
    codes[1] = _exit_code(["verify", p])
    codes[2] = _exit_code(["generate", "no_such_family", "-o", tmp_path / "x.json"])
    codes[3] = _exit_code(["verify", DATA / "jordan_probe.json"])
    codes[6] = _exit_code(["simple", DATA / "m7.json"])
    # 4 and 5 signal implementation bugs; they are reached by injecting a faulty result
    real = cli.decompose

    def faulty(ctx):
        rep = real(ctx)
        rep.verdicts["spans_P"] = Verdict.fail({"injected": True})
        return rep

    monkeypatch.setattr(cli, "decompose", faulty)
    codes[4] = _exit_code(["decompose", DATA / "sl2.json"])
    monkeypatch.setattr(cli, "oracle_is_simple", lambda a, rd: not simplicity_criterion(ConnectionContext(rd)).simple)
    codes[5] = _exit_code(["simple", "--oracle", DATA / "sl2.json"])
    exercised = all(codes[k] == k for k in codes) and sorted(codes) == list(range(7))
    ok = not differing and exercised
    record(9, ok, "%d bundled files byte-identical across runs (differing %s); exit codes observed %s" % (
        len(files), differing, {k: codes[k] for k in sorted(codes)}))
    assert ok
