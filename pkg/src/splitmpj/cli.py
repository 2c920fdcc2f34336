"""Command line front end.

Exit codes:
    0  every check passed (or the question was answered)
    1  an axiom failed
    2  malformed input, unknown family, or input larger than --max-dim
    3  H is not abelian, ad(H) is not split, or P_0 differs from H
    4  a structural verdict failed (root space products or a decomposition theorem)
    5  simplicity criterion and oracle disagree
    6  hypotheses of the simplicity criterion or oracle are unmet

When several apply, the lowest-numbered stage wins in the order 2, 3, 1, 4.
"""

from __future__ import annotations

import argparse
import sys

from .algebra import DEFAULT_SEED, verify_axioms
from .connections import ConnectionContext
from .decomposition import HypothesesUnmet, decompose, oracle_is_simple, simplicity_criterion
from .families import UnknownFamily, generate
from .fileformat import MalformedInput, dump_algebra, dumps_report, load_algebra
from .report import axioms_dict, decomposition_dict, simplicity_dict, split_dict
from .split import SplitError, root_decomposition, verify_rootspace_products, verify_split

EXIT_OK, EXIT_AXIOM, EXIT_INPUT, EXIT_SPLIT, EXIT_THEOREM, EXIT_DISAGREE, EXIT_HYPOTHESES = range(7)


class _Stop(Exception):
    def __init__(self, code, report):
        self.code = code
        self.report = report


def _load(args):
    try:
        a, h = load_algebra(args.path)
    except OSError as exc:
        raise _Stop(EXIT_INPUT, {"error": "cannot read %s: %s" % (args.path, exc.strerror)})
    except MalformedInput as exc:
        raise _Stop(EXIT_INPUT, {"error": "malformed input: %s" % exc})
    if a.dim > args.max_dim:
        raise _Stop(EXIT_INPUT, {"error": "dimension %d exceeds --max-dim %d" % (a.dim, args.max_dim)})
    return a, h


def _verify_stage(args):
    """Shared front half: parse, axioms, root decomposition, split and product checks."""
    a, h = _load(args)
    report = {"name": a.name, "dim": a.dim, "basis": list(a.basis_names)}
    axioms = verify_axioms(a, seed=args.seed)
    report["axioms"] = axioms_dict(a, axioms)
    try:
        rd = root_decomposition(a, h)
    except SplitError as exc:
        report["split_error"] = {"kind": type(exc).__name__, "message": str(exc),
                                 "witness": exc.witness}
        raise _Stop(EXIT_SPLIT, report)
    sr, pr = verify_split(rd), verify_rootspace_products(rd)
    report["split"] = split_dict(rd, sr, pr)
    if not axioms.passed:
        raise _Stop(EXIT_AXIOM, report)
    code = EXIT_OK if sr.passed and pr.passed else EXIT_THEOREM
    return rd, report, code


def cmd_verify(args):
    _, report, code = _verify_stage(args)
    return code, report


def cmd_decompose(args):
    rd, report, code = _verify_stage(args)
    if code != EXIT_OK:
        return code, report
    ctx = ConnectionContext(rd)
    rep = decompose(ctx)
    report["decomposition"] = decomposition_dict(ctx, rep)
    return (EXIT_THEOREM if rep.theorem_failures() else EXIT_OK), report


def cmd_simple(args):
    rd, report, code = _verify_stage(args)
    if code != EXIT_OK:
        return code, report
    ctx = ConnectionContext(rd)
    try:
        sv = simplicity_criterion(ctx)
    except HypothesesUnmet as exc:
        report["simplicity"] = simplicity_dict(None, note="criterion hypotheses unmet: " + ", ".join(exc.failed))
        return EXIT_HYPOTHESES, report
    if not args.oracle:
        report["simplicity"] = simplicity_dict(sv)
        return EXIT_OK, report
    try:
        oracle = oracle_is_simple(rd.algebra, rd)
    except HypothesesUnmet as exc:
        report["simplicity"] = simplicity_dict(sv, note="oracle hypotheses unmet: " + ", ".join(exc.failed))
        return EXIT_HYPOTHESES, report
    agree = oracle == sv.simple
    report["simplicity"] = simplicity_dict(sv, oracle, "" if agree else "criterion and oracle disagree")
    return (EXIT_OK if agree else EXIT_DISAGREE), report


def cmd_generate(args):
    try:
        a, h = generate(args.family, *args.params)
    except UnknownFamily as exc:
        return EXIT_INPUT, {"error": str(exc)}
    if a.dim > args.max_dim:
        return EXIT_INPUT, {"error": "dimension %d exceeds --max-dim %d" % (a.dim, args.max_dim)}
    dump_algebra(a, h, args.out)
    return EXIT_OK, {"written": args.out, "name": a.name, "dim": a.dim}


# -- text rendering -------------------------------------------------------------


def _mark(v):
    return {True: "pass", False: "FAIL", None: "skip"}[v["pass"]]


def _rows(pairs):
    width = max((len(k) for k, _ in pairs), default=0)
    return ["  %-*s  %s" % (width, k, v) for k, v in pairs]


def render_text(report: dict) -> str:
    lines = []
    if "error" in report:
        return "error: %s\n" % report["error"]
    if "written" in report:
        return "wrote %s (%s, dim %d)\n" % (report["written"], report["name"], report["dim"])
    lines.append("%s  dim %d  basis %s" % (report["name"] or "<unnamed>", report["dim"], " ".join(report["basis"])))
    ax = report["axioms"]
    lines.append("axioms")
    pairs = []
    for k, v in ax.items():
        if isinstance(v, dict) and "pass" in v:
            text = _mark(v)
            if v["witness"] is not None:
                text += "  witness %s" % v["witness"]
            pairs.append((k, text))
    lines += _rows(pairs)
    cert = ax["non_lie_certificate"]
    if cert is None:
        lines.append("  Lie (Jacobi identity holds)")
    else:
        lines.append("  not Lie: J(%s) != 0" % ", ".join(cert["labels"]))
    if "split_error" in report:
        e = report["split_error"]
        lines.append("split: %s: %s  witness %s" % (e["kind"], e["message"], e["witness"]))
        return "\n".join(lines) + "\n"
    sp = report["split"]
    lines.append("roots  (H dim %d, %s)" % (sp["H"]["dim"], "symmetric" if sp["symmetric"] else "not symmetric"))
    lines += _rows([(r["root"], "dim %d  %s" % (r["dim"], ", ".join(r["basis"]))) for r in sp["roots"]])
    lines.append("split checks")
    checks = dict(sp["checks"], rootspace_products=sp["rootspace_products"])
    lines += _rows([(k, _mark(v) + ("  witness %s" % v["witness"] if v["witness"] else "")) for k, v in checks.items()])
    dec = report.get("decomposition")
    if dec is not None:
        lines.append("omega  " + (" ".join(dec["omega"]) or "(empty)"))
        lines.append("classes")
        lines += _rows([("[%d]" % k, " ".join(c)) for k, c in enumerate(dec["classes"])])
        lines.append("ideals")
        lines += _rows([("[%d]" % k, "dim %d  I_H dim %d  V dim %d" % (d["dim"], d["I_H"]["dim"], d["V"]["dim"]))
                        for k, d in enumerate(dec["ideals"])])
        lines.append("U  dim %d  %s" % (dec["U"]["dim"], ", ".join(dec["U"]["basis"])))
        for t in dec["theta_fired"]:
            lines.append("theta%s * %s fired by %s" % (t["alpha"], t["beta"], ", ".join(t["fired"])))
        lines.append("verdicts")
        lines += _rows([(k, _mark(v) + ("  " + v["note"] if v.get("note") else "")
                         + ("  witness %s" % v["witness"] if v["witness"] else ""))
                        for k, v in dec["verdicts"].items()])
        for k, c in enumerate(dec["components"]):
            lines.append("component [%d]  dim %d  class %s  %s" % (
                k, c["dim"], " ".join(c["class"]), "certified simple" if c["certified"] else "NOT certified"))
    sim = report.get("simplicity")
    if sim is not None:
        crit = sim["criterion"]
        if crit is not None:
            lines.append("criterion  %s  (strict %s, classes %d, H generated %s)" % (
                "Simple" if crit["simple"] else "NotSimple", crit["simple_strict"], crit["classes"],
                crit["H_generated"]))
        if sim["oracle"] is not None:
            lines.append("oracle     %s" % ("Simple" if sim["oracle"] else "NotSimple"))
        if sim["note"]:
            lines.append(sim["note"])
    return "\n".join(lines) + "\n"


def build_parser():
    p = argparse.ArgumentParser(prog="splitmpj", description="Split Malcev-Poisson-Jordan algebra toolkit")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed of the smoke-test RNG")
    common.add_argument("--max-dim", type=int, default=32, help="refuse inputs of larger dimension")
    fmt_opt = argparse.ArgumentParser(add_help=False)
    fmt_opt.add_argument("--format", choices=("text", "machine"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common, fmt_opt], help="check axioms and the root decomposition")
    s.add_argument("path")
    s.set_defaults(func=cmd_verify)
    s = sub.add_parser("decompose", parents=[common, fmt_opt], help="connection classes, ideals and verdicts")
    s.add_argument("path")
    s.set_defaults(func=cmd_decompose)
    s = sub.add_parser("simple", parents=[common, fmt_opt], help="simplicity criterion")
    s.add_argument("path")
    s.add_argument("--oracle", action="store_true", help="cross-check with brute-force ideal closures")
    s.set_defaults(func=cmd_simple)
    s = sub.add_parser("generate", parents=[common], help="write a bundled family to a file")
    s.add_argument("family", help="lie_sl2, malcev_m7, abelian, jordan_probe, solvable2 or sum:f1,f2")
    s.add_argument("params", nargs="*")
    s.add_argument("-o", "--out", required=True)
    s.set_defaults(func=cmd_generate, format="text")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed < 0 or args.seed >= 2 ** 64:
        print("error: --seed must fit in an unsigned 64-bit integer", file=sys.stderr)
        return EXIT_INPUT
    try:
        code, report = args.func(args)
    except _Stop as stop:
        code, report = stop.code, stop.report
    if args.format == "machine":
        report = {"command": args.command, "exit_code": code, **report}
        sys.stdout.write(dumps_report(report))
    else:
        out = sys.stderr if "error" in report else sys.stdout
        out.write(render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
