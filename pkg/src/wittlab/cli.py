"""Command-line interface: expression evaluation and normal forms, image
computations, membership queries, action-table classification, verification
suites, and witness reports with optional file output (CSV + JSON + figures).

Exit codes: 0 on success or a passing verification, 1 on a verification
failure, 2 on a usage, parse, or evaluation error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .rings import Context, ContextError
from .skew import (
    AffinePoint, InfNearPoint, RIdealizer, SIdealizer, SkewElt,
    in_idealizer, in_left_point_ideal, in_right_point_ideal,
    poly_in_point_ideal,
)
from .enveloping import UElt, phi, tprime_bridge_check
from .modules import ModVec, act_u, classify
from .idealizer import (
    beta_membership, beta_witness, ideal_witness, pmu_check,
    saturation_check, support_reduction,
)
from .expr import (
    EvalError, ParseError, Parser, as_scalar, evaluate, parse_family,
    parse_gamma, table_from_text,
)
from .report import CheckResult, SuiteRun, render_json, render_text, write_report_files
from .suites import SUITES, run_all, run_suite


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("session")
    g.add_argument("--rank", type=int, default=argparse.SUPPRESS,
                   help="rank of the grading lattice (default 1)")
    g.add_argument("--embedding", choices=("symbolic", "integer"),
                   default=argparse.SUPPRESS,
                   help="lattice embedding: fresh symbols g1..gn, or the "
                        "integers (rank 1 only; default integer for rank 1)")
    g.add_argument("--box", type=int, default=argparse.SUPPRESS,
                   help="index box for suites that iterate over lattice points")
    g.add_argument("--degree-cap", type=int, default=argparse.SUPPRESS,
                   help="plane-degree cap for graded ideal-component spans")
    g.add_argument("--samples", type=int, default=argparse.SUPPRESS,
                   help="sample count for randomized suites")
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                   help="seed for randomized suites (default 0)")
    g.add_argument("--format", choices=("text", "json"),
                   default=argparse.SUPPRESS,
                   help="output format (default text)")
    g.add_argument("--config", default=argparse.SUPPRESS,
                   help="JSON file with default values for the flags above "
                        "(command-line flags win)")

    p = argparse.ArgumentParser(
        prog="wittlab",
        parents=[common],
        description="Exact computer algebra for generalized Witt algebra "
                    "representations inside a skew group ring.")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("eval", parents=[common],
                       help="evaluate an expression and print its canonical form")
    q.add_argument("expr")

    q = sub.add_parser("normalize", parents=[common],
                       help="print the sorted-word normal form of an "
                            "enveloping-algebra expression")
    q.add_argument("expr")

    q = sub.add_parser("phi", parents=[common],
                       help="apply the skew-ring anti-homomorphism to an "
                            "enveloping-algebra expression")
    q.add_argument("expr")

    q = sub.add_parser("act", parents=[common],
                       help="act by an enveloping-algebra element on a module vector")
    q.add_argument("family", help="family spec, e.g. 'V(alpha,beta)', "
                                  "'A[1:2]', 'Px[x:y]', 'Dual(B[1:0])'")
    q.add_argument("element", help="enveloping-algebra expression")
    q.add_argument("vector", help="module vector, e.g. 'v(0) - 2*v(1)'")

    q = sub.add_parser("member", parents=[common],
                       help="membership of an element in an ideal or idealizer")
    q.add_argument("expr")
    q.add_argument("--space", required=True,
                   help="one of S(a0,b0) | R(a0,b0;a1,b1) | right(a,b) | "
                        "right(a,b;x:y) | left(a,b) | Iq(a,b;x:y) | B0 | B1")

    q = sub.add_parser("classify", parents=[common],
                       help="identify an action table as one of the three families")
    q.add_argument("table", nargs="?", default="-",
                   help="path to a table file, or - for stdin (default)")

    q = sub.add_parser("verify", parents=[common], help="run verification suites")
    q.add_argument("suites", nargs="+",
                   help=f"suite names or 'all'; available: {', '.join(SUITES)}")
    q.add_argument("--report-dir", default=None,
                   help="write results.csv, results.json and summary figures here")
    q.add_argument("--verbose", action="store_true",
                   help="list every claim, not only failures")

    q = sub.add_parser("witness", parents=[common],
                       help="compute one witness report")
    q.add_argument("claim", choices=("pmu", "ideal", "saturation", "beta",
                                     "bridge", "shrink"))
    q.add_argument("--mu", default=None, help="lattice point, e.g. 2 or 1,-2")
    q.add_argument("--nu", default=None, help="lattice point")
    q.add_argument("--beta", default=None, help="scalar expression")
    q.add_argument("--n", type=int, default=1)
    q.add_argument("--m", type=int, default=1)
    q.add_argument("--degrees", default="0",
                   help="semicolon-separated lattice points")
    q.add_argument("--bound", type=int, default=6)
    q.add_argument("--expr", default=None, help="skew expression for shrink")
    q.add_argument("--report-dir", default=None)
    return p


_CONFIG_KEYS = ("rank", "embedding", "box", "degree_cap", "samples", "seed",
                "format")


def apply_config(args) -> None:
    for key in _CONFIG_KEYS + ("config",):
        if not hasattr(args, key):
            setattr(args, key, None)
    if args.config:
        with open(args.config) as fh:
            data = json.load(fh)
        unknown = set(data) - set(_CONFIG_KEYS)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        for key in _CONFIG_KEYS:
            if getattr(args, key) is None and key in data:
                setattr(args, key, data[key])
    if args.rank is None:
        args.rank = 1
    if args.embedding is None:
        args.embedding = "integer" if args.rank == 1 else "symbolic"
    if args.seed is None:
        args.seed = 0
    if args.format is None:
        args.format = "text"


def session_dict(args) -> dict:
    return {"rank": args.rank, "embedding": args.embedding, "box": args.box,
            "samples": args.samples, "seed": args.seed}


def _emit_value(args, kind: str, value) -> int:
    if args.format == "json":
        print(json.dumps({"command": args.command, "kind": kind,
                          "value": str(value)}))
    else:
        print(value)
    return 0


_KINDS = {UElt: "enveloping", SkewElt: "skew", ModVec: "vector"}


def cmd_eval(ctx, args) -> int:
    value = evaluate(ctx, args.expr)
    return _emit_value(args, _KINDS.get(type(value), "scalar"), value)


def _to_uelt(ctx, value) -> UElt:
    if isinstance(value, UElt):
        return value
    try:
        return UElt.one(ctx).scale(as_scalar(ctx, value))
    except EvalError:
        raise EvalError("expected an enveloping-algebra expression") from None


def cmd_normalize(ctx, args) -> int:
    value = _to_uelt(ctx, evaluate(ctx, args.expr))
    return _emit_value(args, "enveloping", value)


def cmd_phi(ctx, args) -> int:
    value = phi(_to_uelt(ctx, evaluate(ctx, args.expr)))
    return _emit_value(args, "skew", value)


def cmd_act(ctx, args) -> int:
    fam = parse_family(ctx, args.family)
    u = _to_uelt(ctx, evaluate(ctx, args.element))
    vec = evaluate(ctx, args.vector)
    if not isinstance(vec, ModVec):
        raise EvalError("the vector argument must combine v(...) basis vectors")
    return _emit_value(args, "vector", act_u(fam, u, vec))


def _split_args(text: str):
    depth = 0
    groups = [[]]
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == ";" and depth == 0:
            groups.append([])
        else:
            groups[-1].append(ch)
    return ["".join(g).strip() for g in groups]


def parse_space(ctx, text: str):
    text = text.strip()
    if text in ("B0", "B1"):
        return ("beta", text)
    open_idx = text.find("(")
    if open_idx < 0 or not text.endswith(")"):
        raise EvalError(f"cannot read space spec {text!r}")
    head = text[:open_idx].strip()
    inner = text[open_idx + 1:-1]
    groups = _split_args(inner)

    def point(group):
        parts = [s.strip() for s in group.split(",")]
        if len(parts) != 2:
            raise EvalError(f"a point needs two coordinates, got {group!r}")
        return AffinePoint(ctx, as_scalar(ctx, evaluate(ctx, parts[0])),
                           as_scalar(ctx, evaluate(ctx, parts[1])))

    def direction(group):
        parts = [s.strip() for s in group.split(":")]
        if len(parts) != 2:
            raise EvalError(f"a direction needs the form x:y, got {group!r}")
        return (as_scalar(ctx, evaluate(ctx, parts[0])),
                as_scalar(ctx, evaluate(ctx, parts[1])))

    if head == "S" and len(groups) == 1:
        return ("idealizer", SIdealizer(point(groups[0])))
    if head == "R" and len(groups) == 2:
        return ("idealizer", RIdealizer(point(groups[0]), point(groups[1])))
    if head == "left" and len(groups) == 1:
        return ("left", point(groups[0]))
    if head == "right" and len(groups) == 1:
        return ("right", point(groups[0]))
    if head in ("right", "Iq") and len(groups) == 2:
        base = point(groups[0])
        xx, yy = direction(groups[1])
        q = InfNearPoint(ctx, base.alpha, base.beta, xx, yy)
        return ("right" if head == "right" else "poly-ideal", q)
    raise EvalError(f"cannot read space spec {text!r}")


def cmd_member(ctx, args) -> int:
    kind, spec = parse_space(ctx, args.space)
    value = evaluate(ctx, args.expr)
    if isinstance(value, UElt):
        raise EvalError("membership queries take skew expressions; apply Phi first")
    if not isinstance(value, SkewElt):
        value = SkewElt.one(ctx).scale(as_scalar(ctx, value))
    if kind == "idealizer":
        answer = in_idealizer(value, spec)
    elif kind == "left":
        answer = in_left_point_ideal(value, spec)
    elif kind == "right":
        answer = in_right_point_ideal(value, spec)
    elif kind == "poly-ideal":
        if set(value.components) - {ctx.zero_gamma}:
            raise EvalError("plane-ideal membership takes a degree-zero element")
        answer = poly_in_point_ideal(value.component(ctx.zero_gamma), spec)
    else:
        answer = beta_membership(value, spec)
    if args.format == "json":
        print(json.dumps({"command": "member", "space": args.space,
                          "member": answer}))
    else:
        print("true" if answer else "false")
    return 0


def cmd_classify(ctx, args) -> int:
    if args.table == "-":
        text = sys.stdin.read()
    else:
        with open(args.table) as fh:
            text = fh.read()
    table = table_from_text(ctx, text)
    fam = classify(ctx, table)
    label = str(fam) if fam is not None else "Unknown"
    if args.format == "json":
        print(json.dumps({"command": "classify", "family": label,
                          "known": fam is not None}))
    else:
        print(label)
    return 0


def cmd_verify(ctx, args) -> int:
    names = list(args.suites)
    if names == ["all"]:
        runs = run_all(box=args.box, samples=args.samples, seed=args.seed,
                       degree_cap=args.degree_cap)
    else:
        bad = [n for n in names if n not in SUITES]
        if bad:
            raise KeyError(f"unknown suites {bad}; available: {', '.join(SUITES)}")
        runs = [run_suite(n, box=args.box, samples=args.samples, seed=args.seed,
                          degree_cap=args.degree_cap)
                for n in names]
    if args.format == "json":
        print(render_json(runs, session_dict(args)))
    else:
        print(render_text(runs, verbose=args.verbose))
    if args.report_dir:
        paths = write_report_files(runs, session_dict(args), args.report_dir)
        if args.format == "text":
            for path in paths:
                print(f"wrote {path}")
    return 0 if all(run.passed for run in runs) else 1


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise EvalError(f"witness '{args.claim}' needs --{name}")
    return value


def cmd_witness(ctx, args) -> int:
    claim = args.claim
    if claim == "pmu":
        results = [pmu_check(ctx, parse_gamma(ctx, _need(args, "mu")))]
    elif claim == "ideal":
        results = [ideal_witness(ctx, parse_gamma(ctx, _need(args, "nu")),
                                 parse_gamma(ctx, _need(args, "mu")))]
    elif claim == "saturation":
        degrees = [parse_gamma(ctx, part)
                   for part in args.degrees.split(";") if part.strip()]
        results = saturation_check(ctx, args.n, args.m, degrees)
    elif claim == "beta":
        beta = as_scalar(ctx, evaluate(ctx, _need(args, "beta")))
        results = [beta_witness(ctx, beta, parse_gamma(ctx, _need(args, "mu")),
                                parse_gamma(ctx, _need(args, "nu")))]
    elif claim == "bridge":
        results = tprime_bridge_check(ctx, args.bound)
    else:  # shrink: support-reduction demonstration
        value = evaluate(ctx, _need(args, "expr"))
        if not isinstance(value, SkewElt):
            raise EvalError("shrink needs a skew expression")
        mu0 = parse_gamma(ctx, _need(args, "mu"))
        reduced = support_reduction(value, mu0)
        shrunk = len(reduced.components) < len(value.components) \
            if value.components else reduced.is_zero()
        results = [CheckResult(
            suite="witness", claim="support reduction step",
            statement="u a - (a + mu0) u removes the chosen support degree",
            inputs={"mu0": str(mu0), "support_before": str(value.support())},
            computed=f"{reduced} with support {reduced.support()}",
            expected="strictly smaller support",
            passed=shrunk)]
    run = SuiteRun(name=f"witness:{claim}", results=results)
    if args.format == "json":
        print(render_json([run], session_dict(args)))
    else:
        print(render_text([run], verbose=True))
    if args.report_dir:
        write_report_files([run], session_dict(args), args.report_dir)
    return 0 if run.passed else 1


_COMMANDS = {
    "eval": cmd_eval,
    "normalize": cmd_normalize,
    "phi": cmd_phi,
    "act": cmd_act,
    "member": cmd_member,
    "classify": cmd_classify,
    "verify": cmd_verify,
    "witness": cmd_witness,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        apply_config(args)
        ctx = Context(rank=args.rank, embedding=args.embedding)
        return _COMMANDS[args.command](ctx, args)
    except (ParseError, EvalError, ContextError, ValueError, KeyError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
