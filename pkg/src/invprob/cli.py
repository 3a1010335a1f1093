"""Command-line entry point: ``invprob <subcommand> [flags]``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

from .action import (
    BudgetExceeded,
    Everything,
    GroupWord,
    VariantMismatch,
    partial_orbit_closure,
    sorted_points,
    symmetrize,
)
from .codec import ParseError, dump_point, parse_generator, parse_point, parse_space
from .cone import UnsupportedShape, Undetermined, gamma_indicator, parse_zset, skew_popper
from .equidecomp import equidecomposable, verify_witness
from .measures import ClosureBudgetExceeded, build_level_stack, ext_str
from .popper import (
    PopperTable,
    popper_from_levels,
    verify_popper_axioms,
    verify_strong_invariance_popper,
)
from .qual import (
    cone_oracle,
    lexmax_oracle,
    verify_qual_axioms,
    verify_strong_invariance_qual,
    verify_weak_invariance_qual,
)
from .report import CheckReport
from .scenarios import UnknownCheck, run_scenario, run_table


class UsageError(Exception):
    pass


def _json_arg(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"not valid JSON: {text!r}") from e


def _gens(args) -> list[GroupWord]:
    return [GroupWord.of(parse_generator(_json_arg(g))) for g in args.gen]


def _space(args):
    return parse_space(_json_arg(args.space)) if args.space else Everything()


class Output:
    """Collects a header, sections and reports, then renders text or JSON."""

    def __init__(self, args):
        self.args = args
        self.payload: dict[str, Any] = {"command": args.command, "seed": args.seed}
        # single-value commands print just the value; reports get a header with the seed
        bare = args.command in ("gamma", "skew") or getattr(args, "action", None) == "compare"
        self.lines: list[str] = [] if bare else [f"# invprob {args.command} (seed {args.seed})"]
        self.failed = False
        self.undetermined = False

    def put(self, key: str, value: Any, text: str | None = None) -> None:
        self.payload[key] = value
        self.lines.append(text if text is not None else f"{key}: {value}")

    def report(self, rep: CheckReport) -> None:
        self.payload.setdefault("reports", []).append(rep.to_dict())
        self.lines.append(str(rep))
        self.failed |= not rep.passed
        self.undetermined |= bool(rep.undetermined)

    def emit(self) -> int:
        if self.args.format == "json":
            body = json.dumps(self.payload, indent=2, sort_keys=True, default=str)
        else:
            body = "\n".join(self.lines)
        if self.args.out:
            Path(self.args.out).write_text(body + "\n")
        else:
            print(body)
        if self.failed or (self.args.strict and self.undetermined):
            return 1
        return 0


# ---------------------------------------------------------------------------
# subcommands


def cmd_orbit(args, out: Output) -> None:
    x = parse_point(_json_arg(args.point))
    H = _gens(args)
    if args.symmetric:
        H = symmetrize(H)
    res = partial_orbit_closure(H, x, _space(args), args.budget)
    if isinstance(res, BudgetExceeded):
        out.put("result", "budget_exceeded", f"budget exceeded after {res.discovered} points")
        out.put("path", [dump_point(y) for y in res.path], "path: " + " ".join(map(str, res.path[:20])) + (" ..." if len(res.path) > 20 else ""))
    else:
        pts = sorted_points(res.points)
        out.put("result", "finite", f"finite closure of size {len(pts)}")
        out.put("closure", [dump_point(y) for y in pts], "closure: {" + ", ".join(map(str, pts)) + "}")


def cmd_localfinite(args, out: Output) -> None:
    H = symmetrize(_gens(args))
    space = _space(args)
    pts = [parse_point(p) for p in _json_arg(args.points)]
    rep = CheckReport("local finiteness")
    for x in pts:
        rep.checked += 1
        res = partial_orbit_closure(H, x, space, args.budget)
        if isinstance(res, BudgetExceeded):
            rep.notes.append(f"{x}: budget exceeded")
            rep.data.setdefault("exceeded", []).append(dump_point(x))
        else:
            rep.data.setdefault("sizes", {})[str(x)] = len(res)
    verdict = "budget_exceeded" if rep.data.get("exceeded") else "all_finite"
    out.put("result", verdict)
    out.report(rep)


def cmd_equidecomp(args, out: Output) -> None:
    A = {parse_point(p) for p in _json_arg(args.A)}
    B = {parse_point(p) for p in _json_arg(args.B)}
    space = _space(args)
    w = equidecomposable(A, B, _gens(args), space)
    if w is None:
        out.put("result", "no", "not equidecomposable with these moves")
        return
    if not verify_witness(A, B, w, space):
        out.failed = True
    out.put("result", "yes")
    out.put("witness", str(w))


def _popper_table_from_args(args) -> tuple[PopperTable, list[GroupWord]]:
    pts = [parse_point(p) for p in _json_arg(args.points)]
    H = _gens(args)
    target = [parse_point(p) for p in _json_arg(args.first_target)] if args.first_target else None
    L = build_level_stack(pts, H, first_target=target)
    return popper_from_levels(L), H


def cmd_popper(args, out: Output) -> None:
    if args.action == "build":
        if not args.points:
            raise UsageError("popper build needs --points")
        P, _ = _popper_table_from_args(args)
        d = P.to_dict()
        text = json.dumps(d, indent=2, sort_keys=True)
        out.put("table", d, text)
        return
    if args.table:
        d = json.loads(Path(args.table).read_text())
        # accept both a bare table and the report written by 'popper build --format json'
        P = PopperTable.from_dict(d.get("table", d))
    elif args.points:
        P, _ = _popper_table_from_args(args)
    else:
        raise UsageError("popper verify needs --table or --points")
    out.report(verify_popper_axioms(P, args.seed))
    if args.gen:
        out.report(verify_strong_invariance_popper(P, _gens(args), _space(args) if args.space else None))


def _oracle(name: str):
    return {"cone": cone_oracle, "lexmax": lexmax_oracle}[name]()


def cmd_qual(args, out: Output) -> None:
    o = _oracle(args.oracle)
    if args.action == "compare":
        if not (args.A and args.B):
            raise UsageError("qual compare needs --A and --B")
        v = o(parse_zset(args.A), parse_zset(args.B))
        out.put("verdict", str(v), str(v))
        out.undetermined |= v.value == "undetermined"
        return
    if not args.family:
        raise UsageError("qual verify needs --family")
    fam = [parse_zset(s) for s in args.family]
    out.report(verify_qual_axioms(o, fam))
    if args.gen:
        out.report(verify_weak_invariance_qual(o, _gens(args), fam))
        strong = verify_strong_invariance_qual(o, _gens(args), fam)
        # strong invariance is reported, not required
        out.put("strong_invariance", strong.passed, f"(informational) {strong}")


def _value_text(v) -> str:
    if isinstance(v, (Undetermined, Fraction)):
        return str(v)
    return ext_str(v)


def cmd_gamma(args, out: Output) -> None:
    v = gamma_indicator(parse_zset(args.A), parse_zset(args.B))
    out.undetermined |= isinstance(v, Undetermined)
    out.put("gamma", _value_text(v), _value_text(v))


def cmd_skew(args, out: Output) -> None:
    v = skew_popper(parse_zset(args.A), parse_zset(args.B))
    out.undetermined |= isinstance(v, Undetermined)
    out.put("probability", _value_text(v), _value_text(v))


def cmd_scenario(args, out: Output) -> None:
    reports = [run_scenario(Path(f), seed=args.seed, budget=args.budget) for f in args.files]
    out.payload["scenarios"] = [r.to_dict() for r in reports]
    for r in reports:
        out.lines.append(r.to_text())
        out.failed |= not r.ok()
        out.undetermined |= not r.ok(strict=True)


def cmd_table(args, out: Output) -> None:
    t = run_table(seed=args.seed, budget=args.budget)
    out.payload["table"] = t.to_dict()
    out.lines.append(t.to_text())
    out.failed |= not t.ok


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
    common.add_argument("--budget", type=int, default=1000, help="cap on closure sizes")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--strict", action="store_true", help="treat undetermined results as failures")

    action = argparse.ArgumentParser(add_help=False)
    action.add_argument("--gen", action="append", default=[], help="generator as JSON, e.g. '{\"translate\": \"1\"}'")
    action.add_argument("--space", help="space as JSON, e.g. '{\"kind\": \"integers\"}'")

    p = argparse.ArgumentParser(prog="invprob", description="Invariant probabilities under partial group actions.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("orbit", parents=[common, action], help="closure of a point under moves inside the space")
    s.add_argument("--point", required=True, help="point as JSON")
    s.add_argument("--symmetric", action="store_true", help="add inverse moves")
    s.set_defaults(fn=cmd_orbit)

    s = sub.add_parser("localfinite", parents=[common, action], help="closures of several points under the symmetrized moves")
    s.add_argument("--points", required=True, help="JSON list of points")
    s.set_defaults(fn=cmd_localfinite)

    s = sub.add_parser("equidecomp", parents=[common, action], help="equidecomposability of two finite sets")
    s.add_argument("--A", required=True)
    s.add_argument("--B", required=True)
    s.set_defaults(fn=cmd_equidecomp)

    s = sub.add_parser("popper", parents=[common, action], help="build or verify a full conditional probability table")
    s.add_argument("action", choices=["build", "verify"])
    s.add_argument("--points", help="JSON list of the finite space's points")
    s.add_argument("--first-target", help="JSON list: unit-mass target of the first level")
    s.add_argument("--table", help="table file written by 'popper build --format json'")
    s.set_defaults(fn=cmd_popper)

    s = sub.add_parser("qual", parents=[common, action], help="qualitative comparisons on integer sets")
    s.add_argument("action", choices=["verify", "compare"])
    s.add_argument("--oracle", choices=["cone", "lexmax"], default="cone")
    s.add_argument("--family", nargs="*", help="set literals")
    s.add_argument("--A")
    s.add_argument("--B")
    s.set_defaults(fn=cmd_qual)

    for name, fn, what in (("gamma", cmd_gamma, "exchange rate of two integer sets"),
                           ("skew", cmd_skew, "translation-invariant conditional probability P(A | B)")):
        s = sub.add_parser(name, parents=[common], help=what)
        s.add_argument("--A", required=True)
        s.add_argument("--B", required=True)
        s.set_defaults(fn=fn)

    s = sub.add_parser("scenario", parents=[common], help="run scenario files")
    s.add_argument("action", choices=["run"])
    s.add_argument("files", nargs="+")
    s.set_defaults(fn=cmd_scenario)

    s = sub.add_parser("table", parents=[common], help="reproduce the invariance table")
    s.set_defaults(fn=cmd_table)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args)
    try:
        args.fn(args, out)
    except (
        UsageError, ParseError, UnsupportedShape, UnknownCheck, VariantMismatch, ClosureBudgetExceeded,
        KeyError, ValueError, OSError,
    ) as e:
        print(f"invprob {args.command}: error: {e}", file=sys.stderr)
        return 2
    return out.emit()


if __name__ == "__main__":
    sys.exit(main())
