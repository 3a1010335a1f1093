"""Scenario files: named checks run against one action, with expected outcomes.

A scenario is a JSON object::

    {"name": ..., "space": {...}, "generators": [...], "seed": 0,
     "checks": [{"id": ..., "check": ..., "params": {...}, "expect": {...}}],
     "table": {...}}

``expect`` may pin ``status`` (pass/fail/undetermined) and/or ``value``.
The optional ``table`` block turns the scenario into a row of the invariance
table, with one cell per probability notion.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Callable

from . import action as act
from .action import (
    BitSeq,
    BudgetExceeded,
    FiniteSpace,
    Generator,
    GroupWord,
    SpaceSpec,
    partial_orbit_closure,
    symmetrize,
    interval_walk,
    verify_partial_action_axioms,
)
from .codec import ParseError, dump_point, parse_generator, parse_point, parse_space, parse_word
from .cone import (
    Undetermined,
    c0_compare,
    gamma_indicator,
    gamma_law_check,
    parse_zset,
    skew_popper,
)
from .equidecomp import (
    equidecomposable,
    paradox_witness_check,
    ray_decomposition,
    verify_witness,
    williamson_witness,
)
from .measures import NetIndex, build_level_stack, ext_str, net_stage_measure, stage_support
from .popper import (
    exchange_from_popper,
    popper_from_exchange,
    popper_from_levels,
    redundant_condition_holds,
    verify_exchange_axioms,
    verify_popper_axioms,
    verify_strong_invariance_exchange,
    verify_strong_invariance_popper,
    verify_weak_invariance_popper,
)
from .qual import (
    OrderNotFound,
    cone_oracle,
    finite_order_certificate,
    lexmax_compare,
    lexmax_oracle,
    half_line_check,
    qual_from_popper,
    verify_qual_axioms,
    verify_strong_invariance_qual,
    verify_weak_invariance_qual,
)
from .report import CheckReport

__all__ = [
    "ParseError",
    "UnknownCheck",
    "Scenario",
    "CheckSpec",
    "Outcome",
    "ScenarioReport",
    "TableReport",
    "load_scenario",
    "bundled_scenarios",
    "run_scenario",
    "run_table",
    "CHECKS",
]


class UnknownCheck(KeyError):
    pass


PASS, FAIL, UNDET = "pass", "fail", "undetermined"
CELLS = ("full_conditional", "hyperreal", "qualitative")


@dataclass
class CheckSpec:
    id: str
    check: str
    params: dict = field(default_factory=dict)
    expect: dict | None = None


@dataclass
class Scenario:
    name: str
    space: SpaceSpec
    generators: list[Generator]
    checks: list[CheckSpec]
    seed: int = 0
    description: str = ""
    table: dict | None = None
    source: dict = field(default_factory=dict)


@dataclass
class Outcome:
    status: str
    value: str | None = None
    data: dict = field(default_factory=dict)

    @classmethod
    def from_report(cls, rep: CheckReport, value: str | None = None) -> "Outcome":
        status = FAIL if not rep.passed else (UNDET if rep.undetermined and not rep.checked else PASS)
        return cls(status, value if value is not None else status, rep.to_dict())


# ---------------------------------------------------------------------------
# loading


def load_scenario(src: str | Path | dict) -> Scenario:
    if isinstance(src, dict):
        raw = src
    else:
        try:
            raw = json.loads(Path(src).read_text())
        except json.JSONDecodeError as e:
            raise ParseError(f"{src}: {e}") from e
    if not isinstance(raw, dict) or "name" not in raw:
        raise ParseError("a scenario needs a name")
    gens = [parse_generator(g) for g in raw.get("generators", [])]
    checks = []
    for i, c in enumerate(raw.get("checks", [])):
        name = c.get("check")
        if name not in CHECKS:
            raise UnknownCheck(name)
        checks.append(CheckSpec(str(c.get("id", f"{name}#{i}")), name, dict(c.get("params", {})), c.get("expect")))
    ids = [c.id for c in checks]
    if len(set(ids)) != len(ids):
        raise ParseError("check ids must be unique")
    table = raw.get("table")
    if table is not None:
        for cell, spec in table.get("cells", {}).items():
            if cell not in CELLS:
                raise ParseError(f"unknown table cell {cell!r}")
            for ref in spec.get("evidence", []):
                if ref not in ids:
                    raise ParseError(f"cell {cell} cites unknown check {ref!r}")
    return Scenario(
        name=raw["name"],
        space=parse_space(raw.get("space")),
        generators=gens,
        checks=checks,
        seed=int(raw.get("seed", 0)),
        description=raw.get("description", ""),
        table=table,
        source=raw,
    )


def bundled_scenarios() -> list[Scenario]:
    root = resources.files("invprob") / "data" / "scenarios"
    files = sorted((p for p in root.iterdir() if p.name.endswith(".json")), key=lambda p: p.name)
    return [load_scenario(json.loads(p.read_text())) for p in files]


# ---------------------------------------------------------------------------
# check context


@dataclass
class Ctx:
    scenario: Scenario
    space: SpaceSpec
    gens: list[Generator]
    rng: random.Random
    budget: int

    def word(self, v) -> GroupWord:
        return parse_word(v, self.gens)

    def words(self, vs) -> list[GroupWord]:
        return [self.word(v) for v in vs]

    def moves(self, params: dict) -> list[GroupWord]:
        """Words named by ``params['gens']``, default every generator."""
        if "gens" in params:
            return self.words(params["gens"])
        return [GroupWord.of(g) for g in self.gens]

    def finite_points(self) -> list:
        if not isinstance(self.space, FiniteSpace):
            raise ParseError("this check needs a finite space")
        return list(self.space)


def _points(ctx: Ctx, params: dict) -> list:
    if "points" in params:
        return [parse_point(p) for p in params["points"]]
    if "random_bits" in params:
        spec = params["random_bits"]
        coords, count = int(spec["coords"]), int(spec["count"])
        return [
            BitSeq(frozenset(i for i in range(coords) if ctx.rng.random() < 0.5)) for _ in range(count)
        ]
    return ctx.finite_points()


def _fmt_value(v) -> str:
    if isinstance(v, Undetermined):
        return "undetermined"
    if isinstance(v, Fraction):
        return str(v)
    return ext_str(v)


# ---------------------------------------------------------------------------
# checks


def check_orbit_closure(ctx: Ctx, p: dict) -> Outcome:
    x = parse_point(p["point"])
    H = ctx.moves(p)
    if p.get("symmetric", False):
        H = symmetrize(H)
    res = partial_orbit_closure(H, x, ctx.space, int(p.get("budget", ctx.budget)))
    if isinstance(res, BudgetExceeded):
        return Outcome(PASS, "budget_exceeded", {
            "discovered": res.discovered,
            "path_length": len(res.path),
            "path_head": [dump_point(y) for y in res.path[:8]],
            "moves_head": [str(m) for m in res.moves[:8]],
        })
    return Outcome(PASS, "finite", {"size": len(res), "points": [dump_point(y) for y in act.sorted_points(res.points)][:64]})


def check_local_finiteness(ctx: Ctx, p: dict) -> Outcome:
    H = symmetrize(ctx.moves(p))
    budget = int(p.get("budget", ctx.budget))
    sizes = []
    for x in _points(ctx, p):
        res = partial_orbit_closure(H, x, ctx.space, budget)
        if isinstance(res, BudgetExceeded):
            return Outcome(PASS, "budget_exceeded", {"point": dump_point(x), "discovered": res.discovered})
        sizes.append(len(res))
    return Outcome(PASS, "all_finite", {"points": len(sizes), "max_closure": max(sizes, default=0)})


def check_partial_action_axioms(ctx: Ctx, p: dict) -> Outcome:
    rep = verify_partial_action_axioms(ctx.space, ctx.moves(p), _points(ctx, p))
    rep.data = {"undefined": len(rep.data.get("undefined", []))}
    return Outcome.from_report(rep)


def check_interval_sequence(ctx: Ctx, p: dict) -> Outcome:
    n = int(p.get("n", 1000))
    xs = interval_walk(n)
    distinct = len(set(xs))
    res = partial_orbit_closure(ctx.moves(p), xs[0], ctx.space, int(p.get("budget", n)))
    value = "budget_exceeded" if isinstance(res, BudgetExceeded) else "finite"
    status = PASS if distinct == n + 1 and all(x in ctx.space for x in xs) else FAIL
    return Outcome(status, value, {"n": n, "distinct": distinct, "head": [str(x) for x in xs[:6]]})


def check_ray_decomposition(ctx: Ctx, p: dict) -> Outcome:
    length = int(p.get("length", 50))
    moves = ctx.words(p["moves"]) if "moves" in p else ctx.moves(p)
    if p.get("prefix") == "interval":
        prefix = interval_walk(length - 1)
    else:
        step = ctx.word(p["step"])
        prefix = [parse_point(p["start"])]
        for _ in range(length - 1):
            prefix.append(step.apply(prefix[-1]))
    rd = ray_decomposition(prefix, moves, ctx.space)
    data = {
        "length": len(prefix),
        "pieces": {str(w): len(v) for w, v in rd.pieces.items()},
        "boundary": None if rd.boundary is None else dump_point(rd.boundary),
        "notes": rd.notes,
    }
    return Outcome(PASS if rd.verified else FAIL, "verified" if rd.verified else "not_verified", data)


def check_paradox_witness(ctx: Ctx, p: dict) -> Outcome:
    pw = williamson_witness(int(p.get("depth", 8)))
    ok = paradox_witness_check(pw)
    data = {
        "E": str(pw.E), "A": str(pw.A), "B": str(pw.B),
        "A_to_E": str(pw.wA), "B_to_E": str(pw.wB), "depth": pw.truncation,
    }
    return Outcome(PASS if ok else FAIL, "paradoxical" if ok else "not_verified", data)


def check_equidecomposable(ctx: Ctx, p: dict) -> Outcome:
    A = {parse_point(x) for x in p["A"]}
    B = {parse_point(x) for x in p["B"]}
    S = ctx.words(p["S"]) if "S" in p else ctx.moves(p)
    w = equidecomposable(A, B, S, ctx.space)
    if w is None:
        return Outcome(PASS, "no", {})
    ok = verify_witness(A, B, w, ctx.space)
    return Outcome(PASS if ok else FAIL, "yes", {"witness": str(w)})


def _qual_family(f, rng: random.Random, limit: int) -> list:
    """All members of a small algebra; otherwise ∅, Ω, the atoms and a seeded sample."""
    members = list(f.members())
    if len(members) > limit:
        keep = {0, f.full, *(1 << i for i in range(f.size))}
        keep |= set(rng.sample(members, limit))
        members = sorted(keep)
    return [f.to_set(m) for m in members]


def check_level_stack_popper(ctx: Ctx, p: dict) -> Outcome:
    omega = ctx.finite_points()
    H = ctx.moves(p)
    target = [parse_point(x) for x in p["first_target"]] if "first_target" in p else None
    L = build_level_stack(omega, H, first_target=target)
    P = popper_from_levels(L)
    c = exchange_from_popper(P)
    reps = [
        verify_popper_axioms(P, ctx.scenario.seed),
        verify_strong_invariance_popper(P, H, ctx.space),
        verify_weak_invariance_popper(P, H, ctx.space),
        verify_exchange_axioms(c, ctx.scenario.seed),
        verify_strong_invariance_exchange(c, H, ctx.space),
    ]
    total = CheckReport("level-stack full conditional probability")
    for problem in L.check():
        total.fail(problem)
    for r in reps:
        total.merge(r)
    total.checked += 1
    if popper_from_exchange(c).entries != P.entries:
        total.fail("exchange-rate round trip changed the table")
    total.checked += 1
    if not redundant_condition_holds(P):
        total.fail("mutual-certainty condition fails")
    fam = _qual_family(P.algebra, ctx.rng, int(p.get("qual_family", 16)))
    o = qual_from_popper(P)
    total.merge(verify_qual_axioms(o, fam))
    total.merge(verify_strong_invariance_qual(o, H, fam, ctx.space))
    total.data = {
        "levels": [[ext_str(w) for w in mu.weights] for mu in L.levels],
        "atoms": [[dump_point(x) for x in act.sorted_points(a)] for a in P.algebra.atoms],
    }
    return Outcome.from_report(total, PASS if total.passed else FAIL)


def check_net_stage(ctx: Ctx, p: dict) -> Outcome:
    """Each stage measure is a probability invariant under its own moves."""
    rep = CheckReport("stage measures")
    schedule = [NetIndex(tuple(ctx.words(s["gens"])), frozenset(parse_point(x) for x in s["B"])) for s in p["schedule"]]
    for a, b in zip(schedule, schedule[1:]):
        if not a.precedes(b):
            rep.fail("schedule is not increasing")
    sizes = []
    for idx in schedule:
        Bp = stage_support(idx, ctx.space, ctx.budget)
        sizes.append(len(Bp))
        rep.checked += 1
        if net_stage_measure(idx, Bp, ctx.space, ctx.budget) != 1:
            rep.fail(f"stage {len(sizes)} is not a probability")
        pts = act.sorted_points(Bp)
        for _ in range(int(p.get("subsets", 20))):
            U = frozenset(x for x in pts if ctx.rng.random() < 0.5)
            pu = net_stage_measure(idx, U, ctx.space, ctx.budget)
            for h in symmetrize(idx.H):
                hU = frozenset(h.apply(x) for x in U)
                if not all(y in ctx.space for y in hU):
                    continue
                rep.checked += 1
                if net_stage_measure(idx, hU, ctx.space, ctx.budget) != pu:
                    rep.fail(f"stage {len(sizes)}: moving a set by {h} changed its measure")
    out = Outcome.from_report(rep, "invariant_probability" if rep.passed else FAIL)
    out.data["stage_sizes"] = sizes
    return out


def check_finite_order(ctx: Ctx, p: dict) -> Outcome:
    try:
        rep = finite_order_certificate(ctx.moves(p), int(p.get("budget", 64)), _points(ctx, p) if "points" in p else ())
    except OrderNotFound as e:
        return Outcome(PASS, "order_not_found", {"generator": str(e.generator)})
    return Outcome(PASS, "certificate", rep.data)


def _oracle(name: str):
    if name == "cone":
        return cone_oracle()
    if name == "lexmax":
        return lexmax_oracle()
    raise ParseError(f"unknown oracle {name!r}")


def _family(p: dict) -> list:
    return [parse_zset(s) for s in p["family"]]


def check_qual_axioms(ctx: Ctx, p: dict) -> Outcome:
    return Outcome.from_report(verify_qual_axioms(_oracle(p["oracle"]), _family(p)))


def check_strong_invariance_qual(ctx: Ctx, p: dict) -> Outcome:
    rep = verify_strong_invariance_qual(_oracle(p["oracle"]), ctx.moves(p), _family(p))
    if "witness" in rep.data:
        A, gA, w, v = rep.data["witness"]
        rep.data["witness"] = [str(A), str(gA), w, v]
    return Outcome.from_report(rep)


def check_weak_invariance_qual(ctx: Ctx, p: dict) -> Outcome:
    return Outcome.from_report(verify_weak_invariance_qual(_oracle(p["oracle"]), ctx.moves(p), _family(p)))


def check_half_lines(ctx: Ctx, p: dict) -> Outcome:
    m0, m1 = p.get("m", [-5, 5])
    n0, n1 = p.get("n", [-5, 5])
    rep = half_line_check(_oracle(p.get("oracle", "cone")), range(m0, m1 + 1), range(n0, n1 + 1))
    return Outcome.from_report(rep, str(rep.data.get("branch")))


def check_compare(ctx: Ctx, p: dict) -> Outcome:
    A, B = parse_zset(p["A"]), parse_zset(p["B"])
    fn = lexmax_compare if p.get("oracle") == "lexmax" else c0_compare
    v = fn(A, B)
    return Outcome(UNDET if v.value == "undetermined" else PASS, str(v), {"A": str(A), "B": str(B)})


def check_gamma(ctx: Ctx, p: dict) -> Outcome:
    v = gamma_indicator(parse_zset(p["A"]), parse_zset(p["B"]))
    data = {"bracket": [str(v.lower), str(v.upper)]} if isinstance(v, Undetermined) else {}
    return Outcome(UNDET if isinstance(v, Undetermined) else PASS, _fmt_value(v), data)


def check_skew_popper(ctx: Ctx, p: dict) -> Outcome:
    v = skew_popper(parse_zset(p["A"]), parse_zset(p["B"]))
    return Outcome(UNDET if isinstance(v, Undetermined) else PASS, _fmt_value(v), {})


def check_gamma_laws(ctx: Ctx, p: dict) -> Outcome:
    return Outcome.from_report(gamma_law_check(parse_zset(p["A"]), parse_zset(p["B"]), parse_zset(p["C"])))


CHECKS: dict[str, Callable[[Ctx, dict], Outcome]] = {
    "orbit_closure": check_orbit_closure,
    "local_finiteness": check_local_finiteness,
    "partial_action_axioms": check_partial_action_axioms,
    "interval_sequence": check_interval_sequence,
    "ray_decomposition": check_ray_decomposition,
    "paradox_witness": check_paradox_witness,
    "equidecomposable": check_equidecomposable,
    "level_stack_popper": check_level_stack_popper,
    "net_stage": check_net_stage,
    "finite_order": check_finite_order,
    "qual_axioms": check_qual_axioms,
    "strong_invariance_qual": check_strong_invariance_qual,
    "weak_invariance_qual": check_weak_invariance_qual,
    "half_lines": check_half_lines,
    "compare": check_compare,
    "gamma": check_gamma,
    "skew_popper": check_skew_popper,
    "gamma_laws": check_gamma_laws,
}


# ---------------------------------------------------------------------------
# running


@dataclass
class CheckResult:
    id: str
    check: str
    outcome: Outcome
    expect: dict | None
    matched: bool

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "check": self.check,
            "status": self.outcome.status,
            "value": self.outcome.value,
            "expect": self.expect,
            "matched": self.matched,
            "data": self.outcome.data,
        }


@dataclass
class ScenarioReport:
    name: str
    seed: int
    results: list[CheckResult]

    def ok(self, strict: bool = False) -> bool:
        if not all(r.matched for r in self.results):
            return False
        if strict and any(r.outcome.status == UNDET and not r.expect for r in self.results):
            return False
        return True

    def result(self, check_id: str) -> CheckResult:
        return next(r for r in self.results if r.id == check_id)

    def to_dict(self) -> dict:
        return {"scenario": self.name, "seed": self.seed, "ok": self.ok(), "checks": [r.to_dict() for r in self.results]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=str)

    def to_text(self) -> str:
        lines = [f"scenario {self.name} (seed {self.seed})"]
        for r in self.results:
            mark = "ok " if r.matched else "BAD"
            exp = "" if not r.expect else "  expected " + ", ".join(f"{k}={v}" for k, v in sorted(r.expect.items()))
            lines.append(f"  [{mark}] {r.id}: {r.check} -> {r.outcome.status} / {r.outcome.value}{exp}")
        lines.append("  result: " + ("all expectations met" if self.ok() else "MISMATCH"))
        return "\n".join(lines)


def _matches(out: Outcome, expect: dict | None) -> bool:
    if not expect:
        return out.status != FAIL
    return all(str(getattr(out, k)) == str(v) for k, v in expect.items() if k in ("status", "value"))


def run_scenario(sc: Scenario | str | Path | dict, seed: int | None = None, budget: int = 1000) -> ScenarioReport:
    if not isinstance(sc, Scenario):
        sc = load_scenario(sc)
    seed = sc.seed if seed is None else seed
    results = []
    for spec in sc.checks:
        params = dict(spec.params)
        space = parse_space(params.pop("space")) if "space" in params else sc.space
        gens = [parse_generator(g) for g in params.pop("generators")] if "generators" in params else sc.generators
        ctx = Ctx(sc, space, gens, random.Random(f"{seed}:{spec.id}"), budget)
        out = CHECKS[spec.check](ctx, params)
        results.append(CheckResult(spec.id, spec.check, out, spec.expect, _matches(out, spec.expect)))
    return ScenarioReport(sc.name, seed, results)


# ---------------------------------------------------------------------------
# the invariance table

# which outcomes establish which verdict
RULES: dict[str, tuple[str, set[tuple[str, str]]]] = {
    "not_locally_finite": ("no", {("orbit_closure", "budget_exceeded"), ("interval_sequence", "budget_exceeded")}),
    "paradoxical": ("no", {("paradox_witness", "paradoxical")}),
    "locally_finite": ("yes", {("local_finiteness", "all_finite")}),
    "exhaustive": ("yes", {("level_stack_popper", "pass")}),
}


@dataclass
class Cell:
    column: str
    expected: str
    tag: str  # "machine-checked" or "cited"
    computed: str | None
    basis: str
    evidence: list[str]

    @property
    def ok(self) -> bool:
        if self.tag == "cited":
            return bool(self.basis)
        return self.computed == self.expected

    def to_dict(self) -> dict:
        return {
            "column": self.column, "expected": self.expected, "tag": self.tag,
            "computed": self.computed, "basis": self.basis, "evidence": self.evidence, "ok": self.ok,
        }


@dataclass
class TableRow:
    order: int
    case: str
    symmetries: str
    cells: list[Cell]
    report: ScenarioReport | None

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cells) and (self.report is None or self.report.ok())


@dataclass
class TableReport:
    rows: list[TableRow]
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows) and len(self.rows) > 0

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "rows": [
                {
                    "case": r.case,
                    "symmetries": r.symmetries,
                    "ok": r.ok,
                    "cells": [c.to_dict() for c in r.cells],
                    "checks": None if r.report is None else r.report.to_dict()["checks"],
                }
                for r in self.rows
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=str)

    def to_text(self) -> str:
        head = f"{'case':<44} {'symmetries':<42} " + " ".join(f"{c:<24}" for c in CELLS)
        lines = [head, "-" * len(head)]
        for r in self.rows:
            cells = []
            for c in r.cells:
                mark = "" if c.ok else " !!"
                tag = "machine" if c.tag == "machine-checked" else "cited"
                cells.append(f"{c.expected + ' (' + tag + ')' + mark:<24}")
            lines.append(f"{r.case[:44]:<44} {r.symmetries[:42]:<42} " + " ".join(cells))
        lines.append("")
        for r in self.rows:
            for c in r.cells:
                if c.tag == "machine-checked":
                    lines.append(f"* {r.case} [{r.symmetries}] / {c.column}: {c.basis} via {', '.join(c.evidence)}")
                else:
                    lines.append(f"* {r.case} [{r.symmetries}] / {c.column}: cited ({c.basis})")
        n_machine = sum(c.tag == "machine-checked" for r in self.rows for c in r.cells)
        n_cited = sum(c.tag == "cited" for r in self.rows for c in r.cells)
        lines.append("")
        lines.append(f"{len(self.rows)} rows, {n_machine} machine-checked cells, {n_cited} cited cells: "
                     + ("all match" if self.ok else "MISMATCH"))
        return "\n".join(lines)


def _cell(column: str, spec: dict, rep: ScenarioReport) -> Cell:
    expected = spec["expected"]
    if "cited" in spec:
        return Cell(column, expected, "cited", None, spec["cited"], [])
    rule = spec["rule"]
    verdict, establishing = RULES[rule]
    results = [rep.result(e) for e in spec["evidence"]]
    supported = all(r.matched for r in results) and any(
        (r.check, str(r.outcome.value)) in establishing for r in results
    )
    return Cell(column, expected, "machine-checked", verdict if supported else "unverified", rule, list(spec["evidence"]))


def run_table(scenarios: list[Scenario] | None = None, seed: int | None = None, budget: int = 1000) -> TableReport:
    start = time.perf_counter()
    scenarios = bundled_scenarios() if scenarios is None else scenarios
    rows = []
    for sc in scenarios:
        if sc.table is None:
            continue
        rep = run_scenario(sc, seed, budget)
        cells = [_cell(col, sc.table["cells"][col], rep) for col in CELLS]
        rows.append(TableRow(int(sc.table.get("order", 0)), sc.table["case"], sc.table["symmetries"], cells, rep))
    rows.sort(key=lambda r: r.order)
    return TableReport(rows, time.perf_counter() - start)
