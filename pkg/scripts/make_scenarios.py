"""Regenerate the bundled scenario files under src/invprob/data/scenarios."""
import json
import os

out = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "src", "invprob", "data", "scenarios")
def bits(*xs): return {"bits": list(xs)}
def q(p, k): return {"quad": [p, k]}
NLF = lambda ev: {"expected": "no", "rule": "not_locally_finite", "evidence": ev}
def cite(v, why): return {"expected": v, "cited": why}
SUPRA = "abelian symmetry group, hence supramenable"
rows = []

rows.append(("row01-finite-space", {
 "name": "finite-space", "description": "Five points with two cycles and a partial translation.",
 "space": {"kind": "finite", "points": [0,1,2,3,4]},
 "generators": [{"cycle": [0,1,2]}, {"cycle": [3,4]}, {"translate": "1"}],
 "checks": [
  {"id": "axioms", "check": "partial_action_axioms", "expect": {"status": "pass"}},
  {"id": "closures", "check": "local_finiteness", "expect": {"value": "all_finite"}},
  {"id": "stack", "check": "level_stack_popper", "expect": {"value": "pass"}},
 ],
 "table": {"order": 1, "case": "finite space", "symmetries": "any", "cells": {
  "full_conditional": {"expected": "yes", "rule": "exhaustive", "evidence": ["axioms", "stack"]},
  "hyperreal": {"expected": "yes", "rule": "locally_finite", "evidence": ["closures", "stack"]},
  "qualitative": {"expected": "yes", "rule": "locally_finite", "evidence": ["closures", "stack"]}}}}))

def ray_row(order, fname, name, case, sym, space, gens, point, step, fc, extra=(), moves=None):
    checks = [
      {"id": "closure", "check": "orbit_closure", "params": {"point": point, "budget": 200}, "expect": {"value": "budget_exceeded"}},
      {"id": "ray", "check": "ray_decomposition", "params": {"start": point, "step": step, "length": 50, **({"moves": moves} if moves else {})}, "expect": {"value": "verified"}},
      *extra]
    return (fname, {"name": name, "space": space, "generators": gens, "checks": checks,
      "table": {"order": order, "case": case, "symmetries": sym, "cells": {
        "full_conditional": fc, "hyperreal": NLF(["closure", "ray"]), "qualitative": NLF(["closure", "ray"])}}})

rows.append(ray_row(2, "row02-lottery-translations", "lottery-translations", "infinite lottery on Z", "translations",
  {"kind": "integers"}, [{"translate": "1"}], 0, 1, cite("yes", SUPRA)))
rows.append(ray_row(3, "row03-lottery-reflections", "lottery-reflections", "infinite lottery on Z", "reflections",
  {"kind": "integers"}, [{"reflect": 0}, {"reflect": 1}], 0, [1, 2],
  cite("yes", "infinite dihedral group has polynomial growth, hence supramenable"), moves=[[1, 2]]))
rows.append(ray_row(4, "row04-lottery-permutations", "lottery-permutations", "infinite lottery on Z", "all permutations",
  {"kind": "integers"}, [{"translate": "1"}, {"perm": [[0, 1], [1, 0]]}], 0, 1,
  cite("no", "a free group of rank two acts on Z by permutations, so Z has a paradoxical subset"), moves=[1]))

rows.append(("row05-lottery-finitary", {
 "name": "lottery-finitary-permutations", "space": {"kind": "integers"},
 "generators": [{"cycle": [0,1,2]}, {"cycle": [5,-3]}, {"cycle": [1,7]}],
 "checks": [
  {"id": "closures", "check": "local_finiteness", "params": {"points": [-3,0,1,2,5,7,100,-40]}, "expect": {"value": "all_finite"}},
  {"id": "orders", "check": "finite_order", "expect": {"value": "certificate"}},
  {"id": "stack", "check": "level_stack_popper", "params": {"space": {"kind": "finite", "points": [-3,0,1,2,5,7]}}, "expect": {"value": "pass"}},
 ],
 "table": {"order": 5, "case": "infinite lottery on any set", "symmetries": "permutations affecting only finite subsets", "cells": {
  "full_conditional": {"expected": "yes", "rule": "locally_finite", "evidence": ["closures", "stack"]},
  "hyperreal": {"expected": "yes", "rule": "locally_finite", "evidence": ["closures", "stack"]},
  "qualitative": {"expected": "yes", "rule": "locally_finite", "evidence": ["closures", "stack"]}}}}))

rows.append(ray_row(6, "row06-coins-translations", "coins-bidirectional-translations",
  "bidirectional infinite sequence of coin flips", "translations",
  {"kind": "support_within", "indices": None}, [{"shift": 1}], bits(0), 1, cite("yes", SUPRA)))

PARA = {"expected": "no", "rule": "paradoxical", "evidence": ["paradox"]}
rows.append(("row07-coins-translations-reversals", {
 "name": "coins-translations-reversals", "space": {"kind": "support_within", "indices": None},
 "generators": [{"shift": 1}, {"reverse": [1]}],
 "checks": [
  {"id": "paradox", "check": "paradox_witness", "params": {"depth": 8}, "expect": {"value": "paradoxical"}},
  {"id": "closure", "check": "orbit_closure", "params": {"point": bits(0), "budget": 200}, "expect": {"value": "budget_exceeded"}},
 ],
 "table": {"order": 7, "case": "bidirectional infinite sequence of coin flips", "symmetries": "translations and finite subset reversals",
  "cells": {"full_conditional": PARA, "hyperreal": PARA, "qualitative": PARA}}}))

rows.append(ray_row(8, "row08-coins-permutations", "coins-permutations", "arbitrary infinite sequence of coin flips", "permutations",
  {"kind": "support_within", "indices": None}, [{"shift": 1}], bits(0), 1,
  cite("no", "single-heads outcomes on a countable set of coins embed the lottery under all permutations")))

rows.append(("row09-coin-reversals", {
 "name": "coin-reversals", "description": "Reversals of finitely many coins, ten coordinates.",
 "space": {"kind": "support_within", "indices": list(range(10))},
 "generators": [{"reverse": [i]} for i in range(10)],
 "checks": [
  {"id": "closures", "check": "local_finiteness", "params": {"random_bits": {"coords": 10, "count": 8}, "budget": 2048}, "expect": {"value": "all_finite"}},
  {"id": "orders", "check": "finite_order", "expect": {"value": "certificate"}},
  {"id": "net", "check": "net_stage", "params": {"schedule": [
      {"gens": [1], "B": [bits()]},
      {"gens": [1, 2], "B": [bits(), bits(5)]},
      {"gens": [1, 2, 3], "B": [bits(), bits(5), bits(7, 9)]},
      {"gens": [1, 2, 3, 4, 5], "B": [bits(), bits(5), bits(7, 9), bits(0, 8)]}]}, "expect": {"value": "invariant_probability"}},
  {"id": "stack", "check": "level_stack_popper", "params": {
      "space": {"kind": "finite", "points": [bits(), bits(0), bits(1), bits(0, 1)]},
      "generators": [{"reverse": [0]}, {"reverse": [1]}]}, "expect": {"value": "pass"}},
 ],
 "table": {"order": 9, "case": "arbitrary infinite sequence of coin flips", "symmetries": "reversal of subset of results", "cells": {
  "full_conditional": {"expected": "yes", "rule": "locally_finite", "evidence": ["closures", "net", "stack"]},
  "hyperreal": {"expected": "yes", "rule": "locally_finite", "evidence": ["closures", "net", "stack"]},
  "qualitative": {"expected": "yes", "rule": "locally_finite", "evidence": ["closures", "net", "stack"]}}}}))

rows.append(("row10-interval-translations", {
 "name": "interval-translations", "description": "Translations of [0,1] by sqrt(2)/4 and -1/2.",
 "space": {"kind": "interval", "lo": "0", "hi": "1"},
 "generators": [{"translate_quad": ["0", 1]}, {"translate": "-1/2"}],
 "checks": [
  {"id": "sequence", "check": "interval_sequence", "params": {"n": 1000}, "expect": {"status": "pass", "value": "budget_exceeded"}},
  {"id": "ray", "check": "ray_decomposition", "params": {"prefix": "interval", "length": 50}, "expect": {"value": "verified"}},
 ],
 "table": {"order": 10, "case": "[0,1]", "symmetries": "translations", "cells": {
  "full_conditional": cite("yes", SUPRA), "hyperreal": NLF(["sequence", "ray"]), "qualitative": NLF(["sequence", "ray"])}}}))

rows.append(ray_row(11, "row11-circle-rotations", "circle-rotations", "circle/spinner", "rotations",
  {"kind": "interval", "lo": "0", "hi": "1", "half_open": True}, [{"rotate_quad": ["0", 1]}], q("0", 0), 1, cite("yes", SUPRA)))

BT = "Banach-Tarski paradox for the rotation group of the sphere"
rows.append(("row12-sphere-rotations", {"name": "sphere-rotations", "checks": [],
 "table": {"order": 12, "case": "surface of sphere", "symmetries": "rotations",
  "cells": {c: cite("no", BT) for c in ("full_conditional", "hyperreal", "qualitative")}}}))
JU = "bounded paradoxical sets exist in the plane under rigid motions"
rows.append(("row13-cube-rigid-motions", {"name": "cube-rigid-motions", "checks": [],
 "table": {"order": 13, "case": "subset of R^n containing cube, n >= 2", "symmetries": "rigid motions",
  "cells": {c: cite("no", JU) for c in ("full_conditional", "hyperreal", "qualitative")}}}))

rows.append(ray_row(14, "row14-rn-translations", "rn-translations", "R^n, n >= 1", "translations",
  {"kind": "everything"}, [{"translate": "1"}], q("0", 0), 1, cite("yes", SUPRA)))
rows.append(ray_row(15, "row15-rn-translations-reflections", "rn-translations-reflections", "R^n, n >= 1",
  "translations and reflections of coordinates", {"kind": "everything"}, [{"translate": "1"}], q("0", 0), 1,
  cite("yes", "translations extended by coordinate reflections: abelian-by-finite, hence supramenable")))

rows.append(("cone-skew", {
 "name": "cone-skew", "description": "Translation-invariant comparisons on Z from the X1/X2 cone fragment.",
 "checks": [
  {"id": "half-lines", "check": "half_lines", "params": {"m": [-5, 5], "n": [-5, 5]}, "expect": {"value": "i"}},
  {"id": "singletons", "check": "compare", "params": {"A": "finite:[3]", "B": "finite:[-4]"}, "expect": {"value": "equiv"}},
  {"id": "sparse", "check": "compare", "params": {"A": "Lm:0", "B": "sparse:double-exp"}, "expect": {"value": "less"}},
  {"id": "gamma-pair", "check": "gamma", "params": {"A": "finite:[5]", "B": "finite:[5,9]"}, "expect": {"value": "1/2"}},
  {"id": "gamma-empty", "check": "gamma", "params": {"A": "finite:[0]", "B": "finite:[]"}, "expect": {"value": "inf"}},
  {"id": "skew-negatives", "check": "skew_popper", "params": {"A": "Lm:0", "B": "Lm:0 | sparse:double-exp"}, "expect": {"value": "0"}},
  {"id": "skew-sparse", "check": "skew_popper", "params": {"A": "sparse:double-exp", "B": "Lm:0 | sparse:double-exp"}, "expect": {"value": "1"}},
  {"id": "skew-absorb", "check": "skew_popper", "params": {"A": "Lm:0", "B": "Lm:0 add:[4,16,256,65536]"}, "expect": {"value": "1"}},
  {"id": "skew-small", "check": "skew_popper", "params": {"A": "Lm:0", "B": "sparse:double-exp add:[-1,-2]"}, "expect": {"value": "0"}},
  {"id": "laws", "check": "gamma_laws", "params": {"A": "finite:[1]", "B": "finite:[2]", "C": "finite:[1,2,3]"}, "expect": {"status": "pass"}},
  {"id": "axioms", "check": "qual_axioms", "params": {"oracle": "cone", "family": ["finite:[]", "finite:[0]", "finite:[1]", "finite:[0,1]", "Lm:0", "Rn:0"]}, "expect": {"status": "pass"}},
  {"id": "weak", "check": "weak_invariance_qual", "params": {"oracle": "cone", "family": ["finite:[0]", "Lm:0", "Rn:0", "sparse:squares"]}, "expect": {"status": "pass"}},
 ],
 "generators": [{"translate": "1"}]}))

rows.append(("lexmax-counterexample", {
 "name": "lexmax-counterexample", "description": "Weakly but not strongly translation-invariant total order on finite and cofinite sets.",
 "generators": [{"translate": "1"}],
 "checks": [
  {"id": "axioms", "check": "qual_axioms", "params": {"oracle": "lexmax", "family": ["finite:[]", "finite:[1]", "finite:[2]", "finite:[1,2]", "cofinite-ex:[0]", "cofinite-ex:[]"]}, "expect": {"status": "pass"}},
  {"id": "weak", "check": "weak_invariance_qual", "params": {"oracle": "lexmax", "family": ["finite:[1]", "finite:[2]", "cofinite-ex:[3]"]}, "expect": {"status": "pass"}},
  {"id": "strong", "check": "strong_invariance_qual", "params": {"oracle": "lexmax", "family": ["finite:[2]"]}, "expect": {"status": "fail"}},
  {"id": "pair", "check": "compare", "params": {"oracle": "lexmax", "A": "finite:[1]", "B": "finite:[2]"}, "expect": {"value": "less"}},
  {"id": "finite-cofinite", "check": "compare", "params": {"oracle": "lexmax", "A": "finite:[1,2,3]", "B": "cofinite-ex:[]"}, "expect": {"value": "less"}},
 ]}))

for f in os.listdir(out):
    if f.endswith(".json"): os.remove(os.path.join(out, f))
for fname, body in rows:
    body.setdefault("seed", 0)
    with open(os.path.join(out, fname + ".json"), "w") as fh:
        json.dump(body, fh, indent=2); fh.write("\n")
print(len(rows))
