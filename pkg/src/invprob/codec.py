"""JSON-compatible encodings of points, generators, words and spaces."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

from .action import (
    BitSeq,
    Everything,
    FiniteSpace,
    Generator,
    GroupWord,
    Int,
    Integers,
    Interval,
    PermutationTable,
    Point,
    Quad,
    ReflectInt,
    ReverseMask,
    RotateQuad,
    Shift,
    SpaceSpec,
    SupportWithin,
    TranslateQuad,
    TranslateRational,
    TuplePoint,
    sorted_points,
)


class ParseError(ValueError):
    pass


def _frac(x) -> Fraction:
    try:
        return Fraction(x)
    except (TypeError, ValueError) as e:
        raise ParseError(f"not a rational: {x!r}") from e


def _quad(v) -> Quad:
    if not (isinstance(v, list) and len(v) == 2):
        raise ParseError(f"quadratic value must be [p, q], got {v!r}")
    return Quad(_frac(v[0]), int(v[1]))


def parse_point(v: Any) -> Point:
    """``3`` → integer; ``{"quad": [p, q]}``; ``{"bits": [..]}``; ``{"tuple": [..]}``."""
    if isinstance(v, bool):
        raise ParseError("booleans are not points")
    if isinstance(v, int):
        return Int(v)
    if isinstance(v, dict) and len(v) == 1:
        (k, x), = v.items()
        if k == "quad":
            return _quad(x)
        if k == "bits":
            return BitSeq(frozenset(int(i) for i in x))
        if k == "tuple":
            return TuplePoint(tuple(parse_point(y) for y in x))
    raise ParseError(f"cannot parse point {v!r}")


def dump_point(x: Point) -> Any:
    if isinstance(x, Int):
        return x.value
    if isinstance(x, Quad):
        return {"quad": [str(x.p), x.q]}
    if isinstance(x, BitSeq):
        return {"bits": sorted(x.support)}
    if isinstance(x, TuplePoint):
        return {"tuple": [dump_point(y) for y in x.items]}
    raise TypeError(f"not a point: {x!r}")


def parse_generator(v: Any) -> Generator:
    if not (isinstance(v, dict) and len(v) == 1):
        raise ParseError(f"generator must be a one-key object, got {v!r}")
    (k, x), = v.items()
    if k == "translate":
        return TranslateRational(_frac(x))
    if k == "translate_quad":
        return TranslateQuad(_quad(x))
    if k == "rotate_quad":
        return RotateQuad(_quad(x))
    if k == "reflect":
        return ReflectInt(int(x))
    if k == "perm":
        return PermutationTable(tuple((parse_point(a), parse_point(b)) for a, b in x))
    if k == "cycle":
        return PermutationTable.cycle([parse_point(a) for a in x])
    if k == "shift":
        return Shift(int(x))
    if k == "reverse":
        return ReverseMask(frozenset(int(i) for i in x))
    raise ParseError(f"unknown generator kind {k!r}")


def dump_generator(g: Generator) -> Any:
    if isinstance(g, TranslateRational):
        return {"translate": str(g.step)}
    if isinstance(g, TranslateQuad):
        return {"translate_quad": [str(g.step.p), g.step.q]}
    if isinstance(g, RotateQuad):
        return {"rotate_quad": [str(g.step.p), g.step.q]}
    if isinstance(g, ReflectInt):
        return {"reflect": g.total}
    if isinstance(g, PermutationTable):
        return {"perm": [[dump_point(a), dump_point(b)] for a, b in g.pairs]}
    if isinstance(g, Shift):
        return {"shift": g.offset}
    if isinstance(g, ReverseMask):
        return {"reverse": sorted(g.mask)}
    raise TypeError(f"cannot encode {g!r}")


def parse_word(v: Any, gens: Sequence[Generator]) -> GroupWord:
    """A word is a generator object, a signed 1-based index, or a list of those (applied left to right)."""
    items = v if isinstance(v, list) else [v]
    letters = []
    for it in items:
        if isinstance(it, int) and not isinstance(it, bool):
            if it == 0 or abs(it) > len(gens):
                raise ParseError(f"generator index {it} out of range 1..{len(gens)}")
            letters.append((gens[abs(it) - 1], 1 if it > 0 else -1))
        else:
            letters.append((parse_generator(it), 1))
    return GroupWord(tuple(letters))


def parse_space(v: Any) -> SpaceSpec:
    if v is None:
        return Everything()
    if not isinstance(v, dict) or "kind" not in v:
        raise ParseError(f"space must be an object with a kind, got {v!r}")
    kind = v["kind"]
    if kind == "everything":
        return Everything()
    if kind == "integers":
        return Integers()
    if kind == "interval":
        return Interval(_frac(v["lo"]), _frac(v["hi"]), bool(v.get("half_open", False)))
    if kind == "finite":
        return FiniteSpace(frozenset(parse_point(p) for p in v["points"]))
    if kind == "support_within":
        idx = v.get("indices")
        return SupportWithin(None if idx is None else frozenset(int(i) for i in idx))
    raise ParseError(f"unknown space kind {kind!r}")


def dump_space(s: SpaceSpec) -> Any:
    if isinstance(s, Everything):
        return {"kind": "everything"}
    if isinstance(s, Integers):
        return {"kind": "integers"}
    if isinstance(s, Interval):
        return {"kind": "interval", "lo": str(s.lo), "hi": str(s.hi), "half_open": s.half_open}
    if isinstance(s, FiniteSpace):
        return {"kind": "finite", "points": [dump_point(p) for p in sorted_points(s.points)]}
    if isinstance(s, SupportWithin):
        return {"kind": "support_within", "indices": None if s.indices is None else sorted(s.indices)}
    raise TypeError(f"cannot encode {s!r}")
