"""Convolution cone on ℤ: decidable integer sets, step functions, the X1/X2
fragment, and the exchange rate ``gamma`` it induces.

The cone ``C`` is a non-constructive completion of the functions with
property X (X1 or X2).  Every completion satisfies ``X ⊆ C`` and
``C ∩ -C`` = finitely supported zero-sum functions, so a comparison is
decided whenever ``d`` or ``-d`` has property X; otherwise the verdict is
``UNDETERMINED``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .measures import INF, UNDEFINED, ExtRat
from .report import CheckReport
from .verdict import CompareVerdict


class UnsupportedShape(ValueError):
    pass


# ---------------------------------------------------------------------------
# sparse catalog


def is_double_exp(n: int) -> bool:
    """``n = 2**(2**k)`` for some ``k >= 1``."""
    if n < 4 or n & (n - 1):
        return False
    e = n.bit_length() - 1
    return e & (e - 1) == 0


def is_square(n: int) -> bool:
    return n >= 1 and math.isqrt(n) ** 2 == n


REST = "rest"


def _labels(offsets: Iterable[int]) -> frozenset:
    out = {REST}
    for t in offsets:
        out |= {("D", t), ("Q", t)}
    return frozenset(out)


def _threshold(offsets: frozenset) -> int:
    """Above this, the shifted square sets ``S+t`` are pairwise disjoint.

    Two squares ``x² < y²`` differ by ``c`` only if ``x < c``, so collisions
    of ``S+t`` and ``S+u`` stay below ``c² + max(t, u)``.
    """
    ts = sorted(offsets)
    if len(ts) < 2:
        return 1
    c = ts[-1] - ts[0]
    return max(1, c * c + ts[-1] + 1)


def _region(m: int, offsets: Iterable[int]):
    for t in offsets:
        if is_double_exp(m - t):
            return ("D", t)
        if is_square(m - t):
            return ("Q", t)
    return REST


# ---------------------------------------------------------------------------
# integer sets


@dataclass(frozen=True)
class ZSet:
    """A subset of ℤ in normal form.

    Below ``lo`` membership is the constant ``below``; on ``[lo, hi)`` it is
    listed in ``window``; from ``hi`` on it is decided by which tail region a
    point falls in.  Tail regions are ``(D, t)`` = ``DoubleExp + t``,
    ``(Q, t)`` = ``(Squares - DoubleExp) + t`` and ``rest``, all infinite and
    pairwise disjoint above ``hi``.  Build values with the classmethods; the
    normal form is canonical, so ``==`` is set equality.
    """

    below: bool
    lo: int
    hi: int
    window: frozenset
    offsets: frozenset
    tail: frozenset

    # -- construction ------------------------------------------------------

    @classmethod
    def _make(cls, below, lo, hi, window, offsets, tail) -> "ZSet":
        return _normalize(cls(bool(below), lo, hi, frozenset(window), frozenset(offsets), frozenset(tail)))

    @classmethod
    def finite(cls, xs: Iterable[int] = ()) -> "ZSet":
        xs = frozenset(int(x) for x in xs)
        lo = min(min(xs, default=0), 0)
        hi = max(max(xs, default=0) + 1, 1)
        return cls._make(False, lo, hi, xs, (), ())

    @classmethod
    def cofinite(cls, excluded: Iterable[int] = ()) -> "ZSet":
        return cls.finite(excluded).complement()

    @classmethod
    def left(cls, n: int) -> "ZSet":
        """``L_n = {m : m < n}``."""
        lo, hi = min(n, 0), max(n, 1)
        return cls._make(True, lo, hi, range(lo, n), (), ())

    @classmethod
    def right(cls, n: int) -> "ZSet":
        """``R_n = {m : m >= n}``."""
        lo, hi = min(n, 0), max(n, 1)
        return cls._make(False, lo, hi, range(n, hi), (), (REST,))

    @classmethod
    def sparse(cls, kind: str, offset: int = 0) -> "ZSet":
        if kind == "double-exp":
            tail = {("D", offset)}
        elif kind == "squares":
            tail = {("D", offset), ("Q", offset)}
        else:
            raise UnsupportedShape(f"unknown sparse catalog entry {kind!r}")
        lo, hi = min(offset, 0), max(offset + 1, 1)
        window = {m for m in range(lo, hi) if _region(m, [offset]) in tail}
        return cls._make(False, lo, hi, window, {offset}, tail)

    @classmethod
    def integers(cls) -> "ZSet":
        return cls.cofinite()

    @classmethod
    def empty(cls) -> "ZSet":
        return cls.finite()

    @classmethod
    def negatives(cls) -> "ZSet":
        return cls.left(0)

    @classmethod
    def positives(cls) -> "ZSet":
        return cls.right(1)

    # -- membership and predicates -----------------------------------------

    def __contains__(self, m: int) -> bool:
        if m < self.lo:
            return self.below
        if m < self.hi:
            return m in self.window
        return _region(m, self.offsets) in self.tail

    @property
    def is_finite(self) -> bool:
        return not self.below and not self.tail

    @property
    def is_cofinite(self) -> bool:
        return self.below and self.tail == _labels(self.offsets)

    @property
    def is_empty(self) -> bool:
        return self.is_finite and not self.window

    def __bool__(self) -> bool:
        return not self.is_empty

    @property
    def infinitely_many_positive(self) -> bool:
        return bool(self.tail)

    @property
    def infinitely_many_negative(self) -> bool:
        return self.below

    def positive_count(self) -> int:
        if self.tail:
            raise ValueError("infinitely many positive members")
        return sum(1 for m in self.window if m > 0)

    def __len__(self) -> int:
        if not self.is_finite:
            raise ValueError("infinite set has no length")
        return len(self.window)

    def members(self) -> list[int]:
        if not self.is_finite:
            raise ValueError("infinite set")
        return sorted(self.window)

    def max(self) -> int:
        return max(self.members())

    @property
    def unbounded_above(self) -> bool:
        return bool(self.tail)

    # -- boolean algebra and translation -----------------------------------

    def _expand(self, lo: int, hi: int, offsets: frozenset) -> tuple[set, frozenset]:
        """Window and tail labels over ``[lo, hi)`` and a larger offset set."""
        window = {m for m in range(lo, hi) if m in self}
        extra = offsets - self.offsets
        tail = set(self.tail)
        if REST in self.tail:
            for t in extra:
                tail |= {("D", t), ("Q", t)}
        return window, frozenset(tail)

    def _combine(self, other: "ZSet", op) -> "ZSet":
        offsets = self.offsets | other.offsets
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi, _threshold(offsets))
        w1, t1 = self._expand(lo, hi, offsets)
        w2, t2 = other._expand(lo, hi, offsets)
        window = {m for m in range(lo, hi) if op(m in w1, m in w2)}
        tail = {lab for lab in _labels(offsets) if op(lab in t1, lab in t2)}
        return ZSet._make(op(self.below, other.below), lo, hi, window, offsets, tail)

    def __or__(self, other: "ZSet") -> "ZSet":
        return self._combine(other, lambda a, b: a or b)

    def __and__(self, other: "ZSet") -> "ZSet":
        return self._combine(other, lambda a, b: a and b)

    def __sub__(self, other: "ZSet") -> "ZSet":
        return self._combine(other, lambda a, b: a and not b)

    def __xor__(self, other: "ZSet") -> "ZSet":
        return self._combine(other, lambda a, b: a != b)

    def complement(self) -> "ZSet":
        window = set(range(self.lo, self.hi)) - self.window
        return ZSet._make(not self.below, self.lo, self.hi, window, self.offsets, _labels(self.offsets) - self.tail)

    def issubset(self, other: "ZSet") -> bool:
        return (self - other).is_empty

    __le__ = issubset

    def isdisjoint(self, other: "ZSet") -> bool:
        return (self & other).is_empty

    def translate(self, t: int) -> "ZSet":
        """``self + t``."""
        shift_lab = lambda lab: lab if lab == REST else (lab[0], lab[1] + t)
        raw = ZSet(
            self.below,
            self.lo + t,
            self.hi + t,
            frozenset(m + t for m in self.window),
            frozenset(o + t for o in self.offsets),
            frozenset(shift_lab(lab) for lab in self.tail),
        )
        lo, hi = min(raw.lo, 0), max(raw.hi, 1)
        window, _ = raw._expand(lo, hi, raw.offsets)
        return ZSet._make(raw.below, lo, hi, window, raw.offsets, raw.tail)

    # -- rendering ---------------------------------------------------------

    def __str__(self) -> str:
        return to_literal(self)

    def __repr__(self) -> str:
        return f"ZSet({to_literal(self)!r})"


def _normalize(z: ZSet) -> ZSet:
    below, lo, hi = z.below, z.lo, z.hi
    window, offsets, tail = set(z.window), set(z.offsets), set(z.tail)
    has_rest = REST in tail
    for t in sorted(offsets):
        if ((("D", t) in tail) == has_rest) and ((("Q", t) in tail) == has_rest):
            offsets.discard(t)
            tail.discard(("D", t))
            tail.discard(("Q", t))
    offsets = frozenset(offsets)
    floor_hi = max(_threshold(offsets), 1)
    if hi < floor_hi:
        # cannot happen for well-formed inputs; keep the invariant anyway
        raise AssertionError("window ends below the disjointness threshold")
    while hi - 1 >= floor_hi and ((hi - 1) in window) == (_region(hi - 1, offsets) in tail):
        hi -= 1
        window.discard(hi)
    while lo < 0 and (lo in window) == below:
        window.discard(lo)
        lo += 1
    return ZSet(below, lo, hi, frozenset(window), offsets, frozenset(tail))


# ---------------------------------------------------------------------------
# literal grammar: finite:[..] cofinite-ex:[..] Lm:n Rn:n sparse:double-exp
# sparse:squares, then optional add:[..] remove:[..] shift:t; terms joined by |


_TOKEN = re.compile(r"([A-Za-z\-]+):(\[[^\]]*\]|[^\s;]+)")


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise UnsupportedShape(f"expected a bracketed list, got {text!r}")
    body = text[1:-1].strip()
    return [int(x) for x in body.split(",") if x.strip()] if body else []


def parse_zset(text: str) -> ZSet:
    """Parse a set literal such as ``'Lm:0'`` or ``'sparse:squares add:[-1] remove:[4]'``.

    Terms joined by ``|`` are united: ``'Lm:0 | sparse:double-exp'``.
    """
    terms = text.split("|")
    if len(terms) > 1:
        out = ZSet.empty()
        for t in terms:
            out = out | _parse_term(t)
        return out
    return _parse_term(text)


def _parse_term(text: str) -> ZSet:
    tokens = _TOKEN.findall(text)
    if not tokens or _TOKEN.sub("", text).strip(" ;") != "":
        raise UnsupportedShape(f"cannot parse set literal {text!r}")
    (key, val), rest = tokens[0], tokens[1:]
    if key == "finite":
        z = ZSet.finite(_int_list(val))
    elif key == "cofinite-ex":
        z = ZSet.cofinite(_int_list(val))
    elif key == "Lm":
        z = ZSet.left(int(val))
    elif key == "Rn":
        z = ZSet.right(int(val))
    elif key == "sparse":
        z = ZSet.sparse(val)
    else:
        raise UnsupportedShape(f"unknown set base {key!r}")
    for key, val in rest:
        if key == "add":
            z = z | ZSet.finite(_int_list(val))
        elif key == "remove":
            z = z - ZSet.finite(_int_list(val))
        elif key == "shift":
            z = z.translate(int(val))
        else:
            raise UnsupportedShape(f"unknown set modifier {key!r}")
    return z


def _fmt(xs: Iterable[int]) -> str:
    return "[" + ",".join(map(str, sorted(xs))) + "]"


def to_literal(z: ZSet) -> str:
    if z.is_finite:
        return "finite:" + _fmt(z.window)
    if z.is_cofinite:
        return "cofinite-ex:" + _fmt(z.complement().window)
    candidates = []
    if not z.offsets:
        if z.below and not z.tail:
            candidates.append((f"Lm:{z.lo}", ZSet.left(z.lo)))
        if not z.below and z.tail == {REST}:
            candidates.append((f"Rn:{z.hi}", ZSet.right(z.hi)))
    elif len(z.offsets) == 1 and not z.below:
        (t,) = z.offsets
        for kind in ("double-exp", "squares"):
            base = ZSet.sparse(kind, t)
            if base.tail == z.tail:
                candidates.append((f"sparse:{kind}" + (f" shift:{t}" if t else ""), base))
    for name, base in candidates:
        add, remove = z - base, base - z
        if add.is_finite and remove.is_finite:
            out = name
            if add.window:
                out += " add:" + _fmt(add.window)
            if remove.window:
                out += " remove:" + _fmt(remove.window)
            return out
    return (
        f"zset(below={z.below}, window={_fmt(z.window)} on [{z.lo},{z.hi}), "
        f"tail={sorted(map(str, z.tail))})"
    )


# ---------------------------------------------------------------------------
# finitely supported functions


@dataclass(frozen=True)
class FinFn:
    """Finitely supported rational function on ℤ."""

    values: tuple[tuple[int, Fraction], ...]

    @classmethod
    def of(cls, mapping: Mapping[int, object]) -> "FinFn":
        items = ((int(k), Fraction(v)) for k, v in mapping.items())
        return cls(tuple(sorted((k, v) for k, v in items if v != 0)))

    @classmethod
    def delta(cls, x: int) -> "FinFn":
        return cls.of({x: 1})

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.values)

    def total(self) -> Fraction:
        return sum((v for _, v in self.values), Fraction(0))

    def __call__(self, x: int) -> Fraction:
        return self.as_dict().get(x, Fraction(0))

    def is_nonnegative(self) -> bool:
        return all(v > 0 for _, v in self.values)

    def __str__(self) -> str:
        return "{" + ", ".join(f"{k}: {v}" for k, v in self.values) + "}"


def convolve(f: FinFn, g: FinFn) -> FinFn:
    """``(f*g)(x) = Σ_y f(y) g(x - y)``, exactly."""
    out: dict[int, Fraction] = {}
    for y, fy in f.values:
        for z, gz in g.values:
            out[y + z] = out.get(y + z, Fraction(0)) + fy * gz
    return FinFn.of(out)


# ---------------------------------------------------------------------------
# step functions


@dataclass(frozen=True)
class StepFn:
    """``Σ v_i 1_{S_i}`` with pairwise disjoint nonempty ``S_i`` and distinct nonzero ``v_i``."""

    parts: tuple[tuple[Fraction, ZSet], ...] = ()

    @classmethod
    def build(cls, parts: Iterable[tuple[object, ZSet]]) -> "StepFn":
        merged: dict[Fraction, ZSet] = {}
        for v, S in parts:
            v = Fraction(v)
            if v == 0 or S.is_empty:
                continue
            merged[v] = merged[v] | S if v in merged else S
        return cls(tuple(sorted(merged.items(), key=lambda p: p[0])))

    @classmethod
    def indicator(cls, S: ZSet) -> "StepFn":
        return cls.build([(1, S)])

    @classmethod
    def from_finfn(cls, f: FinFn) -> "StepFn":
        return cls.build([(v, ZSet.finite([k])) for k, v in f.values])

    def __call__(self, m: int) -> Fraction:
        for v, S in self.parts:
            if m in S:
                return v
        return Fraction(0)

    def support(self) -> ZSet:
        out = ZSet.empty()
        for _, S in self.parts:
            out = out | S
        return out

    @property
    def plus(self) -> ZSet:
        out = ZSet.empty()
        for v, S in self.parts:
            if v > 0:
                out = out | S
        return out

    @property
    def minus(self) -> ZSet:
        out = ZSet.empty()
        for v, S in self.parts:
            if v < 0:
                out = out | S
        return out

    def __add__(self, other: "StepFn") -> "StepFn":
        parts = []
        other_support = other.support()
        self_support = self.support()
        for v, S in self.parts:
            parts.append((v, S - other_support))
            for w, T in other.parts:
                parts.append((v + w, S & T))
        for w, T in other.parts:
            parts.append((w, T - self_support))
        return StepFn.build(parts)

    def __neg__(self) -> "StepFn":
        return StepFn.build((-v, S) for v, S in self.parts)

    def __sub__(self, other: "StepFn") -> "StepFn":
        return self + (-other)

    def scale(self, alpha) -> "StepFn":
        return StepFn.build((Fraction(alpha) * v, S) for v, S in self.parts)

    def translate(self, t: int) -> "StepFn":
        return StepFn.build((v, S.translate(t)) for v, S in self.parts)

    def convolve(self, phi: FinFn) -> "StepFn":
        """Right convolution with a finitely supported function."""
        out = StepFn()
        for z, c in phi.values:
            out = out + self.translate(z).scale(c)
        return out

    @property
    def finitely_supported(self) -> bool:
        return all(S.is_finite for _, S in self.parts)

    def total(self):
        """Extended sum: ``±inf`` when an infinite part dominates; ``None`` if both signs are infinite."""
        pos_inf = any(v > 0 and not S.is_finite for v, S in self.parts)
        neg_inf = any(v < 0 and not S.is_finite for v, S in self.parts)
        if pos_inf and neg_inf:
            return None
        if pos_inf:
            return math.inf
        if neg_inf:
            return -math.inf
        return sum((v * len(S) for v, S in self.parts), Fraction(0))

    def is_nonnegative(self) -> bool:
        return all(v > 0 for v, _ in self.parts)

    def is_zero(self) -> bool:
        return not self.parts

    def __str__(self) -> str:
        if not self.parts:
            return "0"
        return " + ".join(f"{v}·1[{S}]" for v, S in self.parts)


def indicator_diff(A: ZSet, B: ZSet) -> StepFn:
    """``1_B - 1_A``: +1 on ``B - A``, -1 on ``A - B``."""
    return StepFn.build([(1, B - A), (-1, A - B)])


def has_X1(d: StepFn) -> bool:
    """Negative at finitely many places, with non-negative (extended) sum."""
    if not d.minus.is_finite:
        return False
    return d.total() >= 0


def has_X2(d: StepFn) -> bool:
    """Positive at infinitely many ``n > 0`` and negative at only finitely many ``n > 0``."""
    return d.plus.infinitely_many_positive and not d.minus.infinitely_many_positive


def has_X(d: StepFn) -> bool:
    return has_X1(d) or has_X2(d)


def is_null(d: StepFn) -> bool:
    """``d ≈ 0`` in every completion: finitely supported with zero sum."""
    return d.finitely_supported and d.total() == 0


def in_cone(d: StepFn) -> bool | None:
    """Membership of ``d`` in every completion (True/False), or ``None`` if it depends on the completion."""
    if has_X(d):
        return True
    if has_X(-d) and not is_null(d):
        return False
    return None


# ---------------------------------------------------------------------------
# comparisons and gamma


def c0_compare(A: ZSet, B: ZSet) -> CompareVerdict:
    """Compare ``A`` with ``B`` through the sign of ``1_B - 1_A`` in the X fragment."""
    d = indicator_diff(A, B)
    fwd, back = has_X(d), has_X(-d)
    if fwd and back:
        assert is_null(d), "Equiv must come from a finitely supported zero-sum difference"
        return CompareVerdict.EQUIV
    if fwd:
        return CompareVerdict.LESS
    if back:
        return CompareVerdict.GREATER
    return CompareVerdict.UNDETERMINED


@dataclass(frozen=True)
class Undetermined:
    """The fragment only brackets the value: ``lower <= gamma <= upper``."""

    lower: object
    upper: object

    def __str__(self) -> str:
        return f"undetermined in [{self.lower}, {self.upper}]"


def _refine(a: StepFn, b: StepFn) -> list[tuple[Fraction, Fraction, ZSet]]:
    """Common refinement as ``(a value, b value, set)`` triples."""
    out = []
    sa, sb = a.support(), b.support()
    for v, S in a.parts:
        rest = S - sb
        if rest:
            out.append((v, Fraction(0), rest))
        for w, T in b.parts:
            both = S & T
            if both:
                out.append((v, w, both))
    for w, T in b.parts:
        rest = T - sa
        if rest:
            out.append((Fraction(0), w, rest))
    return out


def _status(pieces, alpha: Fraction) -> bool | None:
    h = StepFn.build((alpha * bv - av, S) for av, bv, S in pieces)
    return in_cone(h)


def gamma(a: StepFn, b: StepFn):
    """``inf {α : a ≲ α b}`` for non-negative ``a`` and ``b``.

    Returns an ``ExtRat``, ``UNDEFINED`` when ``a ≈ 0 ≈ b``, or
    :class:`Undetermined` when the fragment leaves a gap.  Membership of
    ``α b - a`` in the cone can change only where some part of it changes
    sign or where its (finite) total sum vanishes, so it is enough to probe
    those breakpoints and one point in each gap between them.
    """
    if not (a.is_nonnegative() and b.is_nonnegative()):
        raise UnsupportedShape("gamma is implemented for non-negative functions")
    if is_null(b):
        return UNDEFINED if is_null(a) else INF
    pieces = _refine(a, b)
    bps = {Fraction(0), Fraction(1)}
    for av, bv, _ in pieces:
        if bv != 0:
            bps.add(av / bv)
    if all(S.is_finite for _, _, S in pieces):
        sa = sum((av * len(S) for av, _, S in pieces), Fraction(0))
        sb = sum((bv * len(S) for _, bv, S in pieces), Fraction(0))
        if sb != 0:
            bps.add(sa / sb)
    bps = sorted(bps)

    # alternating open gaps and breakpoints, left to right
    probes: list[tuple[str, object, Fraction]] = [("open", (None, bps[0]), bps[0] - 1)]
    for i, p in enumerate(bps):
        probes.append(("point", p, p))
        right = bps[i + 1] if i + 1 < len(bps) else None
        mid = (p + right) / 2 if right is not None else p + 1
        probes.append(("open", (p, right), mid))
    statuses = [(kind, where, _status(pieces, alpha)) for kind, where, alpha in probes]

    upper = math.inf  # inf of the α known to be in
    for kind, where, st in statuses:
        if st is True:
            upper = where if kind == "point" else (where[0] if where[0] is not None else -math.inf)
            break
    lower = -math.inf  # sup of the α known to be out
    for kind, where, st in reversed(statuses):
        if st is False:
            lower = where if kind == "point" else (where[1] if where[1] is not None else math.inf)
            break
    if lower != upper:
        return Undetermined(lower, upper)
    if upper == math.inf:
        return INF
    if upper < 0:
        raise AssertionError("gamma of non-negative functions cannot be negative")
    return ExtRat(Fraction(upper))


def gamma_indicator(A: ZSet, B: ZSet):
    return gamma(StepFn.indicator(A), StepFn.indicator(B))


def skew_popper(A: ZSet, B: ZSet):
    """Weakly translation-invariant conditional probability ``P(A | B) = γ(1_{A∩B}, 1_B)``."""
    if B.is_empty:
        raise ValueError("conditioning set must be nonempty")
    v = gamma_indicator(A & B, B)
    if isinstance(v, ExtRat):
        if v.is_inf:
            raise AssertionError("conditional probability cannot be infinite")
        return v.value
    return v


def gamma_law_check(A: ZSet, B: ZSet, C: ZSet) -> CheckReport:
    """Additivity of ``γ(·, 1_C)`` over disjoint sets, the chain rule ``γ(a,c) = γ(a,b)γ(b,c)``, and ``γ(b,b) = 1``."""
    rep = CheckReport("gamma laws")
    g = gamma_indicator

    def determined(*vals) -> bool:
        return not any(isinstance(v, Undetermined) for v in vals)

    if A.isdisjoint(B) and C:
        lhs, x, y = g(A | B, C), g(A, C), g(B, C)
        if not determined(lhs, x, y):
            rep.undetermined.append("additivity: a leg is undetermined")
        else:
            rep.checked += 1
            if lhs != x + y:
                rep.fail(f"additivity: γ(A∪B,C) = {lhs} but γ(A,C)+γ(B,C) = {x + y}")
    else:
        rep.notes.append("additivity skipped: A, B not disjoint or C empty")

    ac, ab, bc = g(A, C), g(A, B), g(B, C)
    if not determined(ac, ab, bc):
        rep.undetermined.append("chain rule: a leg is undetermined")
    elif ab is UNDEFINED or bc is UNDEFINED or (ab * bc) is UNDEFINED:
        rep.notes.append("chain rule skipped: product not well-defined")
    else:
        rep.checked += 1
        if ac != ab * bc:
            rep.fail(f"chain rule: γ(A,C) = {ac} but γ(A,B)γ(B,C) = {ab * bc}")

    for S in (A, B, C):
        if S:
            rep.checked += 1
            v = g(S, S)
            if v != ExtRat(Fraction(1)):
                rep.fail(f"γ(S,S) = {v} for S = {S}")
    return rep
