"""Qualitative probability oracles and their verifiers.

An oracle compares two events and returns a :class:`CompareVerdict`.  Events
are frozensets of points (finite algebras) or :class:`ZSet` values; both
support ``| & -`` and truthiness, which is all the verifiers need.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .action import (
    GroupWord,
    PermutationTable,
    Point,
    ReflectInt,
    ReverseMask,
    RotateQuad,
    Shift,
    SpaceSpec,
    TranslateQuad,
    TranslateRational,
    as_word,
    image_of_set,
    symmetrize,
)
from .cone import UnsupportedShape, ZSet, c0_compare
from .measures import Measure
from .popper import PopperTable
from .report import CheckReport
from .verdict import CompareVerdict

V = CompareVerdict


class OutOfScope(LookupError):
    """The oracle is not defined on an event (e.g. not a member of its algebra)."""


class OrderNotFound(ValueError):
    def __init__(self, g):
        super().__init__(f"no finite order found for {g}")
        self.generator = g


@dataclass
class QualOracle:
    compare: Callable[[object, object], CompareVerdict]
    claims_total: bool = False
    claims_regular: bool = False
    name: str = "oracle"
    claims_additive: bool = True

    def __call__(self, A, B) -> CompareVerdict:
        return self.compare(A, B)


def _empty_like(A):
    return A - A


# ---------------------------------------------------------------------------
# axioms


class _Memo:
    def __init__(self, o: QualOracle):
        self.o = o
        self.cache: dict = {}

    def __call__(self, A, B) -> CompareVerdict:
        key = (A, B)
        if key not in self.cache:
            self.cache[key] = self.o(A, B)
        return self.cache[key]


def verify_qual_axioms(o: QualOracle, family: Sequence) -> CheckReport:
    """Reflexivity and transitivity (Q1), ``∅ ≲ A`` (Q2), cancellation (Q3),
    plus totality and ``∅ < A`` when the oracle claims them."""
    rep = CheckReport(f"qualitative axioms ({o.name})")
    family = list(dict.fromkeys(family))
    cmp = _Memo(o)

    def le(A, B, what: str) -> bool | None:
        try:
            v = cmp(A, B)
        except OutOfScope:
            rep.notes.append(f"{what}: out of scope")
            return None
        if v is V.UNDETERMINED:
            rep.undetermined.append(f"{what}: ({A}, {B})")
            return None
        return v.le

    for A in family:
        rep.checked += 1
        if le(A, A, "Q1 reflexivity") is False:
            rep.fail(f"Q1: not {A} ≲ {A}")
        E = _empty_like(A)
        rep.checked += 1
        if le(E, A, "Q2") is False:
            rep.fail(f"Q2: not ∅ ≲ {A}")
        if o.claims_regular and A:
            rep.checked += 1
            try:
                v = cmp(E, A)
            except OutOfScope:
                v = None
            if v is V.UNDETERMINED:
                rep.undetermined.append(f"regularity: {A}")
            elif v is not None and v is not V.LESS:
                rep.fail(f"regularity: ∅ vs {A} gave {v}")

    for A, B in itertools.product(family, repeat=2):
        if o.claims_total:
            rep.checked += 1
            try:
                if cmp(A, B) is V.INCOMPARABLE:
                    rep.fail(f"totality: {A} and {B} incomparable")
            except OutOfScope:
                pass
        if o.claims_regular and not (A - B):
            rep.checked += 1
            try:
                if cmp(A, B) is V.GREATER:
                    rep.fail(f"monotonicity: {A} ⊆ {B} but {A} > {B}")
            except OutOfScope:
                pass

    for A, B, C in itertools.product(family, repeat=3):
        ab, bc = le(A, B, "Q1 transitivity"), le(B, C, "Q1 transitivity")
        if ab and bc:
            rep.checked += 1
            if le(A, C, "Q1 transitivity") is False:
                rep.fail(f"Q1 transitivity: {A} ≲ {B} ≲ {C} but not {A} ≲ {C}")
        if (A | B) & C:
            continue
        x = le(A, B, "Q3")
        y = le(A | C, B | C, "Q3")
        if x is None or y is None:
            continue
        if x != y:
            rep.data.setdefault("witness", (A, B, C))
            if o.claims_additive:
                rep.checked += 1
                rep.fail(f"Q3: A={A}, B={B}, C={C}: A ≲ B is {x} but A∪C ≲ B∪C is {y}")
            else:
                rep.data["q3_failures"] = rep.data.get("q3_failures", 0) + 1
        elif o.claims_additive:
            rep.checked += 1
    if rep.data.get("q3_failures"):
        rep.notes.append(f"Q3 fails on {rep.data['q3_failures']} triples; this oracle does not claim it")
    return rep


# ---------------------------------------------------------------------------
# oracles


def qual_from_popper(P: PopperTable) -> QualOracle:
    """``A ≲ B`` iff ``P(A | A∪B) <= P(B | A∪B)``; events are point sets in the algebra.

    Total and regular in the weak sense, but not additive once the table has
    more than one level, so Q3 is reported without being required.
    """
    f = P.algebra

    def compare(A, B) -> CompareVerdict:
        a, b = f.mask_of(A), f.mask_of(B)
        if a is None or b is None:
            raise OutOfScope(f"{set(A)} or {set(B)} is not a member")
        u = a | b
        if u == 0:
            return V.EQUIV
        pa, pb = P(a, u), P(b, u)
        return V.from_le(pa <= pb, pb <= pa)

    return QualOracle(compare, claims_total=True, claims_regular=True, name="popper", claims_additive=False)


def qual_from_measure(mu: Measure) -> QualOracle:
    """Compare events by measure; regular only if every atom has positive weight."""
    f = mu.algebra

    def compare(A, B) -> CompareVerdict:
        a, b = f.mask_of(A), f.mask_of(B)
        if a is None or b is None:
            raise OutOfScope("not a member")
        x, y = mu(a), mu(b)
        return V.from_le(x <= y, y <= x)

    regular = all(w != 0 for w in mu.weights)
    return QualOracle(compare, claims_total=True, claims_regular=regular, name="measure")


def lex_combine(oracles: Sequence[QualOracle]) -> QualOracle:
    """First oracle that is not indifferent decides; undecided oracles block."""
    oracles = list(oracles)

    def compare(A, B) -> CompareVerdict:
        for o in oracles:
            v = o(A, B)
            if v is not V.EQUIV:
                return v
        return V.EQUIV

    return QualOracle(
        compare,
        claims_total=all(o.claims_total for o in oracles),
        claims_regular=any(o.claims_regular for o in oracles),
        claims_additive=all(o.claims_additive for o in oracles),
        name="lex(" + ",".join(o.name for o in oracles) + ")",
    )


def cone_oracle() -> QualOracle:
    """Comparison through the decidable X1/X2 fragment of the convolution cone."""
    return QualOracle(c0_compare, claims_total=True, claims_regular=True, name="cone")


def _sup(S: ZSet) -> float | int:
    if S.unbounded_above:
        return math.inf
    return max(S.members())


def _lexmax_le(A: ZSet, B: ZSet) -> bool:
    """Every ``x ∈ A - B`` has some ``y ∈ B - A`` with ``x <= y``."""
    AB, BA = A - B, B - A
    if AB.is_empty:
        return True
    if BA.is_empty:
        return False
    if AB.unbounded_above:
        return BA.unbounded_above
    return _sup(AB) <= _sup(BA)


def lexmax_compare(A: ZSet, B: ZSet) -> CompareVerdict:
    """Order finite and cofinite integer sets by their largest differences."""
    for S in (A, B):
        if not (S.is_finite or S.is_cofinite):
            raise UnsupportedShape(f"{S} is neither finite nor cofinite")
    return V.from_le(_lexmax_le(A, B), _lexmax_le(B, A))


def lexmax_oracle() -> QualOracle:
    return QualOracle(lexmax_compare, claims_total=True, claims_regular=True, name="lexmax")


# ---------------------------------------------------------------------------
# invariance


def _image(w: GroupWord, A, space: SpaceSpec | None):
    return image_of_set(w, A, space)


def verify_strong_invariance_qual(
    o: QualOracle, gens, family: Iterable, space: SpaceSpec | None = None
) -> CheckReport:
    """``A ≈ gA`` for every ``A`` in the family whose image stays in Ω."""
    rep = CheckReport(f"strong invariance ({o.name})")
    for w in symmetrize(gens):
        for A in family:
            gA = _image(w, A, space)
            if gA is None:
                continue
            try:
                v = o(A, gA)
            except OutOfScope:
                continue
            if v is V.UNDETERMINED:
                rep.undetermined.append(f"g={w}, A={A}")
                continue
            rep.checked += 1
            if v is not V.EQUIV:
                rep.fail(f"g={w}: {A} vs {gA} gave {v}")
                rep.data.setdefault("witness", (A, gA, str(w), str(v)))
    return rep


def verify_weak_invariance_qual(
    o: QualOracle, gens, family: Iterable, space: SpaceSpec | None = None
) -> CheckReport:
    """``A ≲ B`` iff ``gA ≲ gB``, checked only when ``A, B, gA, gB`` are all in scope."""
    rep = CheckReport(f"weak invariance ({o.name})")
    family = list(family)
    for w in symmetrize(gens):
        imgs = [_image(w, A, space) for A in family]
        for (A, gA), (B, gB) in itertools.product(zip(family, imgs), repeat=2):
            if gA is None or gB is None:
                continue
            try:
                before, after = o(A, B), o(gA, gB)
            except OutOfScope:
                continue
            if V.UNDETERMINED in (before, after):
                rep.undetermined.append(f"g={w}, A={A}, B={B}")
                continue
            rep.checked += 1
            if before is not after:
                rep.fail(f"g={w}, A={A}, B={B}: {before} before, {after} after moving")
    return rep


# ---------------------------------------------------------------------------
# finite-order certificate


def _exact_order(g) -> int | None:
    """Order of a single generator, or ``None`` if infinite.  Returns ``-1`` if unknown."""
    if isinstance(g, (TranslateRational, TranslateQuad)):
        step = g.step
        zero = step == 0 if isinstance(step, Fraction) else (step.p == 0 and step.q == 0)
        return 1 if zero else None
    if isinstance(g, Shift):
        return 1 if g.offset == 0 else None
    if isinstance(g, ReverseMask):
        return 2 if g.mask else 1
    if isinstance(g, ReflectInt):
        return 2
    if isinstance(g, RotateQuad):
        if g.step.q != 0:
            return None
        return (g.step.p - math.floor(g.step.p)).denominator
    if isinstance(g, PermutationTable):
        n = 1
        for cyc in _cycle_lengths(g):
            n = n * cyc // math.gcd(n, cyc)
        return n
    return -1


def _cycle_lengths(g: PermutationTable) -> list[int]:
    seen, out = set(), []
    for x in g.forward:
        if x in seen:
            continue
        n, y = 0, x
        while True:
            seen.add(y)
            y = g.apply(y)
            n += 1
            if y == x:
                break
            if n > len(g.forward):
                raise ValueError(f"{g} is not a permutation of its listed points")
        out.append(n)
    return out


def _sampled_order(w: GroupWord, sample: Sequence[Point], budget: int) -> int | None:
    pts = list(sample)
    cur = list(pts)
    for n in range(1, budget + 1):
        cur = [w.apply(x) for x in cur]
        if cur == pts:
            return n
    return None


def finite_order_certificate(gens, budget: int = 64, sample: Sequence[Point] = ()) -> CheckReport:
    """Find the order of every generator; with all orders finite, weak invariance implies strong.

    Single-letter generators of the known kinds are handled exactly.  Longer
    words fall back to iterating on ``sample``, which certifies the order only
    on those points.
    """
    rep = CheckReport("finite-order certificate")
    orders = {}
    for g in gens:
        w = as_word(g)
        order = _exact_order(w.letters[0][0]) if len(w) == 1 else (1 if len(w) == 0 else -1)
        if order == -1:
            order = _sampled_order(w, sample, budget) if sample else None
            rep.notes.append(f"order of {w} found on a sample of {len(sample)} points")
        if order is None or order > budget:
            raise OrderNotFound(w)
        orders[str(w)] = order
        rep.checked += 1
    rep.data["orders"] = orders
    rep.data["certificate"] = "every generator has finite order: weak invariance implies strong invariance"
    return rep


# ---------------------------------------------------------------------------
# half-line dichotomy


def half_line_check(o: QualOracle, m_range: Iterable[int], n_range: Iterable[int]) -> CheckReport:
    """Evaluate ``L_m`` against ``R_n`` and report which uniform branch holds.

    A weakly invariant total order on ℤ must put every left half-line below
    every right half-line (branch ``i``) or every right one below every left
    one (branch ``ii``).
    """
    rep = CheckReport(f"half-line dichotomy ({o.name})")
    seen = set()
    for m in m_range:
        for n in n_range:
            v = o(ZSet.left(m), ZSet.right(n))
            if v is V.UNDETERMINED:
                rep.undetermined.append(f"L_{m} vs R_{n}")
                continue
            rep.checked += 1
            seen.add(v)
            rep.data.setdefault("verdicts", {})[f"{m},{n}"] = str(v)
    if not seen:
        rep.data["branch"] = None
        rep.notes.append("vacuous: no determined pair")
    elif seen == {V.LESS}:
        rep.data["branch"] = "i"
    elif seen == {V.GREATER}:
        rep.data["branch"] = "ii"
    else:
        rep.data["branch"] = None
        rep.fail("mixed verdicts " + ", ".join(sorted(map(str, seen))) + " across the tested range")
    return rep
