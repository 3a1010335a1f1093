"""Symbolic points, generators and partial-action evaluation.

A group ``G`` acts by bijections on a big space ``Ω*``; probabilities live on a
subspace ``Ω``.  Points and generators here are small immutable values so that
every comparison is exact.  Words are read left to right: the first letter is
applied first.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

import networkx as nx

from .report import CheckReport


class VariantMismatch(TypeError):
    """A generator was applied to a point variant it does not act on."""


# ---------------------------------------------------------------------------
# points


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def sign_a_plus_b_sqrt2(a: Fraction, b: Fraction) -> int:
    """Exact sign of ``a + b*sqrt(2)`` for rationals ``a`` and ``b``."""
    sa, sb = _sign(a), _sign(b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb if sa == 0 else sa
    # opposite signs: the larger square wins; equality is impossible
    return sa if a * a > 2 * b * b else sb


@dataclass(frozen=True)
class Int:
    value: int

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class Quad:
    """The real number ``p + q * sqrt(2)/4`` with ``p`` rational, ``q`` integer."""

    p: Fraction
    q: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", Fraction(self.p))
        if int(self.q) != self.q:
            raise ValueError("Quad coefficient q must be an integer")
        object.__setattr__(self, "q", int(self.q))

    def __add__(self, other: "Quad | Fraction | int") -> "Quad":
        if isinstance(other, Quad):
            return Quad(self.p + other.p, self.q + other.q)
        return Quad(self.p + Fraction(other), self.q)

    def __sub__(self, other: "Quad | Fraction | int") -> "Quad":
        if isinstance(other, Quad):
            return Quad(self.p - other.p, self.q - other.q)
        return Quad(self.p - Fraction(other), self.q)

    def __neg__(self) -> "Quad":
        return Quad(-self.p, -self.q)

    def sign(self) -> int:
        return sign_a_plus_b_sqrt2(self.p, Fraction(self.q, 4))

    def cmp(self, other: "Quad | Fraction | int") -> int:
        return (self - other).sign()

    def __lt__(self, other):
        return self.cmp(other) < 0

    def __le__(self, other):
        return self.cmp(other) <= 0

    def __gt__(self, other):
        return self.cmp(other) > 0

    def __ge__(self, other):
        return self.cmp(other) >= 0

    def floor(self) -> int:
        k = math.floor(float(self.p) + self.q * math.sqrt(2) / 4)
        while self.cmp(k) < 0:
            k -= 1
        while self.cmp(k + 1) >= 0:
            k += 1
        return k

    def __float__(self) -> float:
        return float(self.p) + self.q * math.sqrt(2) / 4

    def __str__(self) -> str:
        if self.q == 0:
            return str(self.p)
        root = f"{self.q}*r" if self.q not in (1, -1) else ("r" if self.q == 1 else "-r")
        if self.p == 0:
            return root
        return f"{self.p}{'+' if self.q > 0 else ''}{root}"


@dataclass(frozen=True)
class BitSeq:
    """A 0/1 sequence indexed by integers, stored as its finite set of ones."""

    support: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "support", frozenset(self.support))

    def __str__(self) -> str:
        return "bits{" + ",".join(map(str, sorted(self.support))) + "}"


@dataclass(frozen=True)
class TuplePoint:
    items: tuple

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.items)) + ")"


Point = Union[Int, Quad, BitSeq, TuplePoint]


def point_key(x: Point) -> tuple:
    """Deterministic sort key (not the numeric order for Quad)."""
    if isinstance(x, Int):
        return (0, x.value)
    if isinstance(x, Quad):
        return (1, x.p, x.q)
    if isinstance(x, BitSeq):
        return (2, tuple(sorted(x.support)))
    if isinstance(x, TuplePoint):
        return (3, tuple(point_key(i) for i in x.items))
    raise TypeError(f"not a point: {x!r}")


def sorted_points(points: Iterable[Point]) -> list[Point]:
    return sorted(points, key=point_key)


# ---------------------------------------------------------------------------
# generators


class Generator:
    """Base class: a bijection of Ω* with a computable inverse."""

    def apply(self, x: Point) -> Point:
        raise NotImplementedError

    def inverse(self) -> "Generator":
        raise NotImplementedError

    def __call__(self, x: Point) -> Point:
        return self.apply(x)


@dataclass(frozen=True)
class TranslateRational(Generator):
    step: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "step", Fraction(self.step))

    def apply(self, x: Point) -> Point:
        if isinstance(x, Quad):
            return x + self.step
        if isinstance(x, Int):
            if self.step.denominator != 1:
                raise VariantMismatch(f"non-integer translation {self.step} on an integer point")
            return Int(x.value + int(self.step))
        raise VariantMismatch(f"{self} cannot act on {type(x).__name__}")

    def inverse(self) -> "TranslateRational":
        return TranslateRational(-self.step)

    def __str__(self) -> str:
        return f"t({'+' if self.step >= 0 else ''}{self.step})"


@dataclass(frozen=True)
class TranslateQuad(Generator):
    step: Quad

    def apply(self, x: Point) -> Point:
        if isinstance(x, Quad):
            return x + self.step
        raise VariantMismatch(f"{self} cannot act on {type(x).__name__}")

    def inverse(self) -> "TranslateQuad":
        return TranslateQuad(-self.step)

    def __str__(self) -> str:
        return f"t(+{self.step})" if self.step.sign() >= 0 else f"t({self.step})"


@dataclass(frozen=True)
class RotateQuad(Generator):
    """Rotation of the circle ``[0, 1)`` by ``step`` (addition mod 1)."""

    step: Quad

    def apply(self, x: Point) -> Point:
        if not isinstance(x, Quad):
            raise VariantMismatch(f"{self} cannot act on {type(x).__name__}")
        y = x + self.step
        return y - y.floor()

    def inverse(self) -> "RotateQuad":
        return RotateQuad(-self.step)

    def __str__(self) -> str:
        return f"rot({self.step})"


@dataclass(frozen=True)
class ReflectInt(Generator):
    """The reflection ``n -> total - n`` of the integers (its own inverse)."""

    total: int

    def apply(self, x: Point) -> Point:
        if not isinstance(x, Int):
            raise VariantMismatch(f"{self} cannot act on {type(x).__name__}")
        return Int(self.total - x.value)

    def inverse(self) -> "ReflectInt":
        return self

    def __str__(self) -> str:
        return f"refl({self.total}-n)"


@dataclass(frozen=True)
class PermutationTable(Generator):
    """A finite permutation, extended by the identity off its listed points.

    The constructor does not validate; use :meth:`is_bijection` (the partial
    action verifier relies on being able to build corrupted tables).
    """

    pairs: tuple[tuple[Point, Point], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", tuple(sorted(self.pairs, key=lambda p: point_key(p[0]))))

    @classmethod
    def from_mapping(cls, mapping: dict) -> "PermutationTable":
        return cls(tuple(mapping.items()))

    @classmethod
    def cycle(cls, points: Sequence[Point]) -> "PermutationTable":
        n = len(points)
        return cls(tuple((points[i], points[(i + 1) % n]) for i in range(n)))

    @cached_property
    def forward(self) -> dict:
        return dict(self.pairs)

    def is_bijection(self) -> bool:
        dom = {a for a, _ in self.pairs}
        rng = [b for _, b in self.pairs]
        return len(dom) == len(self.pairs) and set(rng) == dom and len(set(rng)) == len(rng)

    def apply(self, x: Point) -> Point:
        return self.forward.get(x, x)

    def inverse(self) -> "PermutationTable":
        return PermutationTable(tuple((b, a) for a, b in self.pairs))

    def __str__(self) -> str:
        return "perm{" + ",".join(f"{a}->{b}" for a, b in self.pairs if a != b) + "}"


@dataclass(frozen=True)
class Shift(Generator):
    """Move coordinate ``n`` of a bit sequence to coordinate ``n + offset``."""

    offset: int

    def apply(self, x: Point) -> Point:
        if not isinstance(x, BitSeq):
            raise VariantMismatch(f"{self} cannot act on {type(x).__name__}")
        return BitSeq(frozenset(i + self.offset for i in x.support))

    def inverse(self) -> "Shift":
        return Shift(-self.offset)

    def __str__(self) -> str:
        return f"shift({self.offset:+d})"


@dataclass(frozen=True)
class ReverseMask(Generator):
    """Flip the bits on a finite set of coordinates (addition mod 2)."""

    mask: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "mask", frozenset(self.mask))

    def apply(self, x: Point) -> Point:
        if not isinstance(x, BitSeq):
            raise VariantMismatch(f"{self} cannot act on {type(x).__name__}")
        return BitSeq(x.support ^ self.mask)

    def inverse(self) -> "ReverseMask":
        return self

    def __str__(self) -> str:
        return "rev{" + ",".join(map(str, sorted(self.mask))) + "}"


# ---------------------------------------------------------------------------
# words


@dataclass(frozen=True)
class GroupWord:
    """A finite product of generators and their inverses, applied left to right."""

    letters: tuple[tuple[Generator, int], ...] = ()

    def __post_init__(self) -> None:
        for _, s in self.letters:
            if s not in (1, -1):
                raise ValueError("letter signs must be +1 or -1")

    @classmethod
    def of(cls, *gens: Generator) -> "GroupWord":
        return cls(tuple((g, 1) for g in gens))

    def apply(self, x: Point) -> Point:
        for g, s in self.letters:
            x = g.apply(x) if s == 1 else g.inverse().apply(x)
        return x

    __call__ = apply

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((g, -s) for g, s in reversed(self.letters)))

    def __add__(self, other: "GroupWord") -> "GroupWord":
        """``w + v`` applies ``w`` first, then ``v``."""
        return GroupWord(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "e"
        return "·".join(str(g) if s == 1 else f"{g}^-1" for g, s in self.letters)


IDENTITY = GroupWord()


def as_word(g: "GroupWord | Generator") -> GroupWord:
    if isinstance(g, GroupWord):
        return g
    if isinstance(g, Generator):
        return GroupWord.of(g)
    raise TypeError(f"expected a GroupWord or Generator, got {g!r}")


def symmetrize(words: Iterable["GroupWord | Generator"]) -> list[GroupWord]:
    """``H ∪ H⁻¹`` with duplicates removed, original order first."""
    out: list[GroupWord] = []
    for w in map(as_word, words):
        for v in (w, w.inverse()):
            if v not in out:
                out.append(v)
    return out


def apply(w: "GroupWord | Generator", x: Point) -> Point:
    return as_word(w).apply(x)


# ---------------------------------------------------------------------------
# spaces


class SpaceSpec:
    """Decidable membership predicate for Ω inside Ω*."""

    def __contains__(self, x: object) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class Everything(SpaceSpec):
    def __contains__(self, x: object) -> bool:
        return True

    def __str__(self) -> str:
        return "Ω*"


@dataclass(frozen=True)
class Integers(SpaceSpec):
    def __contains__(self, x: object) -> bool:
        return isinstance(x, Int)

    def __str__(self) -> str:
        return "Z"


@dataclass(frozen=True)
class Interval(SpaceSpec):
    """Closed interval ``[lo, hi]`` of reals (``Quad``/``Int`` points)."""

    lo: Fraction
    hi: Fraction
    half_open: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))

    def __contains__(self, x: object) -> bool:
        if isinstance(x, Int):
            x = Quad(x.value)
        if not isinstance(x, Quad):
            return False
        if x.cmp(self.lo) < 0:
            return False
        c = x.cmp(self.hi)
        return c < 0 if self.half_open else c <= 0

    def __str__(self) -> str:
        return f"[{self.lo},{self.hi}{')' if self.half_open else ']'}"


@dataclass(frozen=True)
class FiniteSpace(SpaceSpec):
    points: frozenset

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", frozenset(self.points))

    def __contains__(self, x: object) -> bool:
        return x in self.points

    def __iter__(self) -> Iterator[Point]:
        return iter(sorted_points(self.points))

    def __len__(self) -> int:
        return len(self.points)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, sorted_points(self.points))) + "}"


@dataclass(frozen=True)
class SupportWithin(SpaceSpec):
    """Bit sequences whose ones lie in a given index set (``None`` = any finite support)."""

    indices: frozenset[int] | None = None

    def __contains__(self, x: object) -> bool:
        if not isinstance(x, BitSeq):
            return False
        return self.indices is None or x.support <= self.indices

    def __str__(self) -> str:
        if self.indices is None:
            return "bits"
        return "bits⊆{" + ",".join(map(str, sorted(self.indices))) + "}"


def restricted(w: "GroupWord | Generator", x: Point, space: SpaceSpec) -> Point | None:
    """``θ_w(x)``: the image if both ``x`` and ``w x`` lie in Ω, else ``None``."""
    if x not in space:
        return None
    y = apply(w, x)
    return y if y in space else None


# ---------------------------------------------------------------------------
# orbit closures


@dataclass(frozen=True)
class Finite:
    points: frozenset

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class BudgetExceeded:
    """Semi-decision witness: a repetition-free path inside Ω.

    ``moves[i]`` sends ``path[i]`` to ``path[i+1]``.  ``discovered`` is the
    number of distinct closure points found before giving up.  No claim of
    infinitude is made.
    """

    path: tuple
    moves: tuple
    discovered: int


ClosureResult = Union[Finite, BudgetExceeded]


def partial_orbit_closure(
    H: Iterable["GroupWord | Generator"],
    x: Point,
    space: SpaceSpec,
    budget: int = 1000,
) -> ClosureResult:
    """Breadth-first ``G_{H,x}``: points reachable from ``x`` by moves from ``H`` staying in Ω.

    ``H`` is used as given, without adding inverses.
    """
    if x not in space:
        raise ValueError(f"start point {x} is not in {space}")
    words = [as_word(h) for h in H]
    parent: dict = {x: None}
    last = x
    queue = deque([x])
    while queue:
        y = queue.popleft()
        for h in words:
            z = h.apply(y)
            if z in parent or z not in space:
                continue
            if len(parent) >= budget:
                return _budget_witness(parent, last)
            parent[z] = (y, h)
            last = z
            queue.append(z)
    return Finite(frozenset(parent))


def _budget_witness(parent: dict, last: Point) -> BudgetExceeded:
    path, moves = [last], []
    node = last
    while parent[node] is not None:
        prev, h = parent[node]
        path.append(prev)
        moves.append(h)
        node = prev
    return BudgetExceeded(tuple(reversed(path)), tuple(reversed(moves)), len(parent))


R = Quad(0, 1)  # sqrt(2)/4, the irrational step of the interval example


def interval_walk(n: int, r: Quad = R) -> list[Quad]:
    """Greedy walk in ``[0, 1]``: step ``+r`` when it stays inside, else ``-1/2``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    unit = Interval(0, 1)
    xs = [Quad(0)]
    for _ in range(n):
        up = xs[-1] + r
        xs.append(up if up in unit else xs[-1] - Fraction(1, 2))
    assert all(v in unit for v in xs)
    return xs


def move_graph_components(
    omega: Iterable[Point], gens: Iterable["GroupWord | Generator"]
) -> list[frozenset]:
    """Connected components of ``x ~ g x`` with both endpoints in the finite set ``omega``."""
    pts = sorted_points(set(omega))
    member = set(pts)
    words = [as_word(g) for g in gens]
    graph = nx.Graph()
    graph.add_nodes_from(pts)
    for x in pts:
        for w in words:
            y = w.apply(x)
            if y in member and y != x:
                graph.add_edge(x, y)
    comps = [frozenset(c) for c in nx.connected_components(graph)]
    return sorted(comps, key=lambda c: point_key(min(c, key=point_key)))


def verify_partial_action_axioms(
    space: SpaceSpec,
    gens: Iterable["GroupWord | Generator"],
    sample: Iterable[Point],
) -> CheckReport:
    """Check PA1-PA3 for the restriction ``θ_g`` of the full action on a sample of Ω.

    The tested group elements are the identity, every generator and its
    inverse.  PA3 is tested on all ordered pairs of those elements.
    """
    rep = CheckReport("partial-action axioms")
    pts = sorted_points(set(sample))
    words = [IDENTITY] + symmetrize(gens)
    undefined: dict[str, list[str]] = {}

    for x in pts:
        rep.checked += 1
        if x not in space:
            rep.fail(f"sample point {x} is not in {space}")
            continue
        if IDENTITY.apply(x) != x:
            rep.fail(f"PA1: θ_e({x}) != {x}")

    for w in words:
        inv = w.inverse()
        images: dict = {}
        for x in pts:
            if x not in space:
                continue
            rep.checked += 1
            y = restricted(w, x, space)
            if y is None:
                undefined.setdefault(str(w), []).append(str(x))
            # PA2: x ∈ Dom θ_w  <=>  x ∈ Range θ_{w⁻¹}
            in_range = False
            z = apply(w, x)
            if z in space and apply(inv, z) == x:
                in_range = True
            if (y is not None) != in_range:
                rep.fail(f"PA2: {x} in Dom θ_{w} is {y is not None} but in Range θ_{inv} is {in_range}")
            if y is not None:
                if y in images and images[y] != x:
                    rep.fail(f"PA2: θ_{w} is not injective ({images[y]} and {x} both map to {y})")
                images[y] = x

    for g in words:
        for h in words:
            hg = g + h
            for x in pts:
                y = restricted(g, x, space)
                if y is None:
                    continue
                z = restricted(h, y, space)
                if z is None:
                    continue
                rep.checked += 1
                direct = restricted(hg, x, space)
                if direct is None:
                    rep.fail(f"PA3: {x} not in Dom θ_({hg})")
                elif direct != z:
                    rep.fail(f"PA3: θ_({hg})({x}) = {direct} but θ_{h}(θ_{g}({x})) = {z}")

    rep.data["undefined"] = undefined
    return rep


def image_of_set(w: "GroupWord | Generator", A, space: SpaceSpec | None = None):
    """Pointwise image ``wA``; ``None`` if some image point leaves Ω.

    Sets that know how to translate themselves (integer sets with a
    ``translate`` method) accept words made only of integer translations.
    """
    w = as_word(w)
    if isinstance(A, (set, frozenset)):
        img = frozenset(w.apply(x) for x in A)
        if space is not None and any(y not in space for y in img):
            return None
        return img
    if hasattr(A, "translate"):
        total = Fraction(0)
        for g, s in w.letters:
            if not isinstance(g, TranslateRational) or g.step.denominator != 1:
                raise VariantMismatch(f"{g} is not an integer translation")
            total += s * g.step
        return A.translate(int(total))
    raise TypeError(f"cannot take the image of {A!r}")
