"""Finitely additive ``[0, ∞]``-valued measures on finite algebras.

Covers the component construction of invariant measures on a finite space,
the Rényi order, the level stack behind full conditional probabilities, and
the uniform stage measures indexed by ``(H, B)`` pairs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from typing import Container, Iterable, Iterator, Sequence

from .action import (
    BudgetExceeded,
    GroupWord,
    Point,
    SpaceSpec,
    as_word,
    move_graph_components,
    partial_orbit_closure,
    point_key,
    sorted_points,
    symmetrize,
)


class EmptyTarget(ValueError):
    pass


class ClosureBudgetExceeded(RuntimeError):
    def __init__(self, witness: BudgetExceeded):
        super().__init__(f"orbit closure exceeded budget after {witness.discovered} points")
        self.witness = witness


# ---------------------------------------------------------------------------
# extended non-negative rationals


class _Undefined:
    """Marker for ``0·∞``, ``∞·0`` and ``0/0``."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "UNDEFINED"

    __str__ = __repr__

    def __reduce__(self):
        return (_Undefined, ())


UNDEFINED = _Undefined()


@total_ordering
@dataclass(frozen=True)
class ExtRat:
    """A value in ``ℚ≥0 ∪ {∞}``; ``value is None`` encodes ``∞``."""

    value: Fraction | None

    def __post_init__(self) -> None:
        if self.value is not None:
            v = Fraction(self.value)
            if v < 0:
                raise ValueError("ExtRat is non-negative")
            object.__setattr__(self, "value", v)

    @classmethod
    def of(cls, x) -> "ExtRat":
        if isinstance(x, ExtRat):
            return x
        if isinstance(x, str):
            return INF if x in ("inf", "∞") else cls(Fraction(x))
        return cls(Fraction(x))

    @property
    def is_inf(self) -> bool:
        return self.value is None

    def __add__(self, other) -> "ExtRat":
        other = ExtRat.of(other)
        if self.is_inf or other.is_inf:
            return INF
        return ExtRat(self.value + other.value)

    __radd__ = __add__

    def __mul__(self, other):
        other = ExtRat.of(other)
        if self.is_inf or other.is_inf:
            if self == ZERO or other == ZERO:
                return UNDEFINED
            return INF
        return ExtRat(self.value * other.value)

    def __truediv__(self, other):
        other = ExtRat.of(other)
        if other == ZERO:
            return UNDEFINED if self == ZERO else INF
        if other.is_inf:
            return UNDEFINED if self.is_inf else ZERO
        if self.is_inf:
            return INF
        return ExtRat(self.value / other.value)

    def __lt__(self, other) -> bool:
        other = ExtRat.of(other)
        if self.is_inf:
            return False
        if other.is_inf:
            return True
        return self.value < other.value

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.value is not None and self.value == other
        if not isinstance(other, ExtRat):
            return NotImplemented
        return self.value == other.value

    def __hash__(self) -> int:
        return hash(self.value)

    def __str__(self) -> str:
        return "inf" if self.is_inf else str(self.value)

    def __repr__(self) -> str:
        return f"ExtRat({self})"


INF = ExtRat(None)
ZERO = ExtRat(Fraction(0))
ONE = ExtRat(Fraction(1))


def ext_str(x) -> str:
    """Render a Fraction, ExtRat or UNDEFINED as an exact string."""
    if x is UNDEFINED:
        return "undefined"
    return str(x)


# ---------------------------------------------------------------------------
# finite algebras


@dataclass(frozen=True)
class FinAlgebra:
    """Algebra of unions of blocks of a finite partition.  Members are bitmasks over the atoms."""

    atoms: tuple[frozenset, ...]

    def __post_init__(self) -> None:
        atoms = tuple(
            sorted((frozenset(a) for a in self.atoms), key=lambda a: point_key(min(a, key=point_key)))
        )
        if any(not a for a in atoms):
            raise ValueError("atoms must be nonempty")
        union: set = set()
        for a in atoms:
            if union & a:
                raise ValueError("atoms overlap")
            union |= a
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def powerset(cls, omega: Iterable[Point]) -> "FinAlgebra":
        return cls(tuple(frozenset([x]) for x in set(omega)))

    @property
    def omega(self) -> frozenset:
        return frozenset().union(*self.atoms)

    @property
    def size(self) -> int:
        return len(self.atoms)

    @property
    def full(self) -> int:
        return (1 << len(self.atoms)) - 1

    def members(self) -> range:
        return range(1 << len(self.atoms))

    def nonempty(self) -> range:
        return range(1, 1 << len(self.atoms))

    def to_set(self, mask: int) -> frozenset:
        return frozenset().union(*(a for i, a in enumerate(self.atoms) if mask >> i & 1))

    def atom_indices(self, mask: int) -> Iterator[int]:
        return (i for i in range(len(self.atoms)) if mask >> i & 1)

    def mask_of(self, S: Iterable[Point]) -> int | None:
        """Bitmask of ``S`` if it is a member of the algebra, else ``None``."""
        S = frozenset(S)
        mask, covered = 0, set()
        for i, a in enumerate(self.atoms):
            inter = a & S
            if inter:
                if inter != a:
                    return None
                mask |= 1 << i
                covered |= a
        return mask if covered == S else None

    def image(self, mask: int, word: "GroupWord", space: SpaceSpec | None = None) -> int | None:
        """Mask of ``word(member)`` if it stays inside Ω and is a member, else ``None``."""
        word = as_word(word)
        img = [word.apply(x) for x in self.to_set(mask)]
        omega = self.omega
        if any(y not in omega or (space is not None and y not in space) for y in img):
            return None
        return self.mask_of(img)


# ---------------------------------------------------------------------------
# measures


@dataclass(frozen=True)
class Measure:
    algebra: FinAlgebra
    weights: tuple[ExtRat, ...]

    def __post_init__(self) -> None:
        if len(self.weights) != self.algebra.size:
            raise ValueError("one weight per atom")
        object.__setattr__(self, "weights", tuple(ExtRat.of(w) for w in self.weights))

    def __call__(self, mask: int) -> ExtRat:
        total = ZERO
        for i in self.algebra.atom_indices(mask):
            total = total + self.weights[i]
        return total

    def of_set(self, S: Iterable[Point]) -> ExtRat:
        mask = self.algebra.mask_of(S)
        if mask is None:
            raise KeyError("set is not a member of the algebra")
        return self(mask)

    @classmethod
    def from_points(cls, algebra: FinAlgebra, point_weights: dict) -> "Measure":
        ws = []
        for a in algebra.atoms:
            total = ZERO
            for x in a:
                total = total + ExtRat.of(point_weights.get(x, 0))
            ws.append(total)
        return cls(algebra, tuple(ws))

    def is_invariant(self, words: Iterable["GroupWord"], space: SpaceSpec | None = None) -> bool:
        for w in words:
            for m in self.algebra.members():
                img = self.algebra.image(m, w, space)
                if img is not None and self(img) != self(m):
                    return False
        return True

    def __str__(self) -> str:
        return "[" + ", ".join(map(str, self.weights)) + "]"


def invariant_point_weights(omega: Iterable[Point], gens, E: Iterable[Point]) -> dict:
    """Per-point weights of the canonical invariant measure with mass 1 on ``E``.

    Each of the ``k`` move-graph components meeting ``E`` gets mass ``1/k`` on
    its part of ``E``, spread uniformly there and extended at the same
    per-point weight across the whole component.  Other components get 0.
    """
    omega = set(omega)
    E = set(E)
    if not E:
        raise EmptyTarget("target set is empty")
    if not E <= omega:
        raise ValueError("target must lie inside omega")
    comps = move_graph_components(omega, gens)
    meeting = [c for c in comps if c & E]
    k = len(meeting)
    weights: dict = {x: Fraction(0) for x in omega}
    for c in meeting:
        w = Fraction(1, k * len(c & E))
        for x in c:
            weights[x] = w
    return weights


def invariant_unit_measure(omega: Iterable[Point], gens, E: Iterable[Point]) -> Measure:
    omega = set(omega)
    alg = FinAlgebra.powerset(omega)
    return Measure.from_points(alg, invariant_point_weights(omega, gens, E))


def renyi_precedes(mu: Measure, nu: Measure, f: FinAlgebra | None = None) -> bool:
    """``mu ≺ nu``: every ``nu``-positive member has infinite ``mu``-measure.

    Atoms suffice: a positive member contains a positive atom, which must
    itself be infinite under ``mu``.
    """
    f = f or mu.algebra
    return all(mu.weights[i].is_inf for i in range(f.size) if nu.weights[i] > ZERO)


@dataclass
class LevelStack:
    """Measures ``mu_1 ≻ mu_2 ≻ ... ≻ mu_N`` (Rényi order) on one algebra."""

    algebra: FinAlgebra
    levels: list[Measure]
    nulls: list[int] = field(default_factory=list)

    def index_of(self, mask: int) -> int:
        """0-based level at which a nonempty member has finite positive measure."""
        if mask == 0:
            raise ValueError("the empty set has no level")
        for n, mu in enumerate(self.levels):
            if mu(mask) > ZERO:
                return n
        raise ValueError("member is null at every level")

    @property
    def N(self) -> int:
        return len(self.levels)

    def check(self) -> list[str]:
        problems = []
        for n in range(len(self.levels) - 1):
            if not renyi_precedes(self.levels[n + 1], self.levels[n], self.algebra):
                problems.append(f"level {n + 2} does not precede level {n + 1}")
        last = self.levels[-1]
        if any(last(m) == ZERO for m in self.algebra.nonempty()):
            problems.append("a nonempty member is null at the last level")
        for m in self.algebra.nonempty():
            n = self.index_of(m)
            v = self.levels[n](m)
            if not (ZERO < v and not v.is_inf):
                problems.append(f"member {m} has no level with finite positive measure")
        return problems


def build_level_stack(
    omega: Iterable[Point],
    gens,
    f: FinAlgebra | None = None,
    first_target: Iterable[Point] | None = None,
) -> LevelStack:
    """Stack of invariant measures from which a full conditional probability is read off.

    ``mu_1`` is the canonical invariant measure with unit mass on
    ``first_target`` (default Ω), rescaled to a probability.  While some
    nonempty member is ``mu_n``-null, let ``E`` be the largest such member,
    take the canonical invariant ``nu`` with ``nu(E) = 1`` and set
    ``mu_{n+1}`` to ``nu`` on atoms inside ``E`` and ``∞`` elsewhere.
    """
    omega = set(omega)
    f = f or FinAlgebra.powerset(omega)
    if f.omega != omega:
        raise ValueError("algebra must partition omega")
    target = set(first_target) if first_target is not None else omega
    pw = invariant_point_weights(omega, gens, target)
    total = sum(pw.values())
    mu = Measure.from_points(f, {x: w / total for x, w in pw.items()})
    levels, nulls = [mu], []
    while True:
        null = 0
        for i, w in enumerate(mu.weights):
            if w == ZERO:
                null |= 1 << i
        if null == 0:
            break
        nulls.append(null)
        E = f.to_set(null)
        nu = Measure.from_points(f, invariant_point_weights(omega, gens, E))
        mu = Measure(
            f,
            tuple(nu.weights[i] if null >> i & 1 else INF for i in range(f.size)),
        )
        levels.append(mu)
        if len(levels) > f.size + 1:
            raise RuntimeError("level construction failed to terminate")
    return LevelStack(f, levels, nulls)


# ---------------------------------------------------------------------------
# stage measures indexed by (H, B)


@dataclass(frozen=True)
class NetIndex:
    H: tuple[GroupWord, ...]
    B: frozenset

    def __post_init__(self) -> None:
        object.__setattr__(self, "H", tuple(as_word(h) for h in self.H))
        object.__setattr__(self, "B", frozenset(self.B))
        if not self.B:
            raise ValueError("B must be nonempty")

    def precedes(self, other: "NetIndex") -> bool:
        """``(H, B) ⪯ (J, C)`` iff ``H ⊆ J`` and ``B ⊆ C``."""
        return set(self.H) <= set(other.H) and self.B <= other.B


def stage_support(idx: NetIndex, space: SpaceSpec, budget: int = 1000) -> frozenset:
    """``B'``: union over ``x ∈ B`` of the closures under the symmetrized ``H``."""
    Hs = symmetrize(idx.H)
    out: set = set()
    for x in sorted_points(idx.B):
        res = partial_orbit_closure(Hs, x, space, budget)
        if isinstance(res, BudgetExceeded):
            raise ClosureBudgetExceeded(res)
        out |= res.points
    return frozenset(out)


def net_stage_measure(idx: NetIndex, U: Container, space: SpaceSpec, budget: int = 1000) -> Fraction:
    """Uniform measure of ``U`` on the closed-up stage ``B'``: ``|U ∩ B'| / |B'|``."""
    Bp = stage_support(idx, space, budget)
    return Fraction(sum(1 for x in Bp if x in U), len(Bp))


@dataclass(frozen=True)
class Stabilized:
    ordering: str  # "less", "equal" or "greater"
    tail: int

    def __str__(self) -> str:
        return f"stabilized({self.ordering}, last {self.tail} stages)"


@dataclass(frozen=True)
class Unstable:
    signs: tuple[str, ...]

    def __str__(self) -> str:
        return "unstable(" + ",".join(self.signs) + ")"


def net_compare(
    U: Container,
    V: Container,
    schedule: Sequence[NetIndex],
    space: SpaceSpec,
    budget: int = 1000,
    min_tail: int | None = None,
) -> Stabilized | Unstable:
    """Compare stage measures of ``U`` and ``V`` along an increasing schedule.

    Stabilization means the sign is constant on the last ``min_tail`` stages
    (default: half the schedule, at least one).  This is evidence about the
    limit, not a proof.
    """
    if not schedule:
        raise ValueError("schedule must be nonempty")
    for a, b in itertools.pairwise(schedule):
        if not a.precedes(b):
            raise ValueError("schedule must be increasing")
    signs = []
    for idx in schedule:
        pu = net_stage_measure(idx, U, space, budget)
        pv = net_stage_measure(idx, V, space, budget)
        signs.append("less" if pu < pv else "greater" if pu > pv else "equal")
    need = min_tail if min_tail is not None else max(1, len(schedule) // 2)
    tail = 1
    while tail < len(signs) and signs[-tail - 1] == signs[-1]:
        tail += 1
    if tail >= need:
        return Stabilized(signs[-1], tail)
    return Unstable(tuple(signs))
