"""Equidecomposability of finite sets, ray decompositions and paradox witnesses."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

from .action import (
    BitSeq,
    GroupWord,
    Point,
    ReverseMask,
    Shift,
    SpaceSpec,
    VariantMismatch,
    as_word,
    point_key,
    sorted_points,
)


class RepeatedPoint(ValueError):
    pass


class NoMoveFits(ValueError):
    def __init__(self, n: int):
        super().__init__(f"no listed move sends prefix[{n}] to prefix[{n + 1}] inside the space")
        self.n = n


class TruncationTooShallow(ValueError):
    pass


@dataclass(frozen=True)
class Witness:
    """Pieces of a source set paired with the word moving each piece."""

    pieces: tuple[tuple[object, GroupWord], ...]

    def __str__(self) -> str:
        parts = []
        for piece, w in self.pieces:
            shown = (
                "{" + ",".join(map(str, sorted_points(piece))) + "}"
                if isinstance(piece, frozenset)
                else str(piece)
            )
            parts.append(f"{shown} --{w}-->")
        return "; ".join(parts)


# ---------------------------------------------------------------------------
# finite sets


def _max_matching(left: list, adj: dict[object, list]) -> dict:
    """Kuhn's augmenting paths, neighbours tried in list order."""
    match_right: dict = {}

    def augment(u, seen: set) -> bool:
        for v in adj[u]:
            if v in seen:
                continue
            seen.add(v)
            if v not in match_right or augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    for u in left:
        augment(u, set())
    return {u: v for v, u in match_right.items()}


def equidecomposable(
    A: Iterable[Point],
    B: Iterable[Point],
    S: Sequence["GroupWord"],
    space: SpaceSpec,
) -> Witness | None:
    """Witness that ``A`` and ``B`` are equidecomposable using the words ``S``, or ``None``.

    On finite sets this amounts to a perfect matching in the bipartite graph
    with an edge ``a - b`` whenever some word sends ``a`` to ``b``.
    """
    left, right = sorted_points(set(A)), sorted_points(set(B))
    if len(left) != len(right):
        return None
    words = [as_word(s) for s in S]
    right_set = set(right)
    adj: dict[object, list] = {}
    via: dict[tuple, GroupWord] = {}
    for a in left:
        adj[a] = []
        for w in words:
            b = w.apply(a)
            if b in right_set and b in space and (a, b) not in via:
                via[(a, b)] = w
                adj[a].append(b)
        adj[a].sort(key=point_key)
    matching = _max_matching(left, adj)
    if len(matching) != len(left):
        return None
    groups: dict[GroupWord, set] = {}
    for a in left:
        groups.setdefault(via[(a, matching[a])], set()).add(a)
    order = {w: i for i, w in enumerate(words)}
    pieces = tuple((frozenset(p), w) for w, p in sorted(groups.items(), key=lambda kv: order[kv[0]]))
    return Witness(pieces)


def brute_force_equidecomposable(A, B, S, space: SpaceSpec) -> bool:
    """Independent oracle: try every bijection ``A -> B``."""
    left, right = sorted_points(set(A)), sorted_points(set(B))
    if len(left) != len(right):
        return False
    words = [as_word(s) for s in S]
    ok = {(a, b) for a in left for b in right for w in words if w.apply(a) == b and b in space}
    return any(all((a, b) in ok for a, b in zip(left, perm)) for perm in itertools.permutations(right))


def verify_witness(A, B, w: Witness, space: SpaceSpec) -> bool:
    """Exact check that the pieces partition ``A`` and their images partition ``B`` inside Ω."""
    A, B = set(A), set(B)
    seen: set = set()
    images: set = set()
    for piece, word in w.pieces:
        piece = set(piece)
        if piece & seen:
            return False
        seen |= piece
        img = {word.apply(x) for x in piece}
        if len(img) != len(piece) or img & images:
            return False
        if any(y not in space for y in img):
            return False
        images |= img
    return seen == A and images == B


# ---------------------------------------------------------------------------
# rays


@dataclass
class RayDecomposition:
    pieces: dict[GroupWord, list]
    images: dict[GroupWord, list]
    boundary: object
    verified: bool
    notes: list[str] = field(default_factory=list)


def ray_decomposition(
    prefix: Sequence[Point], moves: Sequence["GroupWord"], space: SpaceSpec
) -> RayDecomposition:
    """Split a finite ray prefix into pieces ``A_h`` by the move linking each point to the next.

    The check is that the moved pieces tile ``prefix[1:]``, the finite shadow
    of a ray being equidecomposable with itself minus its first point.  The
    last point has no successor in the prefix: it is given the first move that
    keeps it inside Ω (if any), and its image is exempt from the check.
    """
    if len(set(prefix)) != len(prefix):
        raise RepeatedPoint("prefix repeats a point")
    words = [as_word(m) for m in moves]
    labels: list[GroupWord | None] = []
    for n in range(len(prefix) - 1):
        h = next(
            (w for w in words if w.apply(prefix[n]) == prefix[n + 1] and prefix[n + 1] in space),
            None,
        )
        if h is None:
            raise NoMoveFits(n)
        labels.append(h)
    boundary = None
    if prefix:
        last = prefix[-1]
        tail = next((w for w in words if w.apply(last) in space), None)
        labels.append(tail)
        if tail is not None:
            boundary = tail.apply(last)

    pieces: dict[GroupWord, list] = {}
    images: dict[GroupWord, list] = {}
    for x, h in zip(prefix, labels):
        if h is None:
            continue
        pieces.setdefault(h, []).append(x)
        images.setdefault(h, []).append(h.apply(x))

    core = [h.apply(x) for x, h in zip(prefix[:-1], labels[:-1])]
    verified = len(core) == len(set(core)) and set(core) == set(prefix[1:])
    notes = [f"truncated at {len(prefix)} points; image of the last point ({boundary}) exempt"]
    return RayDecomposition(pieces, images, boundary, verified, notes)


# ---------------------------------------------------------------------------
# cylinder sets of bit sequences


@dataclass(frozen=True)
class Cylinder:
    """Bit sequences with prescribed values on finitely many coordinates,
    optionally constant (``tail_bit``) on every coordinate ``>= tail_from``.
    """

    fixed: tuple[tuple[int, int], ...] = ()
    tail_from: int | None = None
    tail_bit: int = 1

    @classmethod
    def of(cls, fixed: Mapping[int, int] | None = None, tail_from: int | None = None, tail_bit: int = 1):
        return cls(tuple(sorted((fixed or {}).items())), tail_from, tail_bit)

    def coordinates(self) -> set[int]:
        cs = {i for i, _ in self.fixed}
        if self.tail_from is not None:
            cs.add(self.tail_from)
        return cs

    def contains_window(self, bits: Mapping[int, int], hi: int) -> bool:
        """Membership judged on coordinates ``< hi`` only (the tail is truncated there)."""
        for i, b in self.fixed:
            if bits.get(i, 0) != b:
                return False
        if self.tail_from is not None:
            for i in range(self.tail_from, hi):
                if bits.get(i, 0) != self.tail_bit:
                    return False
        return True

    def __str__(self) -> str:
        parts = [f"x{i}={b}" for i, b in self.fixed]
        if self.tail_from is not None:
            parts.append(f"x{self.tail_from}..={self.tail_bit}")
        return "[" + ",".join(parts) + "]"


SetDescription = Union[frozenset, Cylinder]


@dataclass(frozen=True)
class ParadoxWitness:
    E: SetDescription
    A: SetDescription
    B: SetDescription
    wA: Witness
    wB: Witness
    truncation: int = 8
    space: SpaceSpec | None = None


def williamson_witness(depth: int = 8) -> ParadoxWitness:
    """Heads from toss 2 on, split by toss 1; shifts and a toss-1 reversal rebuild the whole."""
    E = Cylinder.of({}, tail_from=2)
    A = Cylinder.of({1: 1}, tail_from=2)
    B = Cylinder.of({1: 0}, tail_from=2)
    right = GroupWord.of(Shift(1))
    wA = Witness(((A, right),))
    wB = Witness(((B, GroupWord.of(ReverseMask({1}), Shift(1))),))
    return ParadoxWitness(E, A, B, wA, wB, depth)


def _word_window(word: GroupWord, bits: dict[int, int]) -> tuple[dict[int, int], int]:
    """Apply shifts/reversals to a window assignment; returns (bits, net offset)."""
    offset = 0
    for g, s in word.letters:
        g = g if s == 1 else g.inverse()
        if isinstance(g, Shift):
            bits = {i + g.offset: b for i, b in bits.items()}
            offset += g.offset
        elif isinstance(g, ReverseMask):
            bits = dict(bits)
            for i in g.mask:
                if i in bits:
                    bits[i] ^= 1
        else:
            raise VariantMismatch(f"{g} does not act on cylinder windows")
    return bits, offset


def _reach(word: GroupWord) -> int:
    total = 0
    for g, _ in word.letters:
        if isinstance(g, Shift):
            total += abs(g.offset)
    return total


def paradox_witness_check(pw: ParadoxWitness) -> bool:
    """Verify a paradoxical decomposition ``A, B ⊆ E`` with ``A ≅ E ≅ B``.

    Finite set descriptions are checked exactly (and always fail: no finite
    set is paradoxical).  Cylinder descriptions are checked on every 0/1
    assignment of a finite coordinate window of ``truncation`` core
    coordinates; coordinates the words drag in from outside the window are
    exempt.
    """
    if all(isinstance(s, frozenset) for s in (pw.E, pw.A, pw.B)):
        return _finite_paradox(pw)
    if not all(isinstance(s, Cylinder) for s in (pw.E, pw.A, pw.B)):
        raise TypeError("mixed finite and cylinder descriptions")
    return _cylinder_paradox(pw)


def _finite_paradox(pw: ParadoxWitness) -> bool:
    from .action import Everything

    space = pw.space or Everything()
    E, A, B = pw.E, pw.A, pw.B
    if A & B or not (A | B) <= E:
        return False
    return verify_witness(A, E, pw.wA, space) and verify_witness(B, E, pw.wB, space)


def _cylinder_paradox(pw: ParadoxWitness) -> bool:
    sets = [pw.E, pw.A, pw.B] + [p for w in (pw.wA, pw.wB) for p, _ in w.pieces]
    coords = set().union(*(s.coordinates() for s in sets))
    for w in (pw.wA, pw.wB):
        for _, word in w.pieces:
            for g, _ in word.letters:
                if isinstance(g, ReverseMask):
                    coords |= set(g.mask)
    c0 = min(coords) if coords else 0
    core_hi = c0 + pw.truncation
    if any(c >= core_hi for c in coords):
        raise TruncationTooShallow(
            f"constraints reach coordinate {max(coords)} but depth {pw.truncation} stops at {core_hi - 1}"
        )
    reach = max((_reach(word) for w in (pw.wA, pw.wB) for _, word in w.pieces), default=0)
    lo, hi = c0 - reach, core_hi + reach
    window = list(range(lo, hi))
    core = range(c0, core_hi)

    assignments = [dict(zip(window, bits)) for bits in itertools.product((0, 1), repeat=len(window))]

    def members(s: Cylinder) -> list[dict]:
        return [a for a in assignments if s.contains_window(a, core_hi)]

    def project(bits: Mapping[int, int]) -> tuple:
        return tuple(bits.get(i, 0) for i in core)

    A_m, B_m = members(pw.A), members(pw.B)
    E_core = {project(a) for a in members(pw.E)}
    # disjointness and containment
    if any(pw.B.contains_window(a, core_hi) for a in A_m):
        return False
    if any(not pw.E.contains_window(a, core_hi) for a in A_m + B_m):
        return False

    for source, wit in ((pw.A, pw.wA), (pw.B, pw.wB)):
        src = members(source)
        # pieces partition the source
        for a in src:
            if sum(p.contains_window(a, core_hi) for p, _ in wit.pieces) != 1:
                return False
        for p, _ in wit.pieces:
            if any(not source.contains_window(a, core_hi) for a in members(p)):
                return False
        seen: dict[tuple, int] = {}
        for k, (p, word) in enumerate(wit.pieces):
            for a in members(p):
                img, _ = _word_window(word, a)
                key = project(img)
                if seen.setdefault(key, k) != k:
                    return False
        if set(seen) != E_core:
            return False
    return True
