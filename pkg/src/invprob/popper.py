"""Full conditional probabilities and coherent exchange rates on finite algebras."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .action import SpaceSpec, as_word, sorted_points, symmetrize
from .codec import dump_point, parse_point
from .measures import INF, ONE, UNDEFINED, ZERO, ExtRat, FinAlgebra, LevelStack, ext_str
from .report import CheckReport

EXHAUSTIVE_C1_ATOMS = 10
EXHAUSTIVE_C2_ATOMS = 6
SAMPLED_TRIPLES = 200_000


class InvalidRate(ValueError):
    pass


@dataclass
class PopperTable:
    """``P(A | B)`` for members ``A`` and nonempty ``B``, keyed by bitmask pairs."""

    algebra: FinAlgebra
    entries: dict[tuple[int, int], Fraction]

    def __call__(self, A: int, B: int) -> Fraction:
        return self.entries[(A, B)]

    def prob(self, A, B) -> Fraction:
        """Lookup by point sets instead of masks."""
        a, b = self.algebra.mask_of(A), self.algebra.mask_of(B)
        if a is None or b is None:
            raise KeyError("sets must be members of the algebra")
        return self.entries[(a, b)]

    def to_dict(self) -> dict:
        return {
            "atoms": [[dump_point(x) for x in sorted_points(a)] for a in self.algebra.atoms],
            "entries": {f"{a},{b}": str(v) for (a, b), v in sorted(self.entries.items())},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PopperTable":
        f = FinAlgebra(tuple(frozenset(parse_point(x) for x in atom) for atom in d["atoms"]))
        entries = {}
        for key, v in d["entries"].items():
            a, b = (int(t) for t in key.split(","))
            entries[(a, b)] = Fraction(v)
        return cls(f, entries)


@dataclass
class ExchangeRate:
    """``c(A, B)`` for members ``A`` and nonempty ``B``; values are ExtRat or UNDEFINED."""

    algebra: FinAlgebra
    entries: dict[tuple[int, int], object]

    def __call__(self, A: int, B: int):
        return self.entries[(A, B)]

    def to_dict(self) -> dict:
        return {f"{a},{b}": ext_str(v) for (a, b), v in sorted(self.entries.items())}


def popper_from_levels(L: LevelStack, f: FinAlgebra | None = None) -> PopperTable:
    """``P(A|B) = mu_n(A ∩ B) / mu_n(B)`` with ``n`` the level of ``B``."""
    f = f or L.algebra
    entries = {}
    for B in f.nonempty():
        mu = L.levels[L.index_of(B)]
        denom = mu(B).value
        for A in f.members():
            entries[(A, B)] = mu(A & B).value / denom
    return PopperTable(f, entries)


# ---------------------------------------------------------------------------
# axioms


def _triples(f: FinAlgebra, seed: int, nonempty_last: bool = True):
    if f.size <= EXHAUSTIVE_C2_ATOMS:
        last = f.nonempty() if nonempty_last else f.members()
        for C in last:
            for A in f.members():
                for B in f.members():
                    yield A, B, C
        return
    rng = random.Random(seed)
    top = f.full
    for _ in range(SAMPLED_TRIPLES):
        yield rng.randint(0, top), rng.randint(0, top), rng.randint(1, top)


def verify_popper_axioms(P: PopperTable, seed: int = 0) -> CheckReport:
    """C1 (each ``P(·|B)`` an additive probability) and C2 (the product law)."""
    f = P.algebra
    rep = CheckReport("popper axioms C1/C2")
    exhaustive_c1 = f.size <= EXHAUSTIVE_C1_ATOMS
    if not exhaustive_c1:
        rep.notes.append("C1 checked on sampled members")
    rng = random.Random(seed)
    for B in f.nonempty():
        if P(f.full, B) != 1:
            rep.fail(f"C1: P(Ω|{B}) = {P(f.full, B)}")
        atom_p = [P(1 << i, B) for i in range(f.size)]
        members = f.members() if exhaustive_c1 else [rng.randint(0, f.full) for _ in range(256)]
        for A in members:
            rep.checked += 1
            v = P(A, B)
            if not 0 <= v <= 1:
                rep.fail(f"C1: P({A}|{B}) = {v} outside [0,1]")
            if v != sum((atom_p[i] for i in f.atom_indices(A)), Fraction(0)):
                rep.fail(f"C1: P({A}|{B}) is not the sum of its atoms")
    if f.size > EXHAUSTIVE_C2_ATOMS:
        rep.notes.append(f"C2 checked on {SAMPLED_TRIPLES} sampled triples (seed {seed})")
    for A, B, C in _triples(f, seed):
        rep.checked += 1
        lhs = P(A & B, C)
        if A & C:
            rhs = P(A, C) * P(B, A & C)
            if lhs != rhs:
                rep.fail(f"C2: P({A & B}|{C}) = {lhs} but P({A}|{C})P({B}|{A & C}) = {rhs}")
        elif lhs != 0 or P(A, C) != 0:
            rep.fail(f"C2 (A∩C = ∅): P({A & B}|{C}) = {lhs}, P({A}|{C}) = {P(A, C)}")
    return rep


def redundant_condition_holds(P: PopperTable) -> bool:
    """If ``P(A|B) = P(B|A) = 1`` then ``P(·|A) = P(·|B)``; implied by C1 and C2."""
    f = P.algebra
    for A in f.nonempty():
        for B in f.nonempty():
            if P(A, B) == 1 and P(B, A) == 1:
                if any(P(C, A) != P(C, B) for C in f.members()):
                    return False
    return True


# ---------------------------------------------------------------------------
# exchange rates


def exchange_from_popper(P: PopperTable) -> ExchangeRate:
    """``c(A, B) = P(A | A∪B) / P(B | A∪B)`` with ``x/0 = ∞`` for ``x ≠ 0``."""
    f = P.algebra
    entries = {}
    for B in f.nonempty():
        for A in f.members():
            U = A | B
            entries[(A, B)] = ExtRat(P(A, U)) / ExtRat(P(B, U))
    return ExchangeRate(f, entries)


def verify_exchange_axioms(c: ExchangeRate, seed: int = 0) -> CheckReport:
    """E1 (first-slot additivity), E2 (cocycle law where the product is defined), E3 (``c(B,B) = 1``)."""
    f = c.algebra
    rep = CheckReport("exchange-rate axioms E1-E3")
    skipped, e1_ok = 0, True
    for B in f.nonempty():
        rep.checked += 1
        if c(B, B) != ONE:
            rep.fail(f"E3: c({B},{B}) = {ext_str(c(B, B))}")
        atoms = [c(1 << i, B) for i in range(f.size)]
        if any(a is UNDEFINED for a in atoms):
            rep.fail(f"E1: undefined atom value under B = {B}")
            e1_ok = False
            continue
        for A in f.members():
            rep.checked += 1
            v = c(A, B)
            total = ZERO
            for i in f.atom_indices(A):
                total = total + atoms[i]
            if v is UNDEFINED or v != total:
                rep.fail(f"E1: c({A},{B}) = {ext_str(v)} but its atoms sum to {total}")
                e1_ok = False
    if e1_ok:
        # with E1 in hand, E2 for a union follows from E2 for its atoms, in all
        # three cases c(B,C) = 0, finite positive or ∞; so atoms suffice
        rep.notes.append("E2 checked for atom first arguments (E1 extends it to all members)")
        triples = ((1 << i, B, C) for i in range(f.size) for B in f.nonempty() for C in f.nonempty())
    else:
        triples = ((A, B, C) for A, B, C in _triples(f, seed) if B)
    for A, B, C in triples:
        x, y, z = c(A, B), c(B, C), c(A, C)
        if x is UNDEFINED or y is UNDEFINED:
            skipped += 1
            continue
        prod = x * y
        if prod is UNDEFINED:
            skipped += 1
            continue
        rep.checked += 1
        if prod != z:
            rep.fail(f"E2: c({A},{B})c({B},{C}) = {prod} but c({A},{C}) = {ext_str(z)}")
    rep.data["e2_skipped_undefined"] = skipped
    return rep


def popper_from_exchange(c: ExchangeRate) -> PopperTable:
    """``P(A|B) = c(A ∩ B, B)``; rejects rates failing E1-E3."""
    rep = verify_exchange_axioms(c)
    if not rep.passed:
        raise InvalidRate(rep.violations[0])
    f = c.algebra
    entries = {}
    for B in f.nonempty():
        for A in f.members():
            v = c(A & B, B)
            if v is UNDEFINED or v.is_inf:
                raise InvalidRate(f"c({A & B},{B}) = {ext_str(v)} is not a probability")
            entries[(A, B)] = v.value
    return PopperTable(f, entries)


# ---------------------------------------------------------------------------
# invariance


def _word_images(f: FinAlgebra, gens, space: SpaceSpec | None):
    """``(word, A, gA)`` for every member ``A`` whose image is again a member."""
    for w in symmetrize(gens):
        for A in f.members():
            gA = f.image(A, w, space)
            if gA is not None:
                yield w, A, gA


def verify_strong_invariance_popper(P: PopperTable, gens, space: SpaceSpec | None = None) -> CheckReport:
    """``P(gA | B) = P(A | B)`` whenever ``A`` and ``gA`` are both inside ``B``."""
    f = P.algebra
    rep = CheckReport("strong invariance (popper)")
    for w, A, gA in _word_images(f, gens, space):
        for B in f.nonempty():
            if (A | gA) & ~B & f.full:
                continue
            rep.checked += 1
            if P(gA, B) != P(A, B):
                rep.fail(f"g={w}, A={A}, B={B}: P(gA|B) = {P(gA, B)} but P(A|B) = {P(A, B)}")
    return rep


def verify_strong_invariance_exchange(c: ExchangeRate, gens, space: SpaceSpec | None = None) -> CheckReport:
    """``c(gA, B) = c(A, B)`` whenever ``gA`` lies in Ω."""
    f = c.algebra
    rep = CheckReport("strong invariance (exchange rate)")
    for w, A, gA in _word_images(f, gens, space):
        for B in f.nonempty():
            rep.checked += 1
            if c(gA, B) != c(A, B):
                rep.fail(f"g={w}, A={A}, B={B}: c(gA,B) = {ext_str(c(gA, B))} but c(A,B) = {ext_str(c(A, B))}")
    return rep


def verify_weak_invariance_popper(P: PopperTable, gens, space: SpaceSpec | None = None) -> CheckReport:
    """``P(gA | gB) = P(A | B)`` whenever ``gA`` and ``gB`` are members."""
    f = P.algebra
    rep = CheckReport("weak invariance (popper)")
    for w in symmetrize(gens):
        imgs = {m: f.image(m, w, space) for m in f.members()}
        for B in f.nonempty():
            gB = imgs[B]
            if gB is None or gB == 0:
                continue
            for A in f.members():
                gA = imgs[A]
                if gA is None:
                    continue
                rep.checked += 1
                if P(gA, gB) != P(A, B):
                    rep.fail(f"g={w}, A={A}, B={B}: P(gA|gB) = {P(gA, gB)} but P(A|B) = {P(A, B)}")
    return rep
