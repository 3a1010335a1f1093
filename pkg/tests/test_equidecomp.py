import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invprob.action import (
    IDENTITY,
    Everything,
    FiniteSpace,
    GroupWord,
    Int,
    Integers,
    Interval,
    PermutationTable,
    R,
    ReverseMask,
    Shift,
    TranslateQuad,
    TranslateRational,
    interval_walk,
)
from invprob.equidecomp import (
    Cylinder,
    NoMoveFits,
    ParadoxWitness,
    RepeatedPoint,
    TruncationTooShallow,
    Witness,
    brute_force_equidecomposable,
    equidecomposable,
    paradox_witness_check,
    ray_decomposition,
    verify_witness,
    williamson_witness,
)

Z = Integers()


def ints(*xs):
    return {Int(x) for x in xs}


def test_identity_witness():
    A = ints(1, 2, 3)
    w = equidecomposable(A, A, [IDENTITY], Z)
    assert w is not None and len(w.pieces) == 1 and verify_witness(A, A, w, Z)


def test_shift_witness():
    w = equidecomposable(ints(0, 1), ints(1, 2), [GroupWord.of(TranslateRational(1))], Z)
    assert w == Witness(((frozenset(ints(0, 1)), GroupWord.of(TranslateRational(1))),))


def test_size_mismatch():
    assert equidecomposable(ints(0, 1), ints(0, 1, 2), [IDENTITY], Z) is None


def test_verify_witness_rejects_bad_witnesses():
    A, B = ints(0, 1), ints(1, 2)
    t = GroupWord.of(TranslateRational(1))
    overlapping = Witness(((frozenset(ints(0, 1)), t), (frozenset(ints(1)), t)))
    assert not verify_witness(A, B, overlapping, Z)
    dropped = Witness(((frozenset(ints(0)), t),))
    assert not verify_witness(A, B, dropped, Z)


def _random_instance(rng: random.Random):
    n = rng.randint(0, 6)
    universe = list(range(-6, 7))
    A = ints(*rng.sample(universe, n))
    B = ints(*rng.sample(universe, n))
    k = rng.randint(1, 3)
    S = []
    for _ in range(k):
        kind = rng.random()
        if kind < 0.5:
            S.append(GroupWord.of(TranslateRational(rng.randint(-4, 4))))
        else:
            a, b = rng.sample(universe, 2)
            S.append(GroupWord.of(PermutationTable.cycle([Int(a), Int(b)])))
    return A, B, S


@settings(max_examples=300)
@given(st.randoms(use_true_random=False))
def test_matching_agrees_with_brute_force(rng):
    A, B, S = _random_instance(rng)
    w = equidecomposable(A, B, S, Z)
    assert (w is not None) == brute_force_equidecomposable(A, B, S, Z)
    if w is not None:
        assert verify_witness(A, B, w, Z)


@settings(max_examples=100)
@given(st.randoms(use_true_random=False))
def test_symmetric_under_inverse_closed_moves(rng):
    A, B, S = _random_instance(rng)
    S = S + [s.inverse() for s in S]
    w = equidecomposable(A, B, S, Z)
    back = equidecomposable(B, A, S, Z)
    assert (w is None) == (back is None)
    if w is not None:
        inv = Witness(tuple((frozenset(s.apply(x) for x in p), s.inverse()) for p, s in w.pieces))
        assert verify_witness(B, A, inv, Z)


def test_space_restriction_blocks_moves():
    omega = FiniteSpace(frozenset(ints(0, 1)))
    assert equidecomposable(ints(1), ints(2), [TranslateRational(1)], omega) is None


def test_determinism():
    rng = random.Random(5)
    for _ in range(20):
        A, B, S = _random_instance(rng)
        assert equidecomposable(A, B, S, Z) == equidecomposable(A, B, S, Z)


# -- rays ----------------------------------------------------------------------


def test_integer_ray():
    prefix = [Int(i) for i in range(10)]
    rd = ray_decomposition(prefix, [TranslateRational(1)], Z)
    assert rd.verified
    ((h, images),) = rd.images.items()
    assert images == [Int(i) for i in range(1, 11)]


def test_interval_ray():
    prefix = interval_walk(49)
    moves = [TranslateQuad(R), TranslateRational(Fraction(-1, 2))]
    rd = ray_decomposition(prefix, moves, Interval(0, 1))
    assert rd.verified
    assert sum(len(v) for v in rd.pieces.values()) == 50
    # oracle: which rule fired, read straight off the sequence
    ups = sum(1 for a, b in zip(prefix, prefix[1:]) if b == a + R)
    assert len(rd.pieces[GroupWord.of(TranslateQuad(R))]) in (ups, ups + 1)


def test_ray_errors():
    with pytest.raises(RepeatedPoint):
        ray_decomposition([Int(0), Int(1), Int(0)], [TranslateRational(1)], Z)
    with pytest.raises(NoMoveFits):
        ray_decomposition([Int(0), Int(2)], [TranslateRational(1)], Z)


# -- paradoxes -----------------------------------------------------------------


def test_finite_sets_are_never_paradoxical():
    E = frozenset(ints(0, 1, 2))
    A, B = frozenset(ints(0)), frozenset(ints(1))
    t = GroupWord.of(TranslateRational(1))
    pw = ParadoxWitness(E, A, B, Witness(((A, t),)), Witness(((B, t),)), space=Z)
    assert paradox_witness_check(pw) is False


def test_williamson_witness():
    assert paradox_witness_check(williamson_witness(8))


def test_williamson_with_wrong_words():
    pw = williamson_witness(8)
    swapped = ParadoxWitness(pw.E, pw.B, pw.A, pw.wA, pw.wB, pw.truncation)
    assert not paradox_witness_check(swapped)
    A = pw.A
    perturbed = ParadoxWitness(pw.E, pw.A, pw.B, Witness(((A, GroupWord.of(Shift(2))),)), pw.wB, pw.truncation)
    assert not paradox_witness_check(perturbed)
    B = pw.B
    no_flip = ParadoxWitness(pw.E, pw.A, pw.B, pw.wA, Witness(((B, GroupWord.of(ReverseMask({0}), Shift(1))),)), 8)
    assert not paradox_witness_check(no_flip)


def test_truncation_too_shallow():
    with pytest.raises(TruncationTooShallow):
        paradox_witness_check(williamson_witness(1))


def test_cylinder_membership():
    c = Cylinder.of({1: 1}, tail_from=2)
    assert c.contains_window({1: 1, 2: 1, 3: 1}, 4)
    assert not c.contains_window({1: 1, 2: 1, 3: 0}, 4)
    assert c.coordinates() == {1, 2}
