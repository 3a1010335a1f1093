from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invprob.action import (
    IDENTITY,
    BitSeq,
    BudgetExceeded,
    Everything,
    Finite,
    FiniteSpace,
    GroupWord,
    Int,
    Integers,
    Interval,
    PermutationTable,
    Quad,
    R,
    ReflectInt,
    ReverseMask,
    RotateQuad,
    Shift,
    SupportWithin,
    TranslateQuad,
    TranslateRational,
    VariantMismatch,
    apply,
    move_graph_components,
    partial_orbit_closure,
    sign_a_plus_b_sqrt2,
    symmetrize,
    interval_walk,
    verify_partial_action_axioms,
)

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)


# -- exact quadratic arithmetic ------------------------------------------------


@given(fracs, fracs)
def test_sign_matches_high_precision_float(a, b):
    # oracle: decimal evaluation with enough digits, skipping exact zeros
    from decimal import Decimal, getcontext

    getcontext().prec = 60
    val = Decimal(a.numerator) / Decimal(a.denominator) + Decimal(b.numerator) / Decimal(b.denominator) * Decimal(2).sqrt()
    expected = 0 if val == 0 else (1 if val > 0 else -1)
    assert sign_a_plus_b_sqrt2(a, b) == expected


def test_three_r_exceeds_one():
    assert Quad(0, 3) > 1
    assert Quad(0, 2) < 1
    assert Quad(Fraction(-1, 2), 2) > 0


@given(fracs, st.integers(-30, 30))
def test_quad_floor_is_exact(p, q):
    x = Quad(p, q)
    n = x.floor()
    assert x >= n and x < n + 1


# -- apply -------------------------------------------------------------------


def test_apply_examples():
    assert apply(IDENTITY, Int(7)) == Int(7)
    assert apply(TranslateRational(1), Int(3)) == Int(4)
    w = GroupWord.of(Shift(1), ReverseMask({0}))
    assert apply(w, BitSeq(frozenset({0}))) == BitSeq(frozenset({0, 1}))


def test_variant_mismatch():
    with pytest.raises(VariantMismatch):
        apply(Shift(1), Int(0))
    with pytest.raises(VariantMismatch):
        apply(TranslateRational(Fraction(1, 2)), Int(0))


quads = st.builds(Quad, fracs, st.integers(-3, 3))
line_gens = st.one_of(st.builds(TranslateRational, fracs), st.builds(TranslateQuad, quads))
signs = st.sampled_from([1, -1])


@given(st.lists(st.tuples(line_gens, signs), max_size=5), quads)
def test_word_inverse_round_trip(letters, x):
    w = GroupWord(tuple(letters))
    assert w.inverse().apply(w.apply(x)) == x


@given(st.lists(st.tuples(st.builds(RotateQuad, quads), signs), max_size=5), quads)
def test_rotation_inverse_round_trip(letters, x):
    w = GroupWord(tuple(letters))
    x = x - x.floor()
    assert w.inverse().apply(w.apply(x)) == x


@given(st.lists(st.tuples(st.integers(-5, 5), st.frozensets(st.integers(-5, 5), max_size=3)), max_size=4),
       st.frozensets(st.integers(-8, 8), max_size=6))
def test_bit_word_concatenation_composes(moves, support):
    letters = []
    for off, mask in moves:
        letters.append((Shift(off), 1))
        letters.append((ReverseMask(mask), 1))
    w = GroupWord(tuple(letters))
    x = BitSeq(support)
    half = len(letters) // 2
    u, v = GroupWord(tuple(letters[:half])), GroupWord(tuple(letters[half:]))
    assert (u + v).apply(x) == v.apply(u.apply(x)) == w.apply(x)


# -- closures -----------------------------------------------------------------


def test_closure_reverse_mask():
    res = partial_orbit_closure([ReverseMask({0})], BitSeq(frozenset()), Everything())
    assert isinstance(res, Finite) and len(res) == 2


def test_closure_successor_budget():
    res = partial_orbit_closure([TranslateRational(1)], Int(0), Integers(), budget=100)
    assert isinstance(res, BudgetExceeded)
    assert res.path == tuple(Int(i) for i in range(100))


def test_closure_interval_budget():
    H = [TranslateRational(Fraction(-1, 2)), TranslateQuad(R)]
    res = partial_orbit_closure(H, Quad(0), Interval(0, 1), budget=1000)
    assert isinstance(res, BudgetExceeded)
    assert len(set(res.path)) == len(res.path)
    assert all(x in Interval(0, 1) for x in res.path)
    for (a, b), m in zip(zip(res.path, res.path[1:]), res.moves):
        assert m.apply(a) == b


@settings(max_examples=60)
@given(st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7)), min_size=1, max_size=6), st.integers(0, 7))
def test_finite_closure_is_closed(pairs, start):
    omega = FiniteSpace(frozenset(Int(i) for i in range(8)))
    H = [PermutationTable.cycle([Int(a), Int(b)]) if a != b else IDENTITY for a, b in pairs]
    H.append(TranslateRational(1))
    res = partial_orbit_closure(H, Int(start), omega)
    assert isinstance(res, Finite)
    for x in res.points:
        for h in H:
            y = apply(h, x)
            if y in omega:
                assert y in res.points


def test_closure_start_outside_space():
    with pytest.raises(ValueError):
        partial_orbit_closure([], Int(5), FiniteSpace(frozenset({Int(0)})))


# -- interval sequence --------------------------------------------------------


def test_interval_sequence_small():
    assert interval_walk(0) == [Quad(0)]
    assert interval_walk(3) == [Quad(0), Quad(0, 1), Quad(0, 2), Quad(Fraction(-1, 2), 2)]


def test_interval_sequence_distinct():
    xs = interval_walk(1000)
    assert len(set(xs)) == 1001
    assert all(x in Interval(0, 1) for x in xs)


def test_interval_sequence_against_float_oracle():
    # independent float walk; the margins stay far above rounding error here
    import math

    xs = interval_walk(200)
    v = 0.0
    for x in xs:
        assert abs(float(x) - v) < 1e-9
        v = v + math.sqrt(2) / 4 if v + math.sqrt(2) / 4 <= 1 else v - 0.5


# -- components and axioms ----------------------------------------------------


def test_components():
    pts = [Int(i) for i in range(5)]
    assert len(move_graph_components(pts, [])) == 5
    assert move_graph_components(pts, [PermutationTable.cycle(pts)]) == [frozenset(pts)]
    assert move_graph_components(pts[:3], [TranslateRational(1)]) == [frozenset(pts[:3])]


def test_partial_action_axioms():
    assert verify_partial_action_axioms(Everything(), [], [Int(0)]).passed
    rep = verify_partial_action_axioms(
        Interval(0, 1), [TranslateRational(Fraction(1, 2))], [Quad(0), Quad(Fraction(1, 4)), Quad(Fraction(3, 4))]
    )
    assert rep.passed
    assert rep.data["undefined"]["t(+1/2)"] == ["3/4"]
    bad = PermutationTable(((Int(0), Int(1)), (Int(1), Int(1))))
    rep = verify_partial_action_axioms(FiniteSpace(frozenset({Int(0), Int(1)})), [bad], [Int(0), Int(1)])
    assert not rep.passed
    assert any("PA2" in v for v in rep.violations)


@settings(max_examples=40)
@given(st.lists(st.sampled_from([TranslateRational(1), TranslateRational(-2), ReflectInt(3)]), max_size=3),
       st.integers(2, 9))
def test_restricted_integer_actions_satisfy_axioms(gs, n):
    omega = FiniteSpace(frozenset(Int(i) for i in range(n)))
    assert verify_partial_action_axioms(omega, gs, list(omega)).passed


def test_support_within_and_symmetrize():
    s = SupportWithin(frozenset({0, 1}))
    assert BitSeq(frozenset({1})) in s and BitSeq(frozenset({2})) not in s
    ws = symmetrize([TranslateRational(1), ReverseMask({0})])
    assert len(ws) == 4
    x = BitSeq(frozenset({0, 3}))
    assert ws[2].apply(x) == ws[3].apply(x)
