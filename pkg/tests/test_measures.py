from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invprob.action import FiniteSpace, Int, Integers, PermutationTable, TranslateRational, move_graph_components
from invprob.measures import (
    INF,
    ONE,
    UNDEFINED,
    ZERO,
    ClosureBudgetExceeded,
    EmptyTarget,
    ExtRat,
    FinAlgebra,
    Measure,
    NetIndex,
    Stabilized,
    Unstable,
    build_level_stack,
    ext_str,
    invariant_point_weights,
    invariant_unit_measure,
    net_compare,
    net_stage_measure,
    renyi_precedes,
    stage_support,
)


def ints(*xs):
    return [Int(x) for x in xs]


# -- extended rationals --------------------------------------------------------


def test_extrat_arithmetic():
    half = ExtRat.of("1/2")
    assert half + half == ONE
    assert half + INF == INF
    assert half * 4 == ExtRat(2)
    assert INF * ZERO is UNDEFINED
    assert INF * half == INF
    assert ZERO / ZERO is UNDEFINED
    assert ONE / ZERO == INF
    assert INF / INF is UNDEFINED
    assert half / INF == ZERO
    assert ZERO < half < INF
    assert ext_str(UNDEFINED) == "undefined" and ext_str(INF) == "inf"
    with pytest.raises(ValueError):
        ExtRat(-1)


@given(st.fractions(min_value=0, max_value=10), st.fractions(min_value=0, max_value=10))
def test_extrat_matches_fractions(a, b):
    assert (ExtRat(a) + ExtRat(b)).value == a + b
    assert (ExtRat(a) * ExtRat(b)).value == a * b
    if b:
        assert (ExtRat(a) / ExtRat(b)).value == a / b


# -- algebras ------------------------------------------------------------------


def test_algebra_masks():
    f = FinAlgebra((frozenset(ints(2, 3)), frozenset(ints(0)), frozenset(ints(1))))
    assert f.atoms[0] == frozenset(ints(0))
    assert f.mask_of(ints(0, 2, 3)) == 0b101
    assert f.mask_of(ints(2)) is None
    assert f.to_set(0b110) == frozenset(ints(1, 2, 3))
    with pytest.raises(ValueError):
        FinAlgebra((frozenset(ints(0)), frozenset(ints(0, 1))))


def test_algebra_image_respects_omega():
    f = FinAlgebra.powerset(ints(0, 1, 2))
    t = TranslateRational(1)
    assert f.image(f.mask_of(ints(0, 1)), t) == f.mask_of(ints(1, 2))
    assert f.image(f.mask_of(ints(2)), t) is None


# -- canonical invariant measures ---------------------------------------------


def test_point_weights_hand_example():
    # components {0,1} and {2}; both meet the target, so each gets mass 1/2
    w = invariant_point_weights(ints(0, 1, 2), [PermutationTable.cycle(ints(0, 1))], ints(0, 1, 2))
    assert w == {Int(0): Fraction(1, 4), Int(1): Fraction(1, 4), Int(2): Fraction(1, 2)}
    w = invariant_point_weights(ints(0, 1, 2), [PermutationTable.cycle(ints(0, 1))], ints(0))
    assert w == {Int(0): 1, Int(1): 1, Int(2): 0}
    with pytest.raises(EmptyTarget):
        invariant_point_weights(ints(0), [], [])


perm_actions = st.lists(
    st.lists(st.integers(0, 6), min_size=2, max_size=4, unique=True), min_size=0, max_size=3
)


@settings(max_examples=80)
@given(perm_actions, st.integers(2, 7), st.data())
def test_invariant_measure_properties(cycles, n, data):
    omega = ints(*range(n))
    gens = [PermutationTable.cycle(ints(*c)) for c in cycles if max(c) < n]
    E = data.draw(st.sets(st.sampled_from(omega), min_size=1))
    mu = invariant_unit_measure(omega, gens, E)
    assert mu.of_set(E) == ONE
    assert mu.is_invariant(gens)
    # per-point weight is constant on each component
    w = invariant_point_weights(omega, gens, E)
    for comp in move_graph_components(omega, gens):
        assert len({w[x] for x in comp}) == 1


def test_renyi_order():
    f = FinAlgebra.powerset(ints(0, 1))
    big = Measure(f, (INF, ONE))
    small = Measure(f, (ONE, ZERO))
    assert renyi_precedes(big, small)
    assert not renyi_precedes(small, big)


# -- level stacks --------------------------------------------------------------


def test_level_stack_hand_example():
    omega = ints(0, 1, 2, 3)
    L = build_level_stack(omega, [PermutationTable.cycle(ints(1, 2))], first_target=ints(0))
    assert L.N == 2
    assert L.levels[0].weights == (ONE, ZERO, ZERO, ZERO)
    assert L.levels[1].weights == (INF, ExtRat(Fraction(1, 4)), ExtRat(Fraction(1, 4)), ExtRat(Fraction(1, 2)))
    assert L.check() == []
    f = L.algebra
    assert L.index_of(f.mask_of(ints(0, 3))) == 0
    assert L.index_of(f.mask_of(ints(1, 3))) == 1


@settings(max_examples=60)
@given(perm_actions, st.integers(1, 6), st.data())
def test_level_stack_always_checks(cycles, n, data):
    omega = ints(*range(n))
    gens = [PermutationTable.cycle(ints(*c)) for c in cycles if max(c) < n]
    target = data.draw(st.sets(st.sampled_from(omega), min_size=1))
    L = build_level_stack(omega, gens, first_target=target)
    assert L.check() == []
    for mu in L.levels:
        assert mu.is_invariant(gens)


# -- stage measures ------------------------------------------------------------


def test_stage_measures():
    space = FiniteSpace(frozenset(ints(*range(10))))
    t = TranslateRational(1)
    idx = NetIndex((t,), frozenset(ints(0)))
    assert stage_support(idx, space) == frozenset(ints(*range(10)))
    evens = {Int(i) for i in range(0, 10, 2)}
    assert net_stage_measure(idx, evens, space) == Fraction(1, 2)
    assert NetIndex((), frozenset(ints(0))).precedes(idx)
    assert not idx.precedes(NetIndex((), frozenset(ints(0, 1))))


def test_net_compare():
    space = FiniteSpace(frozenset(ints(*range(10))))
    t = TranslateRational(1)
    sched = [NetIndex((), frozenset(ints(0))), NetIndex((t,), frozenset(ints(0))), NetIndex((t,), frozenset(ints(0, 1)))]
    evens = {Int(i) for i in range(0, 10, 2)}
    res = net_compare(evens, {Int(0)}, sched, space)
    assert isinstance(res, Stabilized) and res.ordering == "greater"
    res = net_compare({Int(1)}, {Int(0)}, sched, space, min_tail=3)
    assert isinstance(res, Unstable) and res.signs == ("less", "equal", "equal")
    with pytest.raises(ValueError):
        net_compare(evens, evens, list(reversed(sched)), space)


def test_stage_budget():
    with pytest.raises(ClosureBudgetExceeded):
        stage_support(NetIndex((TranslateRational(1),), frozenset(ints(0))), Integers(), budget=50)
