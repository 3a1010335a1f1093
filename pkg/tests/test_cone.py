import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from invprob.action import Int
from invprob.cone import (
    FinFn,
    StepFn,
    Undetermined,
    UnsupportedShape,
    ZSet,
    c0_compare,
    convolve,
    gamma,
    gamma_indicator,
    gamma_law_check,
    has_X,
    has_X1,
    has_X2,
    in_cone,
    indicator_diff,
    is_double_exp,
    is_null,
    parse_zset,
    skew_popper,
    to_literal,
)
from invprob.measures import INF, UNDEFINED, ExtRat, FinAlgebra
from invprob.popper import ExchangeRate, popper_from_exchange, verify_exchange_axioms, verify_popper_axioms
from invprob.verdict import CompareVerdict as V

LO, HI = -40, 400

# independent descriptions of the sparse sets
DOUBLE_EXP = {2 ** (2**k) for k in range(1, 4)}
SQUARES = {k * k for k in range(1, 25)}


# -- convolution ---------------------------------------------------------------


def test_convolve_examples():
    f = FinFn.of({1: 1, 2: 1})
    g = FinFn.of({0: 1, 1: -1})
    assert convolve(f, g) == FinFn.of({1: 1, 3: -1})
    assert convolve(FinFn.delta(0), f) == f
    assert convolve(f, FinFn.of({})) == FinFn.of({})


finfns = st.dictionaries(st.integers(-5, 5), st.fractions(-3, 3, max_denominator=4), max_size=4).map(FinFn.of)


@given(finfns, finfns, finfns)
def test_convolution_laws(f, g, h):
    assert convolve(f, g) == convolve(g, f)
    assert convolve(convolve(f, g), h) == convolve(f, convolve(g, h))
    assert convolve(f, g).total() == f.total() * g.total()


# -- integer sets ----------------------------------------------------------------


def test_double_exp_predicate():
    assert [n for n in range(1, 70000) if is_double_exp(n)] == [4, 16, 256, 65536]


@st.composite
def zsets(draw, depth=2):
    """A ZSet together with an independent membership predicate."""
    if depth == 0 or draw(st.booleans()):
        kind = draw(st.sampled_from(["finite", "cofinite", "left", "right", "double", "squares"]))
        if kind == "finite":
            xs = draw(st.frozensets(st.integers(-10, 10), max_size=4))
            return ZSet.finite(xs), lambda m, xs=xs: m in xs
        if kind == "cofinite":
            xs = draw(st.frozensets(st.integers(-10, 10), max_size=4))
            return ZSet.cofinite(xs), lambda m, xs=xs: m not in xs
        n = draw(st.integers(-8, 8))
        if kind == "left":
            return ZSet.left(n), lambda m, n=n: m < n
        if kind == "right":
            return ZSet.right(n), lambda m, n=n: m >= n
        if kind == "double":
            return ZSet.sparse("double-exp", n), lambda m, n=n: (m - n) in DOUBLE_EXP
        return ZSet.sparse("squares", n), lambda m, n=n: (m - n) in SQUARES
    (a, pa), (b, pb) = draw(zsets(depth=depth - 1)), draw(zsets(depth=depth - 1))
    op = draw(st.sampled_from(["|", "&", "-", "^", "~", "t"]))
    if op == "|":
        return a | b, lambda m: pa(m) or pb(m)
    if op == "&":
        return a & b, lambda m: pa(m) and pb(m)
    if op == "-":
        return a - b, lambda m: pa(m) and not pb(m)
    if op == "^":
        return a ^ b, lambda m: pa(m) != pb(m)
    if op == "~":
        return a.complement(), lambda m: not pa(m)
    t = draw(st.integers(-6, 6))
    return a.translate(t), lambda m: pa(m - t)


@settings(max_examples=200, deadline=None)
@given(zsets())
def test_zset_membership_matches_predicate(zp):
    z, p = zp
    assert all((m in z) == p(m) for m in range(LO, HI))


@settings(max_examples=150, deadline=None)
@given(zsets(), zsets())
def test_zset_equality_is_set_equality(zp, wp):
    (z, p), (w, q) = zp, wp
    same = all(p(m) == q(m) for m in range(LO, HI))
    if z == w:
        assert same
    assert z.issubset(w) == (z - w).is_empty
    assert (z | w) == (w | z) and (z & w).issubset(z)


@settings(max_examples=150, deadline=None)
@given(zsets())
def test_literal_round_trip(zp):
    z, _ = zp
    lit = to_literal(z)
    if lit.startswith("zset("):
        return
    assert parse_zset(lit) == z


def test_literal_examples():
    assert parse_zset("Lm:0") == ZSet.left(0)
    assert parse_zset("finite:[3,1]") == ZSet.finite([1, 3])
    z = parse_zset("sparse:squares add:[-1] remove:[4]")
    assert -1 in z and 4 not in z and 9 in z and 16 in z
    assert parse_zset("Rn:0 shift:3") == ZSet.right(3)
    assert to_literal(ZSet.cofinite([2])) == "cofinite-ex:[2]"
    for bad in ("", "Lm:x", "bogus:[1]", "finite:[1] twist:2", "finite:1"):
        with pytest.raises((UnsupportedShape, ValueError)):
            parse_zset(bad)


# -- step functions ------------------------------------------------------------


stepfns = st.lists(st.tuples(st.fractions(-2, 2, max_denominator=3), zsets(depth=1)), max_size=3)


def _build(parts):
    f = StepFn.build([(v, z) for v, (z, _) in parts])
    return f, lambda m: sum((v for v, (_, p) in parts if p(m)), Fraction(0))


@st.composite
def step_pairs(draw):
    # parts may overlap, so the oracle sums values over every part containing m
    parts = draw(stepfns)
    acc, oracle = StepFn(), []
    for v, (z, p) in parts:
        acc = acc + StepFn.indicator(z).scale(v)
        oracle.append((v, p))
    return acc, lambda m: sum((v for v, p in oracle if p(m)), Fraction(0))


@settings(max_examples=100, deadline=None)
@given(step_pairs(), step_pairs(), finfns)
def test_step_function_arithmetic(fp, gp, phi):
    (f, pf), (g, pg) = fp, gp
    s = f + g
    c = f.convolve(phi)
    for m in range(-30, 60):
        assert f(m) == pf(m)
        assert s(m) == pf(m) + pg(m)
        assert c(m) == sum((w * pf(m - z) for z, w in phi.values), Fraction(0))


@settings(max_examples=100, deadline=None)
@given(step_pairs(), st.integers(-9, 9))
def test_fragment_is_translation_invariant(fp, t):
    f, _ = fp
    g = f.translate(t)
    assert has_X1(g) == has_X1(f)
    assert has_X2(g) == has_X2(f)
    assert is_null(g) == is_null(f)


def test_fragment_examples():
    assert has_X1(indicator_diff(ZSet.finite([0]), ZSet.finite([0, 1])))
    assert not has_X1(indicator_diff(ZSet.finite([0, 1]), ZSet.finite([5])))
    assert has_X2(indicator_diff(ZSet.left(0), ZSet.right(0)))
    assert not has_X2(indicator_diff(ZSet.right(0), ZSet.left(0)))
    assert not has_X(indicator_diff(ZSet.positives(), ZSet.sparse("double-exp")))
    d = indicator_diff(ZSet.finite([0]), ZSet.finite([9]))
    assert is_null(d) and in_cone(d) is True
    assert in_cone(StepFn.indicator(ZSet.finite([0])).scale(-1)) is False


def test_c0_examples():
    N, D = ZSet.positives(), ZSet.sparse("double-exp")
    assert c0_compare(D, N) is V.LESS and c0_compare(N, D) is V.GREATER
    assert c0_compare(ZSet.finite([3]), ZSet.finite([-8])) is V.EQUIV
    for m in range(-3, 4):
        for n in range(-3, 4):
            assert c0_compare(ZSet.left(m), ZSet.right(n)) is V.LESS
    assert c0_compare(ZSet.empty(), ZSet.finite([1])) is V.LESS


# -- gamma -------------------------------------------------------------------------


def test_gamma_examples():
    f = ZSet.finite
    assert gamma_indicator(f([5]), f([5, 9])) == ExtRat(Fraction(1, 2))
    assert gamma_indicator(ZSet.right(0), ZSet.integers()) == ExtRat(1)
    assert gamma_indicator(ZSet.left(0), ZSet.right(0)) == ExtRat(0)
    assert gamma_indicator(ZSet.right(0), ZSet.left(0)) == INF
    assert gamma_indicator(f([0]), ZSet.empty()) == INF
    assert gamma_indicator(ZSet.empty(), ZSet.empty()) is UNDEFINED
    with pytest.raises(UnsupportedShape):
        gamma(StepFn.indicator(f([0])).scale(-1), StepFn.indicator(f([1])))


@given(st.frozensets(st.integers(-20, 20), max_size=6), st.frozensets(st.integers(-20, 20), min_size=1, max_size=6))
def test_gamma_finite_sets_is_cardinality_ratio(a, b):
    assert gamma_indicator(ZSet.finite(a), ZSet.finite(b)) == ExtRat(Fraction(len(a), len(b)))


GRID = [Fraction(k, 12) for k in range(0, 40)]


@settings(max_examples=120, deadline=None)
@given(zsets(depth=1), zsets(depth=1))
def test_gamma_against_alpha_grid(ap, bp):
    (A, _), (B, _) = ap, bp
    assume(not B.is_empty)
    g = gamma_indicator(A, B)
    a, b = StepFn.indicator(A), StepFn.indicator(B)
    for alpha in GRID:
        status = in_cone(b.scale(alpha) - a)
        if isinstance(g, Undetermined):
            if g.upper != math.inf and alpha > g.upper:
                assert status is True
            if g.lower != -math.inf and alpha < g.lower:
                assert status is False
            continue
        if g.is_inf or alpha < g.value:
            assert status is not True
        elif alpha > g.value:
            assert status is True


def test_skew_values():
    N, D = ZSet.negatives(), ZSet.sparse("double-exp")
    assert skew_popper(N, N | D) == 0 and skew_popper(D, N | D) == 1
    # D sits inside the positives, which cannot decide its share
    assert isinstance(skew_popper(D, ZSet.positives()), Undetermined)
    assert skew_popper(ZSet.left(0), ZSet.integers()) == 0
    assert skew_popper(ZSet.right(0), ZSet.integers()) == 1
    assert skew_popper(ZSet.finite([5]), ZSet.finite([5, 9])) == Fraction(1, 2)
    with pytest.raises(ValueError):
        skew_popper(N, ZSet.empty())


@settings(max_examples=60, deadline=None)
@given(zsets(depth=1), zsets(depth=1), zsets(depth=1))
def test_gamma_laws(ap, bp, cp):
    rep = gamma_law_check(ap[0], bp[0] - ap[0], cp[0])
    assert rep.passed, rep.violations


def test_exchange_axioms_on_zset_algebra():
    # four atoms L_0, {0}, {1}, R_2 partition the integers
    blocks = [ZSet.left(0), ZSet.finite([0]), ZSet.finite([1]), ZSet.right(2)]
    f = FinAlgebra(tuple(frozenset([Int(i)]) for i in range(4)))

    def union(mask):
        out = ZSet.empty()
        for i in range(4):
            if mask >> i & 1:
                out = out | blocks[i]
        return out

    entries = {(A, B): gamma_indicator(union(A), union(B)) for B in f.nonempty() for A in f.members()}
    assert not any(isinstance(v, Undetermined) for v in entries.values())
    c = ExchangeRate(f, entries)
    assert verify_exchange_axioms(c).passed
    P = popper_from_exchange(c)
    assert verify_popper_axioms(P).passed
    # the right half-line carries everything; a half-line absorbs any finite addition
    assert P(8, f.full) == 1 and P(1, f.full) == 0
    assert P(1, 1 | 2) == 1 and P(2, 2 | 4) == Fraction(1, 2)
