import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polymix.catalog import CONVEX_4_POLYTOPES, PLATONIC
from polymix.errors import BudgetExceeded, NotConvexSeed, RankMismatch
from polymix.mixer import (
    Budgets,
    MixExpression,
    Workspace,
    build,
    comix_order,
    covers,
    gcd_trivial_comix,
    mix_order,
    size_identity_check,
)
from polymix.words import SchlafliSymbol as S


@pytest.fixture(scope="module")
def ws():
    return Workspace()


# -- MixExpression -----------------------------------------------------------


def test_expression_requires_leaves():
    with pytest.raises(RankMismatch):
        MixExpression(())


def test_expression_rejects_mixed_ranks():
    with pytest.raises(RankMismatch):
        MixExpression((S((3, 3)), S((3, 3, 4))))


def test_expression_rejects_nonconvex_leaves():
    with pytest.raises(NotConvexSeed):
        MixExpression((S((7, 3)),))
    with pytest.raises(NotConvexSeed):
        MixExpression((S((4, 4)),))


def test_expression_basics():
    e = MixExpression((S((3, 4)), S((3, 3)), S((3, 4))))
    assert e.rank == 3
    assert str(e) == "{3,4}*{3,3}*{3,4}"
    assert e.canonical_leaves == (S((3, 3)), S((3, 4)))
    assert e.type_symbol() == S((3, 12))
    assert e.dual().leaves == (S((4, 3)), S((3, 3)), S((4, 3)))


def test_type_symbol_entrywise_lcm():
    e = MixExpression((S((3, 3, 5)), S((4, 3, 3)), S((3, 4, 3))))
    assert e.type_symbol() == S((12, 12, 15))


# -- mix orders --------------------------------------------------------------


PINNED_MIX_ORDERS = {
    (S((3, 3)), S((3, 4))): 288,
    (S((3, 5)), S((5, 3))): 3600,
    (S((3, 3, 3)), S((3, 3, 4))): 11520,
    (S((3, 4, 3)), S((4, 3, 3))): 110592,
}


def test_mix_orders_pinned(ws):
    for leaves, expected in PINNED_MIX_ORDERS.items():
        assert ws.mix_order(leaves) == expected


def test_mix_order_single_leaf_is_rotation_order(ws):
    assert ws.mix_order((S((3, 4)),)) == 24
    assert ws.mix_order((S((3, 3, 5)),)) == 7200


def test_mix_order_idempotent(ws):
    for seed in PLATONIC + CONVEX_4_POLYTOPES:
        assert ws.mix_order((seed, seed)) == ws.mix_order((seed,))


def test_mix_order_leaf_order_irrelevant(ws):
    a, b, c = S((3, 3)), S((3, 4)), S((5, 3))
    orders = {ws.mix_order(p) for p in itertools.permutations((a, b, c))}
    assert len(orders) == 1


def test_flag_count_doubles_rotation_order(ws):
    leaves = (S((3, 3)), S((3, 4)))
    assert ws.flag_count(leaves) == 2 * ws.mix_order(leaves)


def test_mix_order_module_function():
    e = MixExpression((S((3, 3)), S((3, 4))))
    assert mix_order(e) == 288


# -- build -------------------------------------------------------------------


def test_build_mixed_group(ws):
    e = MixExpression((S((3, 3)), S((3, 4))))
    mg = build(e, ws)
    assert mg.order == 288
    assert len(mg.generators) == 2
    assert len(mg.components) == 2
    assert mg.expression is e


def test_build_consecutive_products_are_involutions(ws):
    # the defining sggi structure survives mixing: every product of a
    # consecutive run of generators is an involution
    e = MixExpression((S((3, 3, 5)), S((4, 3, 3))))
    mg = build(e, ws)
    gens = mg.generators
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            prod = gens[i]
            for k in range(i + 1, j + 1):
                prod = prod * gens[k]
            assert (prod * prod).is_identity


# -- comix -------------------------------------------------------------------


def test_comix_of_identical_seeds_is_rotation_group():
    assert comix_order(S((3, 4)), S((3, 4))) == 24
    assert comix_order(S((3, 3, 3)), S((3, 3, 3))) == 60


def test_comix_pinned_trivial():
    assert comix_order(S((3, 3)), S((3, 4))) == 1
    assert comix_order(S((3, 3, 5)), S((5, 3, 3))) == 1


def test_comix_rank_mismatch():
    with pytest.raises(RankMismatch):
        comix_order(S((3, 3)), S((3, 3, 4)))


def test_comix_budget_surfaces():
    # the comix of a seed with itself is its whole rotation group, far
    # beyond a five-coset budget
    with pytest.raises(BudgetExceeded):
        comix_order(S((3, 3, 5)), S((3, 3, 5)), budget=5)


# -- gcd criterion -----------------------------------------------------------


def test_gcd_trivial_comix_cases():
    assert gcd_trivial_comix(S((3, 3)), S((3, 4)))  # gcds (3, 1)
    assert gcd_trivial_comix(S((4, 3)), S((3, 4)))  # gcds (1, 1)
    assert gcd_trivial_comix(S((3, 3, 5)), S((5, 3, 3)))  # gcds (1, 3, 1)
    assert not gcd_trivial_comix(S((3, 4)), S((3, 4)))  # gcd 4 is even
    assert not gcd_trivial_comix(S((3, 3)), S((3, 3)))  # no entry has gcd 1


def test_gcd_criterion_predicts_direct_product(ws):
    # whenever the criterion fires, the mix must be the full direct product
    for a, b in itertools.combinations(PLATONIC, 2):
        if gcd_trivial_comix(a, b):
            assert ws.mix_order((a, b)) == ws.mix_order((a,)) * ws.mix_order((b,))
            assert comix_order(a, b) == 1


# -- size identity -----------------------------------------------------------


def test_size_identity_examples(ws):
    r = size_identity_check(S((3, 3)), S((3, 4)), ws)
    assert (r.mix_order, r.comix_order, r.order_a, r.order_b) == (288, 1, 12, 24)
    assert r.lhs == r.rhs == 288
    assert r.holds

    r = size_identity_check(S((3, 4)), S((4, 3)), ws)
    assert (r.mix_order, r.comix_order) == (576, 1)
    assert r.lhs == r.rhs == 576
    assert r.holds


def test_size_identity_same_seed(ws):
    r = size_identity_check(S((3, 5)), S((3, 5)), ws)
    assert (r.mix_order, r.comix_order) == (60, 60)
    assert r.holds


# -- covers ------------------------------------------------------------------


def test_mix_covers_its_components(ws):
    mix = MixExpression((S((3, 3, 3)), S((4, 3, 3))))
    for leaf in mix.leaves:
        assert covers(mix, MixExpression((leaf,)), ws)


def test_component_does_not_cover_mix(ws):
    mix = MixExpression((S((3, 3, 3)), S((4, 3, 3))))
    assert not covers(MixExpression((S((3, 3, 3)),)), mix, ws)
    assert not covers(MixExpression((S((4, 3, 3)),)), mix, ws)


def test_covers_is_reflexive(ws):
    e = MixExpression((S((3, 4)), S((3, 5))))
    assert covers(e, e, ws)


def test_covers_rank_mismatch(ws):
    with pytest.raises(RankMismatch):
        covers(MixExpression((S((3, 3)),)), MixExpression((S((3, 3, 3)),)), ws)


@settings(max_examples=20, deadline=None)
@given(st.lists(st.sampled_from(PLATONIC), min_size=1, max_size=3, unique=True))
def test_covers_mix_over_any_subset(leaves):
    workspace = Workspace()
    mix = MixExpression(tuple(leaves))
    for k in range(1, len(leaves) + 1):
        for subset in itertools.combinations(leaves, k):
            assert covers(mix, MixExpression(subset), workspace)


# -- budgets -----------------------------------------------------------------


def test_budget_defaults():
    b = Budgets()
    assert b.cosets == 1_000_000
    assert b.elements == 20_000_000
    assert b.max_flags == 200_000


def test_coset_budget_surfaces():
    tiny = Workspace(Budgets(cosets=10))
    with pytest.raises(BudgetExceeded):
        tiny.mix_order((S((3, 3, 5)),))
