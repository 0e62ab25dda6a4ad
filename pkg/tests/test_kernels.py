"""Bit-for-bit agreement between the pure and compiled kernels.

Every kernel function must return identical Python structures from both
implementations, including tie-breaking-sensitive details: coset numbering,
base points, transversal contents, orbit order, element iteration order,
and component label assignment.
"""

import json
import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polymix._kernel import pure
from polymix.errors import BudgetExceeded
from polymix.mixer import Workspace
from polymix.words import (
    SchlafliSymbol,
    Word,
    coxeter_presentation,
    rotation_presentation,
)

compiled = pytest.importorskip(
    "polymix._kernel._speedups", reason="compiled kernel is not built"
)


def enumerate_both(presentation, subgens=(), budget=100_000):
    args = (
        presentation.ngens,
        presentation.encoded_relators(),
        [w.encode() for w in subgens],
        budget,
    )
    return pure.coset_enumerate(*args), compiled.coset_enumerate(*args)


def random_perm(rng, degree):
    images = list(range(degree))
    rng.shuffle(images)
    return images


# ---------------------------------------------------------------------------
# coset enumeration
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("entries", [(3, 3), (4, 3), (3, 5), (3, 3, 4), (3, 4, 3)])
@pytest.mark.parametrize("make", [rotation_presentation, coxeter_presentation])
def test_coset_enumeration_matches(entries, make):
    a, b = enumerate_both(make(SchlafliSymbol(entries)))
    assert a == b


@pytest.mark.parametrize("entries", [(3, 3), (4, 3), (3, 3, 4)])
def test_coset_enumeration_with_subgroup_matches(entries):
    pres = rotation_presentation(SchlafliSymbol(entries))
    subgens = tuple(Word.generator(i) for i in range(1, pres.ngens))
    a, b = enumerate_both(pres, subgens)
    assert a == b


def test_coset_enumeration_budget_failure_matches():
    pres = rotation_presentation(SchlafliSymbol((3, 3, 5)))
    args = (pres.ngens, pres.encoded_relators(), [], 50)
    with pytest.raises(BudgetExceeded) as pure_exc:
        pure.coset_enumerate(*args)
    with pytest.raises(BudgetExceeded) as compiled_exc:
        compiled.coset_enumerate(*args)
    assert str(pure_exc.value) == str(compiled_exc.value)
    assert "50" in str(compiled_exc.value)


def test_coset_enumeration_without_generators_matches():
    assert pure.coset_enumerate(0, [], [], 10) == compiled.coset_enumerate(0, [], [], 10)


# ---------------------------------------------------------------------------
# stabilizer chains
# ---------------------------------------------------------------------------


def chain_inputs():
    # regular representation of a rotation group
    pres = rotation_presentation(SchlafliSymbol((3, 4)))
    _, cols = pure.coset_enumerate(pres.ngens, pres.encoded_relators(), [], 10_000)
    yield len(cols[0]), [list(c) for c in cols]
    # symmetric group in its natural action
    yield 5, [[1, 0, 2, 3, 4], [1, 2, 3, 4, 0]]
    # generating set containing the identity and a repeat
    yield 4, [[0, 1, 2, 3], [1, 0, 3, 2], [1, 0, 3, 2]]
    # a single involution with fixed points
    yield 6, [[0, 2, 1, 3, 5, 4]]
    # the trivial group
    yield 3, [[0, 1, 2]]
    yield 0, []


@pytest.mark.parametrize("degree,gens", list(chain_inputs()))
def test_stabilizer_chain_matches(degree, gens):
    a = pure.schreier_sims(degree, gens)
    b = compiled.schreier_sims(degree, gens)
    assert a == b


def test_stabilizer_chain_matches_on_random_groups():
    rng = random.Random(7)
    for _ in range(20):
        degree = rng.randrange(2, 12)
        gens = [random_perm(rng, degree) for _ in range(rng.randrange(1, 4))]
        a = pure.schreier_sims(degree, gens)
        b = compiled.schreier_sims(degree, gens)
        assert a == b


@settings(max_examples=30, deadline=None)
@given(
    st.integers(min_value=1, max_value=8).flatmap(
        lambda d: st.tuples(
            st.just(d),
            st.lists(st.permutations(list(range(d))), min_size=0, max_size=3),
        )
    )
)
def test_stabilizer_chain_matches_property(case):
    degree, gens = case
    gens = [list(g) for g in gens]
    assert pure.schreier_sims(degree, gens) == compiled.schreier_sims(degree, gens)


def test_sift_matches():
    degree, gens = 5, [[1, 0, 2, 3, 4], [0, 2, 1, 3, 4]]
    base, transversals, _, _ = pure.schreier_sims(degree, gens)
    rng = random.Random(3)
    candidates = [list(range(degree)), [1, 2, 0, 3, 4], [4, 3, 2, 1, 0]]
    candidates += [random_perm(rng, degree) for _ in range(30)]
    for perm in candidates:
        a = pure.sift(degree, base, transversals, perm)
        b = compiled.sift(degree, base, transversals, perm)
        assert a == b


def test_chain_element_iteration_matches():
    pres = rotation_presentation(SchlafliSymbol((4, 3)))
    n, cols = pure.coset_enumerate(pres.ngens, pres.encoded_relators(), [], 10_000)
    _, transversals, _, order = pure.schreier_sims(n, [list(c) for c in cols])
    a = list(pure.iter_chain_elements(n, transversals))
    b = list(compiled.iter_chain_elements(n, transversals))
    assert a == b
    assert len(a) == order


# ---------------------------------------------------------------------------
# intersections
# ---------------------------------------------------------------------------


def test_intersection_filter_matches_brute_force():
    rng = random.Random(11)
    degree = 7
    for _ in range(3):
        small_gens = [random_perm(rng, degree)]
        big_gens = [random_perm(rng, degree), random_perm(rng, degree)]
        _, small_tr, _, _ = pure.schreier_sims(degree, small_gens)
        big_base, big_tr, _, _ = pure.schreier_sims(degree, big_gens)
        a = pure.intersection_filter(degree, small_tr, big_base, big_tr)
        b = compiled.intersection_filter(degree, small_tr, big_base, big_tr)
        assert a == b
        big_elements = set(pure.iter_chain_elements(degree, big_tr))
        expected = [
            el
            for el in pure.iter_chain_elements(degree, small_tr)
            if el in big_elements
        ]
        assert a == expected


def test_intersection_filter_matches_on_parabolic_subgroups():
    ws = Workspace()
    group = ws.mixed_group((SchlafliSymbol((3, 3, 3)), SchlafliSymbol((3, 3, 4))))
    head = group.subgroup(group.generators[:-1])
    tail = group.subgroup(group.generators[1:])
    small, big = (head, tail) if head.order <= tail.order else (tail, head)
    a = pure.intersection_filter(
        group.degree, small._transversals, big._base, big._transversals
    )
    b = compiled.intersection_filter(
        group.degree, small._transversals, big._base, big._transversals
    )
    assert a == b


def test_intersection_filter_with_trivial_big_chain_matches():
    degree, gens = 4, [[1, 0, 3, 2]]
    _, small_tr, _, _ = pure.schreier_sims(degree, gens)
    a = pure.intersection_filter(degree, small_tr, [], [])
    b = compiled.intersection_filter(degree, small_tr, [], [])
    assert a == b == [tuple(range(degree))]


# ---------------------------------------------------------------------------
# flag-graph helpers
# ---------------------------------------------------------------------------


def test_adjacency_table_matches():
    pres = rotation_presentation(SchlafliSymbol((3, 3)))
    n, cols = pure.coset_enumerate(pres.ngens, pres.encoded_relators(), [], 10_000)
    _, transversals, _, _ = pure.schreier_sims(n, [list(c) for c in cols])
    elements = list(pure.iter_chain_elements(n, transversals))
    rgens = [tuple(c) for c in cols]
    a = pure.adjacency_table(elements, rgens)
    b = compiled.adjacency_table(elements, rgens)
    assert a == b


def test_component_labels_matches():
    rng = random.Random(5)
    for _ in range(5):
        n = rng.randrange(1, 60)
        adjs = [random_perm(rng, n) for _ in range(rng.randrange(1, 4))]
        a = pure.component_labels(n, adjs)
        b = compiled.component_labels(n, adjs)
        assert a == b


def test_component_labels_accepts_tuple_maps():
    adjs = ((1, 0, 3, 2, 4), (0, 1, 2, 3, 4))
    a = pure.component_labels(5, adjs)
    b = compiled.component_labels(5, adjs)
    assert a == b == ([0, 0, 1, 1, 2], 3)


# ---------------------------------------------------------------------------
# whole-pipeline agreement
# ---------------------------------------------------------------------------


def report_via_subprocess(env_extra):
    env = dict(os.environ, **env_extra)
    script = (
        "from polymix.cli import main; "
        "raise SystemExit(main(['report', '{3,3}*{3,4}', '--format', 'json']))"
    )
    proc = subprocess.run(
        [sys.executable, "-c", script],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    doc = json.loads(proc.stdout)
    doc.pop("timings")
    return doc


def test_report_row_matches_across_kernels():
    pure_doc = report_via_subprocess({"POLYMIX_PURE": "1"})
    compiled_doc = report_via_subprocess({"POLYMIX_PURE": ""})
    assert pure_doc == compiled_doc
    assert compiled_doc["flags"] == "576"
