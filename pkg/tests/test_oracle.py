import pytest

from polymix.analyzer import Analyzer
from polymix.errors import TooLarge
from polymix.mixer import Budgets, MixExpression, Workspace
from polymix.oracle import build_flag_graph, check_graph, check_polytope, face_counts
from polymix.words import SchlafliSymbol as S


@pytest.fixture(scope="module")
def ws():
    return Workspace()


def test_flag_graph_of_octahedron(ws):
    e = MixExpression((S((3, 4)),))
    graph = build_flag_graph(e, workspace=ws)
    assert graph.nflags == 48
    assert graph.nranks == 3
    assert len(graph.columns) == 3
    assert face_counts(graph) == (6, 12, 8)


def test_flag_graph_adjacency_is_involution(ws):
    graph = build_flag_graph(MixExpression((S((3, 3)),)), workspace=ws)
    for column in graph.columns:
        for x, y in enumerate(column):
            assert x != y
            assert column[y] == x


def test_polyhedron_mix_checks_clean(ws):
    e = MixExpression((S((3, 3)), S((3, 4))))
    result = check_polytope(e, workspace=ws)
    assert result.flag_count == 576
    assert result.face_counts == (24, 144, 96)
    assert result.polytopal
    assert result.failures == ()


def test_star_mix_of_icosahedral_pair(ws):
    e = MixExpression((S((3, 5)), S((5, 3))))
    result = check_polytope(e, workspace=ws)
    assert result.face_counts == (240, 1800, 240)
    assert result.polytopal


def test_polytopal_rank4_pair(ws):
    e = MixExpression((S((3, 3, 3)), S((3, 3, 4))))
    result = check_polytope(e, workspace=ws)
    assert result.flag_count == 23040
    assert result.face_counts == (40, 480, 1920, 960)
    assert result.polytopal


def test_nonpolytopal_pair_has_witness(ws):
    e = MixExpression((S((3, 3, 4)), S((4, 3, 3))))
    result = check_polytope(e, workspace=ws)
    assert result.flag_count == 73728
    assert not result.polytopal
    assert result.failures
    # the flag graph is connected over all colors but one middle section
    # splits: the witness names the color interval and both counts
    assert any("colors" in f and "section" in f for f in result.failures)


def test_face_counts_match_analyzer(ws):
    an = Analyzer(ws)
    for leaves in [
        (S((3, 3)), S((4, 3))),
        (S((3, 4)), S((3, 5))),
        (S((3, 3)), S((3, 4)), S((3, 5))),
    ]:
        e = MixExpression(leaves)
        graph = build_flag_graph(e, workspace=ws)
        assert face_counts(graph) == an.face_vector(e)
        assert graph.nflags == ws.flag_count(e.leaves)


def test_too_large_guard(ws):
    e = MixExpression((S((3, 3, 5)), S((5, 3, 3))))
    with pytest.raises(TooLarge):
        build_flag_graph(e, workspace=ws)  # 207360000 flags


def test_max_flags_override():
    ws = Workspace(Budgets(max_flags=10))
    e = MixExpression((S((3, 3)),))
    with pytest.raises(TooLarge):
        build_flag_graph(e, workspace=ws)
    graph = build_flag_graph(e, workspace=ws, max_flags=100_000)
    assert graph.nflags == 24


def test_check_graph_idempotent_on_polytope(ws):
    graph = build_flag_graph(MixExpression((S((4, 3)),)), workspace=ws)
    result = check_graph(graph)
    assert result.polytopal and result.failures == ()
    assert result.face_counts == (8, 12, 6)
