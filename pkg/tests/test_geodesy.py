import pytest
from hypothesis import given
from hypothesis import strategies as st

from gpkd.errors import GeodesicLimitExceeded, GraphError, UnreachablePairError
from gpkd.geodesy import (
    are_parallel,
    best_marked_geodesic,
    enumerate_geodesics,
    geodesic_dag,
    interval,
    is_convex_subgraph,
    is_isometric_subgraph,
    max_marked_on_geodesic,
    on_common_geodesic,
    set_distance,
)
from gpkd.graph import build_family, build_graph, complete_graph, cycle_graph, distance_matrix, grid_graph, path_graph
from oracles import all_geodesics, max_marked, to_nx
from strategies import connected_graphs


def _dag(g, u, v):
    return geodesic_dag(g, distance_matrix(g), u, v)


def test_dag_on_path_is_the_path():
    dag = _dag(path_graph(5), 0, 4)
    assert dag.order == (0, 1, 2, 3, 4)
    assert max_marked_on_geodesic(dag, {0, 2, 4}) == 3


def test_dag_on_even_cycle():
    g = cycle_graph(6)
    dag = _dag(g, 0, 3)
    assert sorted(dag.order) == list(range(6))
    assert len(dag.dag_edges) == 6
    assert max_marked_on_geodesic(dag, {0, 2, 4}) == 2
    assert len(enumerate_geodesics(g, distance_matrix(g), 0, 3)) == 2


def test_dag_grid_corner_to_corner():
    g = grid_graph(3, 3)
    dm = distance_matrix(g)
    assert len(_dag(g, 0, 8).order) == 9
    assert len(enumerate_geodesics(g, dm, 0, 8)) == 6


def test_dag_empty_marks_and_unreachable():
    assert max_marked_on_geodesic(_dag(cycle_graph(5), 0, 2), ()) == 0
    g = build_graph(4, [(0, 1), (2, 3)])
    with pytest.raises(UnreachablePairError):
        _dag(g, 0, 3)


def test_enumeration_limit():
    g = grid_graph(4, 4)
    with pytest.raises(GeodesicLimitExceeded):
        enumerate_geodesics(g, distance_matrix(g), 0, 15, limit=5)


@given(connected_graphs(max_n=8), st.data())
def test_dp_matches_enumeration(g, data):
    h = to_nx(g)
    dm = distance_matrix(g)
    u = data.draw(st.integers(0, g.n - 1))
    v = data.draw(st.integers(0, g.n - 1))
    s = data.draw(st.sets(st.integers(0, g.n - 1)))
    dag = geodesic_dag(g, dm, u, v)
    assert max_marked_on_geodesic(dag, s) == max_marked(h, u, v, s)
    got = {w.sequence for w in enumerate_geodesics(g, dm, u, v, s=s)}
    assert got == set(all_geodesics(h, u, v))
    # every DAG path has length d(u, v)
    assert all(w.length == dm[u, v] for w in enumerate_geodesics(g, dm, u, v))
    best = best_marked_geodesic(dag, s)
    assert best.sequence in got
    assert best.count_in_S == sum(x in s for x in best.sequence)


@given(connected_graphs(max_n=8), st.data())
def test_interval_matches_geodesic_union(g, data):
    u = data.draw(st.integers(0, g.n - 1))
    v = data.draw(st.integers(0, g.n - 1))
    union = {x for p in all_geodesics(to_nx(g), u, v) for x in p}
    assert set(interval(distance_matrix(g), u, v)) == union


@given(connected_graphs(max_n=7), st.data())
def test_on_common_geodesic_matches_enumeration(g, data):
    h = to_nx(g)
    pts = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1, max_size=4))
    expected = any(pts <= set(p) for a in pts for b in pts for p in all_geodesics(h, a, b))
    assert on_common_geodesic(distance_matrix(g), sorted(pts)) == expected


def test_isometric_examples():
    g = cycle_graph(6)
    assert is_isometric_subgraph(g, {0, 1, 2})
    assert not is_isometric_subgraph(g, {0, 3})
    assert is_isometric_subgraph(g, range(6))


def test_convex_examples():
    assert is_convex_subgraph(cycle_graph(6), {0, 1, 2})
    assert is_convex_subgraph(cycle_graph(7), {0, 1, 2, 3})
    assert not is_convex_subgraph(cycle_graph(6), {0, 1, 2, 3})
    assert is_convex_subgraph(grid_graph(3, 3), range(9))


@given(connected_graphs(max_n=8), st.data())
def test_convex_implies_isometric(g, data):
    x = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1))
    if is_convex_subgraph(g, x):
        assert is_isometric_subgraph(g, x)


def test_parallel_examples():
    g = path_graph(6)
    assert are_parallel(g, {0}, {5})
    assert not are_parallel(g, {0}, {4, 5})
    assert are_parallel(complete_graph(5), {0, 1}, {2, 3, 4})
    with pytest.raises(GraphError):
        are_parallel(g, {0, 1}, {1, 2})
    with pytest.raises(GraphError):
        are_parallel(g, set(), {1})


def test_set_distance():
    dm = distance_matrix(build_family("cycle:16"))
    assert set_distance(dm, {0, 1}, {8, 9}) == 7
