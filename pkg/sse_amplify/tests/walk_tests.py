import numpy as np
import pytest

from sse_amplify.services.WalkService import (
    DimensionMismatchError,
    GraphTooLargeForDenseBackendError,
    InvalidStepCountError,
)
from sse_amplify.services import WalkService
from sse_amplify.utils import CorpusUtils
from sse_amplify.utils.config import Settings


def test_single_edge_transition(walk_service, single_edge):
    walk = walk_service.lazy_operator(single_edge)
    assert walk_service.transition_matrix(walk) == pytest.approx(np.full((2, 2), 0.5))


def test_cycle_transition(walk_service, cycle4):
    transition = walk_service.transition_matrix(walk_service.lazy_operator(cycle4))
    for i in range(4):
        assert transition[i, i] == pytest.approx(0.5)
        assert transition[i, (i + 1) % 4] == pytest.approx(0.25)
        assert transition[i, (i - 1) % 4] == pytest.approx(0.25)


def test_star_transition(walk_service, star3):
    transition = walk_service.transition_matrix(walk_service.lazy_operator(star3))
    assert transition[1, 1] == pytest.approx(0.5)
    assert transition[1, 0] == pytest.approx(0.5)
    assert transition[0, 1] == pytest.approx(1 / 6)
    assert transition[0, 0] == pytest.approx(0.5)


def test_kernel_properties(walk_service, graph_service, rng):
    graph = CorpusUtils.random_weighted_graph(graph_service, rng, 10)
    walk = walk_service.lazy_operator(graph)
    assert np.max(np.abs(walk.kernel - walk.kernel.T)) <= 1e-12

    expected = 0.5 * (np.eye(graph.n) + graph.weights / graph.degrees[:, None])
    assert np.max(np.abs(walk_service.transition_matrix(walk) - expected)) <= 1e-12

    for _ in range(20):
        v = rng.normal(size=graph.n)
        quadratic = v @ walk.kernel @ v
        assert -1e-12 <= quadratic <= v @ v + 1e-12


def test_apply_walk_zero_steps(walk_service, cycle4):
    walk = walk_service.lazy_operator(cycle4)
    v = np.array([1.0, 2.0, 3.0, 4.0])
    assert walk_service.apply_walk(walk, v, 0).tolist() == v.tolist()


def test_apply_walk_single_edge(walk_service, single_edge):
    walk = walk_service.lazy_operator(single_edge)
    assert walk_service.apply_walk(walk, np.array([1.0, 0.0]), 1) == pytest.approx([0.5, 0.5])


def test_apply_walk_cycle_two_steps(walk_service, cycle4):
    walk = walk_service.lazy_operator(cycle4)
    result = walk_service.apply_walk(walk, np.array([1.0, 0, 0, 0]), 2)
    assert result == pytest.approx([3 / 8, 1 / 4, 1 / 8, 1 / 4])


def test_apply_walk_errors(walk_service, cycle4):
    walk = walk_service.lazy_operator(cycle4)
    with pytest.raises(DimensionMismatchError):
        walk_service.apply_walk(walk, np.ones(3), 1)
    with pytest.raises(InvalidStepCountError):
        walk_service.apply_walk(walk, np.ones(4), -1)


def test_power_one_is_lazy_graph(walk_service, single_edge):
    powered = walk_service.power_graph(single_edge, 1)
    assert powered.weights == pytest.approx(np.full((2, 2), 0.5))


def test_single_edge_power_is_idempotent(walk_service, single_edge):
    once = walk_service.power_graph(single_edge, 1)
    twice = walk_service.power_graph(single_edge, 2)
    assert twice.weights == pytest.approx(once.weights)


def test_cycle_power_two(walk_service, cycle4):
    powered = walk_service.power_graph(cycle4, 2)
    row = 2 * np.array([3 / 8, 1 / 4, 1 / 8, 1 / 4])
    for i in range(4):
        assert powered.weights[i] == pytest.approx(np.roll(row, i))


def test_lazy_graph_matches_power_one(walk_service, graph_service, rng):
    graph = CorpusUtils.random_weighted_graph(graph_service, rng, 8)
    lazy = walk_service.lazy_graph(graph)
    powered = walk_service.power_graph(graph, 1)
    assert np.max(np.abs(lazy.weights - powered.weights)) <= 1e-12


@pytest.mark.parametrize("t, squarings, multiplications", [
    (1, 0, 0), (2, 1, 0), (3, 1, 1), (8, 3, 0), (13, 3, 2), (1024, 10, 0),
])
def test_power_ledger(walk_service, cycle4, t, squarings, multiplications):
    report = walk_service.power_graph_report(cycle4, t)
    assert report.squarings == squarings
    assert report.multiplications == multiplications


def test_power_preserves_degrees_and_symmetry(walk_service, graph_service, rng):
    for graph in CorpusUtils.random_corpus(graph_service, rng, 10, max_n=12):
        for t in (1, 2, 5, 16, 64):
            powered = walk_service.power_graph(graph, t)
            assert np.max(np.abs(powered.weights - powered.weights.T)) <= 1e-12
            assert np.max(np.abs(powered.degrees / graph.degrees - 1)) <= 1e-9


def test_power_composition(walk_service, graph_service, rng):
    graph = CorpusUtils.random_weighted_graph(graph_service, rng, 9)
    walk = walk_service.lazy_operator(graph)
    root = np.sqrt(graph.degrees)
    for a, b in [(1, 1), (2, 3), (4, 4), (8, 5)]:
        expected = root[:, None] * (
            np.linalg.matrix_power(walk.kernel, a) @ np.linalg.matrix_power(walk.kernel, b)
        ) * root[None, :]
        assert np.max(np.abs(walk_service.power_graph(graph, a + b).weights - expected)) <= 1e-9


def test_power_keeps_components_apart(walk_service, two_triangles):
    powered = walk_service.power_graph(two_triangles, 32)
    assert np.all(powered.weights[:3, 3:] == 0.0)


def test_power_rejects_zero_steps(walk_service, cycle4):
    with pytest.raises(InvalidStepCountError):
        walk_service.power_graph(cycle4, 0)


def test_dense_cap(graph_service, cycle6):
    service = WalkService(graph_service, Settings(DENSE_CAP=4))
    with pytest.raises(GraphTooLargeForDenseBackendError):
        service.lazy_operator(cycle6)


def test_walk_facts(walk_service, graph_service, rng):
    for graph in CorpusUtils.random_corpus(graph_service, rng, 25, max_n=12):
        walk = walk_service.lazy_operator(graph)
        transition = walk_service.transition_matrix(walk)
        d = graph.degrees
        v = rng.normal(size=graph.n)

        stepped = walk_service.apply_walk(walk, v, 1)
        lhs = d @ stepped**2
        rhs = v @ (d * (transition @ transition @ v))
        assert abs(lhs - rhs) <= 1e-9 * (v @ v) * graph.max_degree

        first = v @ (d * (transition @ v))
        assert d @ v**2 >= first - 1e-12 and first >= rhs - 1e-12

        x = np.abs(v)
        assert d @ (transition @ x) == pytest.approx(d @ x, rel=1e-9)
