import numpy as np
import pytest

from sse_amplify.repositories.GraphRepository import (
    EdgeListFormatError,
    GraphRepositoryError,
    SelfLoopNotAllowedError,
)
from sse_amplify.services.GraphService import DuplicateEdgeError


def test_read_bundled_cycle(repository, data_dir):
    graph = repository.read_edge_list(data_dir / "c6.el")
    assert graph.n == 6
    assert graph.total_volume == 12.0


def test_parse_with_blank_lines(repository):
    graph = repository.parse_edge_list("2 1\n\n0 1 2.5\n")
    assert graph.edges == ((0, 1, 2.5),)


@pytest.mark.parametrize("text", [
    "",
    "3\n0 1 1\n",
    "2 2\n0 1 1\n",
    "2 1\n0 1\n",
    "2 1\n0 x 1\n",
    "a b\n",
])
def test_malformed_edge_lists(repository, text):
    with pytest.raises(EdgeListFormatError):
        repository.parse_edge_list(text)


def test_self_loop_needs_flag(repository):
    text = "2 2\n0 0 1\n0 1 1\n"
    with pytest.raises(SelfLoopNotAllowedError):
        repository.parse_edge_list(text)
    graph = repository.parse_edge_list(text, allow_loops=True)
    assert graph.degrees.tolist() == [2.0, 1.0]


def test_graph_errors_propagate(repository):
    with pytest.raises(DuplicateEdgeError):
        repository.parse_edge_list("2 2\n0 1 1\n1 0 1\n")


def test_missing_file(repository, tmp_path):
    with pytest.raises(GraphRepositoryError):
        repository.read_edge_list(tmp_path / "missing.el")


def test_written_weights_are_exact(repository, walk_service, data_dir, tmp_path):
    powered = walk_service.power_graph(repository.read_edge_list(data_dir / "c6.el"), 3)
    path = tmp_path / "c6_3.el"
    repository.write_edge_list(powered, path)
    header = path.read_text().splitlines()[0]
    assert header == f"6 {len(powered.edges)}"

    reread = repository.read_edge_list(path, allow_loops=True)
    assert np.array_equal(reread.weights, powered.weights)


def test_block_map(repository, reduction_service, data_dir, tmp_path):
    star = repository.read_edge_list(data_dir / "star3.el")
    path = tmp_path / "star.map"
    repository.write_block_map(reduction_service.regularize(star), path)
    assert path.read_text().splitlines() == ["0 0 3", "1 3 1", "2 4 1", "3 5 1"]


def test_vertex_lists(repository):
    assert repository.parse_vertex_list("3 1\n2") == (3, 1, 2)
    assert repository.parse_vertex_list("0,1,2") == (0, 1, 2)
    with pytest.raises(EdgeListFormatError):
        repository.parse_vertex_list("0 one")
