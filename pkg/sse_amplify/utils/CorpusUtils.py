"""Graph corpora for tests and verification suites, built with networkx."""

from pathlib import Path
from typing import List, Tuple

import networkx as nx
import numpy as np

from ..schemas import WeightedGraph
from ..services.GraphService import GraphService

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


def from_networkx(graph_service: GraphService, graph: nx.Graph, weight: str = "weight") -> WeightedGraph:
    graph = nx.convert_node_labels_to_integers(graph, ordering="sorted")
    edges = [(u, v, data.get(weight, 1.0)) for u, v, data in graph.edges(data=True)]
    return graph_service.build_graph(graph.number_of_nodes(), edges)


def cycle_graph(graph_service: GraphService, n: int) -> WeightedGraph:
    return from_networkx(graph_service, nx.cycle_graph(n))


def complete_graph(graph_service: GraphService, n: int) -> WeightedGraph:
    return from_networkx(graph_service, nx.complete_graph(n))


def path_graph(graph_service: GraphService, n: int) -> WeightedGraph:
    return from_networkx(graph_service, nx.path_graph(n))


def star_graph(graph_service: GraphService, leaves: int) -> WeightedGraph:
    """Center 0 joined to ``leaves`` leaves."""
    return from_networkx(graph_service, nx.star_graph(leaves))


def disjoint_cliques(graph_service: GraphService, size: int, copies: int = 2) -> WeightedGraph:
    """Cliques on consecutive vertex ranges with no edges between them."""
    graph = nx.disjoint_union_all([nx.complete_graph(size) for _ in range(copies)])
    return from_networkx(graph_service, graph)


def two_cliques(graph_service: GraphService, size: int) -> WeightedGraph:
    """Cliques on 0..size-1 and size..2size-1 joined by the edge (size-1, size)."""
    return from_networkx(graph_service, nx.barbell_graph(size, 0))


def random_weighted_graph(
    graph_service: GraphService, rng: np.random.Generator, n: int, p: float = 0.5
) -> WeightedGraph:
    """Connected G(n, p) with weights drawn from (0, 2]."""
    graph = nx.gnp_random_graph(n, p, seed=int(rng.integers(2**31)))
    components = [sorted(c) for c in nx.connected_components(graph)]
    for first, second in zip(components, components[1:]):
        graph.add_edge(first[0], second[0])
    for u, v in graph.edges:
        graph[u][v]["weight"] = 2.0 - rng.uniform(0.0, 2.0)
    return from_networkx(graph_service, graph)


def random_corpus(
    graph_service: GraphService,
    rng: np.random.Generator,
    count: int,
    min_n: int = 3,
    max_n: int = 10,
) -> List[WeightedGraph]:
    corpus = []
    for _ in range(count):
        n = int(rng.integers(min_n, max_n + 1))
        p = float(rng.uniform(0.25, 0.8))
        corpus.append(random_weighted_graph(graph_service, rng, n, p))
    return corpus


def named_corpus(graph_service: GraphService) -> List[Tuple[str, WeightedGraph]]:
    """Small unweighted structured graphs, at most 10 vertices each."""
    graphs = [
        ("cycle6", nx.cycle_graph(6)),
        ("cycle9", nx.cycle_graph(9)),
        ("complete5", nx.complete_graph(5)),
        ("path5", nx.path_graph(5)),
        ("star3", nx.star_graph(3)),
        ("barbell4", nx.barbell_graph(4, 0)),
        ("two_triangles", nx.disjoint_union(nx.complete_graph(3), nx.complete_graph(3))),
        ("petersen", nx.petersen_graph()),
        ("wheel6", nx.wheel_graph(6)),
        ("ladder4", nx.ladder_graph(4)),
        ("cube", nx.hypercube_graph(3)),
    ]
    return [(name, from_networkx(graph_service, g)) for name, g in graphs]


def planted_two_block(
    graph_service: GraphService,
    rng: np.random.Generator,
    min_size: int = 6,
    max_size: int = 9,
) -> Tuple[WeightedGraph, Tuple[int, ...]]:
    """Two dense weighted blocks joined by one light edge; returns (G, first block)."""
    first = int(rng.integers(min_size, max_size + 1))
    second = int(rng.integers(min_size, max_size + 1))
    graph = nx.disjoint_union(nx.complete_graph(first), nx.complete_graph(second))
    for u, v in graph.edges:
        graph[u][v]["weight"] = float(rng.uniform(0.5, 1.5))
    graph.add_edge(int(rng.integers(first)), first + int(rng.integers(second)),
                   weight=float(rng.uniform(0.05, 0.5)))
    return from_networkx(graph_service, graph), tuple(range(first))
