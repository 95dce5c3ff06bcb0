from pathlib import Path
from typing import Tuple, Union

from ..schemas import RegularizedGraph, WeightedGraph
from ..services.GraphService import GraphService
from ..utils.constants import SIGNIFICANT_DIGITS

PathLike = Union[str, Path]


class GraphRepositoryError(Exception):
    """Base exception for GraphRepository errors"""

    pass


class EdgeListFormatError(GraphRepositoryError):
    pass


class SelfLoopNotAllowedError(GraphRepositoryError):
    """Raised when an input file has an i == j line and loops were not allowed"""

    pass


class GraphRepository:
    """Edge-list files: a header "n m" followed by m lines "i j w"."""

    def __init__(self, graph_service: GraphService):
        self.graph_service = graph_service

    def read_edge_list(self, path: PathLike, allow_loops: bool = False) -> WeightedGraph:
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as e:
            raise GraphRepositoryError(f"cannot read {path}: {e}")
        return self.parse_edge_list(text, allow_loops=allow_loops, source=str(path))

    def parse_edge_list(
        self, text: str, allow_loops: bool = False, source: str = "<input>"
    ) -> WeightedGraph:
        lines = [
            (number, line.split())
            for number, line in enumerate(text.splitlines(), start=1)
            if line.strip()
        ]
        if not lines:
            raise EdgeListFormatError(f"{source}: empty edge list")

        number, header = lines[0]
        if len(header) != 2:
            raise EdgeListFormatError(f"{source}:{number}: header must be 'n m'")
        try:
            n, m = int(header[0]), int(header[1])
        except ValueError:
            raise EdgeListFormatError(f"{source}:{number}: header must hold two integers")

        body = lines[1:]
        if len(body) != m:
            raise EdgeListFormatError(
                f"{source}: header announces {m} edges, found {len(body)}"
            )

        edges = []
        for number, fields in body:
            if len(fields) != 3:
                raise EdgeListFormatError(f"{source}:{number}: expected 'i j w'")
            try:
                i, j, w = int(fields[0]), int(fields[1]), float(fields[2])
            except ValueError:
                raise EdgeListFormatError(f"{source}:{number}: malformed edge {fields}")
            if i == j and not allow_loops:
                raise SelfLoopNotAllowedError(
                    f"{source}:{number}: self-loop at {i} (pass --allow-loops)"
                )
            edges.append((i, j, w))

        return self.graph_service.build_graph(n, edges)

    def format_edge_list(self, graph: WeightedGraph) -> str:
        lines = [f"{graph.n} {len(graph.edges)}"]
        lines.extend(
            f"{i} {j} {w:.{SIGNIFICANT_DIGITS}g}" for i, j, w in graph.edges
        )
        return "\n".join(lines) + "\n"

    def write_edge_list(self, graph: WeightedGraph, path: PathLike) -> None:
        Path(path).write_text(self.format_edge_list(graph))

    def write_block_map(self, regularized: RegularizedGraph, path: PathLike) -> None:
        """Sidecar of a regularized graph: one "v blockStart blockSize" line per vertex."""
        lines = [
            f"{v} {start} {size}"
            for v, (start, size) in enumerate(
                zip(regularized.block_start, regularized.block_size)
            )
        ]
        Path(path).write_text("\n".join(lines) + "\n")

    def parse_vertex_list(self, text: str) -> Tuple[int, ...]:
        tokens = text.replace(",", " ").split()
        try:
            return tuple(int(token) for token in tokens)
        except ValueError:
            raise EdgeListFormatError(f"vertex list must hold integers, got {text!r}")
