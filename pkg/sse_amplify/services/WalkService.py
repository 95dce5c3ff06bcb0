import logging
from typing import Optional, Tuple

import numpy as np

from ..schemas import PowerReport, WalkOperator, WeightedGraph
from ..utils.config import Settings, settings as default_settings
from ..utils.GraphUtils import symmetrize
from .GraphService import GraphService

logger = logging.getLogger("sse_amplify")


class WalkServiceError(Exception):
    """Base exception for WalkService errors"""

    pass


class GraphTooLargeForDenseBackendError(WalkServiceError):
    pass


class DimensionMismatchError(WalkServiceError):
    pass


class InvalidStepCountError(WalkServiceError):
    pass


class WalkService:
    def __init__(
        self,
        graph_service: Optional[GraphService] = None,
        config: Optional[Settings] = None,
    ):
        self.config = config or default_settings
        self.graph_service = graph_service or GraphService(self.config)

    def lazy_operator(self, graph: WeightedGraph) -> WalkOperator:
        """Lazy walk M = 1/2 (I + D^-1 A) held as its symmetric conjugate."""
        if graph.n > self.config.DENSE_CAP:
            raise GraphTooLargeForDenseBackendError(
                f"n = {graph.n} exceeds the dense backend cap {self.config.DENSE_CAP}"
            )
        sqrt_degrees = np.sqrt(graph.degrees)
        normalized = graph.weights / np.outer(sqrt_degrees, sqrt_degrees)
        kernel = symmetrize(0.5 * (np.eye(graph.n) + normalized))
        return WalkOperator(graph=graph, kernel=kernel, sqrt_degrees=sqrt_degrees)

    def transition_matrix(self, walk: WalkOperator) -> np.ndarray:
        """M itself, D^-1/2 K D^1/2; row-stochastic."""
        return walk.kernel * (walk.sqrt_degrees[None, :] / walk.sqrt_degrees[:, None])

    def apply_walk(self, walk: WalkOperator, v: np.ndarray, steps: int) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        if v.shape != (walk.n,):
            raise DimensionMismatchError(f"vector has shape {v.shape}, expected ({walk.n},)")
        if steps < 0:
            raise InvalidStepCountError(f"step count must be non-negative, got {steps}")
        if steps == 0:
            return v.copy()

        u = walk.sqrt_degrees * v
        for _ in range(steps):
            u = walk.kernel @ u
        return u / walk.sqrt_degrees

    def power_kernel(self, walk: WalkOperator, t: int) -> Tuple[np.ndarray, int, int]:
        """K^t by repeated squaring; returns (K^t, squarings, multiplications).

        Uses floor(log2 t) squarings and popcount(t) - 1 multiplications. Every
        product is re-symmetrized so round-off cannot break symmetry.
        """
        if t < 1:
            raise InvalidStepCountError(f"walk length must be at least 1, got {t}")

        result = None
        base = walk.kernel.copy()
        squarings = 0
        multiplications = 0
        remaining = t
        while True:
            if remaining & 1:
                if result is None:
                    result = base.copy()
                else:
                    result = symmetrize(result @ base)
                    multiplications += 1
            remaining >>= 1
            if not remaining:
                break
            base = symmetrize(base @ base)
            squarings += 1
        return result, squarings, multiplications

    def power_graph_report(self, graph: WeightedGraph, t: int) -> PowerReport:
        walk = self.lazy_operator(graph)
        kernel, squarings, multiplications = self.power_kernel(walk, t)

        weights = symmetrize(
            walk.sqrt_degrees[:, None] * kernel * walk.sqrt_degrees[None, :]
        )
        weights[weights < self.config.DROP_TOLERANCE * weights.max()] = 0.0
        powered = self.graph_service.graph_from_weights(weights)

        logger.debug(
            f"G^{t}: {squarings} squarings, {multiplications} multiplications, "
            f"{len(powered.edges)} stored pairs"
        )
        return PowerReport(
            t=t, squarings=squarings, multiplications=multiplications, graph=powered
        )

    def power_graph(self, graph: WeightedGraph, t: int) -> WeightedGraph:
        """G^t with weights D M^t: the endpoints of t-step lazy walks."""
        return self.power_graph_report(graph, t).graph

    def lazy_graph(self, graph: WeightedGraph) -> WeightedGraph:
        return self.graph_service.graph_from_weights(
            0.5 * (np.diag(graph.degrees) + graph.weights)
        )
