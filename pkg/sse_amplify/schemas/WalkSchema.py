import numpy as np
from pydantic import BaseModel, ConfigDict

from .GraphSchema import WeightedGraph


class WalkOperator(BaseModel):
    """Lazy walk in symmetric form: kernel = 1/2 (I + D^-1/2 A D^-1/2)."""

    graph: WeightedGraph
    kernel: np.ndarray
    sqrt_degrees: np.ndarray

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def n(self) -> int:
        return self.graph.n


class PowerReport(BaseModel):
    t: int
    squarings: int
    multiplications: int
    graph: WeightedGraph

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)
