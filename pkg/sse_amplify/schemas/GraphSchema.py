from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator


class WeightedGraph(BaseModel):
    """Undirected graph with a dense symmetric weight matrix.

    Self-loops sit on the diagonal and count once toward the degree, so
    ``degrees`` is exactly the row sum of ``weights``. ``edges`` keeps the
    construction order (i <= j), which the expander replacement relies on.
    Build instances through GraphService, which performs the validation.
    """

    n: int
    weights: np.ndarray
    degrees: np.ndarray
    total_volume: float
    edges: Tuple[Tuple[int, int, float], ...]

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def check_shapes(self):
        if self.weights.shape != (self.n, self.n):
            raise ValueError(f"weights must be {self.n}x{self.n}")
        if self.degrees.shape != (self.n,):
            raise ValueError(f"degrees must have length {self.n}")
        self.weights.flags.writeable = False
        self.degrees.flags.writeable = False
        return self

    @property
    def has_self_loops(self) -> bool:
        return bool(np.any(np.diag(self.weights) > 0))

    @property
    def max_degree(self) -> float:
        return float(self.degrees.max())


class VertexSet(BaseModel):
    members: Tuple[int, ...]
    volume: float
    cut_weight: float
    expansion: float

    model_config = ConfigDict(frozen=True)

    def __len__(self) -> int:
        return len(self.members)
