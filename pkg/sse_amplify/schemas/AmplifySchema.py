from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .GraphSchema import VertexSet, WeightedGraph


class AmplifyParams(BaseModel):
    epsilon: Optional[float] = Field(default=None, gt=0, lt=1)
    t: Optional[int] = None
    eta: float = Field(default=0.5, gt=0, le=1)
    delta: float = Field(default=0.5, gt=0, le=1)
    f_scale: float = Field(default=1.0, gt=0)
    f_exponent: float = Field(default=1 / 3, lt=0.5)

    model_config = ConfigDict(frozen=True)


class WalkLengthChoice(BaseModel):
    t: int
    f_value: float
    completeness_figure: float  # (t/2) * epsilon
    soundness_figure: float  # min(1 - (1 - f^2 / 32)^t, 1/2)
    meets_eta: Optional[bool] = None

    model_config = ConfigDict(frozen=True)


class AmplifyReport(BaseModel):
    t: int
    squarings: int
    multiplications: int
    completeness_figure: Optional[float] = None
    source_expansion: Optional[float] = None
    completeness_bound: Optional[float] = None
    survival_bound: Optional[float] = None
    amplified_expansion: Optional[float] = None
    soundness_phi: Optional[float] = None
    soundness_floor: Optional[float] = None

    model_config = ConfigDict(frozen=True)


class AmplifyResult(BaseModel):
    graph: WeightedGraph
    report: AmplifyReport

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class TruncationResult(BaseModel):
    y: np.ndarray
    theta: float
    sparsity_condition: bool
    rayleigh_before: Optional[float] = None
    rayleigh_after: Optional[float] = None  # None when y is identically zero

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def is_zero(self) -> bool:
        return not bool(np.any(self.y > 0))


class CertificateTrace(BaseModel):
    step_index: int
    ratios: Tuple[float, ...]
    theta: float
    beta_hat: float
    source_members: Tuple[int, ...]
    source_volume: float

    model_config = ConfigDict(frozen=True)


class Certificate(BaseModel):
    vertex_set: VertexSet
    beta: float
    volume_bound: float
    trace: CertificateTrace

    model_config = ConfigDict(frozen=True)


class SandwichBounds(BaseModel):
    t: int
    delta: float
    eta: float
    wide_delta: float  # min(4 delta / eta, 1)
    phi_delta: float
    phi_wide: float
    lower: float
    upper: float

    model_config = ConfigDict(frozen=True)
