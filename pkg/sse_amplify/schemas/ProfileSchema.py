import math
from enum import Enum
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict

from .GraphSchema import VertexSet


class ProfileResult(BaseModel):
    """Minimal expansion over sets with volume fraction in [lower, delta].

    ``phi`` is ``math.inf`` with no witness when no subset qualifies.
    """

    delta: float
    phi: float
    witness: Optional[VertexSet] = None
    exact: bool = True
    lower: float = 0.0

    model_config = ConfigDict(frozen=True)

    @property
    def found(self) -> bool:
        return self.witness is not None and not math.isinf(self.phi)


class SseVariant(str, Enum):
    SSE = "sse"
    SSE_PRIME = "sse-prime"
    SSE_EQ = "sse-eq"


class Verdict(str, Enum):
    COMPLETENESS_HOLDS = "CompletenessHolds"
    SOUNDNESS_HOLDS = "SoundnessHolds"
    NEITHER = "Neither"


class SseVerdict(BaseModel):
    variant: SseVariant
    verdict: Verdict
    delta: float
    c: float
    s: float
    completeness_window: Tuple[float, float]
    soundness_window: Tuple[float, float]
    completeness_phi: float
    soundness_phi: float
    witness: Optional[VertexSet] = None

    model_config = ConfigDict(frozen=True)
