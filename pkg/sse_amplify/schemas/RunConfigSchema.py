from enum import Enum
from pathlib import Path
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict

from .ProfileSchema import SseVariant


class ReportFormat(str, Enum):
    TEXT = "text"
    RECORDS = "records"


class RunConfig(BaseModel):
    command: str
    input_path: Optional[Path] = None
    output_path: Optional[Path] = None
    t: Optional[int] = None
    delta: Tuple[float, ...] = ()
    eta: Optional[float] = None
    beta: Optional[float] = None
    epsilon: Optional[float] = None
    f_scale: Optional[float] = None
    f_exponent: Optional[float] = None
    c: Optional[float] = None
    s: Optional[float] = None
    variant: Optional[SseVariant] = None
    seed: int = 0
    exact_cap: int
    heuristic: bool = False
    allow_loops: bool = False
    members: Tuple[int, ...] = ()
    report_format: ReportFormat = ReportFormat.TEXT

    model_config = ConfigDict(frozen=True)
