import math
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Mapping

import numpy as np
from pydantic import BaseModel

from ..schemas import Certificate, ReportFormat, VertexSet, WeightedGraph
from .constants import SIGNIFICANT_DIGITS


def camel(name: str) -> str:
    head, *rest = name.split("_")
    return head + "".join(part.capitalize() for part in rest)


def format_value(value: Any) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.{SIGNIFICANT_DIGITS}g}"
    if isinstance(value, np.ndarray):
        value = value.tolist()
    if isinstance(value, (list, tuple)):
        if value and isinstance(value[0], (list, tuple)):
            return ";".join(format_value(item) for item in value)
        return ",".join(format_value(item) for item in value)
    return str(value)


def flatten(model: BaseModel, prefix: str = "") -> Dict[str, Any]:
    """Model fields in declaration order, camelCase keys, nested models prefixed."""
    fields: Dict[str, Any] = {}
    for name in type(model).model_fields:
        value = getattr(model, name)
        key = camel(f"{prefix}_{name}" if prefix else name)
        if isinstance(value, WeightedGraph):
            continue
        if isinstance(value, BaseModel):
            fields.update(flatten(value, prefix=f"{prefix}_{name}" if prefix else name))
        else:
            fields[key] = value
    return fields


def vertex_set_fields(vertex_set: VertexSet) -> Dict[str, Any]:
    return {
        "setMembers": vertex_set.members,
        "volume": vertex_set.volume,
        "cutWeight": vertex_set.cut_weight,
        "expansion": vertex_set.expansion,
    }


def certificate_fields(certificate: Certificate) -> Dict[str, Any]:
    trace = certificate.trace
    return {
        "stepIndex": trace.step_index,
        "theta": trace.theta,
        "betaHat": trace.beta_hat,
        "ratios": trace.ratios,
        **vertex_set_fields(certificate.vertex_set),
        "volumeBound": certificate.volume_bound,
        "beta": certificate.beta,
        "sourceMembers": trace.source_members,
        "sourceVolume": trace.source_volume,
    }


def render(kind: str, fields: Mapping[str, Any], report_format: ReportFormat) -> str:
    if ReportFormat(report_format) is ReportFormat.RECORDS:
        parts = [f"record={kind}"]
        parts.extend(f"{key}={format_value(value)}" for key, value in fields.items())
        return " ".join(parts)

    lines = [f"[{kind}]"]
    lines.extend(f"  {key}: {format_value(value)}" for key, value in fields.items())
    return "\n".join(lines)
