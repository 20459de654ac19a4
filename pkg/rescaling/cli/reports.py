"""
Report rendering - canonical JSON and plain-text tables
"""
import json
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from rescaling.models.power_series import PowerSeries


def rational(value: Fraction) -> Dict[str, int]:
    value = Fraction(value)
    return {"n": value.numerator, "d": value.denominator}


def to_jsonable(value: Any) -> Any:
    """
    Convert a report to plain JSON values

    Rationals become {"n", "d"} pairs and series become
    {"order", "coefficients"} with every coefficient a pair. Plain ints
    and bools are kept as they are.
    """
    if value is None or isinstance(value, (bool, int, str, float)):
        return value
    if isinstance(value, Fraction):
        return rational(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, PowerSeries):
        return {"order": value.order, "coefficients": [rational(c) for c in value.coefficients]}
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [to_jsonable(v) for v in items]
    raise TypeError(f"Cannot serialize {type(value).__name__} in a report")


def dumps(report: Any) -> str:
    """Canonical JSON: sorted keys, no insignificant whitespace"""
    return json.dumps(to_jsonable(report), sort_keys=True, separators=(",", ":"), ensure_ascii=True)


# ==================== Tables ====================

def _scalar(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, Enum):
        return str(value.value)
    return str(value)


def _rows(prefix: str, value: Any) -> List[Tuple[str, str]]:
    if isinstance(value, PowerSeries):
        return [(prefix, str(value))]
    if hasattr(value, "to_dict"):
        value = value.to_dict()
    if isinstance(value, dict):
        if not value:
            return [(prefix, "{}")]
        rows = []
        for key in sorted(value, key=str):
            rows.extend(_rows(f"{prefix}.{key}" if prefix else str(key), value[key]))
        return rows
    if isinstance(value, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple, PowerSeries)) and not hasattr(v, "to_dict") for v in value):
            return [(prefix, ", ".join(_scalar(v) for v in value) or "[]")]
        rows = []
        for i, item in enumerate(value):
            rows.extend(_rows(f"{prefix}[{i}]", item))
        return rows
    return [(prefix, _scalar(value))]


def render_table(report: Dict[str, Any]) -> str:
    rows = _rows("", report)
    width = max((len(key) for key, _ in rows), default=0)
    return "\n".join(f"{key:<{width}}  {text}" for key, text in rows)


def render(report: Dict[str, Any], fmt: str = "json") -> str:
    if fmt == "table":
        return render_table(report)
    return dumps(report)
