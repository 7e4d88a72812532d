"""Stable JSON / CSV serialisation for command output."""
from __future__ import annotations

import csv
import datetime as _dt
import enum
import io
import json
import math
from fractions import Fraction
from typing import Iterable, List, Mapping, Sequence

import numpy as np

from .interval import RationalInterval

SCHEMA_VERSION = "1"
SIG_DIGITS = 12


def fmt(x: float) -> str:
    """Decimal text with 12 significant digits."""
    x = float(x)
    if math.isinf(x) or math.isnan(x):
        return str(x)
    return f"{x:.{SIG_DIGITS}g}"


def jsonable(obj):
    """Recursively convert to JSON-ready values, rounding floats to 12 significant digits."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isinf(x) or math.isnan(x):
            return str(x)
        return float(fmt(x))
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, RationalInterval):
        return {"lo": str(obj.lo), "hi": str(obj.hi), "mid": float(fmt(float(obj.mid)))}
    if isinstance(obj, Mapping):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def output_record(command: str, payload: Mapping, deterministic: bool = False) -> dict:
    rec = {"schema_version": SCHEMA_VERSION, "command": command}
    if not deterministic:
        rec["generated_at"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    rec["payload"] = jsonable(payload)
    return rec


def dumps(record: Mapping) -> str:
    return json.dumps(record, indent=2, ensure_ascii=True) + "\n"


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def rows_as_json(header: Sequence[str], rows: Iterable[Sequence]) -> List[dict]:
    return [dict(zip(header, (jsonable(v) for v in row))) for row in rows]
