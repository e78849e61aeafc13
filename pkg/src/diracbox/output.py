"""CSV / JSON row emission with fixed 9-significant-digit numbers."""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Mapping, Sequence

SIG_DIGITS = 9


def fmt_number(v: Any) -> Any:
    """Round floats to 9 significant digits; leave ints, bools and strings alone."""
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    v = float(v)
    if not math.isfinite(v):
        return None
    return float(f"{v:.{SIG_DIGITS}g}")


def _csv_cell(v: Any) -> str:
    v = fmt_number(v)
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.{SIG_DIGITS}g}"
    return str(v)


def columns_of(rows: Sequence[Mapping[str, Any]]) -> list[str]:
    cols: list[str] = []
    for row in rows:
        for k in row:
            if k not in cols:
                cols.append(k)
    return cols


def render_csv(rows: Sequence[Mapping[str, Any]]) -> str:
    buf = io.StringIO()
    cols = columns_of(rows)
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for row in rows:
        w.writerow([_csv_cell(row.get(c)) for c in cols])
    return buf.getvalue()


def render_json(params: Mapping[str, Any], rows: Sequence[Mapping[str, Any]]) -> str:
    doc = {
        "params": [{"name": k, "value": _json_value(v)} for k, v in params.items()],
        "rows": [{k: _json_value(v) for k, v in row.items()} for row in rows],
    }
    return json.dumps(doc, indent=1) + "\n"


def _json_value(v):
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    return fmt_number(v)


def render(fmt: str, params: Mapping[str, Any], rows: Sequence[Mapping[str, Any]]) -> str:
    if fmt == "json":
        return render_json(params, rows)
    return render_csv(rows)
