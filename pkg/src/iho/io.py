"""Deterministic JSON and CSV writers with a provenance header."""

from __future__ import annotations

import json
import math
from enum import Enum
from pathlib import Path

import numpy as np

from . import __version__


def _fmt_float(v: float) -> str:
    if math.isnan(v) or math.isinf(v):
        # JSON has no literal for these; keep them explicit strings
        return json.dumps(repr(v))
    s = format(v, ".17g")
    if "e" not in s and "." not in s and "inf" not in s:
        s += ".0"
    return s


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON text with 17-digit floats and insertion-ordered keys."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, Enum):
        obj = obj.value
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return dumps({"re": obj.real, "im": obj.imag}, indent, _level)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.integer, np.floating)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def provenance(command: str, config: dict) -> dict:
    return {"tool": "iho", "version": __version__, "command": command, "config": config}


def write_json(path, command: str, config: dict, payload: dict) -> str:
    doc = {"provenance": provenance(command, config)}
    doc.update(payload)
    text = dumps(doc) + "\n"
    if path is None or str(path) == "-":
        return text
    Path(path).write_text(text, encoding="utf-8")
    return text


def write_csv(path, command: str, config: dict, header, rows) -> str:
    """Comma-separated table; the first line is '# ' + provenance JSON."""
    lines = ["# " + json.dumps(provenance(command, config), separators=(",", ":"), default=str)]
    lines.append(",".join(header))
    for row in rows:
        cells = []
        for v in row:
            if isinstance(v, (float, np.floating)):
                cells.append(format(float(v), ".17g"))
            else:
                cells.append(str(v))
        lines.append(",".join(cells))
    text = "\n".join(lines) + "\n"
    if path is None or str(path) == "-":
        return text
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return text
