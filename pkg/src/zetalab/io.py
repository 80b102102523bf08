"""Plain-text sequence files (spectra, perturbed sequences, zero ordinates).

One positive real per line, strictly ascending. A line whose first
non-blank character is ``#`` is a comment; blank lines are ignored.
"""

from __future__ import annotations

import json
import math
import os
from pathlib import Path

import numpy as np

from .core import FormatError, OrderError


def read_sequence(path: str | os.PathLike) -> np.ndarray:
    values: list[float] = []
    prev = -math.inf
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                x = float(line)
            except ValueError:
                raise FormatError(f"not a real number: {line!r}", line=lineno) from None
            if not math.isfinite(x) or x <= 0:
                raise FormatError(f"expected a positive finite value, got {line!r}", line=lineno)
            if x <= prev:
                raise OrderError(f"value {x!r} does not exceed the previous {prev!r}", line=lineno)
            values.append(x)
            prev = x
    return np.asarray(values, dtype=np.float64)


def format_real(x: float) -> str:
    """12 significant digits, scientific notation (the CLI's fixed format)."""
    return f"{x:.11e}"


def write_sequence(path: str | os.PathLike, values, header: str | None = None, digits: int = 12) -> Path:
    path = Path(path)
    lines = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    lines.extend(f"{float(v):.{digits}f}" for v in values)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def point_json(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def dumps_json(obj, indent: int = 2) -> str:
    """JSON text with every float in the fixed 12-digit scientific format.

    Non-finite floats become ``null``. Key order is preserved, so equal
    inputs always give byte-identical output.
    """
    pad = " " * indent

    def enc(o, level):
        if isinstance(o, bool) or o is None:
            return json.dumps(o)
        if isinstance(o, (int, np.integer)):
            return str(int(o))
        if isinstance(o, (float, np.floating)):
            return format_real(float(o)) if math.isfinite(o) else "null"
        if isinstance(o, str):
            return json.dumps(o)
        inner = pad * (level + 1)
        if isinstance(o, dict):
            if not o:
                return "{}"
            items = [f"{inner}{json.dumps(str(k))}: {enc(v, level + 1)}" for k, v in o.items()]
            return "{\n" + ",\n".join(items) + "\n" + pad * level + "}"
        if isinstance(o, (list, tuple)):
            if not o:
                return "[]"
            items = [f"{inner}{enc(v, level + 1)}" for v in o]
            return "[\n" + ",\n".join(items) + "\n" + pad * level + "]"
        raise TypeError(f"cannot serialise {type(o).__name__}")

    return enc(obj, 0) + "\n"
