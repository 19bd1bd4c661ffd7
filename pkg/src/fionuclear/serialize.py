"""Canonical JSON and CSV emission for reports and matrices.

Output bytes must be reproducible run to run, so serialization is pinned
down to the digit: floats are rendered with repr-stable 17 significant
digits, complex numbers as two-field ``{"re", "im"}`` records, and keys
keep their insertion order.  Non-finite values are refused rather than
smuggled through as barewords.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

import numpy as np

from .errors import ParameterDomainError
from .operator import KernelMatrix


def format_float(x: float) -> str:
    """17-significant-digit decimal rendering of a finite float."""
    x = float(x)
    if not math.isfinite(x):
        raise ParameterDomainError(f"refusing to serialize non-finite value {x!r}")
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return format(x, ".17g")


def _encode(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool) or isinstance(obj, np.bool_):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        z = complex(obj)
        return f'{{"re": {format_float(z.real)}, "im": {format_float(z.imag)}}}'
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, str):
        # json.dumps escaping rules, inlined for one type
        out = ['"']
        for ch in obj:
            if ch in '"\\':
                out.append("\\" + ch)
            elif ch < " ":
                out.append(f"\\u{ord(ch):04x}")
            else:
                out.append(ch)
        out.append('"')
        return "".join(out)
    if isinstance(obj, np.ndarray):
        return _encode(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    if isinstance(obj, dict):
        parts = []
        for key, value in obj.items():
            if not isinstance(key, str):
                raise ParameterDomainError(f"JSON object keys must be strings, got {key!r}")
            parts.append(f"{_encode(key)}: {_encode(value)}")
        return "{" + ", ".join(parts) + "}"
    raise ParameterDomainError(f"cannot serialize object of type {type(obj).__name__}")


def canonical_json(obj) -> str:
    """Deterministic JSON text for a tree of plain values."""
    return _encode(obj) + "\n"


def write_json(path, obj) -> Path:
    path = Path(path)
    path.write_text(canonical_json(obj), encoding="utf-8")
    return path


def write_kernel_csv(path, M: KernelMatrix) -> Path:
    """Row-major kernel dump with header ``i,j,re,im``."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["i", "j", "re", "im"])
        for i, row in enumerate(M.entries):
            for j, z in enumerate(row):
                writer.writerow([i, j, format_float(z.real), format_float(z.imag)])
    return path


def write_values_csv(path, header: list, rows) -> Path:
    """Generic small-table dump; floats rendered canonically."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [format_float(v) if isinstance(v, (float, np.floating)) else v for v in row]
            )
    return path


def complex_record(z: complex) -> dict:
    """The ``{"re", "im"}`` form used everywhere a complex value appears."""
    z = complex(z)
    return {"re": float(z.real), "im": float(z.imag)}


def complex_list(values) -> list:
    return [complex_record(z) for z in np.asarray(values)]
