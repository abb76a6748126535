"""JSON interchange for states, spectra, POVMs and reports.

Matrices are written as ``{"dim": n, "re": [[...]], "im": [[...]]}`` (row
major) and spectra as ``{"p": [...]}``. Floats are emitted with 17
significant digits so doubles round-trip exactly.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from .discrimination import DiscriminationReport, Povm
from .errors import QDistinguishError
from .states import DensityMatrix, Spectrum, as_spectrum, validate_state


class ParseError(QDistinguishError, ValueError):
    """Input file is not valid JSON or not in the expected layout."""


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    s = f"{x:.17g}"
    if "e" not in s and "." not in s and "n" not in s:
        s += ".0"
    return s


def dumps(obj: Any, indent: int = 2) -> str:
    """Deterministic JSON text with 17-significant-digit floats."""

    def enc(o, level):
        pad = " " * (indent * (level + 1))
        end = " " * (indent * level)
        if isinstance(o, (bool, np.bool_)):
            return "true" if o else "false"
        if o is None:
            return "null"
        if isinstance(o, (int, np.integer)):
            return str(int(o))
        if isinstance(o, (float, np.floating)):
            return _fmt_float(float(o))
        if isinstance(o, str):
            return json.dumps(o)
        if isinstance(o, np.ndarray):
            return enc(o.tolist(), level)
        if isinstance(o, dict):
            if not o:
                return "{}"
            items = [f"{pad}{json.dumps(str(k))}: {enc(v, level + 1)}" for k, v in o.items()]
            return "{\n" + ",\n".join(items) + "\n" + end + "}"
        if isinstance(o, (list, tuple)):
            if not o:
                return "[]"
            if all(isinstance(v, (int, float, np.number, bool)) for v in o):
                return "[" + ", ".join(enc(v, level) for v in o) + "]"
            return "[\n" + ",\n".join(pad + enc(v, level + 1) for v in o) + "\n" + end + "]"
        raise TypeError(f"cannot serialize {type(o).__name__}")

    return enc(obj, 0) + "\n"


def matrix_to_json(m) -> dict:
    a = np.asarray(m, dtype=complex)
    return {"dim": int(a.shape[0]), "re": a.real.tolist(), "im": a.imag.tolist()}


def matrix_from_json(obj: Any) -> np.ndarray:
    try:
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
        dim = int(obj.get("dim", re.shape[0] if re.ndim else 0))
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ParseError(f"malformed matrix object: {exc}") from exc
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise ParseError(f"matrix arrays must be {dim}x{dim}, got re {re.shape}, im {im.shape}")
    return re + 1j * im


def state_to_json(rho: DensityMatrix) -> dict:
    return matrix_to_json(rho.matrix)


def state_from_json(obj: Any) -> DensityMatrix:
    return validate_state(matrix_from_json(obj))


def spectrum_to_json(p: Spectrum) -> dict:
    return {"p": as_spectrum(p).values.tolist()}


def spectrum_from_json(obj: Any) -> Spectrum:
    try:
        values = np.asarray(obj["p"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed spectrum object: {exc}") from exc
    if values.ndim != 1:
        raise ParseError("spectrum 'p' must be a flat list")
    return Spectrum(values)


def states_from_json(obj: Any) -> list[DensityMatrix]:
    """An array of state objects, or ``{"states": [...]}``."""
    if isinstance(obj, dict) and "states" in obj:
        obj = obj["states"]
    if not isinstance(obj, list):
        raise ParseError("expected an array of states")
    return [state_from_json(o) for o in obj]


def povm_to_json(povm: Povm) -> dict:
    return {"dim": povm.dim, "elements": [matrix_to_json(a) for a in povm.elements]}


def povm_from_json(obj: Any) -> Povm:
    try:
        return Povm([matrix_from_json(e) for e in obj["elements"]], int(obj["dim"]))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed POVM object: {exc}") from exc


def discrimination_report_to_json(report: DiscriminationReport) -> dict:
    return {
        "discriminable": report.discriminable,
        "rank_sum": report.rank_sum,
        "dim": report.dim,
        "rank_sum_exceeds_dim": report.rank_sum > report.dim,
        "max_pairwise_overlap": report.max_pairwise_overlap,
        "povm": povm_to_json(report.povm) if report.povm is not None else None,
    }


def load_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
