"""JSON encodings of matrices and Fock polynomials.

Real matrices: {"n": n, "rows": [[x, ...], ...]}.
Complex matrices: {"n": n, "rows": [[[re, im], ...], ...]}.
Polynomials: {"n": n, "terms": [{"alpha": [...], "re": x, "im": y}, ...]}.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .errors import ValidationError
from .fock import FockPolynomial


def matrix_to_json(a: np.ndarray, n: int | None = None) -> dict:
    """Encode a 2n x 2n matrix (default) or, with n given, an n x n block."""
    a = np.asarray(a)
    if a.ndim != 2:
        raise ValidationError("only 2-d arrays can be encoded")
    if n is None:
        if a.shape[0] % 2:
            raise ValidationError("odd-sized matrix: pass n explicitly")
        n = a.shape[0] // 2
    if np.iscomplexobj(a):
        rows = [[[float(x.real), float(x.imag)] for x in row] for row in a]
    else:
        rows = [[float(x) for x in row] for row in a]
    return {"n": n, "rows": rows}


def matrix_from_json(obj: Any) -> np.ndarray:
    if isinstance(obj, dict):
        if "rows" not in obj:
            raise ValidationError("matrix JSON needs a 'rows' field")
        rows = obj["rows"]
    else:
        rows = obj
    try:
        arr = np.asarray(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"malformed matrix rows: {exc}") from None
    if arr.ndim == 3 and arr.shape[-1] == 2:
        arr = arr[..., 0] + 1j * arr[..., 1]
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {arr.shape}")
    if isinstance(obj, dict) and "n" in obj and arr.shape[0] not in (obj["n"], 2 * obj["n"]):
        raise ValidationError(f"declared n={obj['n']} does not match a {arr.shape[0]}x{arr.shape[0]} matrix")
    return arr


def polynomial_to_json(f: FockPolynomial) -> dict:
    terms = [{"alpha": list(a), "re": float(np.real(c)), "im": float(np.imag(c))} for a, c in sorted(f.terms.items())]
    return {"n": f.n, "terms": terms}


def polynomial_from_json(obj: dict) -> FockPolynomial:
    try:
        n = int(obj["n"])
        terms = {tuple(t["alpha"]): complex(t.get("re", 0.0), t.get("im", 0.0)) for t in obj["terms"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed polynomial JSON: {exc}") from None
    return FockPolynomial(n, terms)


def load_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise ValidationError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def complex_to_json(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]
