import os
import json

from typing import Any, Dict, Tuple

import numpy as np


class MatrixFormatError(ValueError):
    """matrix JSON file does not follow the documented schema"""


def matrix_to_json(m: np.ndarray) -> Dict[str, Any]:
    """{"n": n, "entries": [[[re, im], ...], ...]}, row-major"""
    m = np.asarray(m, dtype=np.complex128)
    return {
        "n": int(m.shape[0]),
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in m],
    }


def matrix_from_json(payload: Any, source: str = "<json>") -> np.ndarray:
    """read one matrix, errors name the file and the offending field

    Parameters
    ----------
    payload : Any
        decoded JSON object
    source : str, optional
        file path or key used in error messages, by default "<json>"

    Returns
    -------
    m : np.ndarray
        complex matrix of shape (n, n)

    """
    if not isinstance(payload, dict):
        raise MatrixFormatError(f"{source}: expected an object with 'n' and 'entries'")
    if "n" not in payload or "entries" not in payload:
        raise MatrixFormatError(f"{source}: missing field 'n' or 'entries'")
    n = payload["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MatrixFormatError(f"{source}: field 'n' must be a positive integer, got {n!r}")
    entries = payload["entries"]
    if not isinstance(entries, list) or len(entries) != n:
        raise MatrixFormatError(f"{source}: field 'entries' must hold {n} rows")

    m = np.empty((n, n), dtype=np.complex128)
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != n:
            raise MatrixFormatError(f"{source}: entries[{i}] must hold {n} values")
        for j, value in enumerate(row):
            if (
                not isinstance(value, list)
                or len(value) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)
            ):
                raise MatrixFormatError(
                    f"{source}: entries[{i}][{j}] must be a [re, im] pair of numbers, got {value!r}"
                )
            m[i, j] = complex(value[0], value[1])
    return m


def pair_to_json(a: np.ndarray, b: np.ndarray, seed: int = None) -> Dict[str, Any]:
    payload = {"a": matrix_to_json(a), "b": matrix_to_json(b)}
    if seed is not None:
        payload["seed"] = seed
    return payload


def load_matrix_pair(path: str) -> Tuple[np.ndarray, np.ndarray]:
    """read {"a": matrix, "b": matrix} from a JSON file"""
    if not os.path.exists(path):
        raise MatrixFormatError(f"{path}: file not found")
    with open(path, "r", encoding="utf-8") as f:
        try:
            payload = json.load(f)
        except UnicodeDecodeError as err:
            raise MatrixFormatError(f"{path}: not UTF-8 text, {err}") from err
        except json.JSONDecodeError as err:
            raise MatrixFormatError(f"{path}: invalid JSON, {err}") from err
    if not isinstance(payload, dict) or "a" not in payload or "b" not in payload:
        raise MatrixFormatError(f"{path}: expected an object with fields 'a' and 'b'")
    a = matrix_from_json(payload["a"], f"{path}:a")
    b = matrix_from_json(payload["b"], f"{path}:b")
    if a.shape != b.shape:
        raise MatrixFormatError(f"{path}: 'a' and 'b' have different sizes {a.shape[0]} and {b.shape[0]}")
    return a, b


def save_matrix_pair(path: str, a: np.ndarray, b: np.ndarray, seed: int = None) -> None:
    with open(path, "w") as f:
        json.dump(pair_to_json(a, b, seed), f, indent=2)
