import os
import sys
import json
import time
import random

import yaml
import numpy as np
import pandas as pd

from typing import Any, Dict, Optional, TextIO


DEFAULT_HYP = {
    "comment": "kdef",
    "seed": 42,
    "samples": 32,
    "validation_tol": 1e-8,
    "jacobi_tol": 1e-12,
    "multiset_tol": 1e-8,
    "max_sweeps": 100,
    "max_refine_depth": 5,
    "degree_padding": 4,
    "save_log": "",
}

_HYP_TYPES = {
    "comment": str,
    "seed": int,
    "samples": int,
    "validation_tol": float,
    "jacobi_tol": float,
    "multiset_tol": float,
    "max_sweeps": int,
    "max_refine_depth": int,
    "degree_padding": int,
    "save_log": str,
}


class TerminalLogger(object):
    """tee a text stream into a log file"""

    def __init__(self, filename: str, stream: TextIO = sys.stderr):
        super().__init__()
        self.terminal = stream
        self.log = open(filename, "a")

    def write(self, message: str) -> None:
        self.terminal.write(message)
        self.log.write(message)

    def flush(self) -> None:
        self.terminal.flush()
        self.log.flush()


def load_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """read the YAML config, missing keys fall back to DEFAULT_HYP

    Parameters
    ----------
    config_path : Optional[str], optional
        path to a YAML file, None for the defaults only, by default None

    Returns
    -------
    hyp : Dict[str, Any]

    """
    hyp = dict(DEFAULT_HYP)
    if config_path is None:
        return hyp

    with open(config_path, "r") as c:
        loaded = yaml.load(c, Loader=yaml.FullLoader) or {}
    if not isinstance(loaded, dict):
        raise ValueError(f"config {config_path} must be a mapping, got {type(loaded).__name__}")

    for key, expected in _HYP_TYPES.items():
        if key not in loaded or loaded[key] is None:
            continue
        value = loaded[key]
        if expected is float and isinstance(value, (int, float)) and not isinstance(value, bool):
            value = float(value)
        if expected is int and isinstance(value, bool):
            raise ValueError(f"config key '{key}' should be int, {value!r} were given")
        if not isinstance(value, expected):
            raise ValueError(
                f"config key '{key}' should be {expected.__name__}, {value!r} were given"
            )
        hyp[key] = value
    return hyp


def setup_seed(seed: int) -> np.random.Generator:
    random.seed(seed)
    np.random.seed(seed)
    return np.random.default_rng(seed)


def setup_log(hyp: Dict[str, Any]) -> Optional[str]:
    """redirect stderr through TerminalLogger when save_log is set"""
    save_log = hyp["save_log"]
    if save_log == "":
        return None
    if not os.path.exists(save_log):
        os.makedirs(save_log)
    stamp = time.strftime("%Y%m%d_%H%M%S", time.localtime())
    filename = os.path.join(save_log, f"{hyp['comment'].strip()}_{stamp}.log")
    sys.stderr = TerminalLogger(filename, sys.stderr)
    return filename


def log(message: str) -> None:
    print(f"==> {message}", file=sys.stderr)


def to_json_text(payload: Any) -> str:
    return json.dumps(payload, indent=2, default=_json_default)


def _json_default(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"cannot serialize {type(value).__name__}")


def render_frame(frame: pd.DataFrame) -> str:
    return frame.to_string(index=False)
