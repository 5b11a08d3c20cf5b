# src/pipeline/serialization.py
"""
JSON and CSV output helpers.

Exact numbers are written as strings: rationals as 'p/q', breakpoints as
'p+q*sqrt(m)'. Tables go out through pandas.
"""

import json
import sys
from dataclasses import asdict, is_dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np
import pandas as pd

from src.models.exponent import TauExponent
from src.models.surd import QuadraticSurd
from src.models.variational_model import PiecewiseExponent, VariationalResult


def to_jsonable(value: Any) -> Any:
    if isinstance(value, (Fraction, QuadraticSurd)):
        return str(value)
    if isinstance(value, TauExponent):
        return value.to_dict()
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return None if np.isnan(value) else float(value)
    if isinstance(value, float) and value != value:
        return None
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, pd.DataFrame):
        return [to_jsonable(row) for row in value.to_dict(orient="records")]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if is_dataclass(value) and not isinstance(value, type):
        return to_jsonable(asdict(value))
    return value


def result_to_dict(result: VariationalResult) -> dict:
    return {
        "mode": result.mode.value,
        "tau": str(result.tau),
        "exponent": result.exponent.to_dict(),
        "value": str(result.value),
        "unique": result.unique,
        "optimal_assignments": [[label.value for label in a.labels] for a in result.optimal_assignments],
        "partition": [cls.value for cls in result.partition_view],
        "nonunique_vertices": list(result.nonunique_vertices),
    }


def piecewise_to_dict(pw: PiecewiseExponent) -> dict:
    return {
        "mode": pw.mode.value,
        "pieces": [
            {
                "lo": str(piece.lo),
                "hi": str(piece.hi),
                "exponent": piece.exponent.to_dict(),
                "unique": piece.unique,
                "assignment": [label.value for label in piece.representative.labels],
            }
            for piece in pw.pieces
        ],
    }


def write_json(payload: Any, path: Optional[Union[str, Path]] = None) -> None:
    """Write to path, or to stdout when path is None or '-'."""
    text = json.dumps(to_jsonable(payload), indent=2)
    if path is None or str(path) == "-":
        sys.stdout.write(text + "\n")
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text + "\n")


def write_frame(frame: pd.DataFrame, path: Optional[Union[str, Path]] = None) -> None:
    if path is None or str(path) == "-":
        frame.to_csv(sys.stdout, index=False)
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False)
