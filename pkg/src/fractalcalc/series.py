"""Sampled ``(x, S(x), columns...)`` tables and their CSV / JSON forms."""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ShapeError


def _fmt(v) -> str:
    v = float(v)
    if math.isnan(v):
        return ""
    return format(v, ".17g")


@dataclass
class GridSeries:
    """Rows of ``(x, s, columns...)`` with free-form metadata.

    ``x`` is strictly increasing and ``s`` holds the staircase value of each
    row.  NaN marks a value that is deliberately left empty (e.g. a declared
    singularity); it is written as an empty CSV field and ``null`` in JSON.
    """

    x: np.ndarray
    s: np.ndarray
    columns: dict
    meta: dict = field(default_factory=dict)
    xname: str = "x"

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.s = np.asarray(self.s, dtype=float)
        if self.x.shape != self.s.shape or self.x.ndim != 1:
            raise ShapeError("x and s must be one-dimensional and of equal length")
        if self.x.size > 1 and not np.all(np.diff(self.x) > 0):
            raise ShapeError("x must be strictly increasing")
        cols = {}
        for name, values in self.columns.items():
            arr = np.asarray(values, dtype=float)
            if arr.shape != self.x.shape:
                raise ShapeError(f"column {name!r} has shape {arr.shape}, expected {self.x.shape}")
            cols[name] = arr
        self.columns = cols

    def __len__(self):
        return self.x.size

    @property
    def value(self) -> np.ndarray:
        return self.columns["value"]

    @property
    def header(self) -> list:
        return [self.xname, "s", *self.columns]

    def rows(self):
        for i in range(len(self)):
            yield (self.x[i], self.s[i], *(c[i] for c in self.columns.values()))

    def to_csv(self) -> str:
        buf = io.StringIO()
        for key in sorted(self.meta):
            buf.write(f"# {key}={_meta_text(self.meta[key])}\n")
        buf.write(",".join(self.header) + "\n")
        for row in self.rows():
            buf.write(",".join(_fmt(v) for v in row) + "\n")
        return buf.getvalue()

    def to_json(self) -> str:
        def col(arr):
            return [None if math.isnan(v) else float(format(v, ".17g")) for v in arr]

        doc = {self.xname: col(self.x), "s": col(self.s)}
        for name, arr in self.columns.items():
            doc[name] = col(arr)
        doc["meta"] = {k: self.meta[k] for k in sorted(self.meta)}
        return json.dumps(doc, indent=None, separators=(",", ":"), sort_keys=False) + "\n"


def _meta_text(v) -> str:
    if isinstance(v, float):
        return _fmt(v)
    return str(v)
