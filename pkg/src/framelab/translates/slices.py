"""Two-dimensional slices through coefficient space, for plotting ``D_e``."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from ..errors import DimensionError
from ..hilbert_frames import DEFAULT_TOL
from .evaluate import evaluate_batch
from .instance import TranslateInstance, check_coefficients

CSV_HEADER = ("ci", "cj", "min_value", "verdict")


@dataclass(frozen=True)
class GridSpec:
    lo: float
    hi: float
    num: int

    def __post_init__(self):
        if int(self.num) < 2 or not self.hi > self.lo:
            raise DimensionError(f"malformed grid {self.lo}:{self.hi}:{self.num}")

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """``"lo:hi:num"``, e.g. ``"-2:2:41"``."""
        try:
            lo, hi, num = text.split(":")
            return cls(float(lo), float(hi), int(num))
        except ValueError as exc:
            raise DimensionError(f"malformed grid spec {text!r}") from exc

    def points(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, int(self.num))


@dataclass(frozen=True)
class SliceGrid:
    rows: list

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for ci, cj, value, verdict in self.rows:
            writer.writerow([repr(ci), repr(cj), repr(value), verdict])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {"columns": list(CSV_HEADER), "rows": [list(r) for r in self.rows]}


def slice_grid(inst: TranslateInstance, axes, grid: GridSpec, grid_j: GridSpec | None = None,
               c0=None, tol: float = DEFAULT_TOL) -> SliceGrid:
    """Evaluate ``min_e P_e`` (min over blocks too) and the verdict on a grid
    in the ``(c_i, c_j)`` plane, other coordinates frozen at ``c0``."""
    i, j = (int(a) for a in axes)
    if not 0 <= i < j < inst.l:
        raise DimensionError(f"axes must satisfy 0 <= i < j < l={inst.l}, got {axes}")
    grid_j = grid_j or grid
    base = np.zeros(inst.l) if c0 is None else check_coefficients(inst, c0)
    ci, cj = np.meshgrid(grid.points(), grid_j.points(), indexing="ij")
    C = np.tile(base, (ci.size, 1))
    C[:, i] = ci.ravel()
    C[:, j] = cj.ravel()
    ev = evaluate_batch(inst, C, tol)
    values = ev.dets.reshape(len(C), -1).min(axis=1)
    rows = [(float(a), float(b), float(v), "in" if ok else "out")
            for a, b, v, ok in zip(ci.ravel(), cj.ravel(), values, ev.overall)]
    return SliceGrid(rows)
