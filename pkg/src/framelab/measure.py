"""Finite weighted point sets standing in for a measure space."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError, DimensionError


@dataclass(frozen=True, eq=False)
class DiscreteMeasureSpace:
    """``N`` atoms ``x_1..x_N`` with masses ``w_i = mu({x_i}) > 0``."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=np.float64).reshape(-1)
        if w.size < 1:
            raise ContractError("a measure space needs at least one point")
        if not np.all(np.isfinite(w)) or np.any(w <= 0):
            raise ContractError("weights must be finite and strictly positive")
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)

    @classmethod
    def counting(cls, size: int) -> "DiscreteMeasureSpace":
        return cls(np.ones(size))

    @property
    def size(self) -> int:
        return self.weights.size

    @property
    def is_counting(self) -> bool:
        return bool(np.all(self.weights == 1.0))

    def __eq__(self, other):
        if not isinstance(other, DiscreteMeasureSpace):
            return NotImplemented
        return np.array_equal(self.weights, other.weights)

    def __hash__(self):
        return hash(self.weights.tobytes())

    def to_json(self) -> dict:
        return {"weights": self.weights.tolist()}

    @classmethod
    def from_json(cls, data: dict, size: int | None = None) -> "DiscreteMeasureSpace":
        """Read ``{"weights": [...]}``; missing weights mean counting measure."""
        weights = data.get("weights")
        if weights is None:
            if size is None:
                raise DimensionError("counting measure needs the number of points")
            return cls.counting(size)
        space = cls(weights)
        if size is not None and space.size != size:
            raise DimensionError(
                f"{space.size} weights given for {size} points")
        return space


def random_space(seed, size: int, low: float = 0.1, high: float = 2.0) -> DiscreteMeasureSpace:
    """Uniformly random positive weights, reproducible from ``seed``."""
    rng = np.random.default_rng(seed)
    return DiscreteMeasureSpace(rng.uniform(low, high, size))


def l2_inner(f, g, sp: DiscreteMeasureSpace):
    """Weighted inner product ``sum_i w_i f_i conj(g_i)``.

    Linear in ``f``, conjugate-linear in ``g``.
    """
    f = np.asarray(f)
    g = np.asarray(g)
    if f.shape != (sp.size,) or g.shape != (sp.size,):
        raise DimensionError(
            f"expected length-{sp.size} vectors, got {f.shape} and {g.shape}")
    value = np.sum(sp.weights * f * np.conj(g))
    return complex(value) if np.iscomplexobj(value) else float(value)
