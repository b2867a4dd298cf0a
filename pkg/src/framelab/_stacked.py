"""Shared storage for families whose points are tuples of matrix blocks."""

from __future__ import annotations

import numpy as np

from . import scalar_linalg as sl
from .errors import DimensionError
from .hilbert_frames import decode_array, encode_array
from .measure import DiscreteMeasureSpace


def freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a)
    a.flags.writeable = False
    return a


def common_field(arrays) -> str:
    return "C" if any(np.iscomplexobj(a) for a in arrays) else "R"


def cast_blocks(blocks, field: str | None = None):
    """Cast a sequence of arrays to one shared dtype and check finiteness."""
    blocks = [np.asarray(b) for b in blocks]
    field = field or common_field(blocks)
    out = []
    for b in blocks:
        b = np.array(b, dtype=sl.dtype_for(field))
        if not np.all(np.isfinite(b)):
            raise DimensionError("block has non-finite entries")
        out.append(freeze(b))
    return tuple(out)


class StackedFamily:
    """``N`` points, each a tuple of ``s`` matrices; stored as ``s`` arrays
    of shape ``(N, rows_j, cols_j)``.

    Subclasses fix what the block shapes mean.
    """

    __slots__ = ("space", "stacks")

    def __init__(self, space: DiscreteMeasureSpace, stacks, field: str | None = None):
        stacks = cast_blocks(stacks, field)
        if not stacks:
            raise DimensionError("a family needs at least one block")
        for st in stacks:
            if st.ndim != 3 or st.shape[0] != space.size:
                raise DimensionError(
                    f"block stack of shape {st.shape} does not match "
                    f"{space.size} points")
        self.space = space
        self.stacks = stacks
        self._check_shapes()

    def _check_shapes(self):
        pass

    def __setattr__(self, name, value):
        if hasattr(self, "stacks"):
            raise AttributeError("families are immutable")
        object.__setattr__(self, name, value)

    @property
    def N(self) -> int:
        return self.space.size

    @property
    def field(self) -> str:
        return common_field(self.stacks)

    @property
    def shapes(self) -> tuple:
        return tuple(st.shape[1:] for st in self.stacks)

    def _like(self, stacks):
        return type(self)(self.space, stacks)

    def _compatible(self, other) -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} "
                            f"with {type(other).__name__}")
        if other.space != self.space or other.shapes != self.shapes:
            raise DimensionError("families live on different spaces or signatures")

    def __add__(self, other):
        if not isinstance(other, StackedFamily):
            return NotImplemented
        self._compatible(other)
        return self._like([a + b for a, b in zip(self.stacks, other.stacks)])

    def __sub__(self, other):
        if not isinstance(other, StackedFamily):
            return NotImplemented
        self._compatible(other)
        return self._like([a - b for a, b in zip(self.stacks, other.stacks)])

    def __mul__(self, alpha):
        if not np.isscalar(alpha):
            return NotImplemented
        return self._like([alpha * a for a in self.stacks])

    __rmul__ = __mul__

    def frame_operator_blocks(self):
        """``S_j = sum_i w_i (phi_i)_j^* (phi_i)_j`` for every block ``j``."""
        w = self.space.weights
        return [np.einsum("x,xpa,xpb->ab", w, st.conj(), st) for st in self.stacks]

    def _elements_json(self):
        return [[encode_array(st[i]) for st in self.stacks] for i in range(self.N)]

    @staticmethod
    def _stacks_from_json(elements, field: str, shapes):
        if not elements:
            raise DimensionError("family has no elements")
        stacks = []
        for j, shape in enumerate(shapes):
            blocks = [decode_array(el[j], field).reshape(shape) for el in elements]
            stacks.append(np.stack(blocks))
        return stacks
