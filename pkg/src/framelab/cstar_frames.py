"""Families in the direct-sum C*-algebra ``M_{n_1}(F) + ... + M_{n_r}(F)``.

Elements are tuples of square blocks; the algebra identity is the tuple of
identity matrices.  The frame operator of a family is the algebra element
``S = sum_x w_x u_x^* u_x`` and the family is a frame iff every block of
``S`` is invertible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import scalar_linalg as sl
from ._stacked import StackedFamily, cast_blocks
from .errors import DimensionError, GenerationError
from .hilbert_frames import (DEFAULT_TOL, MAX_RETRIES, RANDOM_FRAME_MIN_MARGIN,
                             FrameClassification, _draw, _space,
                             classify_operator_blocks)
from .measure import DiscreteMeasureSpace


@dataclass(frozen=True)
class AlgebraSignature:
    sizes: tuple
    field: str = "R"

    def __post_init__(self):
        sizes = tuple(int(n) for n in self.sizes)
        if not sizes or any(n < 1 for n in sizes):
            raise DimensionError(f"invalid block sizes {self.sizes}")
        sl.dtype_for(self.field)
        object.__setattr__(self, "sizes", sizes)

    @property
    def r(self) -> int:
        return len(self.sizes)

    @property
    def dim(self) -> int:
        return sum(self.sizes)


class AlgebraElement:
    """A tuple ``(m_1, ..., m_r)`` of square matrices."""

    __slots__ = ("blocks",)

    def __init__(self, blocks):
        blocks = cast_blocks(blocks)
        for b in blocks:
            if b.ndim != 2 or b.shape[0] != b.shape[1]:
                raise DimensionError(f"algebra blocks must be square, got {b.shape}")
        object.__setattr__(self, "blocks", blocks)

    def __setattr__(self, name, value):
        raise AttributeError("algebra elements are immutable")

    @classmethod
    def identity(cls, sizes, field: str = "R") -> "AlgebraElement":
        return cls([np.eye(n, dtype=sl.dtype_for(field)) for n in sizes])

    @classmethod
    def zero(cls, sizes, field: str = "R") -> "AlgebraElement":
        return cls([np.zeros((n, n), dtype=sl.dtype_for(field)) for n in sizes])

    @property
    def sizes(self) -> tuple:
        return tuple(b.shape[0] for b in self.blocks)

    def _check(self, other: "AlgebraElement") -> None:
        if other.sizes != self.sizes:
            raise DimensionError(f"signatures differ: {self.sizes} vs {other.sizes}")

    def __add__(self, other):
        self._check(other)
        return AlgebraElement([a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement([a - b for a, b in zip(self.blocks, other.blocks)])

    def __matmul__(self, other):
        self._check(other)
        return AlgebraElement([a @ b for a, b in zip(self.blocks, other.blocks)])

    def __mul__(self, alpha):
        if not np.isscalar(alpha):
            return NotImplemented
        return AlgebraElement([alpha * b for b in self.blocks])

    __rmul__ = __mul__

    def star(self) -> "AlgebraElement":
        return AlgebraElement([b.conj().T for b in self.blocks])

    def allclose(self, other, rtol=1e-12, atol=1e-12) -> bool:
        return self.sizes == other.sizes and all(
            np.allclose(a, b, rtol=rtol, atol=atol)
            for a, b in zip(self.blocks, other.blocks))

    def __repr__(self):
        return f"AlgebraElement(sizes={self.sizes})"


class AlgebraFamily(StackedFamily):
    """``N`` algebra elements sharing one signature, over a measure space."""

    __slots__ = ()

    def _check_shapes(self):
        for st in self.stacks:
            if st.shape[1] != st.shape[2]:
                raise DimensionError(f"algebra blocks must be square, got {st.shape[1:]}")

    @classmethod
    def from_elements(cls, space: DiscreteMeasureSpace, elements) -> "AlgebraFamily":
        elements = list(elements)
        if len(elements) != space.size:
            raise DimensionError(f"{len(elements)} elements for {space.size} points")
        r = len(elements[0].blocks)
        return cls(space, [np.stack([el.blocks[j] for el in elements]) for j in range(r)])

    @property
    def signature(self) -> AlgebraSignature:
        return AlgebraSignature(tuple(st.shape[1] for st in self.stacks), self.field)

    def element(self, i: int) -> AlgebraElement:
        return AlgebraElement([st[i] for st in self.stacks])

    def to_json(self) -> dict:
        return {
            "signature": list(self.signature.sizes),
            "field": self.field,
            "weights": self.space.weights.tolist(),
            "elements": self._elements_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "AlgebraFamily":
        field = data.get("field", "R")
        sizes = [int(n) for n in data["signature"]]
        elements = data["elements"]
        stacks = cls._stacks_from_json(elements, field, [(n, n) for n in sizes])
        space = DiscreteMeasureSpace.from_json(data, size=len(elements))
        return cls(space, stacks, field)


def frame_operator_cstar(U: AlgebraFamily) -> AlgebraElement:
    return AlgebraElement(U.frame_operator_blocks())


def block_dets(m: AlgebraElement) -> tuple:
    """Per-block determinants of a PSD algebra element, as reals."""
    return tuple(sl.psd_det(b) for b in m.blocks)


def classify_cstar(U: AlgebraFamily, tol: float = DEFAULT_TOL) -> FrameClassification:
    return classify_operator_blocks(frame_operator_cstar(U).blocks, tol)


def right_multiplication_operator(c) -> np.ndarray:
    """Matrix of ``M -> M C`` on ``M_n(F)``, columns indexed by the basis ``E_ab``.

    Built by applying the map to each matrix unit rather than via a Kronecker
    identity, so it can serve as an independent check.
    """
    c = sl.as_matrix(c)
    n = c.shape[0]
    cols = []
    for a in range(n):
        for b in range(n):
            E = np.zeros((n, n), dtype=c.dtype)
            E[a, b] = 1
            cols.append((E @ c).reshape(-1))
    return np.stack(cols, axis=1)


def _check_signature(signature, field) -> AlgebraSignature:
    if isinstance(signature, AlgebraSignature):
        return signature if field is None else AlgebraSignature(signature.sizes, field)
    return AlgebraSignature(tuple(signature), field or "R")


def random_cstar_family(seed, N: int, signature, field: str | None = None,
                        weights=None) -> AlgebraFamily:
    sig = _check_signature(signature, field)
    if N < 1:
        raise ValueError("N must be at least 1")
    rng = np.random.default_rng(seed)
    return AlgebraFamily(_space(N, weights),
                         [_draw(rng, (N, n, n), sig.field) for n in sig.sizes], sig.field)


def random_cstar_frame(seed, N: int, signature, field: str | None = None,
                       weights=None,
                       min_margin: float = RANDOM_FRAME_MIN_MARGIN) -> AlgebraFamily:
    sig = _check_signature(signature, field)
    if N < 1:
        raise ValueError("N must be at least 1")
    space = _space(N, weights)
    rng = np.random.default_rng(seed)
    for _ in range(MAX_RETRIES):
        U = AlgebraFamily(space, [_draw(rng, (N, n, n), sig.field) for n in sig.sizes],
                          sig.field)
        cls = classify_cstar(U)
        if cls.is_frame and cls.margin > min_margin:
            return U
    raise GenerationError(f"no C*-frame found in {MAX_RETRIES} draws (seed={seed})")
