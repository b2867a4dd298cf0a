"""Families in F^n sampled on a discrete measure space.

A :class:`VectorFamily` stores its points as an ``N x n`` array whose row
``i`` is ``u_{x_i}``.  Because the family is finite with finite weights it is
automatically square-integrable, hence Bessel.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import scalar_linalg as sl
from .errors import DimensionError, GenerationError, InfeasibleError
from .measure import DiscreteMeasureSpace, l2_inner

DEFAULT_TOL = 1e-10
RANDOM_FRAME_MIN_MARGIN = 1e-6
MAX_RETRIES = 100


class FrameKind(str, enum.Enum):
    NOT_FRAME = "NotFrame"
    FRAME = "Frame"
    TIGHT = "TightFrame"
    PARSEVAL = "ParsevalFrame"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class FrameClassification:
    """Outcome of a frame test.

    ``lower``/``upper`` are the optimal frame bounds (extreme eigenvalues of
    the frame operator) and ``margin`` is ``lower / upper``, the quantity the
    tolerance band is measured in.
    """

    kind: FrameKind
    lower: float
    upper: float
    tight_constant: float | None = None
    margin: float = 0.0

    @property
    def is_frame(self) -> bool:
        return self.kind is not FrameKind.NOT_FRAME

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "A": self.lower,
            "B": self.upper,
            "tight_constant": self.tight_constant,
            "margin": self.margin,
        }


def spectral_margin(lmin: float, lmax: float) -> float:
    return lmin / lmax if lmax > 0 else 0.0


def classify_operator_blocks(blocks, tol: float = DEFAULT_TOL,
                             absolute_floor: bool = False) -> FrameClassification:
    """Classify from the Hermitian PSD block(s) of a frame operator.

    The operator is invertible iff every block is.  With ``absolute_floor``
    the singularity threshold is ``tol * max(1, lambda_max)`` rather than
    ``tol * lambda_max``.
    """
    spectra = [sl.hermitian_eigenvalues(b) for b in blocks]
    lmin = float(min(s[0] for s in spectra))
    lmax = float(max(s[-1] for s in spectra))
    margin = spectral_margin(lmin, lmax)
    threshold = tol * (max(1.0, lmax) if absolute_floor else lmax)
    if lmin <= threshold:
        return FrameClassification(FrameKind.NOT_FRAME, lmin, lmax, None, margin)

    dim = sum(b.shape[0] for b in blocks)
    a = float(sum(np.trace(b).real for b in blocks)) / dim
    deviation = np.sqrt(sum(
        np.linalg.norm(b - a * np.eye(b.shape[0])) ** 2 for b in blocks))
    if deviation <= tol * a:
        kind = FrameKind.PARSEVAL if abs(a - 1.0) <= tol else FrameKind.TIGHT
        return FrameClassification(kind, lmin, lmax, a, margin)
    return FrameClassification(FrameKind.FRAME, lmin, lmax, None, margin)


@dataclass(frozen=True, eq=False)
class VectorFamily:
    space: DiscreteMeasureSpace
    vectors: np.ndarray

    def __post_init__(self):
        v = np.array(self.vectors)
        if v.ndim != 2:
            raise DimensionError(f"vectors must be an N x n array, got {v.shape}")
        if v.shape[0] != self.space.size:
            raise DimensionError(
                f"{v.shape[0]} vectors for a space of {self.space.size} points")
        v = sl.as_matrix(v)
        v.flags.writeable = False
        object.__setattr__(self, "vectors", v)

    @property
    def N(self) -> int:
        return self.vectors.shape[0]

    @property
    def n(self) -> int:
        return self.vectors.shape[1]

    @property
    def field(self) -> str:
        return sl.field_of(self.vectors)

    def column(self, k: int) -> np.ndarray:
        """The coordinate function ``U^k`` as a length-``N`` array."""
        return self.vectors[:, k]

    def _compatible(self, other: "VectorFamily") -> None:
        if other.space != self.space or other.vectors.shape != self.vectors.shape:
            raise DimensionError("families live on different spaces or dimensions")

    def __add__(self, other):
        if not isinstance(other, VectorFamily):
            return NotImplemented
        self._compatible(other)
        return VectorFamily(self.space, self.vectors + other.vectors)

    def __sub__(self, other):
        if not isinstance(other, VectorFamily):
            return NotImplemented
        self._compatible(other)
        return VectorFamily(self.space, self.vectors - other.vectors)

    def __mul__(self, alpha):
        if not np.isscalar(alpha):
            return NotImplemented
        return VectorFamily(self.space, alpha * self.vectors)

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {
            "field": self.field,
            "n": self.n,
            "weights": self.space.weights.tolist(),
            "vectors": encode_array(self.vectors),
        }

    @classmethod
    def from_json(cls, data: dict) -> "VectorFamily":
        field = data.get("field", "R")
        vectors = decode_array(data["vectors"], field)
        n = int(data.get("n", vectors.shape[1] if vectors.ndim == 2 else 0))
        vectors = vectors.reshape(-1, n)
        space = DiscreteMeasureSpace.from_json(data, size=vectors.shape[0])
        return cls(space, vectors)


def encode_array(a: np.ndarray):
    """Nested lists; complex entries become ``[re, im]`` pairs."""
    if np.iscomplexobj(a):
        return np.stack([a.real, a.imag], axis=-1).tolist()
    return a.tolist()


def decode_array(data, field: str) -> np.ndarray:
    arr = np.array(data, dtype=np.float64)
    if field == "C":
        if arr.shape[-1:] != (2,):
            raise DimensionError("complex entries must be [re, im] pairs")
        return arr[..., 0] + 1j * arr[..., 1]
    if field != "R":
        raise ValueError(f"unknown field {field!r}")
    return arr


def analysis(U: VectorFamily, v) -> np.ndarray:
    """Coefficients ``<v, u_x>`` for every point of the space."""
    v = np.asarray(v)
    if v.shape != (U.n,):
        raise DimensionError(f"expected a vector of length {U.n}, got {v.shape}")
    return U.vectors.conj() @ v


def synthesis(U: VectorFamily, c) -> np.ndarray:
    """``sum_i w_i c_i u_{x_i}``, the adjoint of :func:`analysis`."""
    c = np.asarray(c)
    if c.shape != (U.N,):
        raise DimensionError(f"expected {U.N} coefficients, got {c.shape}")
    return U.vectors.T @ (U.space.weights * c)


def frame_operator(U: VectorFamily) -> np.ndarray:
    """Matrix of ``S_U`` in the standard basis: ``S[k, l] = sum w u^k conj(u^l)``."""
    V = U.vectors
    return (V.T * U.space.weights) @ V.conj()


def gram_columns(U: VectorFamily) -> np.ndarray:
    """Gram matrix of the coordinate functions ``U^1..U^n`` in L^2(mu)."""
    n = U.n
    G = np.zeros((n, n), dtype=U.vectors.dtype)
    for k in range(n):
        for l in range(n):
            G[k, l] = l2_inner(U.column(k), U.column(l), U.space)
    return G


def classify_family(U: VectorFamily, tol: float = DEFAULT_TOL) -> FrameClassification:
    return classify_operator_blocks([frame_operator(U)], tol, absolute_floor=True)


def _draw(rng: np.random.Generator, shape, field: str) -> np.ndarray:
    if field == "C":
        return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    if field != "R":
        raise ValueError(f"unknown field {field!r}")
    return rng.standard_normal(shape)


def _space(N: int, weights) -> DiscreteMeasureSpace:
    if weights is None:
        return DiscreteMeasureSpace.counting(N)
    if isinstance(weights, DiscreteMeasureSpace):
        return weights
    return DiscreteMeasureSpace(weights)


def random_bessel(seed, N: int, n: int, field: str = "R", weights=None) -> VectorFamily:
    """I.i.d. standard normal family (real and imaginary parts independent)."""
    if N < 1 or n < 1:
        raise ValueError("N and n must be positive")
    rng = np.random.default_rng(seed)
    return VectorFamily(_space(N, weights), _draw(rng, (N, n), field))


def random_frame(seed, N: int, n: int, field: str = "R", weights=None,
                 min_margin: float = RANDOM_FRAME_MIN_MARGIN) -> VectorFamily:
    """Gaussian family conditioned on being a frame with ``margin > min_margin``."""
    if N < n:
        raise InfeasibleError(f"{N} points cannot span F^{n}")
    space = _space(N, weights)
    rng = np.random.default_rng(seed)
    for _ in range(MAX_RETRIES):
        U = VectorFamily(space, _draw(rng, (N, n), field))
        cls = classify_family(U)
        if cls.is_frame and cls.margin > min_margin:
            return U
    raise GenerationError(f"no frame found in {MAX_RETRIES} draws (seed={seed})")


def random_tight_frame(seed, N: int, n: int, a: float = 1.0, field: str = "R",
                       weights=None) -> VectorFamily:
    """Random ``a``-tight frame: columns orthogonal in L^2(mu) with norm sqrt(a)."""
    if N < n:
        raise InfeasibleError(f"{N} points cannot carry {n} orthogonal columns")
    if not a > 0:
        raise ValueError("tight constant must be positive")
    space = _space(N, weights)
    rng = np.random.default_rng(seed)
    root_w = np.sqrt(space.weights)[:, None]
    for _ in range(MAX_RETRIES):
        q, r = np.linalg.qr(root_w * _draw(rng, (N, n), field))
        if np.min(np.abs(np.diag(r))) > 1e-8 * np.max(np.abs(np.diag(r))):
            return VectorFamily(space, np.sqrt(a) * q / root_w)
    raise GenerationError(f"no full-rank draw in {MAX_RETRIES} attempts")
