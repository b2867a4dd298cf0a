"""Finite-dimensional left Hilbert modules ``H = sum_j F^{m_j} (x) F^{k_j}``.

An element is a tuple of ``m_j x k_j`` matrices; the algebra
``sum_j M_{m_j}(F)`` acts by left multiplication on each block and the
algebra-valued inner product is blockwise ``<u, v>_j = u_j v_j^*``.

With this inner product

    sum_x w_x <v, phi_x><phi_x, v> = (v_j S_j v_j^*)_j,   S_j = sum_x w_x phi_j^* phi_j,

so positive definiteness of every ``S_j`` is the natural candidate for the
frame property.  :func:`classify_module_blockwise` uses that candidate;
:func:`classify_module_sampled` checks it against the defining inequality on
random and constructed probe elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import scalar_linalg as sl
from ._stacked import StackedFamily, cast_blocks
from .cstar_frames import AlgebraElement, AlgebraSignature
from .errors import DimensionError, GenerationError, InfeasibleError
from .hilbert_frames import (DEFAULT_TOL, MAX_RETRIES, RANDOM_FRAME_MIN_MARGIN,
                             FrameClassification, _draw, _space,
                             classify_operator_blocks)
from .measure import DiscreteMeasureSpace


@dataclass(frozen=True)
class ModuleSignature:
    shapes: tuple
    field: str = "R"

    def __post_init__(self):
        shapes = tuple((int(m), int(k)) for m, k in self.shapes)
        if not shapes or any(m < 1 or k < 1 for m, k in shapes):
            raise DimensionError(f"invalid summand shapes {self.shapes}")
        sl.dtype_for(self.field)
        object.__setattr__(self, "shapes", shapes)

    @property
    def s(self) -> int:
        return len(self.shapes)

    @property
    def algebra(self) -> AlgebraSignature:
        return AlgebraSignature(tuple(m for m, _ in self.shapes), self.field)


class ModuleElement:
    __slots__ = ("blocks",)

    def __init__(self, blocks):
        blocks = cast_blocks(blocks)
        if any(b.ndim != 2 for b in blocks):
            raise DimensionError("module blocks must be matrices")
        object.__setattr__(self, "blocks", blocks)

    def __setattr__(self, name, value):
        raise AttributeError("module elements are immutable")

    @property
    def shapes(self) -> tuple:
        return tuple(b.shape for b in self.blocks)

    def __add__(self, other):
        if other.shapes != self.shapes:
            raise DimensionError("shape mismatch")
        return ModuleElement([a + b for a, b in zip(self.blocks, other.blocks)])

    def __mul__(self, alpha):
        if not np.isscalar(alpha):
            return NotImplemented
        return ModuleElement([alpha * b for b in self.blocks])

    __rmul__ = __mul__

    def __repr__(self):
        return f"ModuleElement(shapes={self.shapes})"


def act(a: AlgebraElement, u: ModuleElement) -> ModuleElement:
    """Left action ``(a.u)_j = a_j u_j``."""
    if a.sizes != tuple(m for m, _ in u.shapes):
        raise DimensionError(f"algebra {a.sizes} does not act on module {u.shapes}")
    return ModuleElement([x @ y for x, y in zip(a.blocks, u.blocks)])


def inner_module(u: ModuleElement, v: ModuleElement) -> AlgebraElement:
    if u.shapes != v.shapes:
        raise DimensionError(f"signatures differ: {u.shapes} vs {v.shapes}")
    return AlgebraElement([x @ y.conj().T for x, y in zip(u.blocks, v.blocks)])


class ModuleFamily(StackedFamily):
    __slots__ = ()

    @classmethod
    def from_elements(cls, space: DiscreteMeasureSpace, elements) -> "ModuleFamily":
        elements = list(elements)
        if len(elements) != space.size:
            raise DimensionError(f"{len(elements)} elements for {space.size} points")
        s = len(elements[0].blocks)
        return cls(space, [np.stack([el.blocks[j] for el in elements]) for j in range(s)])

    @property
    def signature(self) -> ModuleSignature:
        return ModuleSignature(self.shapes, self.field)

    def element(self, i: int) -> ModuleElement:
        return ModuleElement([st[i] for st in self.stacks])

    def to_json(self) -> dict:
        return {
            "summands": [list(s) for s in self.shapes],
            "field": self.field,
            "weights": self.space.weights.tolist(),
            "elements": self._elements_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ModuleFamily":
        field = data.get("field", "R")
        shapes = [(int(m), int(k)) for m, k in data["summands"]]
        elements = data["elements"]
        stacks = cls._stacks_from_json(elements, field, shapes)
        space = DiscreteMeasureSpace.from_json(data, size=len(elements))
        return cls(space, stacks, field)


def frame_operator_module(phi: ModuleFamily) -> list:
    """Per-summand ``k_j x k_j`` Hermitian PSD matrices ``S_j``."""
    return phi.frame_operator_blocks()


def classify_module_blockwise(phi: ModuleFamily, tol: float = DEFAULT_TOL) -> FrameClassification:
    return classify_operator_blocks(frame_operator_module(phi), tol)


@dataclass(frozen=True)
class SampledReport:
    """Result of testing the frame inequality on probe elements.

    ``lower_margins``/``upper_margins`` hold, per random probe, the smallest
    eigenvalue of ``v S v^* - A <v,v>`` and of ``B <v,v> - v S v^*``,
    normalised by ``B * ||v||^2``.  ``witness_ratios`` holds, per summand,
    the Rayleigh quotient of a probe built in the numerically most degenerate
    direction of that summand's data.
    """

    blockwise: FrameClassification
    probes: int
    lower_violations: int
    upper_violations: int
    lower_margins: np.ndarray = dc_field(repr=False)
    upper_margins: np.ndarray = dc_field(repr=False)
    witness_ratios: tuple
    svd_lower: float
    svd_upper: float
    sampled_is_frame: bool

    @property
    def agrees(self) -> bool:
        return self.sampled_is_frame == self.blockwise.is_frame

    def to_json(self) -> dict:
        return {
            "blockwise": self.blockwise.to_json(),
            "probes": self.probes,
            "lower_violations": self.lower_violations,
            "upper_violations": self.upper_violations,
            "min_lower_margin": float(np.min(self.lower_margins)),
            "min_upper_margin": float(np.min(self.upper_margins)),
            "witness_ratios": list(self.witness_ratios),
            "svd_lower": self.svd_lower,
            "svd_upper": self.svd_upper,
            "sampled_is_frame": self.sampled_is_frame,
            "agrees": self.agrees,
        }


def _weighted_data(phi: ModuleFamily):
    # Y_j with Y_j^* Y_j = S_j: stack the rows of sqrt(w_x) phi_{x,j}
    root_w = np.sqrt(phi.space.weights)[:, None, None]
    return [(root_w * st).reshape(-1, st.shape[2]) for st in phi.stacks]


def probe_margins(phi: ModuleFamily, v: ModuleElement, lower: float, upper: float):
    """Normalised PSD margins of ``A<v,v> <= sum w <v,phi><phi,v> <= B<v,v>``.

    The middle term is computed directly from the definition, element by
    element, without forming ``S_j``.
    """
    vv = inner_module(v, v)
    middle = [np.zeros_like(b) for b in vv.blocks]
    for i, w in enumerate(phi.space.weights):
        p = inner_module(v, phi.element(i))
        term = p @ p.star()
        for j, b in enumerate(term.blocks):
            middle[j] = middle[j] + w * b
    norm = sum(np.linalg.norm(b, 2) for b in vv.blocks)
    scale = max(upper, 0.0) * norm or 1.0
    lo = min(np.linalg.eigvalsh(mid - lower * b)[0] for mid, b in zip(middle, vv.blocks))
    hi = min(np.linalg.eigvalsh(upper * b - mid)[0] for mid, b in zip(middle, vv.blocks))
    return lo / scale, hi / scale


def classify_module_sampled(phi: ModuleFamily, probes: int = 100,
                            tol: float = DEFAULT_TOL, seed=0) -> SampledReport:
    """Check the blockwise verdict against the module frame inequality.

    Random probes test the inequality at the blockwise bounds ``A``, ``B``.
    Independently, the smallest and largest singular values of the weighted
    data give the sharp bounds, and a probe supported in one summand and
    aligned with its least singular direction serves as a witness: if its
    Rayleigh quotient is within ``tol`` of zero, no ``A > 0`` works.
    """
    if probes < 1:
        raise ValueError("need at least one probe")
    block = classify_module_blockwise(phi, tol)
    A, B = block.lower, block.upper
    rng = np.random.default_rng(seed)
    shapes = phi.shapes
    lows, highs = np.empty(probes), np.empty(probes)
    for t in range(probes):
        v = ModuleElement([_draw(rng, (m, k), phi.field) for m, k in shapes])
        lows[t], highs[t] = probe_margins(phi, v, A, B)

    sv = [np.linalg.svd(Y, full_matrices=True) for Y in _weighted_data(phi)]
    sig_min, sig_max, ratios = [], [], []
    for j, (_, s, vh) in enumerate(sv):
        k = shapes[j][1]
        s_full = np.zeros(k)
        s_full[:s.size] = s
        sig_min.append(s_full[-1] ** 2)
        sig_max.append(s_full[0] ** 2)
        # v_r^* must be the least right singular vector, i.e. v_r = vh[-1]
        witness = [np.zeros((m, kk), dtype=sl.dtype_for(phi.field)) for m, kk in shapes]
        witness[j][0] = vh[-1]
        wit = ModuleElement(witness)
        ratios.append(_rayleigh(phi, wit, j))
    svd_lower, svd_upper = float(min(sig_min)), float(max(sig_max))
    lower_violations = int(np.sum(lows < -tol))
    upper_violations = int(np.sum(highs < -tol))
    degenerate = min(ratios) <= tol * svd_upper
    sampled_is_frame = (not degenerate and svd_lower > tol * svd_upper
                        and lower_violations == 0 and upper_violations == 0)
    return SampledReport(block, probes, lower_violations, upper_violations,
                         lows, highs, tuple(ratios), svd_lower, svd_upper,
                         sampled_is_frame)


def _rayleigh(phi: ModuleFamily, v: ModuleElement, j: int) -> float:
    """``(sum w <v,phi><phi,v>)_j[0,0] / <v,v>_j[0,0]`` for a one-row probe."""
    num = 0.0
    for i, w in enumerate(phi.space.weights):
        p = inner_module(v, phi.element(i)).blocks[j]
        num += w * float(np.real(p[0] @ p[0].conj()))
    den = float(np.real(v.blocks[j][0] @ v.blocks[j][0].conj()))
    return num / den


def _check_module_signature(summands, field) -> ModuleSignature:
    if isinstance(summands, ModuleSignature):
        return summands if field is None else ModuleSignature(summands.shapes, field)
    return ModuleSignature(tuple(summands), field or "R")


def random_module_family(seed, N: int, summands, field: str | None = None,
                         weights=None) -> ModuleFamily:
    sig = _check_module_signature(summands, field)
    if N < 1:
        raise ValueError("N must be at least 1")
    rng = np.random.default_rng(seed)
    return ModuleFamily(_space(N, weights),
                        [_draw(rng, (N, m, k), sig.field) for m, k in sig.shapes],
                        sig.field)


def random_module_frame(seed, N: int, summands, field: str | None = None,
                        weights=None,
                        min_margin: float = RANDOM_FRAME_MIN_MARGIN) -> ModuleFamily:
    sig = _check_module_signature(summands, field)
    if N < 1:
        raise ValueError("N must be at least 1")
    for m, k in sig.shapes:
        if N * m < k:
            raise InfeasibleError(
                f"{N} points give rank at most {N * m} < {k} in summand ({m},{k})")
    space = _space(N, weights)
    rng = np.random.default_rng(seed)
    for _ in range(MAX_RETRIES):
        phi = ModuleFamily(space, [_draw(rng, (N, m, k), sig.field) for m, k in sig.shapes],
                           sig.field)
        cls = classify_module_blockwise(phi)
        if cls.is_frame and cls.margin > min_margin:
            return phi
    raise GenerationError(f"no module frame found in {MAX_RETRIES} draws (seed={seed})")
