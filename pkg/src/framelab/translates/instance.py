"""Translate instances ``(U(1..l), A(1..l))`` and their combined families."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .. import cstar_frames as cf
from .. import hilbert_frames as hf
from .. import module_frames as mf
from ..errors import DimensionError, PreconditionError
from ..hilbert_frames import DEFAULT_TOL, FrameClassification, VectorFamily
from ..measure import DiscreteMeasureSpace, random_space


class Case(str, enum.Enum):
    HILBERT = "hilbert"
    CSTAR = "cstar"
    MODULE = "module"

    def __str__(self):
        return self.value


_FAMILY_TYPES = {
    Case.HILBERT: VectorFamily,
    Case.CSTAR: cf.AlgebraFamily,
    Case.MODULE: mf.ModuleFamily,
}


def case_of(family) -> Case:
    for case, typ in _FAMILY_TYPES.items():
        if type(family) is typ:
            return case
    raise TypeError(f"not a frame family: {type(family).__name__}")


def operator_blocks(family) -> list:
    """Hermitian PSD block(s) of the frame operator, whatever the case."""
    if isinstance(family, VectorFamily):
        return [hf.frame_operator(family)]
    return family.frame_operator_blocks()


def classify(family, tol: float = DEFAULT_TOL) -> FrameClassification:
    case = case_of(family)
    if case is Case.HILBERT:
        return hf.classify_family(family, tol)
    if case is Case.CSTAR:
        return cf.classify_cstar(family, tol)
    return mf.classify_module_blockwise(family, tol)


def family_from_json(data: dict):
    """Dispatch on the schema's distinguishing key."""
    if "signature" in data:
        return cf.AlgebraFamily.from_json(data)
    if "summands" in data:
        return mf.ModuleFamily.from_json(data)
    if "vectors" in data:
        return VectorFamily.from_json(data)
    raise DimensionError("unrecognised family schema")


def _layout(family):
    if isinstance(family, VectorFamily):
        return family.vectors.shape
    return family.shapes


@dataclass(frozen=True, eq=False)
class TranslateInstance:
    """Translates ``U(1..l)`` and frames ``A(1..l)`` on one measure space.

    Construction checks that every ``A(i)`` is a frame, which is what makes
    each ``P_e`` a nonzero polynomial.
    """

    case: Case
    U: tuple
    A: tuple
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        case = Case(self.case)
        U, A = tuple(self.U), tuple(self.A)
        if len(U) < 1 or len(U) != len(A):
            raise DimensionError(f"need l >= 1 translates and as many frames, "
                                 f"got {len(U)} and {len(A)}")
        ref = U[0]
        for fam in U + A:
            if case_of(fam) is not case:
                raise DimensionError(f"family of type {type(fam).__name__} in a "
                                     f"{case.value} instance")
            if fam.space != ref.space or _layout(fam) != _layout(ref):
                raise DimensionError("all families must share space and dimensions")
            if fam.field != ref.field:
                raise DimensionError("all families must share the field")
        for i, fam in enumerate(A):
            if not classify(fam, self.tol).is_frame:
                raise PreconditionError(f"A({i}) is not a frame")
        object.__setattr__(self, "case", case)
        object.__setattr__(self, "U", U)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "_diffs", tuple(a - u for a, u in zip(A, U)))

    @property
    def l(self) -> int:
        return len(self.U)

    @property
    def space(self) -> DiscreteMeasureSpace:
        return self.U[0].space

    @property
    def field(self) -> str:
        return self.U[0].field

    @property
    def differences(self) -> tuple:
        """``A(i) - U(i)`` for each ``i``."""
        return self._diffs

    @property
    def block_dims(self) -> tuple:
        """Sizes of the frame-operator blocks whose determinants form ``P_e``."""
        if self.case is Case.HILBERT:
            return (self.U[0].n,)
        return tuple(shape[1] for shape in self.U[0].shapes)

    def to_json(self) -> dict:
        return {
            "case": self.case.value,
            "l": self.l,
            "U": [f.to_json() for f in self.U],
            "A": [f.to_json() for f in self.A],
        }

    @classmethod
    def from_json(cls, data: dict, tol: float = DEFAULT_TOL) -> "TranslateInstance":
        case = Case(data["case"])
        U = [family_from_json(f) for f in data["U"]]
        A = [family_from_json(f) for f in data["A"]]
        if "l" in data and int(data["l"]) != len(U):
            raise DimensionError(f"l={data['l']} but {len(U)} translates given")
        return cls(case, tuple(U), tuple(A), tol)


def check_coefficients(inst: TranslateInstance, c) -> np.ndarray:
    c = np.asarray(c)
    if c.shape != (inst.l,):
        raise DimensionError(f"expected {inst.l} coefficients, got shape {c.shape}")
    if np.iscomplexobj(c):
        if inst.field == "R" and np.any(c.imag != 0):
            raise DimensionError("complex coefficients on a real instance")
        if inst.field == "R":
            c = c.real
    if not np.all(np.isfinite(c)):
        raise DimensionError("coefficients must be finite")
    return c


def check_index(inst: TranslateInstance, e: int) -> int:
    if not 0 <= e < inst.l:
        raise IndexError(f"index {e} out of range for l={inst.l}")
    return int(e)


def combined_family(inst: TranslateInstance, e: int, c):
    """``U(e) + sum_i c_i (A(i) - U(i))``, pointwise."""
    e = check_index(inst, e)
    c = check_coefficients(inst, c)
    out = inst.U[e]
    for ci, d in zip(c, inst.differences):
        out = out + ci.item() * d
    return out


def span_corollary_instance(U, tol: float = DEFAULT_TOL) -> TranslateInstance:
    """Instance with ``A(i) = 2 U(i)``, so the combined family at ``e`` is
    ``U(e) + sum_i c_i U(i)``."""
    U = tuple(U)
    if not U:
        raise DimensionError("need at least one frame")
    for i, fam in enumerate(U):
        if not classify(fam, tol).is_frame:
            raise PreconditionError(f"U({i}) is not a frame")
    return TranslateInstance(case_of(U[0]), U, tuple(2.0 * f for f in U), tol)


def _child(seed, *keys):
    return np.random.SeedSequence([int(seed), *keys])


def random_family(case, seed, N: int, *, n=None, signature=None, summands=None,
                  field: str = "R", weights=None, frame: bool = False,
                  min_margin: float = hf.RANDOM_FRAME_MIN_MARGIN):
    """Gaussian family of the requested case; ``frame=True`` rejection-samples."""
    case = Case(case)
    if case is Case.HILBERT:
        if n is None:
            raise DimensionError("hilbert families need n")
        if frame:
            return hf.random_frame(seed, N, n, field, weights, min_margin)
        return hf.random_bessel(seed, N, n, field, weights)
    if case is Case.CSTAR:
        if signature is None:
            raise DimensionError("cstar families need a signature")
        if frame:
            return cf.random_cstar_frame(seed, N, signature, field, weights, min_margin)
        return cf.random_cstar_family(seed, N, signature, field, weights)
    if summands is None:
        raise DimensionError("module families need summands")
    if frame:
        return mf.random_module_frame(seed, N, summands, field, weights, min_margin)
    return mf.random_module_family(seed, N, summands, field, weights)


def random_instance(case, seed, l: int, N: int, *, n=None, signature=None,
                    summands=None, field: str = "R", random_weights: bool = False,
                    corollary: bool = False,
                    min_margin: float = hf.RANDOM_FRAME_MIN_MARGIN) -> TranslateInstance:
    """Seeded random instance: Bessel ``U(i)`` and frame ``A(i)``.

    With ``corollary=True`` the ``U(i)`` are frames and ``A(i) = 2 U(i)``.
    Every family draws from its own child seed ``(seed, role, i)``.
    """
    if l < 1:
        raise DimensionError("l must be at least 1")
    space = random_space(_child(seed, 0), N) if random_weights else None
    dims = dict(n=n, signature=signature, summands=summands, field=field, weights=space)
    if corollary:
        U = [random_family(case, _child(seed, 1, i), N, frame=True,
                           min_margin=min_margin, **dims) for i in range(l)]
        return span_corollary_instance(U)
    U = [random_family(case, _child(seed, 1, i), N, **dims) for i in range(l)]
    A = [random_family(case, _child(seed, 2, i), N, frame=True,
                       min_margin=min_margin, **dims) for i in range(l)]
    return TranslateInstance(Case(case), tuple(U), tuple(A))
