"""Evaluation of ``P_e`` and of intersection membership.

Two routes are provided.  The scalar functions (:func:`pe_eval`,
:func:`membership`, :func:`intersection_membership`) build the combined
family explicitly and call the owning module's frame operator and
classifier.  :func:`evaluate_batch` does the same arithmetic vectorised over
many coefficient tuples and is what the Monte Carlo drivers use.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import scalar_linalg as sl
from ..hilbert_frames import DEFAULT_TOL, VectorFamily
from .instance import (Case, TranslateInstance, check_coefficients, check_index,
                       classify, combined_family, operator_blocks)


def pe_eval(inst: TranslateInstance, e: int, c):
    """Gram determinant(s) of the combined family at index ``e``.

    A float for the Hilbert case, a tuple of per-block determinants otherwise.
    """
    fam = combined_family(inst, e, c)
    dets = tuple(sl.psd_det(b) for b in operator_blocks(fam))
    return dets[0] if inst.case is Case.HILBERT else dets


@dataclass(frozen=True)
class Membership:
    inside: bool
    margin: float


def membership(inst: TranslateInstance, e: int, c, tol: float = DEFAULT_TOL) -> Membership:
    """Is ``sum_i c_i (A(i) - U(i))`` in ``F - U(e)``?"""
    cls = classify(combined_family(inst, e, c), tol)
    return Membership(cls.is_frame, cls.margin)


@dataclass(frozen=True)
class MembershipReport:
    inside: tuple
    values: tuple
    margins: tuple

    @property
    def overall(self) -> bool:
        return all(self.inside)

    def to_json(self) -> dict:
        return {
            "inside": list(self.inside),
            "values": [list(v) if isinstance(v, tuple) else v for v in self.values],
            "margins": list(self.margins),
            "overall": self.overall,
        }


def intersection_membership(inst: TranslateInstance, c,
                            tol: float = DEFAULT_TOL) -> MembershipReport:
    c = check_coefficients(inst, c)
    inside, values, margins = [], [], []
    for e in range(inst.l):
        m = membership(inst, e, c, tol)
        inside.append(m.inside)
        margins.append(m.margin)
        values.append(pe_eval(inst, e, c))
    return MembershipReport(tuple(inside), tuple(values), tuple(margins))


# ---------------------------------------------------------------------------
# vectorised route

def _stacks(family):
    """Block data as arrays ``(N, p, q)``; Hilbert vectors become ``1 x n`` rows."""
    if isinstance(family, VectorFamily):
        return [family.vectors[:, None, :]]
    return list(family.stacks)


@dataclass(frozen=True)
class BatchEvaluation:
    """Per-sample, per-index results for coefficient tuples ``C``.

    Shapes: ``inside``/``margin``/``scaled_margin`` are ``(S, l)``;
    ``dets``/``normalized`` are ``(S, l, r)`` with ``r`` the number of
    operator blocks.

    ``margin`` is ``lambda_min / lambda_max``.  ``scaled_margin`` divides
    ``lambda_min`` by the same scale the classifier's threshold uses
    (``max(1, lambda_max)`` in the Hilbert case), so ``inside`` is exactly
    ``scaled_margin > tol``.  ``normalized`` is ``|det S_j| / scale^{q_j}``
    with ``scale`` the mean eigenvalue (trace over dimension, floored at 1
    in the Hilbert case); by AM-GM it lies in ``[0, 1]``.
    """

    inside: np.ndarray
    margin: np.ndarray
    scaled_margin: np.ndarray
    dets: np.ndarray
    normalized: np.ndarray

    @property
    def overall(self) -> np.ndarray:
        return np.all(self.inside, axis=1)


def evaluate_batch(inst: TranslateInstance, C, tol: float = DEFAULT_TOL,
                   indices=None) -> BatchEvaluation:
    C = np.atleast_2d(np.asarray(C))
    if C.shape[1] != inst.l:
        raise ValueError(f"expected {inst.l} coefficients per row, got {C.shape[1]}")
    if inst.field == "R":
        if np.iscomplexobj(C):
            if np.any(C.imag != 0):
                raise ValueError("complex coefficients on a real instance")
            C = C.real
    indices = range(inst.l) if indices is None else [check_index(inst, e) for e in indices]
    w_root = np.sqrt(inst.space.weights)[None, :, None, None]
    hilbert = inst.case is Case.HILBERT
    diffs = [_stacks(d) for d in inst.differences]
    S = C.shape[0]
    dims = inst.block_dims
    out_inside = np.zeros((S, len(indices)), dtype=bool)
    out_margin = np.zeros((S, len(indices)))
    out_scaled = np.zeros((S, len(indices)))
    out_dets = np.zeros((S, len(indices), len(dims)))
    out_norm = np.zeros((S, len(indices), len(dims)))
    for col, e in enumerate(indices):
        base = _stacks(inst.U[e])
        grams = []
        for j, q in enumerate(dims):
            D = np.stack([d[j] for d in diffs])          # (l, N, p, q)
            V = base[j][None] + np.einsum("si,ixpq->sxpq", C, D)
            Y = (w_root * V).reshape(S, -1, q)
            Yh = np.conj(Y).swapaxes(1, 2)
            # Hilbert: S[k,l] = sum w u^k conj(u^l); blocks: sum w phi^* phi
            grams.append(Y.swapaxes(1, 2) @ np.conj(Y) if hilbert else Yh @ Y)
        lmin = np.full(S, np.inf)
        lmax = np.full(S, -np.inf)
        trace = np.zeros(S)
        for j, G in enumerate(grams):
            ev = np.linalg.eigvalsh(G)
            lmin = np.minimum(lmin, ev[:, 0])
            lmax = np.maximum(lmax, ev[:, -1])
            trace += np.real(np.trace(G, axis1=1, axis2=2))
            out_dets[:, col, j] = np.real(np.linalg.det(G))
        scale = np.maximum(1.0, lmax) if hilbert else lmax
        out_inside[:, col] = lmin > tol * scale
        mean = trace / sum(dims)
        if hilbert:
            mean = np.maximum(1.0, mean)
        with np.errstate(divide="ignore", invalid="ignore"):
            out_margin[:, col] = np.where(lmax > 0, lmin / lmax, 0.0)
            out_scaled[:, col] = np.where(scale > 0, lmin / scale, 0.0)
            for j, q in enumerate(dims):
                out_norm[:, col, j] = np.where(
                    mean > 0, np.abs(out_dets[:, col, j]) / mean ** q, 0.0)
    return BatchEvaluation(out_inside, out_margin, out_scaled, out_dets, out_norm)
