"""Recovery of the monomial coefficients of ``P_e`` by least squares."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from ..errors import UnsupportedError
from .evaluate import evaluate_batch, pe_eval
from .instance import Case, TranslateInstance, check_index

MAX_MONOMIALS = 5000


def monomial_exponents(nvars: int, degree: int) -> np.ndarray:
    """All exponent vectors of total degree ``<= degree``, graded order."""
    rows = []
    for d in range(degree + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), d):
            exp = [0] * nvars
            for v in combo:
                exp[v] += 1
            rows.append(exp)
    return np.array(rows, dtype=int).reshape(-1, nvars)


def vandermonde(points: np.ndarray, exponents: np.ndarray) -> np.ndarray:
    return np.prod(points[:, None, :] ** exponents[None, :, :], axis=2)


@dataclass(frozen=True)
class Polynomial:
    """Real polynomial in ``nvars`` variables in monomial form."""

    exponents: np.ndarray
    coefficients: np.ndarray
    validation_error: float = float("nan")

    @property
    def nvars(self) -> int:
        return self.exponents.shape[1]

    @property
    def degree(self) -> int:
        nz = np.abs(self.coefficients) > 0
        return int(self.exponents[nz].sum(axis=1).max()) if nz.any() else 0

    def coefficient(self, exponent) -> float:
        hits = np.flatnonzero(np.all(self.exponents == np.asarray(exponent), axis=1))
        return float(self.coefficients[hits[0]]) if hits.size else 0.0

    def high_degree_coefficients(self, degree: int) -> np.ndarray:
        """Coefficients of monomials of total degree strictly above ``degree``."""
        return self.coefficients[self.exponents.sum(axis=1) > degree]

    def __call__(self, points) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        return vandermonde(points, self.exponents) @ self.coefficients

    def to_json(self, cutoff: float = 0.0) -> dict:
        terms = [{"exponent": exp.tolist(), "coefficient": float(c)}
                 for exp, c in zip(self.exponents, self.coefficients) if abs(c) > cutoff]
        return {"nvars": self.nvars, "terms": terms,
                "validation_error": self.validation_error}


def interpolate_pe(inst: TranslateInstance, e: int, block: int = 0, *,
                   extra_degree: int = 0, oversample: float = 2.0, radius: float = 1.0,
                   validation_points: int = 50, seed=0) -> Polynomial:
    """Fit ``P_e`` (block ``block`` for CStar/Module) in the monomial basis.

    The basis holds every monomial of total degree ``<= 2 q + extra_degree``
    where ``q`` is the block dimension.  The result's ``validation_error``
    is the max-norm relative error against :func:`pe_eval` on fresh points.
    """
    if inst.field != "R":
        raise UnsupportedError("interpolation is only provided over the reals")
    e = check_index(inst, e)
    dims = inst.block_dims
    if not 0 <= block < len(dims):
        raise IndexError(f"block {block} out of range for {len(dims)} blocks")
    degree = 2 * dims[block] + extra_degree
    count = comb(degree + inst.l, inst.l)
    if count > MAX_MONOMIALS:
        raise UnsupportedError(f"{count} monomials exceed the cap of {MAX_MONOMIALS}")
    exps = monomial_exponents(inst.l, degree)
    rng = np.random.default_rng(seed)
    npts = max(int(np.ceil(oversample * count)), count + 1)
    X = rng.uniform(-radius, radius, (npts, inst.l))
    y = evaluate_batch(inst, X, indices=[e]).dets[:, 0, block]
    coef, *_ = np.linalg.lstsq(vandermonde(X, exps), y, rcond=None)

    fresh = rng.uniform(-radius, radius, (validation_points, inst.l))
    truth = np.array([_block_value(inst, e, c, block) for c in fresh])
    poly = Polynomial(exps, coef)
    scale = np.max(np.abs(truth))
    err = float(np.max(np.abs(poly(fresh) - truth)) / scale) if scale > 0 else float(
        np.max(np.abs(poly(fresh))))
    return Polynomial(exps, coef, err)


def _block_value(inst, e, c, block):
    v = pe_eval(inst, e, c)
    return v if inst.case is Case.HILBERT else v[block]
