"""Monte Carlo checks of the membership biconditional and of the failure measure.

Coefficient tuples are drawn in fixed blocks of :data:`BLOCK` samples; block
``b`` uses the generator seeded by ``(seed, b)``.  Sample ``k`` therefore
depends only on ``(seed, k)``, whatever order the blocks are processed in.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.stats import binomtest

from ..hilbert_frames import DEFAULT_TOL
from .evaluate import evaluate_batch
from .instance import TranslateInstance

BLOCK = 4096
DEFAULT_BAND = 1e-9
DEFAULT_RADIUS = 2.0
MAX_REPORTED = 20


def sample_block(seed, block: int, size: int, l: int, field: str,
                 radius: float = DEFAULT_RADIUS, distribution: str = "uniform") -> np.ndarray:
    rng = np.random.default_rng([int(seed), int(block)])

    def draw(shape):
        if distribution == "uniform":
            return rng.uniform(-radius, radius, shape)
        if distribution == "gaussian":
            return radius * rng.standard_normal(shape)
        raise ValueError(f"unknown distribution {distribution!r}")

    if field == "C":
        return draw((size, l)) + 1j * draw((size, l))
    return draw((size, l))


def coefficient_blocks(seed, samples: int, l: int, field: str,
                       radius: float = DEFAULT_RADIUS, distribution: str = "uniform"):
    """Yield ``(offset, C)`` chunks covering ``samples`` coefficient tuples."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    for b, start in enumerate(range(0, samples, BLOCK)):
        size = min(BLOCK, samples - start)
        yield start, sample_block(seed, b, size, l, field, radius, distribution)


def _json_c(c):
    if np.iscomplexobj(c):
        return [[float(x.real), float(x.imag)] for x in c]
    return [float(x) for x in c]


@dataclass
class BiconditionalReport:
    """Agreement between frame membership and nonvanishing of every ``P_e``.

    A (sample, index) pair is *ambiguous* when either the scaled spectral
    margin or some normalised determinant lies in ``(0, band]`` (see
    :class:`~framelab.translates.evaluate.BatchEvaluation`); samples with any
    ambiguous index are excluded from scoring.  For CStar/Module instances,
    ``common_zero`` counts failing indices where every block determinant
    vanishes and ``union_only`` those where only some do.
    """

    samples: int
    agreed: int
    excluded: int
    disagreements: int
    counterexamples: list = field(default_factory=list)
    inside: int = 0
    union_only: int = 0
    common_zero: int = 0

    @property
    def scored(self) -> int:
        return self.samples - self.excluded

    @property
    def agreement(self) -> float:
        return self.agreed / self.scored if self.scored else 1.0

    @property
    def ok(self) -> bool:
        return self.disagreements == 0

    def to_json(self) -> dict:
        return {
            "samples": self.samples,
            "scored": self.scored,
            "agreed": self.agreed,
            "excluded": self.excluded,
            "disagreements": self.disagreements,
            "agreement": self.agreement,
            "inside": self.inside,
            "union_only": self.union_only,
            "common_zero": self.common_zero,
            "counterexamples": self.counterexamples,
        }


def classify_sides(ev, band: float):
    """Per (sample, index): ambiguity mask and the determinant-side verdict."""
    margin_amb = (ev.scaled_margin > 0) & (ev.scaled_margin <= band)
    det_amb = np.any((ev.normalized > 0) & (ev.normalized <= band), axis=2)
    nonvanishing = np.all(ev.normalized > band, axis=2)
    return margin_amb | det_amb, nonvanishing


def verify_biconditional(inst: TranslateInstance, samples: int = 10_000, seed=0,
                         tol: float = DEFAULT_TOL, band: float = DEFAULT_BAND,
                         radius: float = DEFAULT_RADIUS,
                         distribution: str = "uniform") -> BiconditionalReport:
    rep = BiconditionalReport(samples=samples, agreed=0, excluded=0, disagreements=0)
    for start, C in coefficient_blocks(seed, samples, inst.l, inst.field, radius,
                                       distribution):
        ev = evaluate_batch(inst, C, tol)
        ambiguous, nonvanishing = classify_sides(ev, band)
        excluded = np.any(ambiguous, axis=1)
        mismatch = np.any(ev.inside != nonvanishing, axis=1) | (
            ev.overall != np.all(nonvanishing, axis=1))
        scored = ~excluded
        rep.excluded += int(excluded.sum())
        rep.agreed += int((scored & ~mismatch).sum())
        rep.inside += int((scored & ev.overall).sum())
        bad = np.flatnonzero(scored & mismatch)
        rep.disagreements += bad.size
        for k in bad[:max(0, MAX_REPORTED - len(rep.counterexamples))]:
            rep.counterexamples.append({
                "index": int(start + k),
                "c": _json_c(C[k]),
                "inside": ev.inside[k].tolist(),
                "margins": ev.margin[k].tolist(),
                "scaled_margins": ev.scaled_margin[k].tolist(),
                "dets": ev.dets[k].tolist(),
            })
        if ev.dets.shape[2] > 1:
            failing = scored[:, None] & ~nonvanishing
            all_zero = np.all(ev.normalized <= band, axis=2)
            rep.common_zero += int((failing & all_zero).sum())
            rep.union_only += int((failing & ~all_zero).sum())
    return rep


@dataclass(frozen=True)
class MeasureEstimate:
    """Fraction of sampled coefficient tuples outside the intersection."""

    samples: int
    failures: int
    band_hits: int
    ci_low: float
    ci_high: float
    radius: float
    seed: int

    @property
    def fraction(self) -> float:
        return self.failures / self.samples

    def to_json(self) -> dict:
        return {
            "samples": self.samples,
            "failures": self.failures,
            "fraction": self.fraction,
            "wilson95": [self.ci_low, self.ci_high],
            "band_hits": self.band_hits,
            "radius": self.radius,
            "seed": self.seed,
        }


def wilson_interval(successes: int, trials: int, confidence: float = 0.95):
    ci = binomtest(successes, trials).proportion_ci(confidence, method="wilson")
    return float(ci.low), float(ci.high)


def failure_measure(inst: TranslateInstance, radius: float = DEFAULT_RADIUS,
                    samples: int = 100_000, seed=0, tol: float = DEFAULT_TOL,
                    band: float = DEFAULT_BAND,
                    distribution: str = "uniform") -> MeasureEstimate:
    if not radius > 0:
        raise ValueError("radius must be positive")
    failures = band_hits = 0
    for _, C in coefficient_blocks(seed, samples, inst.l, inst.field, radius,
                                   distribution):
        ev = evaluate_batch(inst, C, tol)
        failures += int((~ev.overall).sum())
        band_hits += int((np.min(ev.scaled_margin, axis=1) <= band).sum())
    low, high = wilson_interval(failures, samples)
    return MeasureEstimate(samples, failures, band_hits, low, high, radius, int(seed))
