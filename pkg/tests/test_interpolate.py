from math import comb

import numpy as np
import pytest

from framelab import hilbert_frames as hf
from framelab.errors import UnsupportedError
from framelab.hilbert_frames import VectorFamily
from framelab.measure import DiscreteMeasureSpace
from framelab.translates import (Case, TranslateInstance, interpolate_pe,
                                 monomial_exponents, pe_eval, random_instance)


def test_monomial_count():
    for l in (1, 2, 3):
        for d in (0, 2, 5):
            exps = monomial_exponents(l, d)
            assert len(exps) == comb(d + l, l)
            assert len({tuple(e) for e in exps}) == len(exps)
            assert exps.sum(axis=1).max() == d


def test_square_polynomial():
    sp = DiscreteMeasureSpace.counting(1)
    inst = TranslateInstance(Case.HILBERT, (VectorFamily(sp, [[0.0]]),),
                             (VectorFamily(sp, [[1.0]]),))
    poly = interpolate_pe(inst, 0)
    assert poly.coefficient([2]) == pytest.approx(1.0, abs=1e-12)
    assert poly.coefficient([0]) == pytest.approx(0.0, abs=1e-12)
    assert poly.coefficient([1]) == pytest.approx(0.0, abs=1e-12)
    assert poly.degree == 2 or abs(poly.coefficients).max() < 2


def test_constant_polynomial_when_differences_vanish():
    U = [hf.random_frame(s, 4, 2) for s in range(2)]
    inst = TranslateInstance(Case.HILBERT, tuple(U), tuple(U))
    poly = interpolate_pe(inst, 1)
    const = pe_eval(inst, 1, np.zeros(2))
    assert poly.coefficient([0, 0]) == pytest.approx(const, rel=1e-10)
    others = poly.coefficients[poly.exponents.sum(axis=1) > 0]
    assert np.abs(others).max() <= 1e-8 * const


@pytest.mark.parametrize("seed", range(5))
def test_fit_reproduces_evaluation(seed):
    inst = random_instance("hilbert", seed, l=2, N=3, n=2)
    poly = interpolate_pe(inst, seed % 2, extra_degree=1, seed=seed)
    assert poly.validation_error <= 1e-8
    assert np.abs(poly.high_degree_coefficients(4)).max() <= 1e-8
    rng = np.random.default_rng(100 + seed)
    pts = rng.uniform(-1, 1, (10, 2))
    truth = np.array([pe_eval(inst, seed % 2, c) for c in pts])
    np.testing.assert_allclose(poly(pts), truth, rtol=1e-8, atol=1e-8 * np.abs(truth).max())


def test_block_cases():
    inst = random_instance("cstar", 1, l=2, N=2, signature=(1, 2))
    for block, q in enumerate(inst.block_dims):
        poly = interpolate_pe(inst, 0, block, extra_degree=1)
        assert poly.validation_error <= 1e-8
        assert np.abs(poly.high_degree_coefficients(2 * q)).max() <= 1e-8
    with pytest.raises(IndexError):
        interpolate_pe(inst, 0, 2)


def test_refusals():
    complex_inst = random_instance("hilbert", 0, l=1, N=2, n=1, field="C")
    with pytest.raises(UnsupportedError):
        interpolate_pe(complex_inst, 0)
    big = random_instance("hilbert", 0, l=8, N=4, n=4)
    with pytest.raises(UnsupportedError):
        interpolate_pe(big, 0)


def test_to_json_cutoff():
    inst = random_instance("hilbert", 3, l=1, N=2, n=1)
    poly = interpolate_pe(inst, 0, extra_degree=2)
    data = poly.to_json(cutoff=1e-9)
    assert all(sum(t["exponent"]) <= 2 for t in data["terms"])
