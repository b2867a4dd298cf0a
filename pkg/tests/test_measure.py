import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from framelab.errors import ContractError, DimensionError
from framelab.measure import DiscreteMeasureSpace, l2_inner, random_space


def test_counting_measure_constant_function():
    sp = DiscreteMeasureSpace.counting(7)
    assert l2_inner(np.ones(7), np.ones(7), sp) == 7.0


def test_disjoint_supports():
    sp = DiscreteMeasureSpace.counting(3)
    assert l2_inner(np.array([1.0, 0, 0]), np.array([0, 0, 5.0]), sp) == 0.0


def test_weighted_hand_sum():
    sp = DiscreteMeasureSpace([1.0, 0.5])
    assert l2_inner(np.array([1.0, 2.0]), np.array([1.0, 1.0]), sp) == 2.0


def test_conjugate_linear_in_second_slot():
    sp = DiscreteMeasureSpace.counting(1)
    assert l2_inner(np.array([1.0]), np.array([1j]), sp) == -1j


def test_length_mismatch():
    with pytest.raises(DimensionError):
        l2_inner(np.ones(2), np.ones(3), DiscreteMeasureSpace.counting(2))


@pytest.mark.parametrize("weights", [[], [1.0, 0.0], [1.0, -2.0], [np.inf]])
def test_invalid_weights(weights):
    with pytest.raises(ContractError):
        DiscreteMeasureSpace(weights)


def test_json_round_trip_and_default():
    sp = DiscreteMeasureSpace([0.5, 2.0])
    assert DiscreteMeasureSpace.from_json(sp.to_json()) == sp
    assert DiscreteMeasureSpace.from_json({}, size=4) == DiscreteMeasureSpace.counting(4)
    with pytest.raises(DimensionError):
        DiscreteMeasureSpace.from_json({"weights": [1.0]}, size=2)


def test_weights_are_read_only():
    sp = DiscreteMeasureSpace.counting(2)
    with pytest.raises(ValueError):
        sp.weights[0] = 3.0


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_inner_product_axioms(N, seed):
    rng = np.random.default_rng(seed)
    sp = random_space(seed, N)
    f, g, h = (rng.standard_normal(N) + 1j * rng.standard_normal(N) for _ in range(3))
    a, b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    assert l2_inner(f, g, sp) == pytest.approx(np.conj(l2_inner(g, f, sp)), rel=1e-12)
    ff = l2_inner(f, f, sp)
    assert abs(ff.imag) <= 1e-14 * abs(ff) and ff.real > 0
    lhs = l2_inner(a * f + b * h, g, sp)
    rhs = a * l2_inner(f, g, sp) + b * l2_inner(h, g, sp)
    assert abs(lhs - rhs) <= 1e-12 * (abs(a * l2_inner(f, g, sp)) + abs(b * l2_inner(h, g, sp)))
