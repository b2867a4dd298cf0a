import numpy as np
import pytest

from framelab.errors import DimensionError
from framelab import hilbert_frames as hf
from framelab.hilbert_frames import VectorFamily
from framelab.measure import DiscreteMeasureSpace
from framelab.translates import (Case, GridSpec, TranslateInstance, intersection_membership,
                                 random_instance, slice_grid)


def diagonal_instance():
    """U = 0, A(1) = I, A(2) = diag(1, -1) on two points: the combined family
    is diag(c1 + c2, c1 - c2), so every P_e = (c1^2 - c2^2)^2."""
    sp = DiscreteMeasureSpace.counting(2)
    zero = VectorFamily(sp, np.zeros((2, 2)))
    return TranslateInstance(Case.HILBERT, (zero, zero),
                             (VectorFamily(sp, np.eye(2)), VectorFamily(sp, np.diag([1.0, -1.0]))))


def test_zero_lines():
    grid = slice_grid(diagonal_instance(), (0, 1), GridSpec(-2, 2, 9))
    assert len(grid.rows) == 81
    for ci, cj, value, verdict in grid.rows:
        assert value == pytest.approx((ci ** 2 - cj ** 2) ** 2, abs=1e-12)
        assert verdict == ("out" if abs(ci) == abs(cj) else "in")


def test_constant_verdict_when_A_equals_U():
    U = [hf.random_frame(s, 4, 2) for s in range(3)]
    inst = TranslateInstance(Case.HILBERT, tuple(U), tuple(U))
    grid = slice_grid(inst, (0, 2), GridSpec(-2, 2, 5))
    assert {r[3] for r in grid.rows} == {"in"}


@pytest.mark.parametrize("case,dims", [("hilbert", dict(n=2)), ("cstar", dict(signature=(1, 2)))])
def test_matches_pointwise_membership(case, dims):
    inst = random_instance(case, 6, l=3, N=2, **dims)
    c0 = np.array([0.0, 0.0, 0.4])
    grid = slice_grid(inst, (0, 1), GridSpec(-1.5, 1.5, 7), c0=c0)
    for ci, cj, value, verdict in grid.rows:
        rep = intersection_membership(inst, np.array([ci, cj, 0.4]))
        assert verdict == ("in" if rep.overall else "out")
        assert value == pytest.approx(min(np.min(v) for v in rep.values), rel=1e-9)


def test_csv_header_and_rows():
    text = slice_grid(diagonal_instance(), (0, 1), GridSpec(0, 1, 2)).to_csv()
    lines = text.strip().split("\n")
    assert lines[0] == "ci,cj,min_value,verdict"
    assert lines[1].endswith(",out") and len(lines) == 5


@pytest.mark.parametrize("spec", ["1:2", "a:b:3", "0:1:1", "1:0:5"])
def test_malformed_grid(spec):
    with pytest.raises(DimensionError):
        GridSpec.parse(spec)


def test_axes_validated():
    with pytest.raises(DimensionError):
        slice_grid(diagonal_instance(), (1, 1), GridSpec(0, 1, 2))
