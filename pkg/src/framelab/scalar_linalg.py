"""Dense real/complex matrix kernel used throughout the package.

Everything works in double precision on numpy arrays.  Matrices carry an
implicit field tag: ``"R"`` for float64 data, ``"C"`` for complex128.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import ContractError, DimensionError

FIELDS = ("R", "C")

HERMITIAN_RTOL = 1e-10
PSD_DET_IMAG_RTOL = 1e-10
BRUTEFORCE_MAX_DIM = 4


def dtype_for(field: str):
    if field == "R":
        return np.float64
    if field == "C":
        return np.complex128
    raise ValueError(f"unknown field {field!r}; expected 'R' or 'C'")


def field_of(a) -> str:
    return "C" if np.iscomplexobj(a) else "R"


def as_matrix(m, field: str | None = None) -> np.ndarray:
    """Validate ``m`` as a finite 2-D array, casting to the field's dtype."""
    if field is None:
        field = field_of(m)
    arr = np.array(m, dtype=dtype_for(field))
    if arr.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ContractError("matrix has non-finite entries")
    return arr


def _require_square(m: np.ndarray) -> None:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")


def det(m):
    """Determinant through LAPACK's partially pivoted LU factorization.

    Returns a Python float for real input and a complex for complex input.
    """
    m = as_matrix(m)
    _require_square(m)
    if m.shape[0] == 0:
        return 1.0
    d = np.linalg.det(m)
    return complex(d) if np.iscomplexobj(d) else float(d)


def psd_det(m) -> float:
    """Determinant of a Hermitian PSD matrix, returned as a real number.

    Gram determinants are real by construction, so a complex determinant is
    accepted only when its imaginary part is rounding noise.
    """
    m = as_matrix(m)
    d = det(m)
    if isinstance(d, complex):
        scale = max(1.0 + abs(d.real), np.linalg.norm(m) ** m.shape[0])
        if abs(d.imag) > PSD_DET_IMAG_RTOL * scale:
            raise ContractError(
                f"determinant {d} of a supposedly Hermitian PSD matrix is not real")
        return d.real
    return d


def _check_hermitian(m: np.ndarray) -> None:
    _require_square(m)
    norm = np.linalg.norm(m)
    if np.linalg.norm(m - m.conj().T) > HERMITIAN_RTOL * norm:
        raise ContractError("matrix is not Hermitian within tolerance")


def hermitian_eigenvalues(m, vectors: bool = False):
    """Ascending real eigenvalues of a Hermitian matrix.

    With ``vectors=True`` the unitary eigenvector matrix ``Q`` is returned as
    well, so that ``m == Q @ diag(w) @ Q^*``.
    """
    m = as_matrix(m)
    _check_hermitian(m)
    if vectors:
        w, q = np.linalg.eigh(m)
        return w, q
    return np.linalg.eigvalsh(m)


def det_bruteforce(m):
    """Leibniz-formula determinant, kept as an oracle for :func:`det`."""
    m = as_matrix(m)
    _require_square(m)
    n = m.shape[0]
    if n > BRUTEFORCE_MAX_DIM:
        raise DimensionError(
            f"det_bruteforce refuses dimension {n} > {BRUTEFORCE_MAX_DIM}")
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = _permutation_sign(perm)
        term = 1
        for row, col in enumerate(perm):
            term = term * m[row, col]
        total += sign * term
    if np.iscomplexobj(m):
        return complex(total)
    return float(total)


def _permutation_sign(perm) -> int:
    # parity from the number of inversions
    inversions = sum(1 for i, j in itertools.combinations(range(len(perm)), 2)
                     if perm[i] > perm[j])
    return -1 if inversions % 2 else 1
