"""Dense complex linear algebra and GF(2) solving.

Every dimension this package reports is an integer recovered from a
thresholded singular value decomposition.  The threshold is relative to the
largest singular value, and each decision keeps the gap between the last
kept and the first dropped singular value so borderline cuts are visible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np


class InputError(ValueError):
    """Malformed input: non-finite entries, bad shapes, unparsable data."""


class ContractError(ValueError):
    """A precondition of an operation does not hold."""


@dataclass(frozen=True)
class ToleranceProfile:
    rank_rel_tol: float = 1e-8
    eig_abs_tol: float = 1e-10
    relator_tol: float = 1e-8

    def __post_init__(self):
        for name in ("rank_rel_tol", "eig_abs_tol", "relator_tol"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise InputError(f"{name} must be strictly positive, got {value!r}")


DEFAULT_TOL = ToleranceProfile()

# Rank cuts whose singular-value ratio falls below this are flagged.
GAP_WARNING = 1e3


@dataclass(frozen=True)
class RankDecision:
    """Outcome of one thresholded rank computation."""

    rank: int
    cols: int
    sigma_max: float
    last_kept: float | None
    first_dropped: float | None

    @property
    def gap(self) -> float:
        """Ratio last_kept / first_dropped; inf when one side of the cut is empty."""
        if self.last_kept is None or self.first_dropped is None:
            return float("inf")
        if self.first_dropped == 0.0:
            return float("inf")
        return self.last_kept / self.first_dropped

    @property
    def nullity(self) -> int:
        return self.cols - self.rank

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "cols": self.cols,
            "sigma_max": self.sigma_max,
            "last_kept": self.last_kept,
            "first_dropped": self.first_dropped,
            "gap": self.gap,
        }


def as_complex_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise InputError(f"expected a 2-d matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError("matrix has non-finite entries")
    return a


def _check_nonempty(a: np.ndarray) -> None:
    if a.size == 0 and a.shape[1] == 0:
        raise InputError("matrix has no columns")


def _svd(a: np.ndarray):
    if a.shape[0] == 0:
        # No equations: everything is kernel.
        return np.zeros(0), np.eye(a.shape[1], dtype=complex)
    _, s, vh = np.linalg.svd(a, full_matrices=True)
    return s, vh


def rank_decision(m, tol: ToleranceProfile = DEFAULT_TOL) -> RankDecision:
    a = as_complex_matrix(m)
    _check_nonempty(a)
    s, _ = _svd(a)
    return _decide(s, a.shape[1], tol)


def _decide(s: np.ndarray, cols: int, tol: ToleranceProfile) -> RankDecision:
    smax = float(s[0]) if s.size else 0.0
    if smax == 0.0:
        return RankDecision(0, cols, 0.0, None, None)
    r = int(np.sum(s > tol.rank_rel_tol * smax))
    last_kept = float(s[r - 1]) if r > 0 else None
    first_dropped = float(s[r]) if r < s.size else None
    return RankDecision(r, cols, smax, last_kept, first_dropped)


def numerical_rank(m, tol: ToleranceProfile = DEFAULT_TOL) -> int:
    return rank_decision(m, tol).rank


def kernel_with_decision(m, tol: ToleranceProfile = DEFAULT_TOL):
    """Orthonormal null-space basis (as columns) plus the rank decision behind it."""
    a = as_complex_matrix(m)
    _check_nonempty(a)
    s, vh = _svd(a)
    decision = _decide(s, a.shape[1], tol)
    basis = vh[decision.rank:].conj().T
    return np.ascontiguousarray(basis), decision


def kernel_basis(m, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    return kernel_with_decision(m, tol)[0]


def hermitian_spectrum(m, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    a = as_complex_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ContractError(f"hermitian_spectrum needs a square matrix, got {a.shape}")
    if a.size == 0:
        return np.zeros(0)
    asym = float(np.max(np.abs(a - a.conj().T)))
    if asym > tol.eig_abs_tol:
        raise ContractError(f"matrix is not Hermitian: max asymmetry {asym:.3e}")
    return np.linalg.eigvalsh((a + a.conj().T) / 2)


# ---------------------------------------------------------------- GF(2)

def as_gf2(m) -> np.ndarray:
    a = np.asarray(m)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
    if a.ndim != 2:
        raise InputError(f"expected a 2-d bit matrix, got shape {a.shape}")
    if not np.all((a == 0) | (a == 1)):
        raise InputError("GF(2) matrix entries must be 0 or 1")
    return a.astype(np.uint8)


def gf2_row_reduce(a: np.ndarray, b: np.ndarray | None = None):
    """Reduced row echelon form over GF(2).

    Returns (reduced matrix, reduced right-hand side, pivot columns).
    """
    a = a.copy()
    b = np.zeros(a.shape[0], dtype=np.uint8) if b is None else b.copy()
    pivots = []
    row = 0
    for col in range(a.shape[1]):
        if row == a.shape[0]:
            break
        hits = np.nonzero(a[row:, col])[0]
        if hits.size == 0:
            continue
        p = row + hits[0]
        if p != row:
            a[[row, p]] = a[[p, row]]
            b[[row, p]] = b[[p, row]]
        others = np.nonzero(a[:, col])[0]
        for r in others:
            if r != row:
                a[r] ^= a[row]
                b[r] ^= b[row]
        pivots.append(col)
        row += 1
    return a, b, pivots


def gf2_rank(m) -> int:
    a = as_gf2(m)
    return len(gf2_row_reduce(a)[2])


def gf2_affine_solutions(a, b) -> list[np.ndarray]:
    """All x with a·x = b over GF(2), as particular solution plus kernel span."""
    a = as_gf2(a)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    if b.size != a.shape[0]:
        raise InputError(f"rhs has length {b.size}, expected {a.shape[0]}")
    if not np.all((b == 0) | (b == 1)):
        raise InputError("rhs entries must be 0 or 1")
    b = b.astype(np.uint8)
    ncols = a.shape[1]
    red, rhs, pivots = gf2_row_reduce(a, b)
    rank = len(pivots)
    if np.any(rhs[rank:]):
        return []
    particular = np.zeros(ncols, dtype=np.uint8)
    for i, col in enumerate(pivots):
        particular[col] = rhs[i]
    free = [c for c in range(ncols) if c not in pivots]
    kernel = []
    for f in free:
        v = np.zeros(ncols, dtype=np.uint8)
        v[f] = 1
        for i, col in enumerate(pivots):
            v[col] = red[i, f]
        kernel.append(v)
    solutions = []
    for coeffs in itertools.product((0, 1), repeat=len(kernel)):
        x = particular.copy()
        for c, v in zip(coeffs, kernel):
            if c:
                x ^= v
        solutions.append(x)
    return solutions
