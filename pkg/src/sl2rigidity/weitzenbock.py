"""Fiberwise operators T, T* and H on V (x) Lambda^p m*.

Conventions: m = i su(2) with basis Y_k = i X_k, forms of degree p are
indexed by strictly increasing multi-indices over {0, 1, 2}, and a vector in
``FormSpace(p)`` stores one V-block per multi-index.  Degree 2 lists its
multi-indices by the complementary single index (0 -> (1, 2), 1 -> (0, 2),
2 -> (0, 1)), which matches the identification of m* with its second
exterior power.  The inner product is the SU(2)-invariant product on V tensored
with the standard product on multi-indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Callable, Sequence

import numpy as np

from .linalg import DEFAULT_TOL, ContractError, InputError, ToleranceProfile, hermitian_spectrum
from .representations import X_BASIS, Y_BASIS, su2_inner_product, sym_power_lie

M_DIM = 3


def multi_indices(p: int) -> list[tuple[int, ...]]:
    if not 0 <= p <= M_DIM:
        raise InputError(f"form degree must be in 0..3, got {p}")
    idx = list(itertools.combinations(range(M_DIM), p))
    if p == 2:
        idx.sort(key=lambda I: next(k for k in range(M_DIM) if k not in I))
    return idx


def _signed_position(j: int, rest: Sequence[int]) -> tuple[int, tuple[int, ...]] | None:
    """Sort (j, *rest) into increasing order: (sign, sorted tuple), or None on repeats."""
    if j in rest:
        return None
    pos = sum(1 for r in rest if r < j)
    return (-1) ** pos, tuple(sorted((j, *rest)))


@dataclass(frozen=True, eq=False)
class LieAction:
    """A finite-dimensional sl(2,C)-module with an SU(2)-invariant Hermitian product.

    ``rho`` sends a traceless 2x2 matrix to its action on V; ``gram`` is the
    (positive diagonal) Gram matrix of the invariant product.
    """

    dim: int
    rho: Callable[[np.ndarray], np.ndarray]
    gram: np.ndarray
    label: str = ""

    @cached_property
    def y(self) -> tuple[np.ndarray, ...]:
        return tuple(self.rho(y) for y in Y_BASIS)

    @cached_property
    def y_bracket(self) -> dict[tuple[int, int], np.ndarray]:
        return {(a, b): self.rho(Y_BASIS[a] @ Y_BASIS[b] - Y_BASIS[b] @ Y_BASIS[a])
                for a in range(M_DIM) for b in range(M_DIM)}


def sym_action(n: int, tol: ToleranceProfile = DEFAULT_TOL) -> LieAction:
    return LieAction(n, lambda a: sym_power_lie(n, a), su2_inner_product(n, tol).gram, f"V_{n}")


def direct_sum(*actions: LieAction) -> LieAction:
    def rho(a):
        return _blocks([act.rho(a) for act in actions])

    return LieAction(
        sum(a.dim for a in actions), rho, _blocks([a.gram for a in actions]),
        " + ".join(a.label for a in actions),
    )


def _blocks(mats):
    n = sum(m.shape[0] for m in mats)
    out = np.zeros((n, n), dtype=complex)
    k = 0
    for m in mats:
        d = m.shape[0]
        out[k:k + d, k:k + d] = m
        k += d
    return out


def _action(v) -> LieAction:
    return v if isinstance(v, LieAction) else sym_action(v)


@dataclass(frozen=True)
class FormSpace:
    dim_v: int
    degree: int

    @property
    def indices(self) -> list[tuple[int, ...]]:
        return multi_indices(self.degree)

    @property
    def dimension(self) -> int:
        return self.dim_v * comb(M_DIM, self.degree)

    def block(self, index: tuple[int, ...]) -> slice:
        k = self.indices.index(index)
        return slice(k * self.dim_v, (k + 1) * self.dim_v)


def form_gram(v, p: int) -> np.ndarray:
    act = _action(v)
    return np.kron(np.eye(comb(M_DIM, p)), act.gram)


def build_T(v, p: int) -> np.ndarray:
    """(T a)_{i_1..i_{p+1}} = sum_k (-1)^(k+1) rho(Y_{i_k}) a_{i_1..^i_k..i_{p+1}}."""
    if not 0 <= p <= 2:
        raise ContractError(f"T is defined from degree 0..2, got {p}")
    act = _action(v)
    src, dst = FormSpace(act.dim, p), FormSpace(act.dim, p + 1)
    out = np.zeros((dst.dimension, src.dimension), dtype=complex)
    for J in dst.indices:
        for k, j in enumerate(J):
            rest = J[:k] + J[k + 1:]
            out[dst.block(J), src.block(rest)] += (-1) ** k * act.y[j]
    return out


def build_Tstar(v, p: int) -> np.ndarray:
    """(T* a)_{i_1..i_{p-1}} = sum_k rho(Y_k) a_{k, i_1..i_{p-1}}."""
    if not 1 <= p <= 3:
        raise ContractError(f"T* is defined from degree 1..3, got {p}")
    act = _action(v)
    src, dst = FormSpace(act.dim, p), FormSpace(act.dim, p - 1)
    out = np.zeros((dst.dimension, src.dimension), dtype=complex)
    for I in dst.indices:
        for k in range(M_DIM):
            placed = _signed_position(k, I)
            if placed is None:
                continue
            sign, J = placed
            out[dst.block(I), src.block(J)] += sign * act.y[k]
    return out


def build_H_matrix(v, p: int) -> np.ndarray:
    """H_p from its closed form, not from T and T*.

    (H a)_I = sum_j rho(Y_j)^2 a_I
              + sum_k sum_j (-1)^(k+1) rho([Y_{i_k}, Y_j]) a_{j, I minus i_k}
    """
    act = _action(v)
    space = FormSpace(act.dim, p)
    out = np.zeros((space.dimension, space.dimension), dtype=complex)
    casimir = sum(y @ y for y in act.y)
    for I in space.indices:
        out[space.block(I), space.block(I)] += casimir
        for k, ik in enumerate(I):
            rest = I[:k] + I[k + 1:]
            for j in range(M_DIM):
                placed = _signed_position(j, rest)
                if placed is None:
                    continue
                sign, J = placed
                out[space.block(I), space.block(J)] += (-1) ** k * sign * act.y_bracket[(ik, j)]
    return out


def matsushima_murakami(v, p: int) -> np.ndarray:
    """T T* + T* T assembled from the two first-order operators."""
    act = _action(v)
    dim = FormSpace(act.dim, p).dimension
    out = np.zeros((dim, dim), dtype=complex)
    if p >= 1:
        out += build_T(act, p - 1) @ build_Tstar(act, p)
    if p <= 2:
        out += build_Tstar(act, p + 1) @ build_T(act, p)
    return out


def adjointness_residual(v, p: int) -> float:
    """max |T^H G_(p+1) - G_p T*| for T: degree p -> p+1."""
    act = _action(v)
    t = build_T(act, p)
    ts = build_Tstar(act, p + 1)
    return float(np.max(np.abs(t.conj().T @ form_gram(act, p + 1) - form_gram(act, p) @ ts)))


def orthonormalize(v, p: int, op: np.ndarray) -> np.ndarray:
    """Matrix of op in an orthonormal basis of FormSpace(p)."""
    s = np.sqrt(np.diag(form_gram(v, p)).real)
    return (s[:, None] * op) / s[None, :]


@dataclass
class WeitzenboeckOperator:
    matrix: np.ndarray  # orthonormal-basis matrix
    spectrum: np.ndarray
    degree: int
    n: int
    label: str = ""

    @property
    def min_eigenvalue(self) -> float:
        return float(self.spectrum[0])


def build_H(v, p: int, tol: ToleranceProfile = DEFAULT_TOL) -> WeitzenboeckOperator:
    act = _action(v)
    h = orthonormalize(act, p, build_H_matrix(act, p))
    return WeitzenboeckOperator(h, hermitian_spectrum(h, tol), p, act.dim, act.label)


def positivity_certificate(v, p: int, tol: ToleranceProfile = DEFAULT_TOL) -> tuple[float, bool]:
    op = build_H(v, p, tol)
    return op.min_eigenvalue, op.min_eigenvalue > tol.eig_abs_tol


def basis_bracket_defect() -> float:
    """max |[X_i, X_(i+1)] - 2 X_(i+2)| over i mod 3."""
    return max(
        float(np.max(np.abs(X_BASIS[i] @ X_BASIS[(i + 1) % 3] - X_BASIS[(i + 1) % 3] @ X_BASIS[i]
                            - 2 * X_BASIS[(i + 2) % 3])))
        for i in range(3)
    )
