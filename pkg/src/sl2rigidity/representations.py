"""Symmetric powers, adjoint representations, invariant forms and lifts.

Frozen conventions used by every matrix this package emits:

* ``V_n`` has the monomial basis e1^(n-1), e1^(n-2) e2, ..., e2^(n-1).
* ``sl(n)`` has the basis of off-diagonal elementary matrices E_ij in
  lexicographic order of (i, j), followed by H_i = E_ii - E_(i+1)(i+1).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import comb

import numpy as np

from .groups import GroupPresentation, PeripheralSystem, Representation, evaluate_word, require_valid
from .linalg import (
    DEFAULT_TOL,
    ContractError,
    InputError,
    ToleranceProfile,
    as_complex_matrix,
    gf2_affine_solutions,
    kernel_basis,
)

PARABOLIC_TOL = 1e-6
PARABOLIC_HARD_TOL = 1e-4


def _check_dim(n: int, least: int = 1) -> None:
    if int(n) != n or n < least:
        raise InputError(f"dimension must be an integer >= {least}, got {n!r}")


def _as_2x2(g) -> np.ndarray:
    g = as_complex_matrix(g)
    if g.shape != (2, 2):
        raise InputError(f"expected a 2x2 matrix, got {g.shape}")
    return g


def sl2_inverse(g) -> np.ndarray:
    """Inverse of a determinant-one 2x2 matrix via its adjugate (exact, no division)."""
    g = _as_2x2(g)
    return np.array([[g[1, 1], -g[0, 1]], [-g[1, 0], g[0, 0]]], dtype=complex)


def sym_power_matrix(n: int, g) -> np.ndarray:
    """Action of g on degree n-1 binary forms in the monomial basis."""
    _check_dim(n)
    g = _as_2x2(g)
    det = np.linalg.det(g)
    if abs(det - 1) > 1e-8:
        if abs(det) < 1e-14:
            raise InputError("sym_power_matrix needs an invertible matrix")
        warnings.warn(f"sym_power_matrix: det(g) = {det:.6g} is not 1", stacklevel=2)
    m = n - 1
    # Images of e1 and e2 as coefficient vectors in (e1, e2), highest e1 power first.
    ge1 = np.array([g[0, 0], g[1, 0]])
    ge2 = np.array([g[0, 1], g[1, 1]])
    powers1 = [np.ones(1, dtype=complex)]
    powers2 = [np.ones(1, dtype=complex)]
    for _ in range(m):
        powers1.append(np.convolve(powers1[-1], ge1))
        powers2.append(np.convolve(powers2[-1], ge2))
    out = np.empty((n, n), dtype=complex)
    for j in range(n):
        out[:, j] = np.convolve(powers1[m - j], powers2[j])
    return out


def sym_power_lie(n: int, a) -> np.ndarray:
    """Derivation action of a traceless 2x2 matrix on the monomial basis."""
    _check_dim(n)
    a = _as_2x2(a)
    if abs(np.trace(a)) > 1e-10:
        raise InputError(f"sym_power_lie needs a traceless matrix, trace = {np.trace(a):.3e}")
    m = n - 1
    out = np.zeros((n, n), dtype=complex)
    for j in range(n):
        p, q = m - j, j  # monomial e1^p e2^q
        if p:
            # p e1^(p-1) e2^q (a00 e1 + a10 e2)
            out[j, j] += p * a[0, 0]
            out[j + 1, j] += p * a[1, 0]
        if q:
            # q e1^p e2^(q-1) (a01 e1 + a11 e2)
            out[j - 1, j] += q * a[0, 1]
            out[j, j] += q * a[1, 1]
    return out


# ---------------------------------------------------------------- sl(n)

def sl_basis(n: int) -> list[np.ndarray]:
    _check_dim(n, 2)
    basis = []
    for i in range(n):
        for j in range(n):
            if i != j:
                e = np.zeros((n, n), dtype=complex)
                e[i, j] = 1
                basis.append(e)
    for i in range(n - 1):
        h = np.zeros((n, n), dtype=complex)
        h[i, i], h[i + 1, i + 1] = 1, -1
        basis.append(h)
    return basis


def sl_coordinates(x: np.ndarray) -> np.ndarray:
    """Coordinates of a traceless n x n matrix in the sl(n) basis."""
    n = x.shape[0]
    off = [x[i, j] for i in range(n) for j in range(n) if i != j]
    diag = np.cumsum(np.diag(x))[:-1]
    return np.concatenate([np.array(off, dtype=complex), diag])


def adjoint_matrix(n: int, g, inverse=None) -> np.ndarray:
    """Matrix of X -> g X g^-1 on sl(n).

    Pass ``inverse`` when g^-1 is known exactly (for instance Sym^(n-1) of an
    inverse 2x2 matrix); inverting a large ill-conditioned g numerically
    loses most of its digits.
    """
    g = as_complex_matrix(g)
    if g.shape != (n, n):
        raise InputError(f"expected an {n}x{n} matrix, got {g.shape}")
    _check_dim(n, 2)
    if inverse is not None:
        gi = as_complex_matrix(inverse)
        if gi.shape != (n, n):
            raise InputError(f"inverse must be {n}x{n}, got {gi.shape}")
    else:
        try:
            gi = np.linalg.inv(g)
        except np.linalg.LinAlgError:
            raise InputError("adjoint_matrix needs an invertible matrix") from None
    return np.column_stack([sl_coordinates(g @ b @ gi) for b in sl_basis(n)])


def adjoint_lie(n: int, x) -> np.ndarray:
    """Matrix of Y -> [x, Y] on sl(n)."""
    x = as_complex_matrix(x)
    return np.column_stack([sl_coordinates(x @ b - b @ x) for b in sl_basis(n)])


def killing_gram(n: int) -> np.ndarray:
    """Gram matrix of the trace form tr(XY), proportional to the Killing form."""
    basis = sl_basis(n)
    return np.array([[np.trace(a @ b) for b in basis] for a in basis])


# ---------------------------------------------------------------- forms

@dataclass(frozen=True, eq=False)
class BilinearForm:
    gram: np.ndarray
    kind: str  # "bilinear" or "hermitian"

    def __call__(self, u, v) -> complex:
        u = np.asarray(u, dtype=complex)
        v = np.asarray(v, dtype=complex)
        if self.kind == "hermitian":
            return complex(u.conj() @ self.gram @ v)
        return complex(u @ self.gram @ v)


def invariant_pairing(n: int) -> BilinearForm:
    """SL(2)-invariant pairing on V_n induced from det on C^2.

    Normalized so that the pairing of e1^(n-1) with e2^(n-1) is 1.
    """
    _check_dim(n)
    m = n - 1
    gram = np.zeros((n, n), dtype=complex)
    for i in range(n):
        gram[i, m - i] = (-1) ** i / comb(m, i)
    return BilinearForm(gram, "bilinear")


# Basis of su(2); Y_k = i X_k spans its Killing-orthogonal complement.
X_BASIS = (
    np.array([[1j, 0], [0, -1j]]),
    np.array([[0, 1], [-1, 0]], dtype=complex),
    np.array([[0, 1j], [1j, 0]]),
)
Y_BASIS = tuple(1j * x for x in X_BASIS)


def su2_inner_product(n: int, tol: ToleranceProfile = DEFAULT_TOL) -> BilinearForm:
    """Diagonal SU(2)-invariant Hermitian product on V_n.

    The weights are the unique (up to scale) positive diagonal solution of
    G X + X^H G = 0 for the three su(2) generators, normalized so the first
    monomial has norm 1.
    """
    _check_dim(n)
    rows = []
    for x in X_BASIS:
        a = sym_power_lie(n, x)
        for i in range(n):
            for j in range(n):
                # w_i a_ij + w_j conj(a_ji) = 0, split into real and imaginary parts.
                coeff = np.zeros(n, dtype=complex)
                coeff[i] += a[i, j]
                coeff[j] += np.conj(a[j, i])
                if np.any(coeff):
                    rows.append(coeff.real)
                    rows.append(coeff.imag)
    system = np.array(rows) if rows else np.zeros((1, n))
    ker = kernel_basis(system, tol)
    if ker.shape[1] != 1:
        raise ContractError(f"expected a one-dimensional weight space, found {ker.shape[1]}")
    w = ker[:, 0].real
    w = w / w[0]
    if np.any(w <= 0):
        raise ContractError("invariant Hermitian weights are not positive")
    return BilinearForm(np.diag(w).astype(complex), "hermitian")


# ---------------------------------------------------------------- lifts

@dataclass(frozen=True)
class SignCharacter:
    values: tuple[int, ...]

    @property
    def signs(self) -> np.ndarray:
        return 1 - 2 * np.array(self.values)

    @property
    def is_trivial(self) -> bool:
        return not any(self.values)

    def __str__(self):
        return "".join(str(v) for v in self.values)


def twist(rep: Representation, eps: SignCharacter, source: str | None = None) -> Representation:
    if len(eps.values) != rep.generator_count:
        raise InputError("sign character length does not match generator count")
    images = tuple(s * m for s, m in zip(eps.signs, rep.images))
    return Representation(images, source or f"{rep.source} twisted by {eps}")


def enumerate_lifts(
    pres: GroupPresentation, base: Representation, tol: ToleranceProfile = DEFAULT_TOL
) -> list[tuple[SignCharacter, Representation]]:
    """Every sign twist of base that is still a representation, trivial twist first."""
    if base.dimension != 2:
        raise InputError("lifts are enumerated for 2-dimensional representations")
    require_valid(pres, base, tol)
    a = pres.relator_exponents_mod2()
    sols = gf2_affine_solutions(a, np.zeros(a.shape[0], dtype=np.uint8))
    chars = sorted((SignCharacter(tuple(int(x) for x in s)) for s in sols), key=lambda c: c.values)
    out = []
    for j, eps in enumerate(chars):
        rep = base if eps.is_trivial else twist(base, eps, f"{base.source or 'holonomy'} lift #{j} ({eps})")
        require_valid(pres, rep, tol)
        out.append((eps, rep))
    return out


def peripheral_traces(rep: Representation, peripheral: PeripheralSystem) -> list[complex]:
    return [complex(np.trace(evaluate_word(rep, w))) for w in peripheral.words]


def is_positive_lift(rep: Representation, peripheral: PeripheralSystem) -> bool:
    """True iff every peripheral generator has trace +2."""
    if peripheral.kind != "torus":
        raise ContractError("positivity is defined for torus peripherals")
    if rep.dimension != 2:
        raise ContractError("positivity is defined for SL(2,C) lifts")
    positive = True
    for w, t in zip(peripheral.words, peripheral_traces(rep, peripheral)):
        if abs(t - 2) <= PARABOLIC_TOL:
            continue
        if abs(t + 2) <= PARABOLIC_TOL:
            positive = False
            continue
        if min(abs(t - 2), abs(t + 2)) > PARABOLIC_HARD_TOL:
            raise ContractError(f"peripheral word {w} is not parabolic: trace {t:.6g}")
        raise ContractError(f"peripheral word {w} has trace {t:.9g}, ambiguous parabolic sign")
    return positive


# ---------------------------------------------------------------- sl(n) as an sl(2)-module

def principal_decomposition(n: int, tol: ToleranceProfile = DEFAULT_TOL) -> list[int]:
    """Dimensions of the irreducible summands of sl(n) under the principal sl(2).

    Highest-weight vectors are found as the kernel of the raising operator on
    each weight space of ad(h); a highest weight w contributes a summand of
    dimension w + 1.
    """
    _check_dim(n, 2)
    h = sym_power_lie(n, np.diag([1.0, -1.0]))
    e = sym_power_lie(n, np.array([[0.0, 1.0], [0.0, 0.0]]))
    ad_h = adjoint_lie(n, h)
    ad_e = adjoint_lie(n, e)
    if np.max(np.abs(ad_h - np.diag(np.diag(ad_h)))) > 1e-12:
        raise ContractError("ad(h) is expected to be diagonal in the sl(n) basis")
    weights = np.rint(np.diag(ad_h).real).astype(int)
    dims = []
    for w in sorted(set(weights.tolist()), reverse=True):
        idx = np.nonzero(weights == w)[0]
        restricted = ad_e[:, idx]
        count = kernel_basis(restricted, tol).shape[1]
        dims += [w + 1] * count
    return sorted(dims, reverse=True)
