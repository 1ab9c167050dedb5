from math import comb

import numpy as np
import pytest

from sl2rigidity.groups import PeripheralSystem, Representation, parse_word
from sl2rigidity.linalg import ContractError, InputError
from sl2rigidity.representations import (
    X_BASIS,
    Y_BASIS,
    SignCharacter,
    adjoint_lie,
    adjoint_matrix,
    enumerate_lifts,
    invariant_pairing,
    is_positive_lift,
    killing_gram,
    peripheral_traces,
    principal_decomposition,
    sl2_inverse,
    sl_basis,
    sl_coordinates,
    su2_inner_product,
    sym_power_lie,
    sym_power_matrix,
    twist,
)


def expm_traceless(a: np.ndarray) -> np.ndarray:
    """exp of a traceless 2x2 matrix: cosh(s) I + sinh(s)/s A with s^2 = -det A."""
    s = np.sqrt(-np.linalg.det(a) + 0j)
    if abs(s) < 1e-12:
        return np.eye(2) + a
    return np.cosh(s) * np.eye(2) + np.sinh(s) / s * a


def test_sym_power_frozen_degree_two():
    a, b, c, d = 2.0, 3.0, 1.0, 2.0
    g = np.array([[a, b], [c, d]])
    expected = np.array([
        [a * a, a * b, b * b],
        [2 * a * c, a * d + b * c, 2 * b * d],
        [c * c, c * d, d * d],
    ])
    assert np.allclose(sym_power_matrix(3, g), expected)


def test_sym_power_small_cases():
    g = np.array([[1.0, 2.0], [3.0, 7.0]])
    assert np.allclose(sym_power_matrix(1, g), [[1.0]])
    assert np.allclose(sym_power_matrix(2, g), g)


def test_sym_power_warns_on_det_not_one():
    with pytest.warns(UserWarning):
        sym_power_matrix(3, np.diag([2.0, 1.0]))
    with pytest.raises(InputError):
        sym_power_matrix(3, np.zeros((2, 2)))


def test_sym_power_lie_matches_finite_difference(rng):
    for n in (2, 3, 5, 7):
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        a -= np.trace(a) / 2 * np.eye(2)
        t = 1e-6
        fd = (sym_power_matrix(n, expm_traceless(t * a)) - sym_power_matrix(n, expm_traceless(-t * a))) / (2 * t)
        assert np.allclose(fd, sym_power_lie(n, a), atol=1e-6)


def test_sym_power_lie_needs_traceless():
    with pytest.raises(InputError):
        sym_power_lie(3, np.eye(2))


def test_sl2_inverse_exact():
    g = np.array([[2.0, 3.0], [1.0, 2.0]])
    assert np.allclose(sl2_inverse(g) @ g, np.eye(2))


def test_sl_coordinates_round_trip(rng):
    n = 4
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    x -= np.trace(x) / n * np.eye(n)
    c = sl_coordinates(x)
    assert c.shape == (n * n - 1,)
    assert np.allclose(sum(ci * b for ci, b in zip(c, sl_basis(n))), x)


def test_adjoint_matrix_identity_and_exact_inverse(rng):
    n = 3
    assert np.allclose(adjoint_matrix(n, np.eye(n)), np.eye(n * n - 1))
    g = sym_power_matrix(n, expm_traceless(np.array([[0.3, 1.0], [0.2, -0.3]])))
    gi = sym_power_matrix(n, sl2_inverse(expm_traceless(np.array([[0.3, 1.0], [0.2, -0.3]]))))
    assert np.allclose(adjoint_matrix(n, g, gi), adjoint_matrix(n, g))
    with pytest.raises(InputError):
        adjoint_matrix(3, np.eye(2))


def test_adjoint_lie_is_derivative_of_adjoint():
    x = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 2.0], [1.0, 0.0, 0.0]], dtype=complex)
    t = 1e-6
    e_plus = np.eye(3) + t * x + (t * x) @ (t * x) / 2
    e_minus = np.eye(3) - t * x + (t * x) @ (t * x) / 2
    fd = (adjoint_matrix(3, e_plus) - adjoint_matrix(3, e_minus)) / (2 * t)
    assert np.allclose(fd, adjoint_lie(3, x), atol=1e-6)


def test_trace_form_invariant_under_adjoint():
    n = 3
    g = sym_power_matrix(n, expm_traceless(np.array([[0.2, 0.7], [-0.4, -0.2]])))
    ad = adjoint_matrix(n, g)
    k = killing_gram(n)
    assert np.allclose(ad.T @ k @ ad, k)


def test_invariant_pairing_frozen():
    gram = invariant_pairing(3).gram
    assert np.allclose(gram, [[0, 0, 1], [0, -0.5, 0], [1, 0, 0]])
    assert np.allclose(invariant_pairing(1).gram, [[1]])


def test_invariant_pairing_symmetry_parity():
    for n in range(1, 9):
        g = invariant_pairing(n).gram
        assert np.allclose(g.T, (-1) ** (n - 1) * g)


def test_su2_weights_are_inverse_binomials():
    for n in range(1, 9):
        w = np.diag(su2_inner_product(n).gram).real
        assert np.allclose(w, [1 / comb(n - 1, i) for i in range(n)])


def test_su2_product_is_invariant():
    for n in (2, 4, 6):
        g = su2_inner_product(n).gram
        for x in X_BASIS:
            a = sym_power_lie(n, x)
            assert np.allclose(g @ a + a.conj().T @ g, 0, atol=1e-12)


def test_m_basis_is_hermitian():
    for y in Y_BASIS:
        assert np.allclose(y, y.conj().T)


def test_principal_decomposition_frozen():
    assert principal_decomposition(2) == [3]
    assert principal_decomposition(3) == [5, 3]
    assert principal_decomposition(4) == [7, 5, 3]


def test_lifts_of_fig8(fig8):
    lifts = enumerate_lifts(fig8.presentation, fig8.holonomy)
    assert [str(c) for c, _ in lifts] == ["00", "11"]
    assert lifts[0][1] is fig8.holonomy
    p = fig8.presentation.peripherals[0]
    for _, lift in lifts:
        assert not is_positive_lift(lift, p)
        assert abs(peripheral_traces(lift, p)[1] + 2) < 1e-10


def test_lift_counts_of_corpus(torus, free2, genus2):
    assert len(enumerate_lifts(torus.presentation, torus.holonomy)) == 4
    assert len(enumerate_lifts(free2.presentation, free2.holonomy)) == 4
    assert len(enumerate_lifts(genus2.presentation, genus2.holonomy)) == 16


def test_torus_positivity_by_lift(torus):
    p = torus.presentation.peripherals[0]
    flags = [is_positive_lift(lift, p) for _, lift in enumerate_lifts(torus.presentation, torus.holonomy)]
    assert flags == [True, False, False, False]


def test_positivity_contracts(genus2):
    p = genus2.presentation.peripherals[0]
    with pytest.raises(ContractError):
        is_positive_lift(genus2.holonomy, p)
    torus_p = PeripheralSystem("torus", (parse_word("a"), parse_word("b")), (False, False))
    loxodromic = Representation((np.diag([2.0, 0.5]), np.eye(2)))
    with pytest.raises(ContractError):
        is_positive_lift(loxodromic, torus_p)


def test_twist_and_sign_character():
    eps = SignCharacter((1, 0))
    assert list(eps.signs) == [-1, 1] and not eps.is_trivial
    rep = Representation((np.eye(2), np.eye(2)))
    assert np.allclose(twist(rep, eps).images[0], -np.eye(2))
    with pytest.raises(InputError):
        twist(rep, SignCharacter((1,)))


def test_lifts_need_two_dimensional_base(fig8):
    from sl2rigidity.rigidity import sym_rep

    with pytest.raises(InputError):
        enumerate_lifts(fig8.presentation, sym_rep(fig8.holonomy, 3))
