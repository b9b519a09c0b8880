"""Matrix primitives and the tolerance policy."""

import numpy as np
import pytest

from gatefactor.matcore import (
    NotUnitaryError,
    Tolerance,
    adjoint,
    as_matrix,
    mat_mul,
    orthonormalize_columns,
    require_gate,
    tensor2x2,
    unitarity_residual,
)

from conftest import H, X, random_single

I2 = np.eye(2, dtype=np.complex128)


def test_mat_mul_identity():
    assert np.array_equal(mat_mul(I2, I2), I2)


def test_mat_mul_pauli_x_involution():
    assert np.array_equal(mat_mul(X, X), I2)


def test_mat_mul_hadamard_involution():
    assert np.abs(mat_mul(H, H) - I2).max() <= 1e-15


def test_mat_mul_shape_mismatch():
    with pytest.raises(ValueError):
        mat_mul(I2, np.eye(4, dtype=np.complex128))


def test_adjoint_hermitian_pauli_y():
    y = np.array([[0, 1j], [-1j, 0]], dtype=np.complex128)
    assert np.array_equal(adjoint(y), y)


def test_adjoint_diagonal_phase():
    xi = 0.83
    m = np.diag([np.exp(1j * xi), 1.0]).astype(np.complex128)
    assert np.allclose(adjoint(m), np.diag([np.exp(-1j * xi), 1.0]), atol=0)


def test_adjoint_distributes_over_tensor(rng):
    for _ in range(25):
        u1, u2 = random_single(rng), random_single(rng)
        lhs = adjoint(tensor2x2(u1, u2))
        rhs = tensor2x2(adjoint(u1), adjoint(u2))
        assert np.abs(lhs - rhs).max() == 0.0


def test_adjoint_involution_exact(rng):
    for _ in range(10):
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        assert np.array_equal(adjoint(adjoint(a)), a)


def test_tensor_identity():
    assert np.array_equal(tensor2x2(I2, I2), np.eye(4))


def test_tensor_x_with_identity():
    expected = np.array(
        [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]],
        dtype=np.complex128,
    )
    assert np.array_equal(tensor2x2(X, I2), expected)


def test_tensor_block_layout():
    # entry (2,1) of the product must be -u1 * conj(v2)
    u1, u2 = 0.6 * np.exp(0.4j), 0.8 * np.exp(-1.1j)
    v1, v2 = 0.28 * np.exp(2.0j), 0.96 * np.exp(0.7j)
    a = np.array([[u1, u2], [-np.conj(u2), np.conj(u1)]])
    b = np.array([[v1, v2], [-np.conj(v2), np.conj(v1)]])
    t = tensor2x2(a, b)
    assert abs(t[1, 0] - (-u1 * np.conj(v2))) <= 1e-15


def test_tensor_of_unitaries_is_unitary(rng):
    for _ in range(25):
        t = tensor2x2(random_single(rng), random_single(rng))
        assert unitarity_residual(t) <= 2e-15


def test_unitarity_residual_identity():
    assert unitarity_residual(np.eye(4, dtype=np.complex128)) == 0.0


def test_unitarity_residual_scaled_diagonal():
    m = np.array([[1, 0], [0, 2]], dtype=np.complex128)
    assert unitarity_residual(m) == pytest.approx(3.0, abs=0)


def test_unitarity_residual_of_realized_gates(rng):
    for _ in range(25):
        u = random_single(rng)
        assert unitarity_residual(u) <= 1e-15
        # the product U†U is itself unitary to the same precision
        assert abs(unitarity_residual(mat_mul(adjoint(u), u)) - unitarity_residual(u)) <= 1e-15


def test_require_gate_rejects_non_unitary():
    with pytest.raises(NotUnitaryError):
        require_gate(np.array([[1, 0], [0, 2]], dtype=np.complex128))


def test_tolerance_rejects_nonpositive():
    with pytest.raises(ValueError):
        Tolerance(eps_match=0.0)


def test_as_matrix_rejects_nonfinite():
    with pytest.raises(ValueError):
        as_matrix([[np.nan, 0], [0, 1]])


def test_as_matrix_result_is_readonly():
    m = as_matrix([[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        m[0, 0] = 5


def test_orthonormalize_restores_unitarity(rng):
    for _ in range(25):
        u = random_single(rng) + 1e-8 * (
            rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        )
        q = orthonormalize_columns(u)
        assert unitarity_residual(q) <= 1e-15
        assert np.abs(q - u).max() <= 1e-7
