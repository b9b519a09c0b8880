"""Small dense complex matrices and the shared tolerance policy.

Conventions used throughout the package:

  * gates are numpy ``complex128`` arrays, row-major, returned read-only;
  * single-qubit gates are 2x2, two-qubit gates 4x4, with the first tensor
    factor as the most significant qubit (the block layout of ``kron``);
  * every floating-point verdict routes through an explicit `Tolerance`
    value -- there is no hidden global epsilon.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Tolerance:
    """Comparison thresholds threaded through every verdict.

    eps_unitary    gate acceptance: max-norm of U†U - I and UU† - I
    eps_match      entrywise equality in tests and verdicts
    eps_roundtrip  parametrize -> rebuild agreement

    The three knobs are independent; no ordering between them is assumed.
    """

    eps_unitary: float = 1e-9
    eps_match: float = 1e-9
    eps_roundtrip: float = 1e-12

    def __post_init__(self):
        if min(self.eps_unitary, self.eps_match, self.eps_roundtrip) <= 0.0:
            raise ValueError("tolerances must be strictly positive")


DEFAULT_TOL = Tolerance()


class NotUnitaryError(ValueError):
    """Matrix fails the unitarity residual check for the given tolerance."""


def as_matrix(entries, dim: int | None = None) -> np.ndarray:
    """Copy `entries` into a read-only complex128 square matrix.

    Rejects non-finite values and, when `dim` is given, any other shape.
    """
    m = np.array(entries, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if dim is not None and m.shape[0] != dim:
        raise ValueError(f"expected a {dim}x{dim} matrix, got {m.shape[0]}x{m.shape[0]}")
    if not np.all(np.isfinite(m.view(np.float64))):
        raise ValueError("matrix entries must be finite")
    m.flags.writeable = False
    return m


def _frozen(m: np.ndarray) -> np.ndarray:
    m.flags.writeable = False
    return m


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product, shapes must agree."""
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return _frozen(a @ b)


def adjoint(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return _frozen(a.conj().T.copy())


def tensor2x2(u1: np.ndarray, u2: np.ndarray) -> np.ndarray:
    """Kronecker product of two 2x2 matrices; first factor is the most
    significant qubit."""
    if u1.shape != (2, 2) or u2.shape != (2, 2):
        raise ValueError("tensor2x2 expects two 2x2 matrices")
    return _frozen(np.kron(u1, u2))


def unitarity_residual(a: np.ndarray) -> float:
    """Max-norm distance of A†A and AA† from the identity."""
    eye = np.eye(a.shape[0])
    left = np.abs(a.conj().T @ a - eye).max()
    right = np.abs(a @ a.conj().T - eye).max()
    return float(max(left, right))


def require_gate(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> float:
    """Return the unitarity residual, raising NotUnitaryError above tolerance."""
    r = unitarity_residual(a)
    if r > tol.eps_unitary:
        raise NotUnitaryError(
            f"unitarity residual {r:.3e} exceeds eps_unitary={tol.eps_unitary:.3e}"
        )
    return r


def orthonormalize_columns(m: np.ndarray) -> np.ndarray:
    """Project a 2x2 matrix onto the nearest orthonormal column pair
    (Gram-Schmidt).  Degenerate columns are replaced by a canonical
    completion so the result is always exactly unitary."""
    c0 = np.array(m[:, 0], dtype=np.complex128)
    n0 = float(np.linalg.norm(c0))
    if n0 < 1e-12:
        c0 = np.array([1.0, 0.0], dtype=np.complex128)
        n0 = 1.0
    q0 = c0 / n0
    c1 = np.array(m[:, 1], dtype=np.complex128)
    c1 = c1 - np.vdot(q0, c1) * q0
    n1 = float(np.linalg.norm(c1))
    if n1 < 1e-12:
        q1 = np.array([-np.conj(q0[1]), np.conj(q0[0])], dtype=np.complex128)
    else:
        q1 = c1 / n1
    return _frozen(np.column_stack([q0, q1]))
