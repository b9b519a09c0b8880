"""Reconstruct the two 1-qubit factors of a separable 2-qubit gate.

The 2x2 determinants of the row and column blocks of a Kronecker product
equal the squared entries of the factors, so principal square roots recover
the factors up to one sign per root.  A bounded search over the sign
patterns (at most 8 distinct products) picks the assignment that reproduces
the input, and the accepted factors are re-projected to exact unitaries.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .matcore import DEFAULT_TOL, Tolerance, _frozen, orthonormalize_columns
from .separability import PhaseNormalized4


class ReconstructionFailedError(ValueError):
    """No sign pattern reproduces the input within tolerance."""


@dataclass(frozen=True)
class BlockDeterminants:
    """The eight 2x2 block determinants of a 4x4 matrix (entry letters as
    in the `separability` module docstring)."""

    u1sq: complex        # af - be
    u2sq: complex        # ch - gd
    u1sq_conj: complex   # kp - lo
    u2sq_conj: complex   # in - jm
    v1sq: complex        # ak - ci
    v2sq: complex        # bl - jd
    v1sq_conj: complex   # fp - hn
    v2sq_conj: complex   # eo - gm


@dataclass(frozen=True)
class FactorPair:
    """Reconstructed factors: the input equals exp(i*phase) * u1 (x) u2 up to
    `residual`, with `phase_split` the rotation moved from u2 into u1 to make
    u1's leading nonzero entry real nonnegative."""

    u1: np.ndarray
    u2: np.ndarray
    phase_split: float
    residual: float


def block_determinants(N: PhaseNormalized4) -> BlockDeterminants:
    """Compute the eight block determinants of the normalized matrix."""
    a, b, c, d = (complex(N.entries[0, j]) for j in range(4))
    e, f, g, h = (complex(N.entries[1, j]) for j in range(4))
    i, j, k, l = (complex(N.entries[2, j]) for j in range(4))
    m, n, o, p = (complex(N.entries[3, j]) for j in range(4))
    return BlockDeterminants(
        u1sq=a * f - b * e,
        u2sq=c * h - g * d,
        u1sq_conj=k * p - l * o,
        u2sq_conj=i * n - j * m,
        v1sq=a * k - c * i,
        v2sq=b * l - j * d,
        v1sq_conj=f * p - h * n,
        v2sq_conj=e * o - g * m,
    )


def _root(det: complex, cutoff: float) -> complex:
    """Principal square root, snapped to 0 when the determinant is too small
    for its root to matter at the reconstruction tolerance."""
    if abs(det) < cutoff * cutoff:
        return 0.0 + 0.0j
    return complex(np.sqrt(det))


def _factor_matrix(w1: complex, w2: complex) -> np.ndarray:
    return np.array([[w1, w2], [-w2.conjugate(), w1.conjugate()]], dtype=np.complex128)


def reconstruct(N: PhaseNormalized4, tol: Tolerance = DEFAULT_TOL) -> FactorPair:
    """Rebuild the factor pair from a normalized matrix whose pairing tests
    all passed.

    Square roots fix each factor entry only up to sign; the search tries the
    (at most 8) distinct sign assignments and accepts the first whose tensor
    product matches the input within tol.eps_match.  Zero-snapped roots are
    excluded from the search.
    """
    det = block_determinants(N)
    cutoff = 0.25 * tol.eps_match
    w1 = _root(det.u1sq, cutoff)
    w2 = _root(det.u2sq, cutoff)
    x1 = _root(det.v1sq, cutoff)
    x2 = _root(det.v2sq, cutoff)

    # Flipping every live sign negates both factors and keeps the product,
    # so pinning the first live sign enumerates each product exactly once
    # (at most 8 patterns).
    flips: list[tuple[float, ...]] = []
    pinned = False
    for r in (w1, w2, x1, x2):
        if abs(r) == 0.0 or not pinned:
            flips.append((1.0,))
            pinned = pinned or abs(r) > 0.0
        else:
            flips.append((1.0, -1.0))

    best: tuple[float, np.ndarray, np.ndarray] | None = None
    for s1, s2, t1, t2 in itertools.product(*flips):
        u1 = orthonormalize_columns(_factor_matrix(s1 * w1, s2 * w2))
        u2 = orthonormalize_columns(_factor_matrix(t1 * x1, t2 * x2))
        residual = float(np.abs(N.entries - np.kron(u1, u2)).max())
        if residual <= tol.eps_match:
            best = (residual, u1, u2)
            break
        if best is None or residual < best[0]:
            best = (residual, u1, u2)
    residual, u1, u2 = best
    if residual > tol.eps_match:
        raise ReconstructionFailedError(
            f"no sign pattern reaches residual {tol.eps_match:.3e} "
            f"(best {residual:.3e})"
        )

    # canonical gauge: rotate the pair so u1's leading nonzero entry is
    # real nonnegative (a unitary row always holds an entry >= 1/sqrt(2))
    lead = next(z for z in u1.flat if abs(z) >= 0.25)
    alpha = -float(np.angle(lead))
    u1 = _frozen(np.exp(1j * alpha) * u1)
    u2 = _frozen(np.exp(-1j * alpha) * u2)
    return FactorPair(u1=u1, u2=u2, phase_split=alpha, residual=residual)


def phase_family(fp: FactorPair, alpha: float) -> FactorPair:
    """Slide phase between the factors: (e^{ia} u1, e^{-ia} u2) has the same
    tensor product."""
    return FactorPair(
        u1=_frozen(np.exp(1j * alpha) * fp.u1),
        u2=_frozen(np.exp(-1j * alpha) * fp.u2),
        phase_split=fp.phase_split + alpha,
        residual=fp.residual,
    )
