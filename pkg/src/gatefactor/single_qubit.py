"""Canonical parametrization and self-inverse classification of 1-qubit gates.

Every 2x2 unitary can be written as

    exp(i*phi0) * [[cos(theta)*exp(i*phi1),   sin(theta)*exp(i*phi2)],
                   [-sin(theta)*exp(-i*phi2), cos(theta)*exp(-i*phi1)]]

with theta in [0, pi/2] and the three phases in (-pi, pi].  Unitarity forces
exactly one entry of the polar form to carry a sign opposite to the other
three; the reference form above puts it on the lower-left entry.

Self-inverse gates (U = U† = U⁻¹) reduce to the zero-trace family

    sign * [[cos(theta),                  1j*sin(theta)*exp(i*phi2)],
            [-1j*sin(theta)*exp(-i*phi2), -cos(theta)]]

plus the two trivial cases +I and -I, which no zero-trace matrix can
represent and which are flagged separately.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .matcore import DEFAULT_TOL, Tolerance, _frozen, adjoint, require_gate


def wrap_angle(x: float) -> float:
    """Reduce an angle to the principal branch (-pi, pi]."""
    y = math.remainder(x, math.tau)
    return y if y > -math.pi else y + math.tau


def _phase(z: complex) -> float:
    """Argument of z in (-pi, pi]; 0 for an exact zero."""
    if z == 0:
        return 0.0
    y = math.atan2(z.imag, z.real)
    return y if y != -math.pi else math.pi


@dataclass(frozen=True)
class CanonicalSingleQubit:
    """Angle set (theta, phi0, phi1, phi2) of the reference form."""

    theta: float
    phi0: float
    phi1: float
    phi2: float


@dataclass(frozen=True)
class HermitianParams:
    """Parameters of a self-inverse gate.

    `identity` marks the two self-inverse gates +I and -I that fall outside
    the zero-trace family; for them only `sign` is meaningful and theta/phi2
    are fixed to 0 by convention.
    """

    theta: float
    phi2: float
    sign: int
    identity: bool = False


class UnknownGateNameError(ValueError):
    """Gate name not in the built-in table."""


def _polar_entries(p: CanonicalSingleQubit) -> np.ndarray:
    """The four polar-form entries before the mandatory sign is placed."""
    ct, st = math.cos(p.theta), math.sin(p.theta)
    m = np.array(
        [
            [ct * np.exp(1j * p.phi1), st * np.exp(1j * p.phi2)],
            [st * np.exp(-1j * p.phi2), ct * np.exp(-1j * p.phi1)],
        ],
        dtype=np.complex128,
    )
    m *= np.exp(1j * p.phi0)
    return m


def realize(p: CanonicalSingleQubit) -> np.ndarray:
    """Build the 2x2 unitary for a parameter set (sign on the lower-left)."""
    m = _polar_entries(p)
    m[1, 0] = -m[1, 0]
    return _frozen(m)


def canonicalize(U: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> CanonicalSingleQubit:
    """Extract canonical angles from a 2x2 unitary.

    Raises NotUnitaryError when the residual exceeds tol.eps_unitary.
    realize() of the result reproduces a numerically clean unitary to
    machine precision; for inputs that are only unitary within a larger
    residual the roundtrip degrades linearly with that residual.

    At theta near 0 or pi/2 some entry phases are unconstrained; they are
    fixed by convention (phi2 = 0 on a vanishing off-diagonal, phi1 = 0 on
    a vanishing diagonal) once the entry modulus is too small to matter at
    eps_roundtrip.
    """
    if U.shape != (2, 2):
        raise ValueError("canonicalize expects a 2x2 matrix")
    require_gate(U, tol)
    a, b = complex(U[0, 0]), complex(U[0, 1])
    c, d = complex(U[1, 0]), complex(U[1, 1])
    ca = 0.5 * (abs(a) + abs(d))
    sa = 0.5 * (abs(b) + abs(c))
    theta = math.atan2(sa, ca)
    deg = 0.25 * tol.eps_roundtrip
    if sa <= deg:
        # diagonal gate: off-diagonal phases carry no information
        beta_a, beta_d = _phase(a), _phase(d)
        phi0 = 0.5 * (beta_a + beta_d)
        phi1 = 0.5 * (beta_a - beta_d)
        phi2 = 0.0
    elif ca <= deg:
        # anti-diagonal gate: both off-diagonal phases pin phi0 jointly
        beta_b, beta_c = _phase(b), _phase(c)
        phi0 = wrap_angle(0.5 * (beta_b + beta_c + math.pi))
        phi1 = 0.0
        phi2 = wrap_angle(beta_b - phi0)
    else:
        beta_a, beta_d = _phase(a), _phase(d)
        phi0 = 0.5 * (beta_a + beta_d)
        phi1 = 0.5 * (beta_a - beta_d)
        if abs(b) >= abs(c):
            phi2 = wrap_angle(_phase(b) - phi0)
        else:
            phi2 = wrap_angle(phi0 + math.pi - _phase(c))
    return CanonicalSingleQubit(theta, phi0, phi1, phi2)


def equivalent_sign_forms(p: CanonicalSingleQubit) -> tuple[np.ndarray, ...]:
    """The four unitaries obtained by moving the mandatory negative sign
    across the four entries in turn (row-major order).

    The third form, sign on the lower-left entry, equals realize(p).
    """
    forms = []
    for r, c in ((0, 0), (0, 1), (1, 0), (1, 1)):
        m = _polar_entries(p)
        m[r, c] = -m[r, c]
        forms.append(_frozen(m))
    return tuple(forms)


def realize_hermitian(h: HermitianParams) -> np.ndarray:
    """Build the self-inverse gate for a parameter set."""
    if h.identity:
        return _frozen(h.sign * np.eye(2, dtype=np.complex128))
    ct, st = math.cos(h.theta), math.sin(h.theta)
    e2 = np.exp(1j * h.phi2)
    return _frozen(
        h.sign
        * np.array([[ct, 1j * st * e2], [-1j * st / e2, -ct]], dtype=np.complex128)
    )


def classify_hermitian(
    U: np.ndarray, tol: Tolerance = DEFAULT_TOL
) -> HermitianParams | None:
    """Classify a unitary as self-inverse, returning its parameters.

    Returns None when max|U - U†| exceeds tol.eps_match (the gate is not
    self-inverse).  Otherwise realize_hermitian() of the result matches U
    entrywise within tol.eps_match.
    """
    if U.shape != (2, 2):
        raise ValueError("classify_hermitian expects a 2x2 matrix")
    require_gate(U, tol)
    if float(np.abs(U - adjoint(U)).max()) > tol.eps_match:
        return None
    x = float(U[0, 0].real)
    y = float(U[1, 1].real)
    z = complex(U[0, 1])
    # A Hermitian unitary with both diagonal entries on the same side of
    # zero must be +I or -I (the off-diagonal vanishes with the trace).
    if min(x, y) > 0.5:
        return HermitianParams(0.0, 0.0, +1, identity=True)
    if max(x, y) < -0.5:
        return HermitianParams(0.0, 0.0, -1, identity=True)
    ca = 0.5 * (abs(x) + abs(y))
    sa = 0.5 * (abs(z) + abs(complex(U[1, 0])))
    theta = math.atan2(sa, ca)
    deg = 0.25 * tol.eps_match
    if ca <= deg:
        # sign and phi2 are jointly redundant at zero trace; break the tie
        # with the imaginary part of the upper-right entry
        sign = +1 if z.imag >= 0.0 else -1
    else:
        sign = +1 if x >= 0.0 else -1
    phi2 = 0.0 if sa <= deg else float(np.angle(-1j * sign * z))
    return HermitianParams(theta, phi2, sign)


_SQRT1_2 = 1.0 / math.sqrt(2.0)

_FIXED_GATES = {
    "I": np.array([[1, 0], [0, 1]], dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "iY": np.array([[0, 1j], [-1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
    "H": np.array([[_SQRT1_2, _SQRT1_2], [_SQRT1_2, -_SQRT1_2]], dtype=np.complex128),
}


def named_gate(name: str, xi: float | None = None) -> np.ndarray:
    """Look up a standard gate: I, X, iY, Z, H, or the phase gate P(xi)."""
    if name in _FIXED_GATES:
        return _frozen(_FIXED_GATES[name].copy())
    if name == "P":
        if xi is None or not math.isfinite(xi):
            raise UnknownGateNameError("phase gate P requires a finite angle xi")
        return _frozen(np.array([[1, 0], [0, np.exp(1j * xi)]], dtype=np.complex128))
    raise UnknownGateNameError(f"unknown gate name {name!r}")
