"""Beam-splitter unitaries on the (polarization (x) spatial-mode) basis.

Basis order (a_H, b_H, a_V, b_V): polarization is the most significant
factor, the two input ports the least.  Reflection carries a pi/2 phase,
so each polarization block is [[t, i*r], [i*r, t]] with r = sqrt(1 - t^2).
"""
from __future__ import annotations

import math

import numpy as np

from .matcore import as_matrix


def _block(t: float) -> np.ndarray:
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"transmission must lie in [0, 1], got {t}")
    r = math.sqrt(1.0 - t * t)
    return np.array([[t, 1j * r], [1j * r, t]], dtype=np.complex128)


def pdbs(t_h: float, t_v: float) -> np.ndarray:
    """Polarization-dependent beam splitter with per-polarization
    transmissions; a genuine 2-qubit gate whenever t_h != t_v."""
    m = np.zeros((4, 4), dtype=np.complex128)
    m[:2, :2] = _block(t_h)
    m[2:, 2:] = _block(t_v)
    return as_matrix(m, dim=4)


def pidbs(t: float) -> np.ndarray:
    """Polarization-independent beam splitter: identity on polarization
    tensored with one 2-mode splitter, hence always separable."""
    return pdbs(t, t)
