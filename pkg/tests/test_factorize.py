"""Block determinants, factor reconstruction, and the phase family."""

import math

import numpy as np
import pytest

from gatefactor.circuit import phase_aligned_distance
from gatefactor.factorize import (
    ReconstructionFailedError,
    block_determinants,
    phase_family,
    reconstruct,
)
from gatefactor.matcore import tensor2x2, unitarity_residual
from gatefactor.optics import pidbs
from gatefactor.separability import PhaseNormalized4, extract_global_phase

from conftest import random_single

I4 = np.eye(4, dtype=np.complex128)


def as_normalized(m: np.ndarray) -> PhaseNormalized4:
    return PhaseNormalized4(0.0, m.astype(np.complex128))


def su2(z1: complex, z2: complex) -> np.ndarray:
    return np.array([[z1, z2], [-np.conj(z2), np.conj(z1)]], dtype=np.complex128)


def test_determinants_of_identity():
    det = block_determinants(as_normalized(I4))
    assert det.u1sq == 1 and det.u2sq == 0
    assert det.v1sq == 1 and det.v2sq == 0


def test_determinants_equal_squared_factor_entries():
    u1, u2 = 0.6 * np.exp(0.3j), 0.8 * np.exp(-1.1j)
    v1, v2 = 0.28 * np.exp(2.0j), 0.96 * np.exp(0.7j)
    det = block_determinants(as_normalized(tensor2x2(su2(u1, u2), su2(v1, v2))))
    assert det.u1sq == pytest.approx(u1**2, abs=1e-14)
    assert det.u2sq == pytest.approx(u2**2, abs=1e-14)
    assert det.v1sq == pytest.approx(v1**2, abs=1e-14)
    assert det.v2sq == pytest.approx(v2**2, abs=1e-14)


def test_determinant_conjugacy_on_products():
    rng = np.random.default_rng(31)
    for _ in range(50):
        m = tensor2x2(random_single(rng), random_single(rng))
        det = block_determinants(extract_global_phase(m))
        assert abs(det.u1sq_conj - np.conj(det.u1sq)) <= 1e-12
        assert abs(det.u2sq_conj - np.conj(det.u2sq)) <= 1e-12
        assert abs(det.v1sq_conj - np.conj(det.v1sq)) <= 1e-12
        assert abs(det.v2sq_conj - np.conj(det.v2sq)) <= 1e-12
        # factor moduli square-sum to one
        assert abs(det.u1sq) + abs(det.u2sq) == pytest.approx(1.0, abs=1e-12)


def test_reconstruct_identity():
    fp = reconstruct(as_normalized(I4))
    assert np.abs(fp.u1 - np.eye(2)).max() == 0.0
    assert np.abs(fp.u2 - np.eye(2)).max() == 0.0
    assert fp.residual == 0.0


def test_reconstruct_pidbs_factors():
    t = 2**-0.5
    n = extract_global_phase(pidbs(t))
    fp = reconstruct(n)
    assert np.abs(fp.u1 - np.eye(2)).max() <= 1e-12
    expected = np.array([[t, 1j * t], [1j * t, t]])
    assert np.abs(fp.u2 - expected).max() <= 1e-12


def test_reconstruct_roundtrip_on_random_products():
    rng = np.random.default_rng(37)
    for _ in range(300):
        m = np.exp(1j * rng.uniform(-math.pi, math.pi)) * tensor2x2(
            random_single(rng), random_single(rng)
        )
        n = extract_global_phase(m)
        fp = reconstruct(n)
        assert fp.residual <= 1e-9
        rebuilt = np.exp(1j * n.global_phase) * tensor2x2(fp.u1, fp.u2)
        assert np.abs(rebuilt - m).max() <= 1e-9
        assert unitarity_residual(fp.u1) <= 1e-12
        assert unitarity_residual(fp.u2) <= 1e-12


def test_reconstruct_is_deterministic():
    rng = np.random.default_rng(41)
    n = extract_global_phase(tensor2x2(random_single(rng), random_single(rng)))
    a, b = reconstruct(n), reconstruct(n)
    assert np.array_equal(a.u1, b.u1) and np.array_equal(a.u2, b.u2)
    assert a.phase_split == b.phase_split


def test_reconstruct_gauge_leading_entry_nonnegative():
    rng = np.random.default_rng(43)
    for _ in range(50):
        n = extract_global_phase(tensor2x2(random_single(rng), random_single(rng)))
        fp = reconstruct(n)
        lead = next(z for z in fp.u1.flat if abs(z) >= 0.25)
        assert lead.imag == pytest.approx(0.0, abs=1e-12)
        assert lead.real >= 0.0


def test_reconstruct_fails_on_non_product():
    phi = math.pi / 3
    m = np.diag([1.0, 1.0, np.exp(1j * phi), np.exp(-1j * phi)]).astype(complex)
    with pytest.raises(ReconstructionFailedError):
        reconstruct(extract_global_phase(m))


def test_reconstruct_agrees_with_oracle_factors():
    from gatefactor.separability import separability_oracle

    rng = np.random.default_rng(47)
    for _ in range(20):
        m = tensor2x2(random_single(rng), random_single(rng))
        n = extract_global_phase(m)
        fp = reconstruct(n)
        _, o1, o2 = separability_oracle(m)
        assert (
            phase_aligned_distance(tensor2x2(fp.u1, fp.u2), tensor2x2(o1, o2)) <= 1e-9
        )


def test_phase_family_identity():
    n = as_normalized(I4)
    fp = reconstruct(n)
    same = phase_family(fp, 0.0)
    assert np.array_equal(same.u1, fp.u1) and np.array_equal(same.u2, fp.u2)


def test_phase_family_pi_negates_both_factors():
    rng = np.random.default_rng(53)
    fp = reconstruct(extract_global_phase(tensor2x2(random_single(rng), random_single(rng))))
    flipped = phase_family(fp, math.pi)
    assert np.abs(flipped.u1 + fp.u1).max() <= 1e-15
    assert np.abs(flipped.u2 + fp.u2).max() <= 1e-15


def test_phase_family_preserves_product():
    rng = np.random.default_rng(59)
    fp = reconstruct(extract_global_phase(tensor2x2(random_single(rng), random_single(rng))))
    base = tensor2x2(fp.u1, fp.u2)
    for alpha in rng.uniform(-math.pi, math.pi, size=10):
        moved = phase_family(fp, float(alpha))
        assert np.abs(tensor2x2(moved.u1, moved.u2) - base).max() <= 1e-14
