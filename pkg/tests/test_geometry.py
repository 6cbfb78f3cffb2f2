import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cavlink.constants import C
from cavlink.errors import DomainError, GeometryError, LosslessCavityError
from cavlink.geometry import (
    CavityGeometry,
    MirrorProcess,
    bad_loss_rate,
    double_resonance_length,
    effective_mode_volume,
    finesse_from_loss,
    free_spectral_range,
    is_double_resonant,
    kappa_from_finesse,
    kappa_from_losses,
    length_for_zr_equals_h,
    loss_from_finesse,
    losses_for_kappas,
    mode_volume_along,
    rayleigh_and_waists,
    resonant_lengths,
    scattering_loss,
)


def test_gaussian_mode_by_abcd():
    # Independent check: round-trip ABCD of flat + curved mirror gives q with Im(q) = z_R at the flat mirror.
    R, l, lam = 500e-6, 300e-6, 493e-9
    m = np.array([[1, l], [0, 1]]) @ np.array([[1, 0], [-2 / R, 1]]) @ np.array([[1, l], [0, 1]])
    A, B, Cc, D = m.ravel()
    zr = abs(B) / math.sqrt(1 - ((A + D) / 2) ** 2)
    prof = rayleigh_and_waists(CavityGeometry(R, l, 0.0, lam))
    assert prof.rayleigh_range == pytest.approx(zr, rel=1e-12)
    assert prof.waist == pytest.approx(math.sqrt(lam * zr / math.pi))


def test_waist_at_ion_and_volume():
    g = CavityGeometry(400e-6, 200e-6, 70e-6, 493e-9)
    p = rayleigh_and_waists(g)
    assert p.rayleigh_range == pytest.approx(200e-6)
    assert p.waist_at_ion == pytest.approx(p.waist * math.sqrt(1 + (70 / 200) ** 2))
    assert effective_mode_volume(g) == pytest.approx(math.pi * p.waist_at_ion**2 * 200e-6 / 4)
    assert mode_volume_along(400e-6, [200e-6], 70e-6, 493e-9)[0] == pytest.approx(effective_mode_volume(g))


def test_geometry_validation():
    with pytest.raises(GeometryError):
        CavityGeometry(400e-6, 400e-6, 0.0, 493e-9)
    with pytest.raises(DomainError):
        CavityGeometry(400e-6, 100e-6, 100e-6, 493e-9)
    with pytest.raises(DomainError):
        MirrorProcess(1.0, 1e-3)


def test_zr_equals_h_root():
    R, h = 400e-6, 70e-6
    lo = length_for_zr_equals_h(R, h)
    assert R * lo - lo**2 == pytest.approx(h**2, rel=1e-9)
    assert lo >= R / 2
    assert length_for_zr_equals_h(2 * h, h) == pytest.approx(h)
    with pytest.raises(GeometryError):
        length_for_zr_equals_h(100e-6, 70e-6)
    assert length_for_zr_equals_h(5e-3, 70e-6) == pytest.approx(4.9990e-3, abs=1e-7)


def test_resonant_lengths_closed_interval():
    lam = 500e-9
    ls = resonant_lengths(lam, 1e-6, 2e-6)
    assert ls[0] == pytest.approx(1e-6) and ls[-1] == pytest.approx(2e-6)
    assert np.allclose(np.diff(ls), lam / 2)
    assert resonant_lengths(lam, 2e-6, 1e-6).size == 0


def test_finesse_loss_roundtrip_and_small_loss_limit():
    assert finesse_from_loss(1e-4) == pytest.approx(2 * math.pi / 1e-4, rel=1e-4)
    for f in (10.0, 4000.0, 1e6):
        assert finesse_from_loss(loss_from_finesse(f)) == pytest.approx(f, rel=1e-12)
    with pytest.raises(LosslessCavityError):
        finesse_from_loss(0.0)


def test_scr_finesse_number():
    # κ = γ = 2π·10 MHz at ℓ = 500 μm needs 𝓕 ≈ 15,000.
    kappa = 2 * math.pi * 10e6
    finesse = math.pi * C / (2 * 500e-6) / kappa
    assert finesse == pytest.approx(15000, rel=0.02)
    assert kappa_from_finesse(500e-6, finesse) == pytest.approx(kappa)


def test_kappa_split_and_inverse():
    r = kappa_from_losses(300e-6, 100e-6, 50e-6, 10e-6)
    assert r.kappa_L / r.kappa_R == pytest.approx(2.0)
    assert r.kappa_L + r.kappa_R + r.kappa_B == pytest.approx(r.kappa)
    assert losses_for_kappas(300e-6, r.kappa_L, r.kappa_R, r.kappa_B) == pytest.approx((100e-6, 50e-6, 10e-6))
    assert bad_loss_rate(300e-6, 0.0) == 0.0
    assert bad_loss_rate(300e-6, 10e-6) == pytest.approx(kappa_from_losses(300e-6, 0, 0, 10e-6).kappa)


@settings(max_examples=50, deadline=None)
@given(st.floats(1e-7, 1e-2), st.floats(1e-5, 1e-1))
def test_kappa_scales_inversely_with_length(loss, length):
    k1 = kappa_from_finesse(length, finesse_from_loss(loss))
    k2 = kappa_from_finesse(2 * length, finesse_from_loss(loss))
    assert k1 == pytest.approx(2 * k2, rel=1e-12)


def test_scattering_loss():
    assert scattering_loss(0.2e-9, 493e-9) == pytest.approx((4 * math.pi * 0.2 / 493) ** 2)


def test_double_resonance():
    hf = 2 * math.pi * 9.925e9
    ell = double_resonance_length(hf, 493.5e-9)
    assert ell == pytest.approx(0.0151, rel=0.01)
    assert abs(free_spectral_range(ell) - 9.925e9) < 493.5e-9 / 2 * C / (2 * ell**2) + 1
    assert is_double_resonant(ell, hf, kappa=2 * math.pi * 1e6)
    assert not is_double_resonant(ell * 1.01, hf, kappa=2 * math.pi * 1e6)


@pytest.mark.parametrize("radius", [2e-3, 5e-3, 1e-2])
def test_minimum_mode_volume_order_of_magnitude(radius):
    # For R >> h_ion the smallest effective volume over the near-hemispherical
    # branch is of order λ·h_ion·R/2; only factor-2 agreement is asserted.
    h, lam = 70e-6, 493e-9
    lengths = np.linspace(0.5001 * radius, 0.99999 * radius, 20001)
    v_min = mode_volume_along(radius, lengths, h, lam).min()
    assert 0.5 <= v_min / (lam * h * radius / 2) <= 2.0
