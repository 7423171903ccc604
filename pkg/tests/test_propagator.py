import numpy as np
import pytest

from photonwf import (
    ComplexVectorField,
    Helicity,
    RealFieldPair,
    StepperConfig,
    Units,
    ValidationError,
    energy,
    evolve_maxwell_real,
    evolve_spectral,
    field_energy,
    gaussian_wavepacket,
    helicity_basis,
    make_grid,
    riemann_silberstein,
    split_real_imag,
    synthesize_onshell,
    transverse_project,
)

GRID = make_grid((16, 16, 16), (2 * np.pi,) * 3)


def _wavepacket(grid=GRID, helicity=Helicity.PLUS, units=Units()):
    amp = gaussian_wavepacket(grid, (0, 0, 3), 0.8, polarization=(1, 0, 0), units=units)
    return synthesize_onshell(amp, helicity=helicity)


# ---------------------------------------------------------------------------
# Helicity basis
# ---------------------------------------------------------------------------

def test_basis_canonical_mode_along_z():
    basis = helicity_basis(GRID)
    ep = basis.e_plus[:, 0, 0, 1]  # k = +zhat * (2 pi / L)
    khat = basis.k_hat[:, 0, 0, 1]
    np.testing.assert_allclose(khat, [0, 0, 1], atol=1e-15)
    cross = np.cross(khat, ep)
    np.testing.assert_allclose(cross, -1j * ep, atol=1e-14)


def test_basis_defining_relation_all_modes():
    basis = helicity_basis(GRID)
    khat = basis.k_hat
    for vec, sign in ((basis.e_plus, 1), (basis.e_minus, -1)):
        cross = np.empty_like(vec)
        cross[0] = khat[1] * vec[2] - khat[2] * vec[1]
        cross[1] = khat[2] * vec[0] - khat[0] * vec[2]
        cross[2] = khat[0] * vec[1] - khat[1] * vec[0]
        residual = cross + 1j * sign * vec
        assert np.max(np.abs(residual[:, basis.present])) < 1e-14


def test_basis_orthonormal_and_transverse():
    basis = helicity_basis(GRID)
    m = basis.present
    ep, em, khat = basis.e_plus, basis.e_minus, basis.k_hat
    dot = lambda a, b: np.sum(np.conj(a) * b, axis=0)
    assert np.max(np.abs(dot(ep, ep)[m] - 1)) < 1e-14
    assert np.max(np.abs(dot(em, em)[m] - 1)) < 1e-14
    assert np.max(np.abs(dot(ep, em)[m])) < 1e-14
    assert np.max(np.abs(dot(khat, ep)[m])) < 1e-14
    assert np.max(np.abs(dot(khat, em)[m])) < 1e-14


def test_basis_antipodal_mode():
    basis = helicity_basis(GRID)
    em = basis.e_plus[:, 0, 0, -1]  # k = -zhat * (2 pi / L)
    khat = basis.k_hat[:, 0, 0, -1]
    np.testing.assert_allclose(khat, [0, 0, -1], atol=1e-15)
    np.testing.assert_allclose(np.cross(khat, em), -1j * em, atol=1e-14)


def test_basis_absent_at_k0():
    basis = helicity_basis(GRID)
    assert not basis.present[0, 0, 0]
    assert np.all(basis.e_plus[:, 0, 0, 0] == 0)


# ---------------------------------------------------------------------------
# Spectral evolution
# ---------------------------------------------------------------------------

def test_single_circular_mode_picks_up_dispersion_phase():
    data = np.zeros((3,) + GRID.dims, dtype=complex)
    basis = helicity_basis(GRID)
    data[:, 0, 0, 2] = basis.e_plus[:, 0, 0, 2]  # |k| = 2 (L = 2 pi)
    psi0 = ComplexVectorField(grid=GRID, data=np.fft.ifftn(data, axes=(1, 2, 3)))
    t = 0.37
    out = evolve_spectral(psi0, t)
    expected = psi0.data * np.exp(-1j * 2.0 * t)
    assert np.max(np.abs(out.data - expected)) < 1e-14 * np.max(np.abs(psi0.data))


def test_t_zero_is_identity():
    psi0 = _wavepacket()
    out = evolve_spectral(psi0, 0.0)
    np.testing.assert_array_equal(out.data, psi0.data)
    assert out.data is not psi0.data


def test_forward_backward_round_trip():
    psi0 = _wavepacket()
    out = evolve_spectral(evolve_spectral(psi0, 2.1), -2.1)
    assert np.max(np.abs(out.data - psi0.data)) / np.max(np.abs(psi0.data)) < 1e-12


def test_evolution_unitary_per_mode():
    psi0 = _wavepacket()
    before = np.abs(np.fft.fftn(psi0.data, axes=(1, 2, 3)))
    after = np.abs(np.fft.fftn(evolve_spectral(psi0, 5.5).data, axes=(1, 2, 3)))
    assert np.max(np.abs(after - before)) / np.max(before) < 1e-14


def test_evolution_preserves_transversality():
    psi0 = _wavepacket()
    out = evolve_spectral(psi0, 3.3)
    data_k = np.fft.fftn(out.data, axes=(1, 2, 3))
    kv = GRID.k_vectors
    k_dot = kv[0] * data_k[0] + kv[1] * data_k[1] + kv[2] * data_k[2]
    assert np.max(np.abs(k_dot)) / np.max(np.abs(data_k)) < 1e-13


def test_longitudinal_and_k0_content_frozen():
    rng = np.random.default_rng(21)
    raw = rng.standard_normal((3,) + GRID.dims) + 1j * rng.standard_normal((3,) + GRID.dims)
    psi_k = ComplexVectorField(grid=GRID, data=raw, space="momentum")
    _, psi_l = transverse_project(psi_k)
    psi0 = psi_l.to_coordinate()
    out = evolve_spectral(psi0, 1.7)
    assert np.max(np.abs(out.data - psi0.data)) / np.max(np.abs(psi0.data)) < 1e-13


def test_evolve_rejects_momentum_space_and_bad_t():
    psi0 = _wavepacket()
    with pytest.raises(ValidationError):
        evolve_spectral(psi0.to_momentum(), 1.0)
    with pytest.raises(ValidationError):
        evolve_spectral(psi0, np.nan)


def test_speed_of_light_scales_the_phase():
    units = Units(hbar=1.0, c=2.5)
    psi0 = _wavepacket(units=units)
    fast = evolve_spectral(psi0, 1.0)
    slow = evolve_spectral(
        ComplexVectorField(grid=psi0.grid, data=psi0.data, units=Units()), 2.5
    )
    assert np.max(np.abs(fast.data - slow.data)) < 1e-12 * np.max(np.abs(psi0.data))


# ---------------------------------------------------------------------------
# Real-field RK4 oracle
# ---------------------------------------------------------------------------

def test_static_uniform_fields_unchanged():
    E = np.zeros((3,) + GRID.dims)
    B = np.zeros((3,) + GRID.dims)
    E[0] = 1.5
    B[1] = -0.5
    pair = RealFieldPair(grid=GRID, E=E, B=B)
    out = evolve_maxwell_real(pair, 2.0, StepperConfig(dt=0.05))
    assert np.max(np.abs(out.E - E)) < 1e-13
    assert np.max(np.abs(out.B - B)) < 1e-13


def test_standing_wave_matches_closed_form():
    # E(0) = xhat cos(k z), B(0) = 0  ->  E(t) = xhat cos(k z) cos(c k t),
    #                                     B(t) = -yhat sin(k z) sin(c k t)
    grid = make_grid((4, 4, 32), (1.0, 1.0, 2 * np.pi))
    z = np.arange(32) * grid.spacings[2]
    k = 2.0  # two periods in the box
    E = np.zeros((3,) + grid.dims)
    E[0] = np.cos(k * z)[None, None, :]
    B = np.zeros((3,) + grid.dims)
    pair = RealFieldPair(grid=grid, E=E, B=B)

    t = 0.9
    out = evolve_maxwell_real(pair, t, StepperConfig(dt=1e-3))
    expected_E = np.zeros_like(E)
    expected_E[0] = np.cos(k * z)[None, None, :] * np.cos(k * t)
    expected_B = np.zeros_like(B)
    expected_B[1] = -np.sin(k * z)[None, None, :] * np.sin(k * t)
    assert np.max(np.abs(out.E - expected_E)) < 1e-9
    assert np.max(np.abs(out.B - expected_B)) < 1e-9


def test_rk4_order_four_convergence():
    psi0 = _wavepacket()
    pair0 = split_real_imag(psi0)
    exact = split_real_imag(evolve_spectral(psi0, 1.0))
    errs = []
    for dt in (2e-3, 1e-3):
        out = evolve_maxwell_real(pair0, 1.0, StepperConfig(dt=dt))
        errs.append(np.max(np.abs(out.E - exact.E)))
    order = np.log2(errs[0] / errs[1])
    assert 3.8 < order < 4.2


def test_rk4_agrees_with_spectral_path():
    psi0 = _wavepacket()
    pair = evolve_maxwell_real(split_real_imag(psi0), 1.0, StepperConfig(dt=1e-3))
    psi_rk4 = riemann_silberstein(pair, psi0.helicity)
    psi_spec = evolve_spectral(psi0, 1.0)
    dev = np.max(np.abs(psi_rk4.data - psi_spec.data)) / np.max(np.abs(psi_spec.data))
    assert dev < 1e-6


def test_rk4_warns_and_projects_longitudinal_input():
    rng = np.random.default_rng(17)
    E = rng.standard_normal((3,) + GRID.dims)
    B = np.zeros((3,) + GRID.dims)
    pair = RealFieldPair(grid=GRID, E=E, B=B)
    with pytest.warns(UserWarning, match="longitudinal"):
        out = evolve_maxwell_real(pair, 0.0, StepperConfig(dt=1e-2))
    data_k = np.fft.fftn(out.E, axes=(1, 2, 3))
    kv = GRID.k_vectors
    k_dot = kv[0] * data_k[0] + kv[1] * data_k[1] + kv[2] * data_k[2]
    assert np.max(np.abs(k_dot)) / np.max(np.abs(data_k)) < 1e-12


def test_rk4_rejects_bad_dt():
    with pytest.raises(ValidationError):
        StepperConfig(dt=0.0)
    with pytest.raises(ValidationError):
        StepperConfig(dt=1e-3, method="euler")


def test_helicity_flip_gives_same_real_trajectory():
    rng = np.random.default_rng(31)
    raw = rng.standard_normal((3,) + GRID.dims) + 1j * rng.standard_normal((3,) + GRID.dims)
    psi_k = ComplexVectorField(grid=GRID, data=raw, space="momentum")
    psi_t, _ = transverse_project(psi_k)
    pair0 = split_real_imag(psi_t.to_coordinate())

    t = 1.3
    outs = []
    for h in (Helicity.PLUS, Helicity.MINUS):
        psi = riemann_silberstein(pair0, h)
        outs.append(split_real_imag(evolve_spectral(psi, t)))
    scale = max(np.max(np.abs(outs[0].E)), np.max(np.abs(outs[0].B)))
    assert np.max(np.abs(outs[0].E - outs[1].E)) / scale < 1e-12
    assert np.max(np.abs(outs[0].B - outs[1].B)) / scale < 1e-12


# ---------------------------------------------------------------------------
# Energy functional
# ---------------------------------------------------------------------------

def test_energy_zero_field():
    psi = ComplexVectorField(grid=GRID, data=np.zeros((3,) + GRID.dims, dtype=complex))
    assert energy(psi) == 0.0


def test_energy_constant_unit_magnitude_over_unit_box():
    grid = make_grid((4, 4, 4), (1.0, 1.0, 1.0))
    data = np.zeros((3,) + grid.dims, dtype=complex)
    data[0] = 1.0  # |psi| = 1 everywhere
    assert energy(ComplexVectorField(grid=grid, data=data)) == pytest.approx(1.0)


def test_energy_conserved_under_evolution():
    psi0 = _wavepacket()
    e0 = energy(psi0)
    for t in (0.2, 3.0, -7.7, 40.0):
        assert abs(energy(evolve_spectral(psi0, t)) - e0) / e0 < 1e-13


def test_energy_matches_field_energy_identity():
    psi0 = _wavepacket()
    pair = split_real_imag(psi0)
    assert abs(energy(psi0) - field_energy(pair)) < 1e-13 * energy(psi0)
