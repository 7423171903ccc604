import numpy as np
import pytest

from photonwf import (
    ComplexVectorField,
    Helicity,
    RealFieldPair,
    ValidationError,
    curl_spectral,
    make_grid,
    riemann_silberstein,
    split_real_imag,
    transverse_project,
)

GRID = make_grid((8, 8, 8), (1.0, 1.0, 1.0))


def _uniform_pair(e_vec, b_vec, grid=GRID):
    E = np.zeros((3,) + grid.dims)
    B = np.zeros((3,) + grid.dims)
    for i in range(3):
        E[i] = e_vec[i]
        B[i] = b_vec[i]
    return RealFieldPair(grid=grid, E=E, B=B)


def _random_field(grid, rng, space="coordinate", helicity=Helicity.PLUS):
    data = rng.standard_normal((3,) + grid.dims) + 1j * rng.standard_normal((3,) + grid.dims)
    return ComplexVectorField(grid=grid, data=data, space=space, helicity=helicity)


# ---------------------------------------------------------------------------
# Riemann-Silberstein construction and inverse
# ---------------------------------------------------------------------------

def test_rs_pure_electric():
    pair = _uniform_pair((1, 0, 0), (0, 0, 0))
    psi = riemann_silberstein(pair, Helicity.PLUS)
    np.testing.assert_allclose(psi.data[0], 1 / np.sqrt(2))
    np.testing.assert_allclose(psi.data[1:], 0.0)


def test_rs_pure_magnetic_minus_helicity():
    pair = _uniform_pair((0, 0, 0), (0, 1, 0))
    psi = riemann_silberstein(pair, Helicity.MINUS)
    np.testing.assert_allclose(psi.data[1], -1j / np.sqrt(2))


def test_split_examples_both_helicities():
    # psi = (xhat + i yhat)/sqrt(2) tagged +  ->  E = xhat, B = yhat
    data = np.zeros((3,) + GRID.dims, dtype=complex)
    data[0] = 1 / np.sqrt(2)
    data[1] = 1j / np.sqrt(2)
    pair = split_real_imag(ComplexVectorField(grid=GRID, data=data, helicity=Helicity.PLUS))
    np.testing.assert_allclose(pair.E[0], 1.0)
    np.testing.assert_allclose(pair.B[1], 1.0, atol=1e-15)

    # psi = (xhat - i yhat)/sqrt(2) tagged -  ->  same (E, B)
    data[1] = -1j / np.sqrt(2)
    pair = split_real_imag(ComplexVectorField(grid=GRID, data=data, helicity=Helicity.MINUS))
    np.testing.assert_allclose(pair.E[0], 1.0)
    np.testing.assert_allclose(pair.B[1], 1.0, atol=1e-15)


@pytest.mark.parametrize("helicity", [Helicity.PLUS, Helicity.MINUS])
def test_rs_round_trip_random_fields(helicity):
    rng = np.random.default_rng(7)
    E = rng.standard_normal((3,) + GRID.dims)
    B = rng.standard_normal((3,) + GRID.dims)
    pair = RealFieldPair(grid=GRID, E=E, B=B, time=0.3)
    back = split_real_imag(riemann_silberstein(pair, helicity))
    assert np.max(np.abs(back.E - E)) < 1e-14
    assert np.max(np.abs(back.B - B)) < 1e-14
    assert back.time == 0.3


def test_split_rejects_momentum_space():
    rng = np.random.default_rng(1)
    with pytest.raises(ValidationError):
        split_real_imag(_random_field(GRID, rng, space="momentum"))


def test_rs_rejects_nonfinite():
    pair = _uniform_pair((1, 0, 0), (0, 0, 0))
    pair.E[0, 0, 0, 0] = np.inf
    with pytest.raises(ValidationError):
        riemann_silberstein(pair, Helicity.PLUS)


# ---------------------------------------------------------------------------
# Transverse / longitudinal split
# ---------------------------------------------------------------------------

def _single_mode_field(grid, mode, pol):
    data = np.zeros((3,) + grid.dims, dtype=complex)
    data[(slice(None),) + mode] = pol
    return ComplexVectorField(grid=grid, data=data, space="momentum")


def test_project_single_mode_perpendicular_polarization():
    # k along z, polarization along x: all transverse
    psi_t, psi_l = transverse_project(_single_mode_field(GRID, (0, 0, 1), (1.0, 0, 0)))
    assert np.max(np.abs(psi_l.data)) == 0.0
    assert psi_t.data[0, 0, 0, 1] == 1.0


def test_project_single_mode_parallel_polarization():
    psi_t, psi_l = transverse_project(_single_mode_field(GRID, (0, 0, 1), (0, 0, 1.0)))
    assert np.max(np.abs(psi_t.data)) < 1e-15
    assert abs(psi_l.data[2, 0, 0, 1] - 1.0) < 1e-15


def test_project_random_field_properties():
    rng = np.random.default_rng(11)
    psi = _random_field(GRID, rng, space="momentum")
    psi_t, psi_l = transverse_project(psi)
    kv = GRID.k_vectors

    # reconstruction is exact
    assert np.max(np.abs(psi_t.data + psi_l.data - psi.data)) < 1e-14
    # k . psi_T = 0 per mode
    k_dot = kv[0] * psi_t.data[0] + kv[1] * psi_t.data[1] + kv[2] * psi_t.data[2]
    assert np.max(np.abs(k_dot)) / np.max(np.abs(psi.data)) < 1e-13
    # idempotence
    again_t, again_l = transverse_project(psi_t)
    assert np.max(np.abs(again_t.data - psi_t.data)) < 1e-14
    assert np.max(np.abs(again_l.data)) < 1e-14
    # orthogonality of the two parts over the mode sum
    inner = np.sum(np.conj(psi_t.data) * psi_l.data)
    assert abs(inner) / np.sum(np.abs(psi.data) ** 2) < 1e-13


def test_project_k0_goes_longitudinal():
    psi = _single_mode_field(GRID, (0, 0, 0), (1.0, 2.0, 3.0))
    psi_t, psi_l = transverse_project(psi)
    assert np.max(np.abs(psi_t.data)) == 0.0
    np.testing.assert_array_equal(psi_l.data[:, 0, 0, 0], [1.0, 2.0, 3.0])


def test_project_rejects_coordinate_space():
    rng = np.random.default_rng(3)
    with pytest.raises(ValidationError):
        transverse_project(_random_field(GRID, rng))


# ---------------------------------------------------------------------------
# Spectral curl
# ---------------------------------------------------------------------------

def test_curl_of_constant_field_is_zero():
    data = np.ones((3,) + GRID.dims, dtype=complex)
    out = curl_spectral(ComplexVectorField(grid=GRID, data=data))
    assert np.max(np.abs(out.data)) < 1e-13


def test_curl_single_fourier_mode_analytic():
    # psi = xhat sin(2 pi z / L)  ->  curl = yhat (2 pi / L) cos(2 pi z / L)
    grid = make_grid((8, 8, 16), (1.0, 1.0, 2.0))
    z = np.arange(16) * grid.spacings[2]
    k = 2 * np.pi / grid.lengths[2]
    data = np.zeros((3,) + grid.dims, dtype=complex)
    data[0] = np.sin(k * z)[None, None, :]
    out = curl_spectral(ComplexVectorField(grid=grid, data=data))
    expected = np.zeros_like(data)
    expected[1] = k * np.cos(k * z)[None, None, :]
    assert np.max(np.abs(out.data - expected)) < 1e-12


def test_curl_output_divergence_free():
    rng = np.random.default_rng(5)
    psi = _random_field(GRID, rng, space="momentum")
    out = curl_spectral(psi)
    kv = GRID.k_vectors
    div = kv[0] * out.data[0] + kv[1] * out.data[1] + kv[2] * out.data[2]
    scale = np.max(np.abs(psi.data)) * np.max(GRID.k_magnitude) ** 2
    assert np.max(np.abs(div)) < 1e-13 * scale


def test_curl_squared_is_k2_on_transverse_fields():
    rng = np.random.default_rng(9)
    psi_t, _ = transverse_project(_random_field(GRID, rng, space="momentum"))
    twice = curl_spectral(curl_spectral(psi_t))
    expected = GRID.k_magnitude[None] ** 2 * psi_t.data
    scale = np.max(np.abs(expected)) if np.max(np.abs(expected)) > 0 else 1.0
    assert np.max(np.abs(twice.data - expected)) / scale < 1e-12


def test_curl_same_answer_from_either_space():
    rng = np.random.default_rng(13)
    psi = _random_field(GRID, rng)
    out_coord = curl_spectral(psi)
    out_k = curl_spectral(psi.to_momentum()).to_coordinate()
    assert np.max(np.abs(out_coord.data - out_k.data)) < 1e-12
