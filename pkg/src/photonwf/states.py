"""Ready-made wave functions: 3D wavepacket amplitudes and transverse modes.

The 3D builders return normalized momentum amplitudes (unit momentum
norm); the transverse builders return normalized beam cross-section
states for the Wigner / displaced-parity machinery.
"""

import math

import numpy as np
from numpy.polynomial.hermite import hermval

from .errors import ValidationError
from .grids import Grid1, Grid3, Units
from .normalization import MomentumAmplitude
from .propagator import helicity_basis
from .wigner import TransverseState, TwoPhotonState


def _transverse_polarization(grid: Grid3, polarization) -> np.ndarray:
    """Per-mode projection of a constant polarization vector onto the plane
    orthogonal to k; zero at k=0."""
    pol = np.asarray(polarization, dtype=np.complex128)
    if pol.shape != (3,):
        raise ValidationError("polarization must be a 3-vector")
    if np.linalg.norm(pol) == 0:
        raise ValidationError("polarization must be nonzero")
    pol = pol / np.linalg.norm(pol)

    kv = grid.k_vectors
    k2 = grid.k_magnitude**2
    nonzero = k2 > 0
    inv_k2 = np.zeros_like(k2)
    inv_k2[nonzero] = 1.0 / k2[nonzero]
    k_dot = pol[0] * kv[0] + pol[1] * kv[1] + pol[2] * kv[2]
    out = pol[:, None, None, None] - kv * (k_dot * inv_k2)[None]
    out[:, 0, 0, 0] = 0.0
    return out


def gaussian_wavepacket(
    grid: Grid3,
    k_center,
    sigma_k: float,
    polarization=(1.0, 0.0, 0.0),
    units: Units = Units(),
    cutoff_sigmas: float = 5.0,
) -> MomentumAmplitude:
    """Gaussian momentum amplitude around k_center with transverse polarization.

    The envelope exp(-|k - k0|^2 / (4 sigma^2)) is hard-truncated beyond
    cutoff_sigmas so the state is band-limited by construction; modes whose
    projected polarization vanishes stay empty.
    """
    k0 = np.asarray(k_center, dtype=float)
    if k0.shape != (3,):
        raise ValidationError("k_center must be a 3-vector")
    if not (sigma_k > 0 and np.isfinite(sigma_k)):
        raise ValidationError(f"sigma_k must be positive, got {sigma_k}")

    kv = grid.k_vectors
    dk2 = (kv[0] - k0[0]) ** 2 + (kv[1] - k0[1]) ** 2 + (kv[2] - k0[2]) ** 2
    envelope = np.exp(-dk2 / (4.0 * sigma_k**2))
    envelope[dk2 > (cutoff_sigmas * sigma_k) ** 2] = 0.0

    data = _transverse_polarization(grid, polarization) * envelope[None]
    data[:, 0, 0, 0] = 0.0
    amp = MomentumAmplitude(grid=grid, data=data, transverse=True, units=units)
    if np.max(np.abs(amp.data)) == 0:
        raise ValidationError("wavepacket has no transverse content on this grid")
    return amp.normalized()


def single_mode(
    grid: Grid3,
    mode,
    polarization=(1.0, 0.0, 0.0),
    units: Units = Units(),
) -> MomentumAmplitude:
    """Amplitude occupying exactly one lattice mode, given by integer FFT
    indices per axis; rejects the k=0 mode and polarizations parallel to k."""
    idx = tuple(int(m) % n for m, n in zip(mode, grid.dims))
    if len(idx) != 3:
        raise ValidationError("mode must give three integer indices")
    if idx == (0, 0, 0):
        raise ValidationError("the k=0 mode is not on the photon shell")

    pol_t = _transverse_polarization(grid, polarization)[(slice(None),) + idx]
    if np.linalg.norm(pol_t) < 1e-12:
        raise ValidationError("polarization is parallel to k: no transverse content")

    data = np.zeros((3,) + grid.dims, dtype=np.complex128)
    data[(slice(None),) + idx] = pol_t / np.linalg.norm(pol_t)
    amp = MomentumAmplitude(grid=grid, data=data, transverse=True, units=units)
    return amp.normalized()


def circular_mode(
    grid: Grid3,
    mode,
    helicity_sign: int = +1,
    units: Units = Units(),
) -> MomentumAmplitude:
    """Single lattice mode polarized along its own circular vector e(+/-),
    i.e. an eigenmode of the curl operator (a true on-shell photon mode)."""
    idx = tuple(int(m) % n for m, n in zip(mode, grid.dims))
    if idx == (0, 0, 0):
        raise ValidationError("the k=0 mode is not on the photon shell")
    basis = helicity_basis(grid)
    vec = basis.e_plus if helicity_sign > 0 else basis.e_minus
    data = np.zeros((3,) + grid.dims, dtype=np.complex128)
    data[(slice(None),) + idx] = vec[(slice(None),) + idx]
    amp = MomentumAmplitude(grid=grid, data=data, transverse=True, units=units)
    return amp.normalized()


def random_bandlimited(
    grid: Grid3,
    kmax: float,
    rng: np.random.Generator,
    units: Units = Units(),
) -> MomentumAmplitude:
    """Random transverse amplitude supported on 0 < |k| <= kmax; normalized.

    Useful for property checks of the normalization identities.
    """
    shape = (3,) + grid.dims
    raw = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    mask = (grid.k_magnitude <= kmax) & (grid.k_magnitude > 0)
    if not mask.any():
        raise ValidationError(f"no lattice modes with 0 < |k| <= {kmax}")
    raw *= mask[None]

    kv = grid.k_vectors
    k2 = grid.k_magnitude**2
    inv_k2 = np.zeros_like(k2)
    inv_k2[k2 > 0] = 1.0 / k2[k2 > 0]
    k_dot = kv[0] * raw[0] + kv[1] * raw[1] + kv[2] * raw[2]
    raw -= kv * (k_dot * inv_k2)[None]
    raw[:, 0, 0, 0] = 0.0
    amp = MomentumAmplitude(grid=grid, data=raw, transverse=True, units=units)
    return amp.normalized()


# ---------------------------------------------------------------------------
# Transverse (beam cross-section) states
# ---------------------------------------------------------------------------

def hermite_gauss_profile(x: np.ndarray, order: int, width: float = 1.0) -> np.ndarray:
    """Normalized Hermite-Gauss mode u_n(x) on arbitrary sample points."""
    if order < 0:
        raise ValidationError(f"order must be >= 0, got {order}")
    if not (width > 0 and np.isfinite(width)):
        raise ValidationError(f"width must be positive, got {width}")
    xi = np.asarray(x, dtype=float) / width
    coeffs = np.zeros(order + 1)
    coeffs[order] = 1.0
    h = hermval(xi, coeffs)
    norm = np.pi**0.25 * np.sqrt(2.0**order * float(math.factorial(order)) * width)
    return h * np.exp(-0.5 * xi**2) / norm


def hermite_gauss(
    grid: Grid1,
    order: int,
    width: float = 1.0,
    units: Units = Units(),
) -> TransverseState:
    """Hermite-Gauss transverse mode of the given order, lattice-normalized."""
    amp = hermite_gauss_profile(grid.x, order, width).astype(np.complex128)
    return TransverseState(grids=(grid,), amplitude=amp, units=units).normalized()


def hermite_gauss_2d(
    grid_x: Grid1,
    grid_y: Grid1,
    orders: tuple[int, int],
    width: float = 1.0,
    units: Units = Units(),
) -> TransverseState:
    """Separable 2D Hermite-Gauss mode u_nx(x) u_ny(y)."""
    ux = hermite_gauss_profile(grid_x.x, orders[0], width)
    uy = hermite_gauss_profile(grid_y.x, orders[1], width)
    amp = np.outer(ux, uy).astype(np.complex128)
    return TransverseState(grids=(grid_x, grid_y), amplitude=amp, units=units).normalized()


def displaced_gaussian(
    grid: Grid1,
    center: float = 0.0,
    momentum: float = 0.0,
    width: float = 1.0,
    units: Units = Units(),
) -> TransverseState:
    """Gaussian shifted in phase space: exp(i p0 x / hbar) g(x - x0)."""
    g = hermite_gauss_profile(grid.x - center, 0, width)
    amp = g * np.exp(1j * momentum * grid.x / units.hbar)
    return TransverseState(grids=(grid,), amplitude=amp, units=units).normalized()


def two_photon_gaussian(
    grid1: Grid1,
    grid2: Grid1,
    correlation: float = 0.0,
    width: float = 1.0,
    units: Units = Units(),
) -> TwoPhotonState:
    """Correlated two-photon Gaussian amplitude.

    |psi|^2 is a bivariate normal in (x1, x2) with correlation coefficient
    `correlation`; correlation = 0 gives a product of ground Gaussians.
    """
    if not -1.0 < correlation < 1.0:
        raise ValidationError(f"correlation must lie in (-1, 1), got {correlation}")
    x1 = grid1.x[:, None] / width
    x2 = grid2.x[None, :] / width
    r = correlation
    amp = np.exp(-(x1**2 + x2**2 - 2.0 * r * x1 * x2) / (2.0 * (1.0 - r**2)))
    return TwoPhotonState(grids=(grid1, grid2), amplitude=amp.astype(np.complex128), units=units).normalized()
