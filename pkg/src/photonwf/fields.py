"""Riemann-Silberstein fields, helicity bookkeeping, and k-space vector calculus.

The photon wave function is the complex combination of the transverse
electric and magnetic fields,

    psi = (E + i*s*B) / sqrt(2),    s = +1 or -1 (helicity sign),

stored component-major as a (3, nx, ny, nz) complex array.  Splitting a
vector field into transverse and longitudinal parts, and taking curls,
are exact per Fourier mode:

    psi_L(k) = khat (khat . psi(k)),   psi_T = psi - psi_L,
    (curl psi)(k) = i k x psi(k).

The k = 0 mode has no direction, so it is booked entirely as longitudinal
and never propagates.
"""

from dataclasses import dataclass, field, replace
from enum import IntEnum

import numpy as np

from .errors import ValidationError
from .grids import Grid3, Units

COORDINATE = "coordinate"
MOMENTUM = "momentum"


class Helicity(IntEnum):
    """Photon helicity sign; exactly two values."""

    PLUS = +1
    MINUS = -1

    @property
    def sign(self) -> int:
        return int(self)


def _check_vector_data(grid: Grid3, data: np.ndarray, dtype, what: str) -> np.ndarray:
    data = np.asarray(data, dtype=dtype)
    if data.shape != (3,) + grid.dims:
        raise ValidationError(
            f"{what} data must have shape (3, nx, ny, nz) = {(3,) + grid.dims}, "
            f"got {data.shape}"
        )
    return data


@dataclass
class ComplexVectorField:
    """Three complex components per grid point, in coordinate or momentum space.

    Momentum-space data holds the unnormalized forward FFT of the
    coordinate-space data (see grids module for the pinned convention).
    Operations treat instances as immutable values and return fresh fields.
    """

    grid: Grid3
    data: np.ndarray
    time: float = 0.0
    helicity: Helicity = Helicity.PLUS
    space: str = COORDINATE
    units: Units = field(default_factory=Units)

    def __post_init__(self):
        self.data = _check_vector_data(self.grid, self.data, np.complex128, "field")
        if self.space not in (COORDINATE, MOMENTUM):
            raise ValidationError(f"space must be '{COORDINATE}' or '{MOMENTUM}', got {self.space!r}")
        self.helicity = Helicity(self.helicity)
        self.time = float(self.time)

    def copy(self) -> "ComplexVectorField":
        return replace(self, data=self.data.copy())

    def to_momentum(self) -> "ComplexVectorField":
        if self.space == MOMENTUM:
            return self.copy()
        data = np.fft.fftn(self.data, axes=(1, 2, 3))
        return replace(self, data=data, space=MOMENTUM)

    def to_coordinate(self) -> "ComplexVectorField":
        if self.space == COORDINATE:
            return self.copy()
        data = np.fft.ifftn(self.data, axes=(1, 2, 3))
        return replace(self, data=data, space=COORDINATE)


@dataclass
class RealFieldPair:
    """Real (E, B) fields on a common grid."""

    grid: Grid3
    E: np.ndarray
    B: np.ndarray
    time: float = 0.0
    units: Units = field(default_factory=Units)

    def __post_init__(self):
        self.E = _check_vector_data(self.grid, self.E, np.float64, "E")
        self.B = _check_vector_data(self.grid, self.B, np.float64, "B")
        self.time = float(self.time)

    def copy(self) -> "RealFieldPair":
        return replace(self, E=self.E.copy(), B=self.B.copy())


def riemann_silberstein(fields: RealFieldPair, helicity: Helicity | int) -> ComplexVectorField:
    """Combine (E, B) into the complex wave function (E + i*s*B)/sqrt(2)."""
    helicity = Helicity(helicity)
    if not (np.all(np.isfinite(fields.E)) and np.all(np.isfinite(fields.B))):
        raise ValidationError("field values must be finite")
    data = (fields.E + 1j * helicity.sign * fields.B) / np.sqrt(2.0)
    return ComplexVectorField(
        grid=fields.grid,
        data=data,
        time=fields.time,
        helicity=helicity,
        space=COORDINATE,
        units=fields.units,
    )


def split_real_imag(psi: ComplexVectorField) -> RealFieldPair:
    """Recover E = sqrt(2) Re psi and B = s * sqrt(2) Im psi.

    Exact algebraic inverse of riemann_silberstein for either helicity.
    """
    if psi.space != COORDINATE:
        raise ValidationError("split_real_imag expects a coordinate-space field")
    root2 = np.sqrt(2.0)
    E = root2 * psi.data.real
    B = psi.helicity.sign * root2 * psi.data.imag
    return RealFieldPair(grid=psi.grid, E=E, B=B, time=psi.time, units=psi.units)


def _project_longitudinal(grid: Grid3, data: np.ndarray) -> np.ndarray:
    """Per-mode khat (khat . v); the k=0 mode is returned whole."""
    kv = grid.k_vectors
    k2 = grid.k_magnitude**2
    inv_k2 = np.zeros_like(k2)
    nonzero = k2 > 0
    inv_k2[nonzero] = 1.0 / k2[nonzero]
    k_dot = kv[0] * data[0] + kv[1] * data[1] + kv[2] * data[2]
    longitudinal = kv * (k_dot * inv_k2)[None, :, :, :]
    longitudinal[:, 0, 0, 0] = data[:, 0, 0, 0]
    return longitudinal


def transverse_project(psi_k: ComplexVectorField) -> tuple[ComplexVectorField, ComplexVectorField]:
    """Split a momentum-space field into (transverse, longitudinal) parts.

    psi_T + psi_L reproduces the input exactly; k . psi_T = 0 per mode.
    The k=0 mode goes entirely to the longitudinal part (khat is undefined
    there and a photon has no zero-frequency on-shell component).
    """
    if psi_k.space != MOMENTUM:
        raise ValidationError("transverse_project expects a momentum-space field")
    longitudinal = _project_longitudinal(psi_k.grid, psi_k.data)
    transverse = psi_k.data - longitudinal
    return (
        replace(psi_k, data=transverse),
        replace(psi_k, data=longitudinal),
    )


def _curl_data(grid: Grid3, data_k: np.ndarray) -> np.ndarray:
    kv = grid.k_vectors
    out = np.empty_like(data_k)
    out[0] = 1j * (kv[1] * data_k[2] - kv[2] * data_k[1])
    out[1] = 1j * (kv[2] * data_k[0] - kv[0] * data_k[2])
    out[2] = 1j * (kv[0] * data_k[1] - kv[1] * data_k[0])
    return out


def curl_spectral(psi: ComplexVectorField) -> ComplexVectorField:
    """Curl via i k x psi(k); exact for band-limited fields.

    The result lives in the same space as the input; coordinate-space
    inputs are transformed internally.
    """
    if psi.space == MOMENTUM:
        return replace(psi, data=_curl_data(psi.grid, psi.data))
    data_k = np.fft.fftn(psi.data, axes=(1, 2, 3))
    curl_k = _curl_data(psi.grid, data_k)
    return replace(psi, data=np.fft.ifftn(curl_k, axes=(1, 2, 3)))


def curl_real(grid: Grid3, data: np.ndarray) -> np.ndarray:
    """Spectral curl of a real (3, nx, ny, nz) array, returned real."""
    data_k = np.fft.fftn(data, axes=(1, 2, 3))
    return np.fft.ifftn(_curl_data(grid, data_k), axes=(1, 2, 3)).real
