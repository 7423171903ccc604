"""Uniform periodic sampling lattices and unit conventions.

All fields live on periodic boxes sampled uniformly.  The dual momentum
lattice follows the standard FFT index convention: along an axis with n
points and physical length L the wavenumbers are

    k_m = (2*pi/L) * m,   m = 0, 1, ..., n/2-1, -n/2, ..., -1

i.e. ``2*pi*numpy.fft.fftfreq(n, d=L/n)``.  Forward transforms carry
exp(-i k.r) and are unnormalized; the inverse carries the 1/N factor
(numpy's default).  Every Parseval-type constant in the package assumes
exactly this convention.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ValidationError


@dataclass(frozen=True)
class Units:
    """Action scale and speed of light; immutable, both strictly positive.

    hbar only rescales Fourier measures and momentum labels, c sets the
    dispersion w = c|k|.  Defaults give natural units.
    """

    hbar: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        if not (self.hbar > 0 and np.isfinite(self.hbar)):
            raise ValidationError(f"hbar must be positive and finite, got {self.hbar}")
        if not (self.c > 0 and np.isfinite(self.c)):
            raise ValidationError(f"c must be positive and finite, got {self.c}")


@dataclass(frozen=True)
class Grid3:
    """Periodic 3D sampling lattice.

    dims are the point counts per axis (>= 2 each), lengths the physical
    box sides.  Spacings and the momentum lattice are derived.
    """

    dims: tuple[int, int, int]
    lengths: tuple[float, float, float]

    def __post_init__(self):
        if len(self.dims) != 3 or len(self.lengths) != 3:
            raise ValidationError("Grid3 needs exactly three dims and three lengths")
        object.__setattr__(self, "dims", tuple(int(n) for n in self.dims))
        object.__setattr__(self, "lengths", tuple(float(L) for L in self.lengths))
        for n in self.dims:
            if n < 2:
                raise ValidationError(f"grid dims must be >= 2 per axis, got {self.dims}")
        for L in self.lengths:
            if not (L > 0 and np.isfinite(L)):
                raise ValidationError(f"grid lengths must be positive, got {self.lengths}")

    @property
    def spacings(self) -> tuple[float, float, float]:
        return tuple(L / n for n, L in zip(self.dims, self.lengths))

    @property
    def npoints(self) -> int:
        nx, ny, nz = self.dims
        return nx * ny * nz

    @property
    def volume(self) -> float:
        Lx, Ly, Lz = self.lengths
        return Lx * Ly * Lz

    @property
    def cell_volume(self) -> float:
        return self.volume / self.npoints

    def k_axes(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """1D wavenumber arrays per axis, FFT-ordered."""
        return tuple(
            2.0 * np.pi * np.fft.fftfreq(n, d=L / n)
            for n, L in zip(self.dims, self.lengths)
        )

    @cached_property
    def k_vectors(self) -> np.ndarray:
        """Wavenumber components on the full lattice, shape (3, nx, ny, nz)."""
        kx, ky, kz = self.k_axes()
        out = np.empty((3,) + self.dims)
        out[0] = kx[:, None, None]
        out[1] = ky[None, :, None]
        out[2] = kz[None, None, :]
        out.flags.writeable = False
        return out

    @cached_property
    def k_magnitude(self) -> np.ndarray:
        kv = self.k_vectors
        out = np.sqrt(kv[0] ** 2 + kv[1] ** 2 + kv[2] ** 2)
        out.flags.writeable = False
        return out


def make_grid(dims, lengths) -> Grid3:
    """Build a Grid3 after validating dims >= 2 per axis and lengths > 0."""
    return Grid3(tuple(dims), tuple(lengths))


@dataclass(frozen=True)
class Grid1:
    """Periodic 1D lattice for transverse (beam cross-section) coordinates.

    Samples are centered: x_i = (i - n/2) * dx, so the origin sits on the
    lattice (index n/2) and the index reflection i -> (n - i) mod n realizes
    x -> -x exactly, edge point included.  n must be even for that reason.
    """

    n: int
    length: float

    def __post_init__(self):
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "length", float(self.length))
        if self.n < 2 or self.n % 2 != 0:
            raise ValidationError(f"Grid1 needs an even point count >= 2, got {self.n}")
        if not (self.length > 0 and np.isfinite(self.length)):
            raise ValidationError(f"Grid1 length must be positive, got {self.length}")

    @property
    def dx(self) -> float:
        return self.length / self.n

    @cached_property
    def x(self) -> np.ndarray:
        out = (np.arange(self.n) - self.n // 2) * self.dx
        out.flags.writeable = False
        return out

    def k_axis(self) -> np.ndarray:
        return 2.0 * np.pi * np.fft.fftfreq(self.n, d=self.dx)
