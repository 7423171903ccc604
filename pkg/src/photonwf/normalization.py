"""Momentum-space normalization and on-shell coordinate-space synthesis.

Momentum integrals are discretized with the measure

    d3p / (2*pi*hbar)^3  ->  (1/V) * sum over lattice modes,

since the momentum cell is exactly (2*pi*hbar)^3 / V on a periodic box of
volume V.  The on-shell synthesis

    psi(r, t) = (1/V) * sum_k f(E_k) psitilde(k) exp(i(k.r - c|k| t)),
    E_k = c*hbar*|k|,

uses the per-mode constant 1/V, which makes two identities hold exactly
on the lattice (not just in the continuum limit):

    f = sqrt(E):  integral |psi|^2 d3r  =  <E>   (energy expectation)
    f = 1:        integral |psi|^2 d3r  =  momentum norm

Both are enforced by the test suite; they pin every constant in this
module.
"""

from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from .errors import ValidationError
from .fields import MOMENTUM, ComplexVectorField, Helicity, _check_vector_data
from .grids import Grid3, Units


class WeightChoice(Enum):
    """Momentum-space weight f(E) used in the coordinate-space synthesis."""

    UNIT = "unit"
    SQRT_ENERGY = "sqrt_energy"


@dataclass
class MomentumAmplitude:
    """On-shell momentum amplitude: one complex 3-vector per lattice mode.

    When flagged transverse, k . data(k) must vanish per mode and the k=0
    amplitude must be zero (E=0 is not on the photon shell).
    """

    grid: Grid3
    data: np.ndarray
    transverse: bool = True
    units: Units = field(default_factory=Units)

    def __post_init__(self):
        self.data = _check_vector_data(self.grid, self.data, np.complex128, "amplitude")
        if self.transverse:
            scale = float(np.max(np.abs(self.data)))
            if scale > 0:
                kv = self.grid.k_vectors
                k_dot = kv[0] * self.data[0] + kv[1] * self.data[1] + kv[2] * self.data[2]
                kscale = float(np.max(self.grid.k_magnitude))
                if float(np.max(np.abs(k_dot))) > 1e-13 * scale * kscale:
                    raise ValidationError("amplitude flagged transverse but k . data != 0")
                if float(np.max(np.abs(self.data[:, 0, 0, 0]))) > 1e-13 * scale:
                    raise ValidationError("amplitude flagged transverse but k=0 mode is nonzero")

    def copy(self) -> "MomentumAmplitude":
        return replace(self, data=self.data.copy())

    def normalized(self) -> "MomentumAmplitude":
        n = momentum_norm(self)
        if n == 0:
            raise ValidationError("cannot normalize a zero amplitude")
        return replace(self, data=self.data / np.sqrt(n))


def momentum_norm(amp: MomentumAmplitude) -> float:
    """Discrete quadrature of the momentum normalization integral.

    sum_k |psitilde(k)|^2 * d3p/(2 pi hbar)^3 = sum_k |psitilde(k)|^2 / V.
    """
    return float(np.sum(np.abs(amp.data) ** 2) / amp.grid.volume)


def photon_energies(grid: Grid3, units: Units) -> np.ndarray:
    """On-shell single-mode energies E(k) = c*hbar*|k| on the lattice."""
    return units.c * units.hbar * grid.k_magnitude


def energy_expectation_momentum(amp: MomentumAmplitude) -> float:
    """Mean photon energy sum_k E(k) |psitilde(k)|^2 / V."""
    _require_onshell(amp)
    weights = np.sum(np.abs(amp.data) ** 2, axis=0)
    return float(np.sum(photon_energies(amp.grid, amp.units) * weights) / amp.grid.volume)


def synthesize_onshell(
    amp: MomentumAmplitude,
    t: float = 0.0,
    weight: WeightChoice = WeightChoice.SQRT_ENERGY,
    helicity: Helicity | int = Helicity.PLUS,
) -> ComplexVectorField:
    """Build the coordinate-space wave function at time t from an on-shell
    amplitude, every mode oscillating at its own frequency c|k|.

    The returned field is tagged with the requested helicity; on-shell
    amplitudes for helicity s are physically those polarized along e_s(k),
    but any transverse amplitude is accepted and synthesized literally.
    """
    _require_onshell(amp)
    if not amp.transverse:
        raise ValidationError("synthesize_onshell needs a transverse-flagged amplitude")
    weight = WeightChoice(weight)
    grid = amp.grid
    kmag = grid.k_magnitude

    if weight is WeightChoice.SQRT_ENERGY:
        f = np.sqrt(photon_energies(grid, amp.units))
    else:
        f = np.ones_like(kmag)
    phase = np.exp(-1j * amp.units.c * kmag * float(t))

    # ifftn carries 1/N; with the per-mode constant 1/V this yields
    # (1/V) sum_k ... exp(i k.r) evaluated on the lattice.
    spectral = amp.data * (f * phase)[None] * (grid.npoints / grid.volume)
    data = np.fft.ifftn(spectral, axes=(1, 2, 3))
    return ComplexVectorField(
        grid=grid,
        data=data,
        time=float(t),
        helicity=Helicity(helicity),
        space="coordinate",
        units=amp.units,
    )


def amplitude_from_field(
    psi: ComplexVectorField,
    weight: WeightChoice = WeightChoice.SQRT_ENERGY,
) -> MomentumAmplitude:
    """Invert the synthesis at the field's own time: recover the amplitude
    whose weight-f synthesis reproduces psi.

    Longitudinal and k=0 content has no on-shell counterpart and is
    dropped; the transverse flag of the result is always set.
    """
    weight = WeightChoice(weight)
    psi_k = psi.to_momentum() if psi.space != MOMENTUM else psi.copy()
    grid = psi.grid
    kmag = grid.k_magnitude

    kv = grid.k_vectors
    k2 = kmag**2
    nonzero = k2 > 0
    inv_k2 = np.zeros_like(k2)
    inv_k2[nonzero] = 1.0 / k2[nonzero]
    k_dot = kv[0] * psi_k.data[0] + kv[1] * psi_k.data[1] + kv[2] * psi_k.data[2]
    transverse = psi_k.data - kv * (k_dot * inv_k2)[None]
    transverse[:, 0, 0, 0] = 0.0

    if weight is WeightChoice.SQRT_ENERGY:
        f = np.sqrt(photon_energies(grid, psi.units))
    else:
        f = np.ones_like(kmag)
    inv_f = np.zeros_like(kmag)
    np.divide(1.0, f, out=inv_f, where=f > 0)
    phase = np.exp(+1j * psi.units.c * kmag * psi.time)

    data = transverse * (inv_f * phase)[None] * (grid.volume / grid.npoints)
    return MomentumAmplitude(grid=grid, data=data, transverse=True, units=psi.units)


def _require_onshell(amp: MomentumAmplitude) -> None:
    scale = float(np.max(np.abs(amp.data)))
    if scale > 0 and float(np.max(np.abs(amp.data[:, 0, 0, 0]))) > 1e-13 * scale:
        raise ValidationError("k=0 amplitude must vanish (E=0 is off the photon shell)")
