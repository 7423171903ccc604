"""Transverse-spatial Wigner functions and the displaced-parity count model.

The Wigner transform used throughout is the symmetric-kernel definition

    W(x, p) = (1/(pi hbar)^d) integral psi*(x + s) psi(x - s)
              exp(2 i p.s / hbar) d^d s,

computed by FFT over the separation s.  The separation runs on a
half-step lattice (band-limited interpolation doubles each axis), which
makes both marginals of the discrete W exact for band-limited states and
gives the momentum axis the full conjugate range with spacing
pi*hbar/L.

An out-of-plane Sagnac interferometer measures the same object: the mean
photo-count rate of the ideal instrument is

    R(x0, p0) = (1 + <psi| D(x0,p0) P D(x0,p0)^dag |psi>) / 2,

with P the parity operator and D the phase-space displacement, and the
bracket equals (pi hbar)^d W(x0, p0).  Both routes are implemented
independently so they cross-validate each other.
"""

import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import InvariantError, ValidationError
from .grids import Grid1, Units

TWO_PHOTON_LATTICE_CAP = 64

_IMAG_RESIDUE_TOL = 1e-12


@dataclass
class TransverseState:
    """Scalar transverse amplitude on one or two centered periodic axes."""

    grids: tuple[Grid1, ...]
    amplitude: np.ndarray
    units: Units = field(default_factory=Units)

    def __post_init__(self):
        self.grids = tuple(self.grids)
        if len(self.grids) not in (1, 2):
            raise ValidationError("TransverseState supports 1 or 2 transverse axes")
        self.amplitude = np.asarray(self.amplitude, dtype=np.complex128)
        expected = tuple(g.n for g in self.grids)
        if self.amplitude.shape != expected:
            raise ValidationError(
                f"amplitude shape {self.amplitude.shape} does not match grids {expected}"
            )
        if not np.all(np.isfinite(self.amplitude.view(np.float64))):
            raise ValidationError("amplitude must be finite")

    @property
    def ndim(self) -> int:
        return len(self.grids)

    @property
    def cell(self) -> float:
        out = 1.0
        for g in self.grids:
            out *= g.dx
        return out

    @property
    def norm(self) -> float:
        """L2 norm sqrt(integral |psi|^2)."""
        return float(np.sqrt(np.sum(np.abs(self.amplitude) ** 2) * self.cell))

    def normalized(self) -> "TransverseState":
        n = self.norm
        if n == 0:
            raise ValidationError("cannot normalize a zero state")
        return replace(self, amplitude=self.amplitude / n)


@dataclass
class TwoPhotonState(TransverseState):
    """Joint amplitude psi(x1, x2), one transverse axis per photon.

    Kept to desk scale: at most 64 points per axis.
    """

    def __post_init__(self):
        super().__post_init__()
        if len(self.grids) != 2:
            raise ValidationError("TwoPhotonState needs exactly two axes (x1, x2)")
        for g in self.grids:
            if g.n > TWO_PHOTON_LATTICE_CAP:
                raise ValidationError(
                    f"two-photon lattice capped at {TWO_PHOTON_LATTICE_CAP} points "
                    f"per axis, got {g.n}"
                )


@dataclass(frozen=True)
class PhaseSpacePoint:
    """Displacement target: position offset x0 and momentum offset p0 per axis.

    Scalars are accepted for single-axis states.
    """

    x0: tuple[float, ...]
    p0: tuple[float, ...]

    def __post_init__(self):
        x0 = tuple(float(v) for v in np.atleast_1d(self.x0))
        p0 = tuple(float(v) for v in np.atleast_1d(self.p0))
        if len(x0) != len(p0):
            raise ValidationError("x0 and p0 must have the same number of axes")
        if not all(map(np.isfinite, x0 + p0)):
            raise ValidationError("phase-space point must be finite")
        object.__setattr__(self, "x0", x0)
        object.__setattr__(self, "p0", p0)

    @property
    def ndim(self) -> int:
        return len(self.x0)


@dataclass
class WignerGrid:
    """Sampled Wigner function with its position and momentum axes.

    values has one position axis per entry of xs followed by one momentum
    axis per entry of ps (e.g. (x, p) in 1D, (x1, x2, p1, p2) for pairs).
    """

    xs: tuple[np.ndarray, ...]
    ps: tuple[np.ndarray, ...]
    values: np.ndarray
    hbar: float = 1.0

    @property
    def ndim(self) -> int:
        return len(self.xs)

    @property
    def dx(self) -> tuple[float, ...]:
        return tuple(float(x[1] - x[0]) for x in self.xs)

    @property
    def dp(self) -> tuple[float, ...]:
        return tuple(float(p[1] - p[0]) for p in self.ps)

    def integral(self) -> float:
        w = float(np.prod(self.dx) * np.prod(self.dp))
        return float(np.sum(self.values) * w)

    def marginal_position(self) -> np.ndarray:
        """Integrate out all momentum axes; returns |psi(x)|^2 on the lattice."""
        axes = tuple(range(self.ndim, 2 * self.ndim))
        return self.values.sum(axis=axes) * float(np.prod(self.dp))

    def marginal_momentum(self) -> tuple[tuple[np.ndarray, ...], np.ndarray]:
        """Integrate out all position axes; returns (axes, density).

        On a periodic box the momentum content of a state is supported on
        the conjugate lattice (spacing 2*pi*hbar/L), half as fine as this
        grid's momentum axes, so the marginal is integrated per conjugate
        cell.  The returned density reproduces |psitilde(p)|^2 there.
        """
        axes = tuple(range(self.ndim))
        fine = self.values.sum(axis=axes) * float(np.prod(self.dx))
        coarse_axes = tuple(p[::2].copy() for p in self.ps)
        for ax in range(fine.ndim):
            n2 = fine.shape[ax]
            fine = fine.reshape(fine.shape[:ax] + (n2 // 2, 2) + fine.shape[ax + 1 :])
            fine = fine.mean(axis=ax + 1)
        return coarse_axes, fine


# ---------------------------------------------------------------------------
# Core transform
# ---------------------------------------------------------------------------

def _interpolate_double(values: np.ndarray, axis: int) -> np.ndarray:
    """Band-limited (zero-padding) interpolation onto the half-step lattice."""
    n = values.shape[axis]
    spec = np.fft.fft(values, axis=axis)
    shape = list(values.shape)
    shape[axis] = 2 * n
    padded = np.zeros(shape, dtype=np.complex128)
    h = n // 2

    def sl(a, b):
        out = [slice(None)] * len(shape)
        out[axis] = slice(a, b)
        return tuple(out)

    padded[sl(0, h)] = spec[sl(0, h)]
    padded[sl(2 * n - (n - h - 1), 2 * n)] = spec[sl(h + 1, n)]
    # split the Nyquist bin symmetrically so real signals stay real
    nyq = spec[sl(h, h + 1)]
    padded[sl(h, h + 1)] = 0.5 * nyq
    padded[sl(2 * n - h, 2 * n - h + 1)] = 0.5 * nyq
    return np.fft.ifft(padded, axis=axis) * 2.0


def _momentum_axis(n: int, dx: float, hbar: float) -> np.ndarray:
    """Ascending momentum lattice of 2n points with spacing pi*hbar/(n*dx)."""
    return (np.arange(2 * n) - n) * np.pi * hbar / (n * dx)


def _check_real(values: np.ndarray) -> np.ndarray:
    residue = float(np.max(np.abs(values.imag)))
    scale = max(1.0, float(np.max(np.abs(values.real))))
    if residue > _IMAG_RESIDUE_TOL * scale:
        raise InvariantError(
            f"Wigner transform produced imaginary residue {residue:.3e}"
        )
    return np.ascontiguousarray(values.real)


def _require_normalizable(state: TransverseState) -> TransverseState:
    if state.norm == 0:
        raise ValidationError("state has zero norm")
    return state.normalized()


def wigner_1d(state: TransverseState) -> WignerGrid:
    """Discrete Wigner function of a 1D transverse state.

    Output axes: the state's n lattice positions by 2n momentum values
    covering (-pi hbar/dx, pi hbar/dx].  Integrates to 1 and reproduces
    |psi(x)|^2 as its position marginal exactly.
    """
    if state.ndim != 1:
        raise ValidationError("wigner_1d expects a 1-axis state")
    state = _require_normalizable(state)
    hbar = state.units.hbar
    g = state.grids[0]
    n, dxi = g.n, g.dx / 2.0

    psi2 = _interpolate_double(state.amplitude, axis=0)
    idx = np.arange(2 * n)
    plus = (2 * idx[:n, None] + idx[None, :]) % (2 * n)
    minus = (2 * idx[:n, None] - idx[None, :]) % (2 * n)
    corr = np.conj(psi2[plus]) * psi2[minus]

    w = np.fft.ifft(corr, axis=1) * (2 * n) * (dxi / (np.pi * hbar))
    w = np.fft.fftshift(w, axes=1)
    return WignerGrid(
        xs=(g.x.copy(),),
        ps=(_momentum_axis(n, g.dx, hbar),),
        values=_check_real(w),
        hbar=hbar,
    )


def _wigner_two_axes(amplitude: np.ndarray, grids, hbar: float) -> np.ndarray:
    """Doubled-lattice Wigner transform over two axes; values indexed
    (x_a, x_b, p_a, p_b) with 2n momentum points per axis.

    Works block-wise over the first position index so peak memory stays at
    one real output array plus a single complex slab.
    """
    (ga, gb) = grids
    na, nb = ga.n, gb.n
    psi2 = _interpolate_double(_interpolate_double(amplitude, 0), 1)

    ia = np.arange(2 * na)
    ib = np.arange(2 * nb)
    plus_a = (2 * ia[:na, None] + ia[None, :]) % (2 * na)
    minus_a = (2 * ia[:na, None] - ia[None, :]) % (2 * na)
    plus_b = (2 * ib[:nb, None] + ib[None, :]) % (2 * nb)
    minus_b = (2 * ib[:nb, None] - ib[None, :]) % (2 * nb)

    scale = (ga.dx / 2.0) * (gb.dx / 2.0) / (np.pi * hbar) ** 2 * (4 * na * nb)
    out = np.empty((na, nb, 2 * na, 2 * nb), dtype=np.float64)
    residue = 0.0
    for i in range(na):
        # corr[j, ma, mb] = psi2*(2i+ma, 2j+mb) psi2(2i-ma, 2j-mb)
        block_plus = psi2[plus_a[i][:, None, None], plus_b[None, :, :]]
        block_minus = psi2[minus_a[i][:, None, None], minus_b[None, :, :]]
        corr = np.conj(block_plus) * block_minus  # (ma, nb, mb)
        corr = np.moveaxis(corr, 1, 0)  # (nb, ma, mb)
        block = np.fft.ifft2(corr, axes=(1, 2)) * scale
        residue = max(residue, float(np.max(np.abs(block.imag))))
        out[i] = block.real
    if residue > _IMAG_RESIDUE_TOL * max(1.0, float(np.max(np.abs(out)))):
        raise InvariantError(f"Wigner transform produced imaginary residue {residue:.3e}")
    return np.fft.fftshift(out, axes=(2, 3))


def wigner_2d(state: TransverseState) -> WignerGrid:
    """Wigner function of a 2D transverse state; axes (x, y, px, py)."""
    if state.ndim != 2:
        raise ValidationError("wigner_2d expects a 2-axis state")
    state = _require_normalizable(state)
    hbar = state.units.hbar
    ga, gb = state.grids
    values = _wigner_two_axes(state.amplitude, (ga, gb), hbar)
    return WignerGrid(
        xs=(ga.x.copy(), gb.x.copy()),
        ps=(_momentum_axis(ga.n, ga.dx, hbar), _momentum_axis(gb.n, gb.dx, hbar)),
        values=values,
        hbar=hbar,
    )


def joint_wigner_two_photon(state: TwoPhotonState) -> WignerGrid:
    """Joint Wigner function of a photon pair; axes (x1, x2, p1, p2).

    Factorizes into the product of the single-photon Wigner functions
    exactly when the amplitude is separable.
    """
    state = _require_normalizable(state)
    hbar = state.units.hbar
    g1, g2 = state.grids
    values = _wigner_two_axes(state.amplitude, (g1, g2), hbar)
    return WignerGrid(
        xs=(g1.x.copy(), g2.x.copy()),
        ps=(_momentum_axis(g1.n, g1.dx, hbar), _momentum_axis(g2.n, g2.dx, hbar)),
        values=values,
        hbar=hbar,
    )


# ---------------------------------------------------------------------------
# Parity, displacement, count rates
# ---------------------------------------------------------------------------

def parity(state: TransverseState, axes: tuple[int, ...] | None = None) -> TransverseState:
    """Reflect the amplitude through the origin, x -> -x on the given axes
    (all by default).  Exact involution on the centered lattice."""
    axes = tuple(range(state.ndim)) if axes is None else tuple(axes)
    amp = state.amplitude
    for ax in axes:
        n = state.grids[ax].n
        idx = (-np.arange(n)) % n
        amp = np.take(amp, idx, axis=ax)
    return replace(state, amplitude=amp)


def displace(state: TransverseState, pt: PhaseSpacePoint) -> TransverseState:
    """Phase-space displacement psi'(x) = exp(i p0.x/hbar) psi(x - x0).

    Lattice-aligned x0 is a cyclic roll; sub-cell offsets use Fourier-shift
    interpolation (exact for band-limited states) and emit a warning.
    """
    if pt.ndim != state.ndim:
        raise ValidationError(
            f"phase-space point has {pt.ndim} axes, state has {state.ndim}"
        )
    amp = state.amplitude
    hbar = state.units.hbar
    for ax, (g, x0) in enumerate(zip(state.grids, pt.x0)):
        if x0 == 0.0:
            continue
        steps = x0 / g.dx
        if abs(steps - round(steps)) < 1e-9:
            amp = np.roll(amp, round(steps), axis=ax)
        else:
            warnings.warn(
                f"sub-cell displacement {x0:g} on axis {ax} interpolated spectrally",
                stacklevel=2,
            )
            k = g.k_axis()
            shape = [1] * state.ndim
            shape[ax] = g.n
            shift = np.exp(-1j * k * x0).reshape(shape)
            amp = np.fft.ifft(np.fft.fft(amp, axis=ax) * shift, axis=ax)
    for ax, (g, p0) in enumerate(zip(state.grids, pt.p0)):
        if p0 == 0.0:
            continue
        shape = [1] * state.ndim
        shape[ax] = g.n
        amp = amp * np.exp(1j * p0 * g.x / hbar).reshape(shape)
    return replace(state, amplitude=amp)


def displaced_parity_expectation(state: TransverseState, pt: PhaseSpacePoint) -> float:
    """<psi| D(pt) P D(pt)^dag |psi> for a normalized state; real by
    construction (P is Hermitian), imaginary residue asserted away."""
    state = _require_normalizable(state)
    inverse = PhaseSpacePoint(tuple(-v for v in pt.x0), tuple(-v for v in pt.p0))
    shifted = displace(state, inverse)
    reflected = parity(shifted)
    bracket = np.sum(np.conj(shifted.amplitude) * reflected.amplitude) * state.cell
    if abs(bracket.imag) > _IMAG_RESIDUE_TOL * max(1.0, abs(bracket.real)):
        raise InvariantError(
            f"displaced-parity bracket has imaginary residue {bracket.imag:.3e}"
        )
    return float(bracket.real)


def sagnac_count_rate(state: TransverseState, pt: PhaseSpacePoint) -> float:
    """Mean photo-count rate of the ideal parity-inverting interferometer.

    R = (1 + <D P D^dag>)/2, a probability per trial in [0, 1]; R - 1/2 is
    proportional to the Wigner function at pt with constant (pi hbar)^d / 2.
    Unit visibility, no dark counts.
    """
    return 0.5 * (1.0 + displaced_parity_expectation(state, pt))


def wigner_from_count_rate(rate: float, ndim: int, hbar: float) -> float:
    """Invert the ideal count-rate model to a Wigner value."""
    return (2.0 * rate - 1.0) / (np.pi * hbar) ** ndim


def two_photon_coincidence(
    state: TwoPhotonState,
    pt1: PhaseSpacePoint,
    pt2: PhaseSpacePoint,
) -> dict:
    """Displaced-parity product for a photon pair.

    Returns the bilinear bracket <psi| D1 P1 D1^dag (x) D2 P2 D2^dag |psi>,
    the derived joint Wigner value bracket/(pi hbar)^2, and the idealized
    coincidence probability (1 + bracket)/2.
    """
    if pt1.ndim != 1 or pt2.ndim != 1:
        raise ValidationError("each photon takes a single-axis phase-space point")
    state = _require_normalizable(state)
    joint_pt = PhaseSpacePoint((-pt1.x0[0], -pt2.x0[0]), (-pt1.p0[0], -pt2.p0[0]))
    shifted = displace(state, joint_pt)
    reflected = parity(shifted)  # P1 (x) P2 reflects both axes
    bracket = np.sum(np.conj(shifted.amplitude) * reflected.amplitude) * state.cell
    if abs(bracket.imag) > _IMAG_RESIDUE_TOL * max(1.0, abs(bracket.real)):
        raise InvariantError(
            f"two-photon bracket has imaginary residue {bracket.imag:.3e}"
        )
    hbar = state.units.hbar
    value = float(bracket.real)
    return {
        "bracket": value,
        "joint_wigner": value / (np.pi * hbar) ** 2,
        "coincidence_rate": 0.5 * (1.0 + value),
    }
