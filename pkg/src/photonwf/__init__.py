"""Numerical toolkit for the single-photon Maxwell wave function.

Builds Riemann-Silberstein fields from (E, B), evolves them exactly per
Fourier mode, checks the energy-normalization identities, and models the
transverse-spatial Wigner / displaced-parity (Sagnac) measurement scheme
for single photons and photon pairs.
"""

from .errors import FormatError, InvariantError, PhotonwfError, ValidationError
from .fields import (
    ComplexVectorField,
    Helicity,
    RealFieldPair,
    curl_spectral,
    riemann_silberstein,
    split_real_imag,
    transverse_project,
)
from .grids import Grid1, Grid3, Units, make_grid
from .io import read_pwf, write_pwf, write_scan_csv, write_wigner_csv
from .normalization import (
    MomentumAmplitude,
    WeightChoice,
    amplitude_from_field,
    energy_expectation_momentum,
    momentum_norm,
    synthesize_onshell,
)
from .propagator import (
    HelicityBasis,
    StepperConfig,
    cross_check_deviation,
    energy,
    evolve_maxwell_real,
    evolve_spectral,
    field_energy,
    helicity_basis,
)
from .states import (
    circular_mode,
    displaced_gaussian,
    gaussian_wavepacket,
    hermite_gauss,
    hermite_gauss_2d,
    hermite_gauss_profile,
    random_bandlimited,
    single_mode,
    two_photon_gaussian,
)
from .wigner import (
    PhaseSpacePoint,
    TransverseState,
    TwoPhotonState,
    WignerGrid,
    displace,
    displaced_parity_expectation,
    joint_wigner_two_photon,
    parity,
    sagnac_count_rate,
    two_photon_coincidence,
    wigner_1d,
    wigner_2d,
    wigner_from_count_rate,
)

__version__ = "0.1.0"

__all__ = [
    "PhotonwfError", "ValidationError", "InvariantError", "FormatError",
    "Units", "Grid3", "Grid1", "make_grid",
    "Helicity", "ComplexVectorField", "RealFieldPair",
    "riemann_silberstein", "split_real_imag", "transverse_project", "curl_spectral",
    "HelicityBasis", "helicity_basis", "StepperConfig",
    "evolve_spectral", "evolve_maxwell_real", "energy", "field_energy",
    "cross_check_deviation",
    "MomentumAmplitude", "WeightChoice", "momentum_norm",
    "synthesize_onshell", "energy_expectation_momentum", "amplitude_from_field",
    "TransverseState", "TwoPhotonState", "PhaseSpacePoint", "WignerGrid",
    "wigner_1d", "wigner_2d", "joint_wigner_two_photon",
    "parity", "displace", "displaced_parity_expectation",
    "sagnac_count_rate", "wigner_from_count_rate", "two_photon_coincidence",
    "gaussian_wavepacket", "single_mode", "circular_mode", "random_bandlimited",
    "hermite_gauss", "hermite_gauss_2d", "hermite_gauss_profile",
    "displaced_gaussian", "two_photon_gaussian",
    "read_pwf", "write_pwf", "write_wigner_csv", "write_scan_csv",
]
