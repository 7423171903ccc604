"""Independent brute-force oracles used to pin expected values.

Nothing here calls into the package's FFT-based transforms: Wigner values
come from dense trapezoid quadrature of the defining integral applied to
closed-form wave functions, momentum densities from direct Fourier sums.
"""

import math

import numpy as np


def trapezoid(f: np.ndarray, d: float, axis: int = -1) -> np.ndarray:
    total = np.sum(f, axis=axis) - 0.5 * (np.take(f, 0, axis=axis) + np.take(f, -1, axis=axis))
    return total * d


def hg(order: int, width: float = 1.0):
    """Closed-form normalized Hermite-Gauss mode as a callable."""
    norm = np.pi**0.25 * math.sqrt(2.0**order * math.factorial(order) * width)

    def psi(x):
        xi = np.asarray(x, dtype=float) / width
        coeffs = np.zeros(order + 1)
        coeffs[order] = 1.0
        return np.polynomial.hermite.hermval(xi, coeffs) * np.exp(-0.5 * xi**2) / norm

    return psi


def displaced_gauss(center: float, momentum: float, width: float = 1.0, hbar: float = 1.0):
    g = hg(0, width)

    def psi(x):
        x = np.asarray(x, dtype=float)
        return g(x - center) * np.exp(1j * momentum * x / hbar)

    return psi


def superpose(psi_a, psi_b, wa=1.0, wb=1.0):
    s = math.sqrt(abs(wa) ** 2 + abs(wb) ** 2)

    def psi(x):
        return (wa * psi_a(x) + wb * psi_b(x)) / s

    return psi


def wigner_quadrature(psi, x0, p0, hbar=1.0, xi_max=10.0, n_xi=4001):
    """W(x0, p0) by dense trapezoid quadrature of the defining integral."""
    xi = np.linspace(-xi_max, xi_max, n_xi)
    integrand = np.conj(psi(x0 + xi)) * psi(x0 - xi) * np.exp(2j * p0 * xi / hbar)
    val = trapezoid(integrand, xi[1] - xi[0])
    return float(val.real) / (np.pi * hbar)


def wigner_quadrature_grid(psi, x0s, p0s, hbar=1.0, xi_max=10.0, n_xi=4001):
    """Quadrature W on the outer grid of x0s and p0s; shape (len(x0s), len(p0s))."""
    out = np.empty((len(x0s), len(p0s)))
    xi = np.linspace(-xi_max, xi_max, n_xi)
    d = xi[1] - xi[0]
    for i, x0 in enumerate(x0s):
        corr = np.conj(psi(x0 + xi)) * psi(x0 - xi)
        kernel = np.exp(2j * np.outer(p0s, xi) / hbar)
        out[i] = trapezoid(kernel * corr[None, :], d, axis=1).real / (np.pi * hbar)
    return out


def momentum_density_direct(amplitude, x, dx, p_values, hbar=1.0):
    """|psitilde(p)|^2 with psitilde the direct Fourier sum of lattice samples."""
    phases = np.exp(-1j * np.outer(p_values, x) / hbar)
    psit = phases @ amplitude * dx / np.sqrt(2.0 * np.pi * hbar)
    return np.abs(psit) ** 2
