"""Phase-space cross-checks: the Wigner transform of a grid wavefunction,
the truncated phase-space evolution equation for polynomial potentials, and
a split-operator grid propagator used as the independent time-evolution
route.

Conventions: uniform x grid of power-of-two size N excluding the right
endpoint; the transform samples the half-shifted autocorrelation at even
lags, which puts the p grid at spacing pi*hbar/(N*dx).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import factorial

import numpy as np


def _is_power_of_two(n: int) -> bool:
    return n >= 2 and (n & (n - 1)) == 0


def uniform_grid(x_max: float, n: int) -> np.ndarray:
    """Symmetric grid [-x_max, x_max) with n points, right endpoint excluded."""
    if not _is_power_of_two(n):
        raise ValueError("grid size must be a power of two")
    dx = 2.0 * x_max / n
    return -x_max + dx * np.arange(n)


@dataclass
class WavefunctionGrid:
    """Complex amplitudes on a uniform position grid."""

    x: np.ndarray
    psi: np.ndarray

    def __post_init__(self):
        if self.x.ndim != 1 or self.x.shape != self.psi.shape:
            raise ValueError("grid and amplitudes must be matching 1-d arrays")
        if not _is_power_of_two(self.x.size):
            raise ValueError("grid size must be a power of two")
        steps = np.diff(self.x)
        if not np.allclose(steps, steps[0], rtol=1e-12, atol=0.0):
            raise ValueError("grid must be uniform")

    @property
    def dx(self) -> float:
        return float(self.x[1] - self.x[0])

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.psi) ** 2) * self.dx)

    def normalized(self) -> "WavefunctionGrid":
        return WavefunctionGrid(self.x, self.psi / math.sqrt(self.norm_squared()))

    def density(self) -> np.ndarray:
        return np.abs(self.psi) ** 2


def gaussian_state(x: np.ndarray, x0: float, p0: float, sigma: float,
                   hbar: float = 1.0) -> WavefunctionGrid:
    """Normalized Gaussian packet with position spread sigma."""
    psi = np.exp(-((x - x0) ** 2) / (4.0 * sigma ** 2) + 1j * p0 * x / hbar)
    return WavefunctionGrid(x, psi).normalized()


def oscillator_eigenstate(x: np.ndarray, n: int, mass: float = 1.0,
                          frequency: float = 1.0,
                          hbar: float = 1.0) -> WavefunctionGrid:
    """n-th harmonic eigenstate, renormalized on the grid."""
    scale = math.sqrt(mass * frequency / hbar)
    xi = scale * x
    coeffs = np.zeros(n + 1)
    coeffs[n] = 1.0
    herm = np.polynomial.hermite.hermval(xi, coeffs)
    psi = herm * np.exp(-0.5 * xi ** 2)
    return WavefunctionGrid(x, psi.astype(complex)).normalized()


@dataclass
class WignerGrid:
    """Real phase-space density W(x, p) on a rectangular grid (x rows)."""

    x: np.ndarray
    p: np.ndarray
    w: np.ndarray

    @property
    def dx(self) -> float:
        return float(self.x[1] - self.x[0])

    @property
    def dp(self) -> float:
        return float(self.p[1] - self.p[0])

    def total(self) -> float:
        return float(np.sum(self.w) * self.dx * self.dp)

    def marginal_x(self) -> np.ndarray:
        return np.sum(self.w, axis=1) * self.dp

    def marginal_p(self) -> np.ndarray:
        return np.sum(self.w, axis=0) * self.dx


def wigner_transform(wf: WavefunctionGrid, hbar: float = 1.0) -> WignerGrid:
    """Half-shifted autocorrelation Fourier transform of a normalized state.

    The x marginal reproduces |psi(x)|^2 identically on the grid; the p grid
    spans +-pi*hbar/(2*dx).
    """
    if abs(wf.norm_squared() - 1.0) > 1e-8:
        raise ValueError("wavefunction must be normalized")
    psi = wf.psi
    n = psi.size
    dx = wf.dx
    shifts = np.fft.fftfreq(n, d=1.0 / n).astype(int)  # 0, 1, .., -1 order
    corr = np.zeros((n, n), dtype=complex)
    j = np.arange(n)
    for col, r in enumerate(shifts):
        plus = j + r
        minus = j - r
        valid = (plus >= 0) & (plus < n) & (minus >= 0) & (minus < n)
        corr[valid, col] = np.conj(psi[plus[valid]]) * psi[minus[valid]]
    w = n * np.fft.ifft(corr, axis=1) * (dx / (math.pi * hbar))
    w = np.fft.fftshift(w.real, axes=1)
    p = np.fft.fftshift(np.fft.fftfreq(n, d=1.0 / n)) * math.pi * hbar / (n * dx)
    return WignerGrid(wf.x.copy(), p, w)


def momentum_wavefunction(wf: WavefunctionGrid, p: np.ndarray,
                          hbar: float = 1.0) -> np.ndarray:
    """psi-tilde(p) = (2 pi hbar)^{-1/2} integral psi(x) exp(-i p x / hbar) dx."""
    phases = np.exp(-1j * np.outer(p, wf.x) / hbar)
    return phases @ wf.psi * wf.dx / math.sqrt(2.0 * math.pi * hbar)


def _spectral_derivative(field: np.ndarray, spacing: float, order: int,
                         axis: int) -> np.ndarray:
    n = field.shape[axis]
    k = 2.0 * math.pi * np.fft.fftfreq(n, d=spacing)
    shape = [1, 1]
    shape[axis] = n
    mult = (1j * k.reshape(shape)) ** order
    return np.fft.ifft(np.fft.fft(field, axis=axis) * mult, axis=axis).real


_FD8_WEIGHTS = (4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0)


def _fd8_first_derivative(field: np.ndarray, spacing: float,
                          axis: int) -> np.ndarray:
    out = np.zeros_like(field)
    for offset, weight in enumerate(_FD8_WEIGHTS, start=1):
        out += weight * (np.roll(field, -offset, axis=axis)
                         - np.roll(field, offset, axis=axis))
    return out / spacing


def _derivative(field: np.ndarray, spacing: float, order: int, axis: int,
                method: str) -> np.ndarray:
    if method == "spectral":
        return _spectral_derivative(field, spacing, order, axis)
    if method == "fd8":
        out = field
        for _ in range(order):
            out = _fd8_first_derivative(out, spacing, axis)
        return out
    raise ValueError(f"unknown derivative method {method!r}")


def polynomial_derivative(coeffs, order: int = 1) -> np.ndarray:
    """Coefficient list of the order-th derivative of sum_k c_k x^k."""
    out = np.asarray(coeffs, dtype=float)
    for _ in range(order):
        out = out[1:] * np.arange(1, out.size)
    return out


def _polyval(x: np.ndarray, coeffs) -> np.ndarray:
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.size == 0:
        return np.zeros_like(x)
    return np.polynomial.polynomial.polyval(x, coeffs)


def moyal_rhs(grid: WignerGrid, potential_coeffs, mass: float = 1.0,
              hbar: float = 1.0, method: str = "spectral") -> np.ndarray:
    """Right-hand side of the phase-space evolution equation:

        -(p/m) dW/dx + V'(x) dW/dp
        + sum_{l>=1} V^(2l+1)(x)/(2l+1)! (-hbar^2/4)^l d^{2l+1}W/dp^{2l+1}

    The series terminates for polynomial potentials.
    """
    coeffs = np.asarray(potential_coeffs, dtype=float)
    w = grid.w
    rhs = -(grid.p[None, :] / mass) * _derivative(w, grid.dx, 1, 0, method)
    v1 = polynomial_derivative(coeffs, 1)
    if v1.size:
        vx = _polyval(grid.x, v1)
        rhs = rhs + vx[:, None] * _derivative(w, grid.dp, 1, 1, method)
    degree = coeffs.size - 1
    for el in range(1, degree // 2 + 1):
        order = 2 * el + 1
        v_high = polynomial_derivative(coeffs, order)
        if not v_high.size or not np.any(v_high):
            continue
        vx = _polyval(grid.x, v_high)
        factor = (-(hbar ** 2) / 4.0) ** el / factorial(order)
        rhs = rhs + factor * vx[:, None] * _derivative(w, grid.dp, order, 1, method)
    return rhs


def schrodinger_step(wf: WavefunctionGrid, potential_coeffs, mass: float = 1.0,
                     hbar: float = 1.0, dt: float = 1e-3) -> WavefunctionGrid:
    """One split-operator step (half potential, full kinetic, half potential).

    Rejects steps whose largest kinetic phase advance exceeds pi: beyond
    that the splitting no longer resolves the dynamics on this grid.
    """
    n = wf.x.size
    k = 2.0 * math.pi * np.fft.fftfreq(n, d=wf.dx)
    max_phase = hbar * np.max(k) ** 2 * abs(dt) / (2.0 * mass)
    if max_phase > math.pi:
        raise ValueError(
            f"dt too large for this grid: kinetic phase {max_phase:.3g} > pi")
    v = _polyval(wf.x, potential_coeffs)
    half_v = np.exp(-0.5j * v * dt / hbar)
    kinetic = np.exp(-0.5j * hbar * k ** 2 * dt / mass)
    psi = half_v * wf.psi
    psi = np.fft.ifft(kinetic * np.fft.fft(psi))
    psi = half_v * psi
    return WavefunctionGrid(wf.x, psi)


def propagate(wf: WavefunctionGrid, potential_coeffs, mass: float,
              hbar: float, dt: float, n_steps: int) -> WavefunctionGrid:
    for _ in range(n_steps):
        wf = schrodinger_step(wf, potential_coeffs, mass, hbar, dt)
    return wf


def check_grid_resolution(wf: WavefunctionGrid, tol: float = 1e-6):
    """Reject states the grid cannot represent instead of guessing."""
    edge = max(abs(wf.psi[0]), abs(wf.psi[-1]))
    if edge > tol:
        raise ValueError(f"state reaches the grid boundary (|psi| = {edge:.3g})")
    spectrum = np.abs(np.fft.fft(wf.psi)) ** 2
    n = spectrum.size
    tail = np.sum(spectrum[n // 4: 3 * n // 4]) / np.sum(spectrum)
    if tail > tol:
        raise ValueError(f"state has unresolved momentum content ({tail:.3g})")


def consistency_residual(wf: WavefunctionGrid, potential_coeffs,
                         mass: float = 1.0, hbar: float = 1.0,
                         dt: float = 1e-3, method: str = "spectral") -> float:
    """Relative L2 gap between the finite-difference time derivative of the
    transformed state and the phase-space equation's right-hand side.

    The two sides come from independent routes: grid propagation plus
    transform versus phase-space derivatives of the single snapshot.
    """
    check_grid_resolution(wf)
    plus = schrodinger_step(wf, potential_coeffs, mass, hbar, dt)
    minus = schrodinger_step(wf, potential_coeffs, mass, hbar, -dt)
    w_plus = wigner_transform(plus, hbar).w
    w_minus = wigner_transform(minus, hbar).w
    w_dot = (w_plus - w_minus) / (2.0 * dt)
    grid = wigner_transform(wf, hbar)
    rhs = moyal_rhs(grid, potential_coeffs, mass, hbar, method)
    denom = float(np.linalg.norm(rhs))
    if denom == 0.0:
        return float(np.linalg.norm(w_dot))
    return float(np.linalg.norm(w_dot - rhs)) / denom
