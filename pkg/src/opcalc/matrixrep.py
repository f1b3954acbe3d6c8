"""Truncated harmonic-oscillator matrices for one canonical pair.

The ladder construction gives Hermitian x, p with [x, p] = i*hbar*I
everywhere except the last basis state, so residual norms are taken on an
interior block that excludes a configurable margin of top states.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .algebra import NCPoly


@dataclass(frozen=True)
class InteriorProjector:
    """Restriction to the first dim - margin basis states."""

    margin: int

    def restrict(self, mat: np.ndarray) -> np.ndarray:
        dim = mat.shape[0]
        if not 0 <= self.margin < dim:
            raise ValueError(f"margin {self.margin} out of range for dim {dim}")
        keep = dim - self.margin
        return mat[:keep, :keep]


class OscillatorRep:
    """Dense x and p matrices in a truncated number basis."""

    def __init__(self, dim: int, hbar: float = 1.0, mass: float = 1.0,
                 frequency: float = 1.0):
        if dim < 4:
            raise ValueError("dim must be at least 4")
        if hbar <= 0 or mass <= 0 or frequency <= 0:
            raise ValueError("hbar, mass and frequency must be positive")
        self.dim = dim
        self.hbar = hbar
        self.mass = mass
        self.frequency = frequency
        lower = np.diag(np.sqrt(np.arange(1, dim)), k=1)  # annihilation
        raise_ = lower.T
        xscale = np.sqrt(hbar / (2.0 * mass * frequency))
        pscale = np.sqrt(hbar * mass * frequency / 2.0)
        self.x = xscale * (lower + raise_)
        self.p = 1j * pscale * (raise_ - lower)
        self._powers: dict[tuple[str, int], np.ndarray] = {}

    def power(self, which: str, n: int) -> np.ndarray:
        """Cached n-th power of the x or p matrix."""
        key = (which, n)
        cached = self._powers.get(key)
        if cached is not None:
            return cached
        if n == 0:
            out = np.eye(self.dim, dtype=complex)
        else:
            base = self.x if which == "x" else self.p
            out = self.power(which, n - 1) @ base
        self._powers[key] = out
        return out


def build_rep(dim: int, hbar: float = 1.0, mass: float = 1.0,
              frequency: float = 1.0) -> OscillatorRep:
    return OscillatorRep(dim, hbar=hbar, mass=mass, frequency=frequency)


def eval_ncpoly(f: NCPoly, rep: OscillatorRep,
                bindings: Mapping[str, complex] | None = None) -> np.ndarray:
    """Substitute matrices for the generators of a single-pair polynomial.

    The system commutator must evaluate to i*hbar of the representation;
    anything else cannot be realized by this backend.
    """
    system = f.system
    if system.n_pairs != 1:
        raise ValueError("matrix backend supports a single pair only")
    binds = {"hbar": rep.hbar}
    if bindings:
        binds.update(bindings)
    c_val = system.commutators[0].evaluate(binds)
    if abs(c_val - 1j * rep.hbar) > 1e-12 * max(1.0, rep.hbar):
        raise ValueError(f"commutator evaluates to {c_val}, need {1j * rep.hbar}")
    out = np.zeros((rep.dim, rep.dim), dtype=complex)
    for word, coeff in f.terms():
        a, b = word
        out += coeff.evaluate(binds) * (rep.power("x", a) @ rep.power("p", b))
    return out


def identity_residual(lhs: NCPoly, rhs: NCPoly, rep: OscillatorRep,
                      projector: InteriorProjector,
                      bindings: Mapping[str, complex] | None = None) -> float:
    """Relative Frobenius residual of two polynomials on the interior block."""
    lhs_mat = projector.restrict(eval_ncpoly(lhs, rep, bindings))
    rhs_mat = projector.restrict(eval_ncpoly(rhs, rep, bindings))
    scale = max(1.0, float(np.linalg.norm(lhs_mat)))
    return float(np.linalg.norm(lhs_mat - rhs_mat)) / scale


def matrix_residual(lhs: np.ndarray, rhs: np.ndarray,
                    projector: InteriorProjector) -> float:
    """Same normalization as identity_residual for pre-built matrices."""
    lhs_i = projector.restrict(lhs)
    rhs_i = projector.restrict(rhs)
    scale = max(1.0, float(np.linalg.norm(lhs_i)))
    return float(np.linalg.norm(lhs_i - rhs_i)) / scale


def lindblad_residual_numeric(dim: int, diffusion: float, hbar: float = 1.0,
                              rng: np.random.Generator | None = None,
                              rho: np.ndarray | None = None) -> float:
    """Frobenius residual of the diffusion generator vs the dissipator form
    on a Hermitian matrix (random if not supplied)."""
    rep = build_rep(dim, hbar=hbar)
    if rho is None:
        rng = np.random.default_rng(0) if rng is None else rng
        raw = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        rho = 0.5 * (raw + raw.conj().T)
    p = rep.p
    ddp = p @ rho - rho @ p
    lhs = -(diffusion / hbar ** 2) * (p @ ddp - ddp @ p)
    jump = np.sqrt(2.0 * diffusion) / hbar * p
    j_sq = jump @ jump
    rhs = -0.5 * (j_sq @ rho + rho @ j_sq) + jump @ rho @ jump
    return float(np.linalg.norm(lhs - rhs))
