"""Time evolution of operators: the bracket equation of motion, its
commutator form under standard canonical relations, two series expansions of
the right-hand side, and the diffusion-generator identity that lands on a
Lindblad dissipator.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .algebra import CanonicalSystem, NCPoly, commutator, delta_power
from .derivatives import higher_partial, partial_derivative
from .poisson import poisson_bracket_total
from .scalars import ScalarPoly, i_times

MAX_POTENTIAL_DEGREE = 8


@dataclass(frozen=True)
class HamiltonianSpec:
    """Single-particle Hamiltonian p^2/(2 mass) + V(x) with polynomial V.

    potential[k] is the coefficient of x^k. The mass must be an invertible
    scalar (a nonzero monomial such as a symbol or a number).
    """

    mass: ScalarPoly
    potential: tuple[ScalarPoly, ...]

    def __post_init__(self):
        if len(self.potential) - 1 > MAX_POTENTIAL_DEGREE:
            raise ValueError(f"potential degree capped at {MAX_POTENTIAL_DEGREE}")
        if self.mass.is_zero():
            raise ValueError("mass must be nonzero")
        self.mass.inverse()  # raises if not invertible

    @classmethod
    def build(cls, mass, potential_coeffs) -> "HamiltonianSpec":
        return cls(ScalarPoly.number(mass),
                   tuple(ScalarPoly.number(v) for v in potential_coeffs))

    def potential_derivative(self, order: int) -> tuple[ScalarPoly, ...]:
        coeffs = self.potential
        for _ in range(order):
            coeffs = tuple(coeffs[k + 1] * ScalarPoly.number(k + 1)
                           for k in range(len(coeffs) - 1))
        return coeffs

    def potential_ncpoly(self, system: CanonicalSystem, order: int = 0) -> NCPoly:
        x_name = system.pair_names[0][0]
        out = NCPoly.zero(system)
        for k, coeff in enumerate(self.potential_derivative(order)):
            if coeff:
                out = out + NCPoly.gen(system, x_name, k).scale(coeff)
        return out

    def hamiltonian(self, system: CanonicalSystem) -> NCPoly:
        if system.n_pairs != 1:
            raise ValueError("spec describes a single canonical pair")
        p_name = system.pair_names[0][1]
        kinetic = NCPoly.gen(system, p_name, 2).scale(
            self.mass.inverse() * ScalarPoly.rational(1, 2))
        return kinetic + self.potential_ncpoly(system)


def qce_rhs(f: NCPoly, hamiltonian: NCPoly) -> NCPoly:
    """Bracket form of df/dt: the total Poisson bracket {f, H}."""
    return poisson_bracket_total(f, hamiltonian)


def heisenberg_rhs(f: NCPoly, hamiltonian: NCPoly,
                   hbar: str = "hbar") -> NCPoly:
    """-(i/hbar) [f, H], via exact division of the commutator by i*hbar.

    The division fails (ExactDivisionError) exactly when the system's
    commutators are not multiples of hbar, i.e. under non-standard relations
    where the commutator equation of motion is not defined.
    """
    return commutator(f, hamiltonian).div_exact(i_times(hbar))


def chain_rule_residual(f: NCPoly, hamiltonian: NCPoly) -> NCPoly:
    """Difference between the bracket equation and the chain rule assembled
    from the canonical velocities dA_i/dt = dH/dB_i, dB_i/dt = -dH/dA_i."""
    system = f.system
    total = NCPoly.zero(system)
    for a_name, b_name in system.pair_names:
        vel_a = partial_derivative(hamiltonian, b_name)
        vel_b = -partial_derivative(hamiltonian, a_name)
        total = total + partial_derivative(f, a_name, vel_a)
        total = total + partial_derivative(f, b_name, vel_b)
    return total - qce_rhs(f, hamiltonian)


def _require_single_pair(system: CanonicalSystem):
    if system.n_pairs != 1:
        raise ValueError("expansion forms are defined for a single pair")


def delta_expansion_rhs(f: NCPoly, ham: HamiltonianSpec) -> NCPoly:
    """Inner-derivation expansion of {f, H}:

        (p/m) df/dx - V'(x) df/dp - (1/2m) delta_p df/dx
        - sum_{k>=1} (1/(k+1)!) V^(k+1)(x) (-delta_x)^k df/dp

    The series terminates because V is polynomial.
    """
    system = f.system
    _require_single_pair(system)
    x_name, p_name = system.pair_names[0]
    x_op = NCPoly.gen(system, x_name)
    p_op = NCPoly.gen(system, p_name)
    minv = ham.mass.inverse()

    df_dx = partial_derivative(f, x_name)
    df_dp = partial_derivative(f, p_name)

    out = (p_op * df_dx).scale(minv)
    out = out - ham.potential_ncpoly(system, 1) * df_dp
    out = out - delta_power(p_op, df_dx, 1).scale(
        minv * ScalarPoly.rational(1, 2))
    deg = len(ham.potential) - 1
    for k in range(1, max(deg, 1)):
        v_next = ham.potential_ncpoly(system, k + 1)
        if v_next.is_zero():
            continue
        term = v_next * delta_power(x_op, df_dp, k)
        sign = -1 if k % 2 else 1
        out = out - term.scale(ScalarPoly.rational(sign, factorial(k + 1)))
    return out


def derivative_expansion_rhs(f: NCPoly, ham: HamiltonianSpec,
                             hbar: str = "hbar") -> NCPoly:
    """Higher-partial expansion of {f, H} under standard relations:

        (p/m) df/dx + (i hbar / 2m) d2f/dx2
        - sum_{k>=0} (1/(k+1)!) V^(k+1)(x) (-i hbar)^k d^{k+1} f / dp^{k+1}
    """
    system = f.system
    _require_single_pair(system)
    if system.commutators[0] != i_times(hbar):
        raise ValueError("expansion requires the standard commutator i*hbar")
    x_name, p_name = system.pair_names[0]
    p_op = NCPoly.gen(system, p_name)
    minv = ham.mass.inverse()
    ih = i_times(hbar)

    out = (p_op * partial_derivative(f, x_name)).scale(minv)
    out = out + higher_partial(f, x_name, 2).scale(
        ih * minv * ScalarPoly.rational(1, 2))
    deg = len(ham.potential) - 1
    dfdp = f
    for k in range(0, max(deg, 1)):
        dfdp = partial_derivative(dfdp, p_name)
        if dfdp.is_zero():
            break
        v_next = ham.potential_ncpoly(system, k + 1)
        if v_next.is_zero():
            continue
        out = out - (v_next * dfdp).scale(
            ((-ih) ** k) * ScalarPoly.rational(1, factorial(k + 1)))
    return out


def compact_form_rhs(f: NCPoly, ham: HamiltonianSpec) -> NCPoly:
    """[(p - delta_p)^2/2m + V(x - delta_x) - p^2/2m - V(x)] f.

    Equals i*hbar {f, H} under standard relations; left multiplication by a
    generator commutes with its own inner derivation, which the expansion
    below uses.
    """
    from math import comb

    system = f.system
    _require_single_pair(system)
    x_name, p_name = system.pair_names[0]
    x_op = NCPoly.gen(system, x_name)
    p_op = NCPoly.gen(system, p_name)
    minv = ham.mass.inverse()

    # (p - delta_p)^2 - p^2 applied to f: -2 p delta_p f + delta_p^2 f
    out = (p_op * delta_power(p_op, f, 1)).scale(-2) + delta_power(p_op, f, 2)
    out = out.scale(minv * ScalarPoly.rational(1, 2))
    # V(x - delta_x) - V(x) applied to f, expanded binomially per power
    for k, coeff in enumerate(ham.potential):
        if not coeff or k == 0:
            continue
        for j in range(1, k + 1):
            piece = NCPoly.gen(system, x_name, k - j) * delta_power(x_op, f, j)
            sign = -1 if j % 2 else 1
            out = out + piece.scale(coeff * ScalarPoly.number(sign * comb(k, j)))
    return out


def lindblad_residual_symbolic(rho: NCPoly, diffusion: ScalarPoly,
                               hbar: str = "hbar") -> NCPoly:
    """Residual of the diffusion generator against its dissipator form.

    Left side: -(D/hbar^2) delta_p^2 rho. Right side: -(1/2)(L^2 rho +
    rho L^2) + L rho L where L^2 = (2 D / hbar^2) p^2; the jump operator is
    sqrt(2 D) p / hbar, entering only quadratically so no root is needed.
    """
    system = rho.system
    _require_single_pair(system)
    p_op = NCPoly.gen(system, system.pair_names[0][1])
    hbar_sq_inv = ScalarPoly.symbol(hbar, -2)
    lam = ScalarPoly.number(2) * diffusion * hbar_sq_inv

    lhs = delta_power(p_op, rho, 2).scale(-(diffusion * hbar_sq_inv))
    p_sq = p_op * p_op
    rhs = (p_sq * rho + rho * p_sq).scale(lam * ScalarPoly.rational(-1, 2)) \
        + (p_op * rho * p_op).scale(lam)
    return lhs - rhs
