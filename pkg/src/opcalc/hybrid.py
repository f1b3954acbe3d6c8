"""Two-particle model coupling a commuting (c-number) pair to a quantum pair
through a quadratic spring.

Every tracked observable stays a linear combination over the initial basis
(x0, p0, X0, P0, 1), so the dynamics is a 5x5 linear generator acting on
coefficient vectors, commutators follow from the single nonzero initial
bracket [X0, P0] = i*hbar, and closed-form solutions exist via center-of-mass
and relative coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import CanonicalSystem, NCPoly
from .derivatives import partial_derivative
from .poisson import poisson_bracket
from .scalars import ScalarPoly, i_times

BASIS = ("x", "p", "X", "P", "1")


@dataclass(frozen=True)
class HybridParams:
    """Masses, coupling and hbar; the reduced mass is derived, not stored."""

    m: float
    M: float
    alpha: float
    hbar: float

    def __post_init__(self):
        if self.m <= 0 or self.M <= 0:
            raise ValueError("masses must be positive")
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")
        if self.alpha < 0:
            raise ValueError("coupling must be non-negative")

    @property
    def mu(self) -> float:
        return self.m * self.M / (self.m + self.M)

    @property
    def omega(self) -> float:
        """Relative-motion frequency sqrt(alpha/mu); zero when uncoupled."""
        return math.sqrt(self.alpha / self.mu)


class LinearObservable:
    """Linear combination over the initial basis (x0, p0, X0, P0, 1)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        arr = np.asarray(coeffs, dtype=float).copy()
        if arr.shape != (5,):
            raise ValueError("coefficient vector must have 5 entries")
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("LinearObservable is immutable")

    @classmethod
    def basis(cls, name: str) -> "LinearObservable":
        vec = np.zeros(5)
        vec[BASIS.index(name)] = 1.0
        return cls(vec)

    @property
    def u_x(self):
        return self.coeffs[0]

    @property
    def u_p(self):
        return self.coeffs[1]

    @property
    def u_X(self):
        return self.coeffs[2]

    @property
    def u_P(self):
        return self.coeffs[3]

    @property
    def u_1(self):
        return self.coeffs[4]

    def __add__(self, other):
        return LinearObservable(self.coeffs + other.coeffs)

    def __sub__(self, other):
        return LinearObservable(self.coeffs - other.coeffs)

    def __mul__(self, scalar):
        return LinearObservable(self.coeffs * float(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return LinearObservable(-self.coeffs)

    def __repr__(self):
        body = " + ".join(f"{c:g}*{n}" for c, n in zip(self.coeffs, BASIS) if c)
        return f"LinearObservable({body or '0'})"


def generator_matrix(params: HybridParams) -> np.ndarray:
    """5x5 generator G with du/dt = G u for coefficient vectors over the
    initial basis; the constant component never moves."""
    m, M, a = params.m, params.M, params.alpha
    G = np.zeros((5, 5))
    # columns are images of basis observables: x' = p/m, p' = -a(x - X),
    # X' = P/M, P' = a(x - X)
    G[1, 0] = 1.0 / m
    G[0, 1] = -a
    G[2, 1] = a
    G[3, 2] = 1.0 / M
    G[0, 3] = a
    G[2, 3] = -a
    return G


def model_rhs(obs: LinearObservable, params: HybridParams) -> LinearObservable:
    """Time derivative of an observable under the coupled equations of motion."""
    return LinearObservable(generator_matrix(params) @ obs.coeffs)


def _rotation_pieces(t: float, params: HybridParams):
    """cos(w t), sqrt(mu/alpha) sin(w t), sqrt(alpha mu) sin(w t) with exact
    alpha -> 0 limits (1, t, 0)."""
    if params.alpha == 0.0:
        return 1.0, t, 0.0
    w = params.omega
    c = math.cos(w * t)
    s = math.sin(w * t)
    return c, math.sqrt(params.mu / params.alpha) * s, math.sqrt(
        params.alpha * params.mu) * s


def evolve_analytic(t: float, params: HybridParams) -> dict[str, LinearObservable]:
    """Closed-form solutions at time t over the initial basis.

    Returns center-of-mass pair (com_x, com_p), relative pair (rel_x, rel_p)
    and the reconstructed particle observables x, p, X, P.
    """
    m, M = params.m, params.M
    total = m + M
    cos_wt, sin_over, sin_times = _rotation_pieces(t, params)

    com_x = LinearObservable([m / total, t / total, M / total, t / total, 0.0])
    com_p = LinearObservable([0.0, 1.0, 0.0, 1.0, 0.0])
    rel_x = LinearObservable([cos_wt, sin_over / m, -cos_wt, -sin_over / M, 0.0])
    rel_p = LinearObservable([-sin_times, M * cos_wt / total,
                              sin_times, -m * cos_wt / total, 0.0])

    # inverse of the coordinate change: x = com_x + (M/total) rel_x,
    # X = com_x - (m/total) rel_x, p = rel_p + (m/total) com_p,
    # P = -rel_p + (M/total) com_p
    if params.alpha == 0.0:
        # reconstruction reduces to free motion; write it directly so the
        # uncoupled solutions are exact rather than rounded
        x = LinearObservable([1.0, t / m, 0.0, 0.0, 0.0])
        p = LinearObservable([0.0, 1.0, 0.0, 0.0, 0.0])
        big_x = LinearObservable([0.0, 0.0, 1.0, t / M, 0.0])
        big_p = LinearObservable([0.0, 0.0, 0.0, 1.0, 0.0])
    else:
        x = com_x + (M / total) * rel_x
        big_x = com_x - (m / total) * rel_x
        p = rel_p + (m / total) * com_p
        big_p = -rel_p + (M / total) * com_p
    return {"com_x": com_x, "com_p": com_p, "rel_x": rel_x, "rel_p": rel_p,
            "x": x, "p": p, "X": big_x, "P": big_p}


def integrate_numeric(t_end: float, dt: float, params: HybridParams,
                      extra: tuple[str, ...] = ()) -> tuple[np.ndarray, dict[str, np.ndarray]]:
    """Fixed-step RK4 trajectories of the four particle observables.

    Returns (times, {name: array of shape (steps+1, 5)}). `extra` may list
    derived start vectors to co-integrate: "com_p" tracks p0 + P0 so its
    bit-exact constancy can be checked on the integrated vector itself.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if t_end < 0:
        raise ValueError("t_end must be non-negative")
    names = ["x", "p", "X", "P"]
    columns = [LinearObservable.basis(n).coeffs for n in names]
    for name in extra:
        if name == "com_p":
            columns.append(LinearObservable.basis("p").coeffs
                           + LinearObservable.basis("P").coeffs)
        else:
            raise ValueError(f"unknown extra observable {name!r}")
        names.append(name)
    state = np.stack(columns, axis=1)  # (5, n_obs)
    G = generator_matrix(params)

    n_steps = int(round(t_end / dt))
    times = np.arange(n_steps + 1) * dt
    out = np.empty((n_steps + 1, 5, state.shape[1]))
    out[0] = state
    for i in range(n_steps):
        k1 = G @ state
        k2 = G @ (state + 0.5 * dt * k1)
        k3 = G @ (state + 0.5 * dt * k2)
        k4 = G @ (state + dt * k3)
        state = state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[i + 1] = state
    return times, {name: out[:, :, j] for j, name in enumerate(names)}


def commutator_of(u: LinearObservable, v: LinearObservable,
                  params: HybridParams) -> complex:
    """[u, v] as a scalar: only the quantum pair contributes."""
    return (u.u_X * v.u_P - u.u_P * v.u_X) * 1j * params.hbar


def closed_form_commutators(t: float, params: HybridParams) -> dict[str, complex]:
    """The four commutators of the evolved canonical pairs in closed form."""
    ih = 1j * params.hbar
    total = params.m + params.M
    cos_wt, sin_over, sin_times = _rotation_pieces(t, params)
    return {
        "com_pair": (params.M / total) * ih,
        "rel_pair": (params.m / total) * ih,
        "rel_x_com_x": (-ih / total) * (t * cos_wt - sin_over),
        "rel_p_com_p": ih * sin_times,
    }


@dataclass(frozen=True)
class GaussianInitialState:
    """Point values for the commuting pair; Gaussian moments for the quantum one."""

    x0: float
    p0: float
    mean_X: float
    mean_P: float
    var_X: float
    var_P: float
    cov_XP: float = 0.0

    def __post_init__(self):
        if self.var_X <= 0 or self.var_P <= 0:
            raise ValueError("second moments must be positive")

    def check_admissible(self, hbar: float):
        if self.var_X * self.var_P - self.cov_XP ** 2 < hbar ** 2 / 4.0 - 1e-12:
            raise ValueError("covariance violates the uncertainty bound")

    @classmethod
    def minimal(cls, x0: float, p0: float, hbar: float) -> "GaussianInitialState":
        """Zero-mean quantum particle at the uncertainty floor."""
        return cls(x0, p0, 0.0, 0.0, hbar / 2.0, hbar / 2.0, 0.0)

    @property
    def means(self) -> np.ndarray:
        return np.array([self.x0, self.p0, self.mean_X, self.mean_P, 1.0])


def expectation(obs: LinearObservable, state: GaussianInitialState) -> float:
    return float(obs.coeffs @ state.means)


def expectation_product(u: LinearObservable, v: LinearObservable,
                        state: GaussianInitialState) -> float:
    """Expectation of the symmetrized product (uv + vu)/2."""
    mean_part = expectation(u, state) * expectation(v, state)
    quantum = (u.u_X * v.u_X * state.var_X + u.u_P * v.u_P * state.var_P
               + (u.u_X * v.u_P + u.u_P * v.u_X) * state.cov_XP)
    return mean_part + quantum


def total_energy(obs: dict[str, LinearObservable], params: HybridParams,
                 state: GaussianInitialState) -> float:
    """<p^2>/2m + <P^2>/2M + (alpha/2) <(x - X)^2> from first and second moments."""
    rel = obs["x"] - obs["X"]
    return (expectation_product(obs["p"], obs["p"], state) / (2.0 * params.m)
            + expectation_product(obs["P"], obs["P"], state) / (2.0 * params.M)
            + 0.5 * params.alpha * expectation_product(rel, rel, state))


def energy_trajectory(params: HybridParams, state: GaussianInitialState,
                      times) -> np.ndarray:
    return np.array([total_energy(evolve_analytic(t, params), params, state)
                     for t in times])


# -- symbolic checks at the initial time -------------------------------------

def hybrid_symbolic_system() -> CanonicalSystem:
    """Two-pair system as at t = 0: commuting pair (x, p), quantum pair (X, P)."""
    return CanonicalSystem(
        pair_names=(("x", "p"), ("X", "P")),
        commutators=(ScalarPoly.zero(), i_times("hbar")),
    )


def symbolic_hamiltonian(system: CanonicalSystem) -> NCPoly:
    """p^2/2m + P^2/2M + (alpha/2)(x - X)^2 with formal masses and coupling."""
    half = ScalarPoly.rational(1, 2)
    m_inv = ScalarPoly.symbol("m", -1)
    big_m_inv = ScalarPoly.symbol("M", -1)
    alpha = ScalarPoly.symbol("alpha")
    p = NCPoly.gen(system, "p")
    big_p = NCPoly.gen(system, "P")
    rel = NCPoly.gen(system, "x") - NCPoly.gen(system, "X")
    return (p * p).scale(half * m_inv) + (big_p * big_p).scale(half * big_m_inv) \
        + (rel * rel).scale(half * alpha)


def energy_bracket_check() -> dict:
    """Self-brackets of the Hamiltonian over each pair, plus the mixed term
    they hinge on, all exact with formal parameters."""
    system = hybrid_symbolic_system()
    ham = symbolic_hamiltonian(system)
    mixed = partial_derivative(ham, "x", partial_derivative(ham, "p"))
    p = NCPoly.gen(system, "p")
    rel = NCPoly.gen(system, "x") - NCPoly.gen(system, "X")
    half_alpha_over_m = ScalarPoly.rational(1, 2) * ScalarPoly.symbol("alpha") \
        * ScalarPoly.symbol("m", -1)
    expected_mixed = (p * rel + rel * p).scale(half_alpha_over_m)
    return {
        "bracket_c_pair": poisson_bracket(ham, ham, 0),
        "bracket_q_pair": poisson_bracket(ham, ham, 1),
        "mixed_term_residual": mixed - expected_mixed,
    }


def symbolic_model_rhs() -> dict[str, NCPoly]:
    """Bracket equations of motion evaluated at t = 0 for each canonical
    variable; this is the generator the linear evolution integrates."""
    system = hybrid_symbolic_system()
    ham = symbolic_hamiltonian(system)
    out = {}
    for name in ("x", "p", "X", "P"):
        rhs = NCPoly.zero(system)
        for i in range(system.n_pairs):
            rhs = rhs + poisson_bracket(NCPoly.gen(system, name), ham, i)
        out[name] = rhs
    return out


def ehrenfest_residual(params: HybridParams, state: GaussianInitialState,
                       times, dt: float = 1e-4) -> float:
    """Max deviation of finite-difference d<obs>/dt from the classical
    equations of motion along the analytic trajectory."""
    worst = 0.0
    for t in times:
        if t < dt:
            continue
        before = evolve_analytic(t - dt, params)
        after = evolve_analytic(t + dt, params)
        now = evolve_analytic(t, params)
        mean = {k: expectation(v, state) for k, v in now.items()}
        fd = {k: (expectation(after[k], state) - expectation(before[k], state))
              / (2.0 * dt) for k in ("x", "p", "X", "P")}
        worst = max(
            worst,
            abs(fd["x"] - mean["p"] / params.m),
            abs(fd["p"] + params.alpha * (mean["x"] - mean["X"])),
            abs(fd["X"] - mean["P"] / params.M),
            abs(fd["P"] - params.alpha * (mean["x"] - mean["X"])),
        )
    return worst


def noninteracting_report(params: HybridParams, times) -> dict:
    """Free-motion checks at alpha = 0: exact solutions and restored
    commutators of the uncoupled pairs."""
    if params.alpha != 0.0:
        raise ValueError("report is defined for alpha = 0")
    max_sol_err = 0.0
    max_cc_err = 0.0
    max_qq_err = 0.0
    for t in times:
        obs = evolve_analytic(t, params)
        free_x = np.array([1.0, t / params.m, 0.0, 0.0, 0.0])
        free_p = np.array([0.0, 1.0, 0.0, 0.0, 0.0])
        free_X = np.array([0.0, 0.0, 1.0, t / params.M, 0.0])
        free_P = np.array([0.0, 0.0, 0.0, 1.0, 0.0])
        max_sol_err = max(
            max_sol_err,
            float(np.max(np.abs(obs["x"].coeffs - free_x))),
            float(np.max(np.abs(obs["p"].coeffs - free_p))),
            float(np.max(np.abs(obs["X"].coeffs - free_X))),
            float(np.max(np.abs(obs["P"].coeffs - free_P))),
        )
        max_cc_err = max(max_cc_err, abs(commutator_of(obs["x"], obs["p"], params)))
        max_qq_err = max(max_qq_err, abs(
            commutator_of(obs["X"], obs["P"], params) - 1j * params.hbar))
    return {
        "max_free_solution_error": max_sol_err,
        "max_classical_pair_commutator": max_cc_err,
        "max_quantum_pair_commutator_error": max_qq_err,
    }
