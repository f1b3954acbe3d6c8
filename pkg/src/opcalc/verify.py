"""Seeded verification sweeps aggregated into one report.

Each check function returns a list of JSON-ready entries with a boolean
pass flag; run_all assembles the full document. The same functions back the
command-line `verify` run and the acceptance test module.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np

from .algebra import CanonicalSystem, NCPoly, commutator, delta_power
from .derivatives import formula2_rhs, formula3_residual, lambda_integral_power
from .dynamics import (HamiltonianSpec, compact_form_rhs, delta_expansion_rhs,
                       derivative_expansion_rhs, heisenberg_rhs,
                       chain_rule_residual, lindblad_residual_symbolic, qce_rhs)
from .hybrid import (GaussianInitialState, HybridParams, closed_form_commutators,
                     commutator_of, energy_bracket_check, energy_trajectory,
                     evolve_analytic, integrate_numeric, noninteracting_report)
from .matrixrep import (InteriorProjector, build_rep, eval_ncpoly,
                        lindblad_residual_numeric, matrix_residual)
from .poisson import (antisymmetry_residual, correspondence_residual,
                      jacobi_residual, law_checks, leibniz_residual,
                      linearity_residual, poisson_bracket_total)
from .scalars import ScalarPoly, i_times

DEFAULT_SEED = 20240817
MATRIX_TOL = 1e-10


# -- random inputs -----------------------------------------------------------

def random_word(rng: random.Random, system: CanonicalSystem,
                max_degree: int) -> tuple[int, ...]:
    slots = 2 * system.n_pairs
    word = [0] * slots
    for _ in range(rng.randint(0, max_degree)):
        word[rng.randrange(slots)] += 1
    return tuple(word)


def random_ncpoly(rng: random.Random, system: CanonicalSystem,
                  max_degree: int = 4, n_terms: int = 4) -> NCPoly:
    """Sparse random polynomial with small integer coefficients."""
    terms: dict[tuple[int, ...], int] = {}
    for _ in range(n_terms):
        word = random_word(rng, system, max_degree)
        terms[word] = terms.get(word, 0) + rng.choice([-3, -2, -1, 1, 2, 3])
    poly = NCPoly(system, {w: ScalarPoly.number(c)
                           for w, c in terms.items() if c})
    if poly.is_zero():
        return NCPoly.one(system)
    return poly


# -- formula sweeps ----------------------------------------------------------

def lambda_integral_direct(system: CanonicalSystem, gen: str, n: int,
                           arg: NCPoly) -> NCPoly:
    """Binomial route to the same integral: term-by-term integration of
    (G - lambda * delta_G)^n arg over lambda in [0, 1]:

        sum_j C(n,j) (-1)^j / (j+1) * G^(n-j) * delta_G^j arg
    """
    g_op = NCPoly.gen(system, gen)
    out = NCPoly.zero(system)
    for j in range(n + 1):
        piece = NCPoly.gen(system, gen, n - j) * delta_power(g_op, arg, j)
        sign = -1 if j % 2 else 1
        out = out + piece.scale(ScalarPoly.number(
            Fraction(sign * math.comb(n, j), j + 1)))
    return out


def check_formulas(max_n: int = 6, max_m: int = 6) -> list[dict]:
    """Exact identities for the three power formulas, formal central c."""
    system = CanonicalSystem.formal(1, names=[("A", "B")])
    a = NCPoly.gen(system, "A")
    b = NCPoly.gen(system, "B")
    entries = []
    for n in range(1, max_n + 1):
        for m in range(1, max_m + 1):
            closed = lambda_integral_power(system, "A", n, b ** m)
            direct = lambda_integral_direct(system, "A", n, b ** m)
            entries.append({"formula": "F1", "n": n, "m": m,
                            "residual_is_zero": (closed - direct).is_zero()})
    for n in range(1, max_n + 1):
        for m in range(1, max_m + 1):
            lhs = (b ** n) * (a ** m) - (a ** m) * (b ** n)
            entries.append({"formula": "F2", "n": n, "m": m,
                            "residual_is_zero":
                                (lhs - formula2_rhs(system, n, m)).is_zero()})
    for n in range(1, max_n + 1):
        for m in range(1, max_m + 1):
            entries.append({"formula": "F3", "n": n, "m": m,
                            "residual_is_zero":
                                formula3_residual(system, n, m).is_zero()})
    for e in entries:
        e["pass"] = e["residual_is_zero"]
    return entries


# -- correspondence and bracket laws ----------------------------------------

def check_correspondence(seed: int = DEFAULT_SEED, samples: int = 201,
                         max_degree: int = 4) -> list[dict]:
    """[f, g] = sum_i c_i {f, g}_i on random polynomials, formal c_i."""
    rng = random.Random(seed)
    per_system = -(-samples // 3)
    entries = []
    for n_pairs in (1, 2, 3):
        system = CanonicalSystem.formal(n_pairs)
        failures = 0
        for _ in range(per_system):
            f = random_ncpoly(rng, system, max_degree)
            g = random_ncpoly(rng, system, max_degree)
            if not correspondence_residual(f, g).is_zero():
                failures += 1
        entries.append({"check": "correspondence", "n_pairs": n_pairs,
                        "samples": per_system, "failures": failures,
                        "pass": failures == 0})
    return entries


def equal_commutator_system(n_pairs: int) -> CanonicalSystem:
    """All pairs share one formal central commutator c."""
    c = ScalarPoly.symbol("c")
    names = _formal_names(n_pairs)
    return CanonicalSystem(names, tuple(c for _ in range(n_pairs)))


def _formal_names(n_pairs: int):
    if n_pairs == 1:
        return (("x", "p"),)
    return tuple((f"x{i + 1}", f"p{i + 1}") for i in range(n_pairs))


def check_bracket_laws(seed: int = DEFAULT_SEED, triples: int = 100,
                       max_degree: int = 3) -> list[dict]:
    """Bracket laws on random triples.

    Linearity is asserted with unequal formal c_i. The product rule is
    asserted whenever all pairs share one central commutator (a formal c
    here); with unequal c_i it provably fails, e.g. f = x2, g = x1 p1^2,
    h = x1 x2 p2 leaves -2 (c1 - c2) x1 p1 x2, so that case is surveyed
    separately and reported, not asserted. Antisymmetry and Jacobi are
    asserted under the standard commutator.
    """
    rng = random.Random(seed)
    failures = {"linearity": 0, "leibniz_equal_c": 0, "antisymmetry": 0,
                "jacobi": 0}
    unequal_nonzero = 0
    for k in range(triples):
        n_pairs = 1 + k % 2
        formal = CanonicalSystem.formal(n_pairs)
        f = random_ncpoly(rng, formal, max_degree, 3)
        g = random_ncpoly(rng, formal, max_degree, 3)
        h = random_ncpoly(rng, formal, max_degree, 3)
        if not linearity_residual(f, g, h).is_zero():
            failures["linearity"] += 1
        if n_pairs > 1 and not leibniz_residual(f, g, h).is_zero():
            unequal_nonzero += 1
        shared = equal_commutator_system(n_pairs)
        f = random_ncpoly(rng, shared, max_degree, 3)
        g = random_ncpoly(rng, shared, max_degree, 3)
        h = random_ncpoly(rng, shared, max_degree, 3)
        if not leibniz_residual(f, g, h).is_zero():
            failures["leibniz_equal_c"] += 1
        standard = CanonicalSystem.standard(n_pairs)
        f = random_ncpoly(rng, standard, max_degree, 3)
        g = random_ncpoly(rng, standard, max_degree, 3)
        h = random_ncpoly(rng, standard, max_degree, 3)
        if not antisymmetry_residual(f, g).is_zero():
            failures["antisymmetry"] += 1
        if not jacobi_residual(f, g, h).is_zero():
            failures["jacobi"] += 1
    entries = [{"check": f"law_{law}", "triples": triples, "failures": n,
                "pass": n == 0} for law, n in sorted(failures.items())]
    entries.append({"check": "law_leibniz_unequal_c_survey",
                    "status": "informational", "triples": triples // 2,
                    "nonzero_residuals": unequal_nonzero, "pass": True})
    return entries


def exploratory_jacobi_nonstandard(seed: int = DEFAULT_SEED,
                                   triples: int = 10) -> list[dict]:
    """Residual survey of antisymmetry/Jacobi with unequal c_i.

    No proof exists either way, so these entries are informational and never
    fail a run.
    """
    rng = random.Random(seed)
    entries = []
    system = CanonicalSystem.formal(2)
    for k in range(triples):
        f = random_ncpoly(rng, system, 2, 2)
        g = random_ncpoly(rng, system, 2, 2)
        h = random_ncpoly(rng, system, 2, 2)
        for entry in law_checks(f, g, h):
            if entry["law"] in ("antisymmetry", "jacobi"):
                entry.update({"status": "exploratory", "sample": k, "pass": True})
                entries.append(entry)
    return entries


# -- classical limit ---------------------------------------------------------

def _classical_partial(poly: NCPoly, name: str) -> NCPoly:
    """Commutative power rule; valid in an all-zero-commutator system."""
    pos = poly.system.position_of(name)
    out = {}
    for word, coeff in poly.terms():
        if word[pos] == 0:
            continue
        lowered = list(word)
        lowered[pos] -= 1
        out[tuple(lowered)] = coeff * ScalarPoly.number(word[pos])
    return NCPoly(poly.system, out)


def classical_poisson_oracle(f: NCPoly, g: NCPoly) -> NCPoly:
    """Commutative bracket sum_i (df/dA_i dg/dB_i - df/dB_i dg/dA_i)."""
    system = f.system
    total = NCPoly.zero(system)
    for a_name, b_name in system.pair_names:
        total = total + _classical_partial(f, a_name) * _classical_partial(g, b_name)
        total = total - _classical_partial(f, b_name) * _classical_partial(g, a_name)
    return total


def check_classical_limit(seed: int = DEFAULT_SEED, samples: int = 40,
                          max_degree: int = 4) -> list[dict]:
    rng = random.Random(seed)
    entries = []
    for n_pairs in (1, 2):
        system = CanonicalSystem.classical(n_pairs)
        failures = 0
        for _ in range(samples):
            f = random_ncpoly(rng, system, max_degree)
            g = random_ncpoly(rng, system, max_degree)
            lhs = poisson_bracket_total(f, g)
            if not (lhs - classical_poisson_oracle(f, g)).is_zero():
                failures += 1
        entries.append({"check": "classical_limit", "n_pairs": n_pairs,
                        "samples": samples, "failures": failures,
                        "pass": failures == 0})
    return entries


# -- dynamics cross-paths -----------------------------------------------------

def random_hamiltonian_spec(rng: random.Random, max_degree: int = 6) -> HamiltonianSpec:
    degree = rng.randint(2, max_degree)
    coeffs = [ScalarPoly.number(rng.randint(-2, 2)) for _ in range(degree + 1)]
    coeffs[degree] = ScalarPoly.number(rng.choice([1, 2]))
    return HamiltonianSpec(ScalarPoly.symbol("m"), tuple(coeffs))


def check_dynamics(seed: int = DEFAULT_SEED, samples: int = 12) -> list[dict]:
    """Bracket form vs commutator form vs the two series expansions, exact."""
    rng = random.Random(seed)
    system = CanonicalSystem.standard(1)
    entries = []
    for k in range(samples):
        f = random_ncpoly(rng, system, 3, 3)
        ham = random_hamiltonian_spec(rng)
        h_op = ham.hamiltonian(system)
        base = qce_rhs(f, h_op)
        checks = {
            "heisenberg": (heisenberg_rhs(f, h_op) - base).is_zero(),
            "delta_expansion": (delta_expansion_rhs(f, ham) - base).is_zero(),
            "derivative_expansion":
                (derivative_expansion_rhs(f, ham) - base).is_zero(),
            "compact_form":
                (compact_form_rhs(f, ham) - base.scale(i_times())).is_zero(),
            "chain_rule": chain_rule_residual(f, h_op).is_zero(),
        }
        entries.append({"check": "dynamics_paths", "sample": k,
                        "routes": checks, "pass": all(checks.values())})
    return entries


def check_lindblad(seed: int = DEFAULT_SEED, dim: int = 30,
                   diffusion: float = 0.7) -> list[dict]:
    rng = random.Random(seed)
    system = CanonicalSystem.standard(1)
    sym_ok = True
    for _ in range(10):
        rho = random_ncpoly(rng, system, 3, 3)
        if not lindblad_residual_symbolic(rho, ScalarPoly.symbol("D")).is_zero():
            sym_ok = False
    numeric = lindblad_residual_numeric(dim, diffusion,
                                        rng=np.random.default_rng(seed))
    return [
        {"check": "lindblad_symbolic", "samples": 10, "pass": sym_ok},
        {"check": "lindblad_numeric", "dim": dim, "residual": numeric,
         "pass": numeric < 1e-12},
    ]


# -- numeric re-verification ---------------------------------------------------

def _ad(mat: np.ndarray, other: np.ndarray, order: int = 1) -> np.ndarray:
    for _ in range(order):
        other = mat @ other - other @ mat
    return other


def check_matrix(seed: int = DEFAULT_SEED, dim: int = 40,
                 margin: int = 12, max_n: int = 6) -> list[dict]:
    """Numeric re-verification on the truncated-oscillator backend.

    Left sides are assembled from raw matrix products, never through the
    symbolic normal ordering they are checked against.
    """
    rng = random.Random(seed)
    rep = build_rep(dim)
    proj = InteriorProjector(margin)
    system = CanonicalSystem.standard(1)
    x_op = NCPoly.gen(system, "x")
    p_op = NCPoly.gen(system, "p")
    entries = []

    def record(identity_id: str, lhs_mat: np.ndarray, rhs_mat: np.ndarray):
        residual = matrix_residual(lhs_mat, rhs_mat, proj)
        entries.append({"identity_id": identity_id, "dim": dim,
                        "margin": margin, "residual": residual,
                        "pass": residual < MATRIX_TOL})

    # Formula 1: binomial matrix route vs the symbolic closed form
    for n in range(1, max_n + 1):
        direct = np.zeros((dim, dim), dtype=complex)
        for j in range(n + 1):
            direct += (math.comb(n, j) * (-1.0) ** j / (j + 1)) * (
                rep.power("x", n - j) @ _ad(rep.x, rep.p, j))
        closed = eval_ncpoly(lambda_integral_power(system, "x", n, p_op), rep)
        record(f"F1_n{n}", direct, closed)

    # Formula 2: raw power commutator vs the closed form
    for n in range(1, max_n + 1):
        for m in range(1, max_n + 1):
            raw = rep.power("p", n) @ rep.power("x", m) \
                - rep.power("x", m) @ rep.power("p", n)
            record(f"F2_n{n}_m{m}", raw,
                   eval_ncpoly(formula2_rhs(system, n, m), rep))

    # Formula 3: both symmetrized sums assembled as raw matrix products
    for n in range(1, max_n + 1):
        for m in range(1, max_n + 1):
            lhs = sum(rep.power("p", n - 1 - k) @ rep.power("x", m - 1)
                      @ rep.power("p", k) for k in range(n)) / n
            rhs = sum(rep.power("x", m - 1 - k) @ rep.power("p", n - 1)
                      @ rep.power("x", k) for k in range(m)) / m
            record(f"F3_n{n}_m{m}", lhs, rhs)

    # correspondence: raw matrix commutator vs i*hbar times the bracket
    for k in range(8):
        f = random_ncpoly(rng, system, 4, 3)
        g = random_ncpoly(rng, system, 4, 3)
        f_mat = eval_ncpoly(f, rep)
        g_mat = eval_ncpoly(g, rep)
        bracket = eval_ncpoly(poisson_bracket_total(f, g), rep)
        record(f"correspondence_{k}", f_mat @ g_mat - g_mat @ f_mat,
               1j * rep.hbar * bracket)

    # bracket laws: Leibniz and Jacobi assembled from matrix products
    for k in range(4):
        f = random_ncpoly(rng, system, 3, 2)
        g = random_ncpoly(rng, system, 3, 2)
        h = random_ncpoly(rng, system, 3, 2)
        fg_h = eval_ncpoly(poisson_bracket_total(f * g, h), rep)
        pieces = eval_ncpoly(poisson_bracket_total(f, h), rep) @ eval_ncpoly(g, rep) \
            + eval_ncpoly(f, rep) @ eval_ncpoly(poisson_bracket_total(g, h), rep)
        record(f"leibniz_{k}", fg_h, pieces)
        anti = eval_ncpoly(antisymmetry_residual(f, g), rep)
        record(f"antisymmetry_{k}", anti, np.zeros_like(anti))
        jac = eval_ncpoly(jacobi_residual(f, g, h), rep)
        record(f"jacobi_{k}", jac, np.zeros_like(jac))

    # dynamics: bracket equation vs raw matrix commutator with H
    for k in range(6):
        f = random_ncpoly(rng, system, 3, 3)
        ham = random_hamiltonian_spec(rng)
        h_op = ham.hamiltonian(system)
        binds = {"m": 1.5}
        f_mat = eval_ncpoly(f, rep, binds)
        h_mat = eval_ncpoly(h_op, rep, binds)
        raw = (-1j / rep.hbar) * (f_mat @ h_mat - h_mat @ f_mat)
        record(f"dynamics_heisenberg_{k}", raw,
               eval_ncpoly(qce_rhs(f, h_op), rep, binds))
        record(f"dynamics_delta_{k}",
               eval_ncpoly(delta_expansion_rhs(f, ham), rep, binds),
               eval_ncpoly(derivative_expansion_rhs(f, ham), rep, binds))
    return entries


# -- hybrid and wigner sweeps (numeric tolerances) ----------------------------

def check_hybrid(t_end: float = 10.0, dt: float = 1e-3) -> list[dict]:
    params = HybridParams(m=1.0, M=2.0, alpha=1.0, hbar=1.0)
    state = GaussianInitialState.minimal(1.0, 0.5, params.hbar)
    times, traj = integrate_numeric(t_end, dt, params, extra=("com_p",))

    max_coeff_err = 0.0
    for idx in range(0, times.size, max(1, times.size // 200)):
        exact = evolve_analytic(times[idx], params)
        for name in ("x", "p", "X", "P"):
            max_coeff_err = max(max_coeff_err, float(
                np.max(np.abs(traj[name][idx] - exact[name].coeffs))))

    sample_times = np.linspace(0.0, t_end, 100)
    max_comm_err = 0.0
    for t in sample_times:
        obs = evolve_analytic(t, params)
        closed = closed_form_commutators(t, params)
        max_comm_err = max(
            max_comm_err,
            abs(commutator_of(obs["com_x"], obs["com_p"], params) - closed["com_pair"]),
            abs(commutator_of(obs["rel_x"], obs["rel_p"], params) - closed["rel_pair"]),
            abs(commutator_of(obs["rel_x"], obs["com_x"], params) - closed["rel_x_com_x"]),
            abs(commutator_of(obs["rel_p"], obs["com_p"], params) - closed["rel_p_com_p"]),
        )

    com_p = traj["com_p"]
    momentum_exact = bool(np.all(com_p == com_p[0]))
    energies = energy_trajectory(params, state, sample_times)
    drift = float(np.max(np.abs(energies - energies[0])) / abs(energies[0]))

    bracket = energy_bracket_check()
    symbolic_ok = (bracket["bracket_c_pair"].is_zero()
                   and bracket["bracket_q_pair"].is_zero()
                   and bracket["mixed_term_residual"].is_zero())

    free = noninteracting_report(HybridParams(m=1.0, M=2.0, alpha=0.0, hbar=1.0),
                                 np.linspace(0.0, t_end, 50))
    free_ok = (free["max_free_solution_error"] == 0.0
               and free["max_classical_pair_commutator"] == 0.0
               and free["max_quantum_pair_commutator_error"] == 0.0)

    return [
        {"check": "hybrid_rk4_vs_analytic", "max_error": max_coeff_err,
         "pass": max_coeff_err < 1e-8},
        {"check": "hybrid_commutators_closed_form", "max_error": max_comm_err,
         "pass": max_comm_err < 1e-12},
        {"check": "hybrid_total_momentum_exact", "pass": momentum_exact},
        {"check": "hybrid_energy_drift", "relative_drift": drift,
         "pass": drift < 1e-8},
        {"check": "hybrid_energy_bracket_symbolic", "pass": symbolic_ok},
        {"check": "hybrid_noninteracting_limit", "detail": free, "pass": free_ok},
    ]


def check_wigner() -> list[dict]:
    from .wigner import (consistency_residual, gaussian_state, moyal_rhs,
                         oscillator_eigenstate, uniform_grid, wigner_transform)

    x = uniform_grid(10.0, 256)
    harmonic = [0.0, 0.0, 0.5]
    quartic = [0.0, 0.0, 0.0, 0.0, 0.25]
    entries = []

    stationary = oscillator_eigenstate(x, 1)
    sup = float(np.max(np.abs(moyal_rhs(wigner_transform(stationary), harmonic))))
    entries.append({"check": "wigner_stationary_rhs_sup", "value": sup,
                    "pass": sup < 1e-6})

    coherent = gaussian_state(x, 1.0, 0.5, 1.0 / math.sqrt(2.0))
    res_h = consistency_residual(coherent, harmonic, dt=1e-3)
    entries.append({"check": "wigner_consistency_harmonic", "value": res_h,
                    "pass": res_h < 1e-3})
    res_q = consistency_residual(coherent, quartic, dt=1e-3)
    entries.append({"check": "wigner_consistency_quartic", "value": res_q,
                    "pass": res_q < 5e-3})
    res_f = consistency_residual(coherent, [], dt=1e-3)
    entries.append({"check": "wigner_consistency_free", "value": res_f,
                    "pass": res_f < 1e-4})

    grid = wigner_transform(coherent)
    integral = abs(float(np.sum(moyal_rhs(grid, quartic)) * grid.dx * grid.dp))
    entries.append({"check": "wigner_rhs_phase_space_integral", "value": integral,
                    "pass": integral < 1e-8})
    return entries


# -- aggregation ---------------------------------------------------------------

def run_all(seed: int = DEFAULT_SEED, dim: int = 40, margin: int = 12,
            exploratory_nonstandard_jacobi: bool = False,
            include_simulations: bool = True) -> dict:
    sections = {
        "formulas": check_formulas(),
        "correspondence": check_correspondence(seed),
        "bracket_laws": check_bracket_laws(seed),
        "classical_limit": check_classical_limit(seed),
        "dynamics": check_dynamics(seed),
        "lindblad": check_lindblad(seed),
        "matrix": check_matrix(seed, dim=dim, margin=margin),
    }
    if include_simulations:
        sections["hybrid"] = check_hybrid()
        sections["wigner"] = check_wigner()
    if exploratory_nonstandard_jacobi:
        sections["exploratory"] = exploratory_jacobi_nonstandard(seed)
    all_pass = all(entry["pass"] for entries in sections.values()
                   for entry in entries)
    return {"schema_version": 1, "seed": seed, "dim": dim, "margin": margin,
            "all_pass": all_pass, "sections": sections}
