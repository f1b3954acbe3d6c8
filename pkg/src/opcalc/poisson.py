"""The Poisson bracket operator: per-pair brackets, the many-body sum, the
commutator correspondence, and its algebraic laws.

For one pair, {f, g} = df/dA{dg/dB} - df/dB{dg/dA} built from operator
derivatives; when [A, B] = c is a central scalar, [f, g] = c {f, g}.
"""

from __future__ import annotations

import hashlib
import json

from .algebra import NCPoly, commutator
from .derivatives import partial_derivative
from .scalars import ScalarPoly


def poisson_bracket(f: NCPoly, g: NCPoly, pair: int) -> NCPoly:
    """Bracket over a single canonical pair, normal-ordered."""
    system = f.system
    if f.system != g.system:
        raise ValueError("operands from different canonical systems")
    if not 0 <= pair < system.n_pairs:
        raise IndexError(f"pair index {pair} out of range")
    a_name, b_name = system.pair_names[pair]
    dg_db = partial_derivative(g, b_name)
    dg_da = partial_derivative(g, a_name)
    return (partial_derivative(f, a_name, dg_db)
            - partial_derivative(f, b_name, dg_da))


def poisson_bracket_total(f: NCPoly, g: NCPoly) -> NCPoly:
    """Sum of the per-pair brackets over every pair of the system."""
    total = NCPoly.zero(f.system)
    for i in range(f.system.n_pairs):
        total = total + poisson_bracket(f, g, i)
    return total


def correspondence_residual(f: NCPoly, g: NCPoly) -> NCPoly:
    """[f, g] - sum_i c_i {f, g}_i; identically zero for central c_i."""
    system = f.system
    total = commutator(f, g)
    for i in range(system.n_pairs):
        total = total - poisson_bracket(f, g, i).scale(system.commutators[i])
    return total


def linearity_residual(f: NCPoly, g: NCPoly, h: NCPoly,
                       a: ScalarPoly | None = None,
                       b: ScalarPoly | None = None) -> NCPoly:
    """{a f + b g, h} - a {f, h} - b {g, h} with formal constants by default."""
    a = ScalarPoly.symbol("a") if a is None else a
    b = ScalarPoly.symbol("b") if b is None else b
    combined = f.scale(a) + g.scale(b)
    return (poisson_bracket_total(combined, h)
            - poisson_bracket_total(f, h).scale(a)
            - poisson_bracket_total(g, h).scale(b))


def leibniz_residual(f: NCPoly, g: NCPoly, h: NCPoly) -> NCPoly:
    """{f g, h} - {f, h} g - f {g, h}."""
    return (poisson_bracket_total(f * g, h)
            - poisson_bracket_total(f, h) * g
            - f * poisson_bracket_total(g, h))


def antisymmetry_residual(f: NCPoly, g: NCPoly) -> NCPoly:
    """{f, g} + {g, f}; known to vanish when every commutator is i*hbar."""
    return poisson_bracket_total(f, g) + poisson_bracket_total(g, f)


def jacobi_residual(f: NCPoly, g: NCPoly, h: NCPoly) -> NCPoly:
    """Cyclic sum {f,{g,h}} + {g,{h,f}} + {h,{f,g}}; vanishes for c_i = i*hbar."""
    return (poisson_bracket_total(f, poisson_bracket_total(g, h))
            + poisson_bracket_total(g, poisson_bracket_total(h, f))
            + poisson_bracket_total(h, poisson_bracket_total(f, g)))


def inputs_digest(*polys: NCPoly) -> str:
    blob = json.dumps([p.to_json_obj() for p in polys], sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


def law_checks(f: NCPoly, g: NCPoly, h: NCPoly) -> list[dict]:
    """Residual report for the four bracket laws on the given inputs.

    Antisymmetry and Jacobi are reported for any system; callers decide
    whether to assert them (they are proved only for commutators all equal
    to i*hbar and stay exploratory otherwise).
    """
    digest = inputs_digest(f, g, h)
    entries = []
    for law, residual in [
        ("linearity", linearity_residual(f, g, h)),
        ("leibniz", leibniz_residual(f, g, h)),
        ("antisymmetry", antisymmetry_residual(f, g)),
        ("jacobi", jacobi_residual(f, g, h)),
    ]:
        entries.append({
            "law": law,
            "inputs_digest": digest,
            "residual_zero": residual.is_zero(),
            "residual_terms": residual.n_terms(),
        })
    return entries
