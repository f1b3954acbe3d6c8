"""Operator derivatives: symmetrized power integrals, partial derivatives
with operator-valued arguments, the directional (limit) form, and the
closed-form identities relating power commutators to those integrals.

The symmetrized average

    avg_n(G; Y) = (1/(n+1)) * sum_{k=0..n} G^(n-k) Y G^k

evaluates the lambda-integral of (G - lambda*delta_G)^n applied to Y in
closed form, so no numerical integration ever happens here.
"""

from __future__ import annotations

from .algebra import CanonicalSystem, NCPoly, delta_power
from .scalars import ScalarPoly

# Symmetrized sums have n+1 words; factorial-sized blowups start well past
# this, so larger powers are refused.
MAX_GENERATOR_POWER = 64

# Reserved scalar symbol for the directional-limit expansion.
_H = "_h"


def lambda_integral_power(system: CanonicalSystem, gen: str, n: int,
                          arg: NCPoly) -> NCPoly:
    """Symmetrized average (1/(n+1)) sum_k G^(n-k) * arg * G^k, normal-ordered."""
    if n < 0:
        raise ValueError("power must be non-negative")
    if n > MAX_GENERATOR_POWER:
        raise ValueError(f"generator power {n} exceeds cap {MAX_GENERATOR_POWER}")
    if arg.system != system:
        raise ValueError("argument belongs to a different system")
    if n == 0:
        return arg
    total = NCPoly.zero(system)
    for k in range(n + 1):
        left = NCPoly.gen(system, gen, n - k)
        right = NCPoly.gen(system, gen, k)
        total = total + left * arg * right
    return total.scale(ScalarPoly.rational(1, n + 1))


def partial_derivative(f: NCPoly, wrt: str, arg: NCPoly | None = None) -> NCPoly:
    """Partial derivative of a normal-ordered polynomial.

    Each word ...G^n... contributes n * (left factors) * avg_{n-1}(G; arg)
    * (right factors). With arg omitted (a c-number argument) this is the
    plain power rule.
    """
    system = f.system
    pos = system.position_of(wrt)
    if arg is not None and arg.system != system:
        raise ValueError("argument belongs to a different system")
    out = NCPoly.zero(system)
    for word, coeff in f.terms():
        n = word[pos]
        if n == 0:
            continue
        if arg is None:
            lowered = list(word)
            lowered[pos] = n - 1
            out = out + NCPoly(system, {tuple(lowered): coeff * ScalarPoly.number(n)})
            continue
        left = list(word)
        right = list(word)
        for i in range(len(word)):
            if i >= pos:
                left[i] = 0
            if i <= pos:
                right[i] = 0
        middle = lambda_integral_power(system, wrt, n - 1, arg)
        piece = NCPoly(system, {tuple(left): ScalarPoly.number(n) * coeff})
        out = out + piece * middle * NCPoly(system, {tuple(right): ScalarPoly.one()})
    return out


def higher_partial(f: NCPoly, wrt: str, order: int) -> NCPoly:
    """Repeated derivative with c-number argument: the k-fold power rule."""
    if order < 1:
        raise ValueError("order must be at least 1")
    out = f
    for _ in range(order):
        out = partial_derivative(out, wrt)
    return out


def word_partial_derivative(system: CanonicalSystem,
                            factors: list[tuple[str, int]],
                            wrt: str, arg: NCPoly | None = None) -> NCPoly:
    """Derivative of a mixed-order word given as generator factors.

    Applies the product rule occurrence by occurrence before any
    normal ordering; agrees with partial_derivative after ordering when
    commutators are central.
    """
    if arg is None:
        arg = NCPoly.one(system)
    out = NCPoly.zero(system)
    for i, (name, power) in enumerate(factors):
        if name != wrt or power == 0:
            continue
        prefix = NCPoly.from_factors(system, factors[:i])
        suffix = NCPoly.from_factors(system, factors[i + 1:])
        middle = lambda_integral_power(system, wrt, power - 1, arg)
        out = out + prefix * middle.scale(power) * suffix
    return out


def gateaux(f: NCPoly, gen: str, direction: NCPoly) -> NCPoly:
    """Directional derivative of a univariate operator polynomial."""
    if not f.depends_only_on(gen):
        raise ValueError("polynomial must depend on a single generator")
    return partial_derivative(f, gen, direction)


def gateaux_limit_form(f: NCPoly, gen: str, direction: NCPoly) -> NCPoly:
    """Directional derivative via the limit definition, evaluated symbolically.

    Expands f(G + h*direction) with a formal scalar h and extracts the first
    order coefficient; an independent route from the symmetrized average.
    """
    if not f.depends_only_on(gen):
        raise ValueError("polynomial must depend on a single generator")
    system = f.system
    pos = system.position_of(gen)
    shifted_gen = NCPoly.gen(system, gen) + direction.scale(ScalarPoly.symbol(_H))
    out = NCPoly.zero(system)
    for word, coeff in f.terms():
        out = out + (shifted_gen ** word[pos]).scale(coeff)
    return out.coefficient_of_symbol(_H, 1)


def formula2_rhs(system: CanonicalSystem, n: int, m: int,
                 pair: int = 0) -> NCPoly:
    """Closed form for B^n A^m - A^m B^n on one pair:

        m * n * (delta_B A) * avg_{n-1}(B; A^(m-1))
    """
    if n < 1 or m < 1:
        raise ValueError("powers must be at least 1")
    a_name, b_name = system.pair_names[pair]
    delta_b_a = NCPoly.scalar(system, -system.commutators[pair])
    integral = lambda_integral_power(system, b_name, n - 1,
                                     NCPoly.gen(system, a_name, m - 1))
    return (delta_b_a * integral).scale(m * n)


def formula3_residual(system: CanonicalSystem, n: int, m: int,
                      pair: int = 0) -> NCPoly:
    """avg_{n-1}(B; A^(m-1)) - avg_{m-1}(A; B^(n-1)); zero under a central commutator."""
    if n < 1 or m < 1:
        raise ValueError("powers must be at least 1")
    a_name, b_name = system.pair_names[pair]
    lhs = lambda_integral_power(system, b_name, n - 1,
                                NCPoly.gen(system, a_name, m - 1))
    rhs = lambda_integral_power(system, a_name, m - 1,
                                NCPoly.gen(system, b_name, n - 1))
    return lhs - rhs


def formula3_check(system: CanonicalSystem, n: int, m: int,
                   pair: int = 0) -> tuple[bool, NCPoly]:
    residual = formula3_residual(system, n, m, pair)
    return residual.is_zero(), residual


def delta_vs_derivative_residuals(f: NCPoly, pair: int = 0,
                                  hbar: str = "hbar") -> tuple[NCPoly, NCPoly]:
    """Residuals of delta_A f = i*hbar df/dB and delta_B f = -i*hbar df/dA.

    Both vanish exactly when the pair commutator is i*hbar.
    """
    from .scalars import i_times
    system = f.system
    a_name, b_name = system.pair_names[pair]
    ih = i_times(hbar)
    res_a = delta_power(NCPoly.gen(system, a_name), f, 1) \
        - partial_derivative(f, b_name).scale(ih)
    res_b = delta_power(NCPoly.gen(system, b_name), f, 1) \
        + partial_derivative(f, a_name).scale(ih)
    return res_a, res_b
