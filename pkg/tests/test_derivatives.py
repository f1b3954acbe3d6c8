"""Operator derivatives: closed forms, limit definition, power formulas."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opcalc.algebra import CanonicalSystem, NCPoly, commutator
from opcalc.derivatives import (MAX_GENERATOR_POWER, delta_vs_derivative_residuals,
                                formula2_rhs, formula3_check, formula3_residual,
                                gateaux, gateaux_limit_form, higher_partial,
                                lambda_integral_power, partial_derivative,
                                word_partial_derivative)
from opcalc.scalars import ScalarPoly
from opcalc.verify import lambda_integral_direct, random_ncpoly

from oracles import slow_normal_order

FORMAL = CanonicalSystem.formal(1, names=[("A", "B")])
A = NCPoly.gen(FORMAL, "A")
B = NCPoly.gen(FORMAL, "B")
C = ScalarPoly.symbol("c")


class TestLambdaIntegral:
    def test_n0_returns_argument(self):
        assert lambda_integral_power(FORMAL, "A", 0, B) == B

    def test_n1_symmetrized_average(self):
        # (AB + BA)/2 = AB - c/2
        expected = A * B - NCPoly.scalar(FORMAL, C * ScalarPoly.rational(1, 2))
        assert lambda_integral_power(FORMAL, "A", 1, B) == expected

    def test_n2_from_word_expansion(self):
        # (A^2 B + A B A + B A^2)/3 via the swap oracle
        words = [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
        acc = NCPoly.zero(FORMAL)
        for slots in words:
            acc = acc + slow_normal_order(FORMAL, slots)
        expected = acc.scale(ScalarPoly.rational(1, 3))
        assert lambda_integral_power(FORMAL, "A", 2, B) == expected
        assert expected == A ** 2 * B - A.scale(C)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_formula1_against_integral_route(self, n):
        arg = B ** 2 + B
        closed = lambda_integral_power(FORMAL, "A", n, arg)
        assert (closed - lambda_integral_direct(FORMAL, "A", n, arg)).is_zero()

    def test_power_cap(self):
        with pytest.raises(ValueError):
            lambda_integral_power(FORMAL, "A", MAX_GENERATOR_POWER + 1, B)
        with pytest.raises(ValueError):
            lambda_integral_power(FORMAL, "A", -1, B)
        # the cap itself is supported
        at_cap = lambda_integral_power(FORMAL, "A", MAX_GENERATOR_POWER, B)
        assert at_cap.degree() == MAX_GENERATOR_POWER + 1


class TestPartialDerivative:
    def test_power_rule_scalar_argument(self):
        assert partial_derivative(A ** 2 * B, "A") == (A * B).scale(2)

    def test_operator_argument(self):
        # d(A^2)/dA{B} = AB + BA = 2AB - c
        expected = (A * B).scale(2) - NCPoly.scalar(FORMAL, C)
        assert partial_derivative(A ** 2, "A", B) == expected

    def test_appendix_mixed_hamiltonian_term(self):
        # two-pair system as in the coupled model at t = 0
        from opcalc.hybrid import hybrid_symbolic_system, symbolic_hamiltonian
        system = hybrid_symbolic_system()
        ham = symbolic_hamiltonian(system)
        rhs = partial_derivative(ham, "x", partial_derivative(ham, "p"))
        p = NCPoly.gen(system, "p")
        rel = NCPoly.gen(system, "x") - NCPoly.gen(system, "X")
        factor = ScalarPoly.symbol("alpha") * ScalarPoly.symbol("m", -1) \
            * ScalarPoly.rational(1, 2)
        assert rhs == (p * rel + rel * p).scale(factor)

    def test_constant_and_missing_generator(self):
        assert partial_derivative(NCPoly.one(FORMAL), "A").is_zero()
        assert partial_derivative(B ** 3, "A", B).is_zero()
        with pytest.raises(KeyError):
            partial_derivative(A, "Q")


class TestGateaux:
    def test_cubic_direction(self):
        expected = (A ** 2 * B).scale(3) - A.scale(C * 3)
        assert gateaux(A ** 3, "A", B) == expected
        assert gateaux_limit_form(A ** 3, "A", B) == expected

    def test_identity_and_constant(self):
        assert gateaux(A, "A", B) == B
        assert gateaux(NCPoly.one(FORMAL), "A", B).is_zero()

    def test_univariate_required(self):
        with pytest.raises(ValueError):
            gateaux(A * B, "A", B)

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=10 ** 6))
    def test_matches_limit_form_randomized(self, seed):
        rng = random.Random(seed)
        powers = {k: rng.randint(-2, 2) for k in range(rng.randint(1, 4))}
        f = NCPoly(FORMAL, {(k, 0): ScalarPoly.number(v)
                            for k, v in powers.items() if v})
        direction = random_ncpoly(rng, FORMAL, 2, 2)
        assert gateaux(f, "A", direction) == \
            gateaux_limit_form(f, "A", direction)

    @settings(max_examples=20, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=10 ** 6))
    def test_linearity_in_direction(self, seed):
        rng = random.Random(seed)
        f = A ** rng.randint(1, 5)
        d1 = random_ncpoly(rng, FORMAL, 2, 2)
        d2 = random_ncpoly(rng, FORMAL, 2, 2)
        a = ScalarPoly.symbol("a")
        b = ScalarPoly.symbol("b")
        combined = gateaux(f, "A", d1.scale(a) + d2.scale(b))
        assert combined == gateaux(f, "A", d1).scale(a) + gateaux(f, "A", d2).scale(b)


class TestWordDerivative:
    """The word rule matches the canonical-form derivative exactly when the
    argument commutes with the conjugate generator (c-numbers included);
    reordering BA -> AB - c differentiates to B*C on one side and C*B on the
    other, so a nonzero [C, B] breaks the equivalence even for central c.
    """

    def test_agrees_for_cnumber_argument(self):
        rng = random.Random(11)
        for _ in range(15):
            factors = [(rng.choice("AB"), rng.randint(0, 3))
                       for _ in range(rng.randint(1, 5))]
            via_word = word_partial_derivative(FORMAL, factors, "A")
            via_normal = partial_derivative(
                NCPoly.from_factors(FORMAL, factors), "A")
            assert via_word == via_normal

    def test_agrees_for_conjugate_commutant_argument(self):
        rng = random.Random(12)
        for _ in range(15):
            factors = [(rng.choice("AB"), rng.randint(0, 3))
                       for _ in range(rng.randint(1, 5))]
            nf = NCPoly.from_factors(FORMAL, factors)
            arg_b = NCPoly.gen(FORMAL, "B", rng.randint(0, 3)) \
                + NCPoly.scalar(FORMAL, rng.randint(-2, 2))
            assert word_partial_derivative(FORMAL, factors, "A", arg_b) == \
                partial_derivative(nf, "A", arg_b)
            arg_a = NCPoly.gen(FORMAL, "A", rng.randint(0, 3))
            assert word_partial_derivative(FORMAL, factors, "B", arg_a) == \
                partial_derivative(nf, "B", arg_a)

    def test_general_argument_boundary(self):
        # minimal disagreement: d(ABA)/dA{A} differs by -cA
        factors = [("A", 1), ("B", 1), ("A", 1)]
        via_word = word_partial_derivative(FORMAL, factors, "A", A)
        via_normal = partial_derivative(
            NCPoly.from_factors(FORMAL, factors), "A", A)
        assert via_word - via_normal == A.scale(-C)

    def test_two_occurrences(self):
        # d(A B A^2 B)/dA{1}: first factor + inner power rule
        factors = [("A", 1), ("B", 1), ("A", 2), ("B", 1)]
        result = word_partial_derivative(FORMAL, factors, "A")
        expected = partial_derivative(NCPoly.from_factors(FORMAL, factors), "A")
        assert result == expected


class TestFormulas:
    @pytest.mark.parametrize("n,m", [(1, 1), (2, 2), (2, 3), (6, 6), (3, 5)])
    def test_formula2_matches_commutator(self, n, m):
        lhs = (B ** n) * (A ** m) - (A ** m) * (B ** n)
        assert (lhs - formula2_rhs(FORMAL, n, m)).is_zero()

    def test_formula2_base_case(self):
        assert formula2_rhs(FORMAL, 1, 1) == NCPoly.scalar(FORMAL, -C)

    def test_formula2_2_2(self):
        # 4(-c)(AB - c/2) = -4cAB + 2c^2
        expected = (A * B).scale(C * -4) + NCPoly.scalar(FORMAL, C * C * 2)
        assert formula2_rhs(FORMAL, 2, 2) == expected

    @pytest.mark.parametrize("n,m", [(1, 1), (2, 2), (2, 3), (6, 6), (4, 1)])
    def test_formula3(self, n, m):
        ok, residual = formula3_check(FORMAL, n, m)
        assert ok and residual.is_zero()

    def test_formula3_both_sides_value(self):
        # n=2, m=3: both sides equal A^2 B - cA
        side = lambda_integral_power(FORMAL, "B", 1, A ** 2)
        assert side == A ** 2 * B - A.scale(C)
        assert formula3_residual(FORMAL, 2, 3).is_zero()

    def test_bad_powers_rejected(self):
        with pytest.raises(ValueError):
            formula2_rhs(FORMAL, 0, 1)
        with pytest.raises(ValueError):
            formula3_residual(FORMAL, 1, 0)


class TestHigherPartial:
    def test_examples(self):
        assert higher_partial(A ** 3, "A", 2) == A.scale(6)
        assert higher_partial(A ** 2 * B, "A", 2) == B.scale(2)
        assert higher_partial(B ** 4, "B", 3) == B.scale(24)

    def test_equals_repeated_power_rule(self):
        rng = random.Random(3)
        f = random_ncpoly(rng, FORMAL, 5, 4)
        twice = partial_derivative(partial_derivative(f, "B"), "B")
        assert higher_partial(f, "B", 2) == twice

    def test_order_validated(self):
        with pytest.raises(ValueError):
            higher_partial(A, "A", 0)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10 ** 6))
def test_delta_derivative_relations_standard_commutator(seed):
    system = CanonicalSystem.standard(1)
    rng = random.Random(seed)
    f = random_ncpoly(rng, system, 4, 3)
    res_a, res_b = delta_vs_derivative_residuals(f)
    assert res_a.is_zero() and res_b.is_zero()


def test_delta_derivative_relations_fail_for_formal_c():
    # sanity: the relations are specific to c = i*hbar
    res_a, _ = delta_vs_derivative_residuals(A * B)
    assert not res_a.is_zero()
