"""Bracket operator: definition cases, correspondence, laws and their limits."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opcalc.algebra import CanonicalSystem, NCPoly, commutator
from opcalc.poisson import (antisymmetry_residual, correspondence_residual,
                            inputs_digest, jacobi_residual, law_checks,
                            leibniz_residual, linearity_residual,
                            poisson_bracket, poisson_bracket_total)
from opcalc.scalars import ScalarPoly
from opcalc.verify import (classical_poisson_oracle, equal_commutator_system,
                           random_ncpoly)

from oracles import slow_commutator

FORMAL = CanonicalSystem.formal(1, names=[("A", "B")])
A = NCPoly.gen(FORMAL, "A")
B = NCPoly.gen(FORMAL, "B")
C = ScalarPoly.symbol("c")


class TestBracketDefinition:
    def test_canonical_pair(self):
        assert poisson_bracket(A, B, 0) == NCPoly.one(FORMAL)

    def test_square_against_commutator(self):
        assert poisson_bracket(A ** 2, B, 0) == A.scale(2)
        assert commutator(A ** 2, B) == A.scale(C * 2)

    def test_squares_both(self):
        expected = (A * B).scale(4) - NCPoly.scalar(FORMAL, C * 2)
        assert poisson_bracket(A ** 2, B ** 2, 0) == expected
        assert slow_commutator(A ** 2, B ** 2) == expected.scale(C)

    def test_index_out_of_range(self):
        with pytest.raises(IndexError):
            poisson_bracket(A, B, 1)

    def test_bracket_with_constant(self):
        assert poisson_bracket_total(A * B, NCPoly.one(FORMAL)).is_zero()


class TestTotalBracket:
    def test_single_pair_in_two_pair_system(self):
        system = CanonicalSystem.formal(2, names=[("A1", "B1"), ("A2", "B2")])
        a1 = NCPoly.gen(system, "A1")
        b1 = NCPoly.gen(system, "B1")
        assert poisson_bracket_total(a1, b1) == NCPoly.one(system)

    def test_product_words_two_pairs(self):
        # {A1 A2, B1 B2} = A1B1 + A2B2 - c2: applying the derivative
        # definition makes the pair-1 term dg/dB1 = B2 land left of A2,
        # and reordering B2 A2 emits the central correction. The
        # correspondence theorem pins this value (the commutator equals
        # c1 (A2B2 - c2) + c2 A1B1).
        system = CanonicalSystem.formal(2, names=[("A1", "B1"), ("A2", "B2")])
        f = NCPoly.from_factors(system, [("A1", 1), ("A2", 1)])
        g = NCPoly.from_factors(system, [("B1", 1), ("B2", 1)])
        a1b1 = NCPoly.from_factors(system, [("A1", 1), ("B1", 1)])
        a2b2 = NCPoly.from_factors(system, [("A2", 1), ("B2", 1)])
        c2 = ScalarPoly.symbol("c2")
        total = poisson_bracket_total(f, g)
        assert total == a1b1 + a2b2 - NCPoly.scalar(system, c2)
        assert correspondence_residual(f, g).is_zero()
        assert slow_commutator(f, g) == \
            (a2b2 - NCPoly.scalar(system, c2)).scale(ScalarPoly.symbol("c1")) \
            + a1b1.scale(c2)


class TestCorrespondence:
    def test_generators(self):
        assert correspondence_residual(A, B).is_zero()

    @pytest.mark.parametrize("n_pairs,degree", [(1, 3), (3, 2)])
    def test_randomized(self, n_pairs, degree):
        rng = random.Random(50 + n_pairs)
        system = CanonicalSystem.formal(n_pairs)
        for _ in range(10):
            f = random_ncpoly(rng, system, degree)
            g = random_ncpoly(rng, system, degree)
            assert correspondence_residual(f, g).is_zero()

    def test_commutator_route_is_independent(self):
        rng = random.Random(9)
        system = CanonicalSystem.formal(2)
        f = random_ncpoly(rng, system, 3, 3)
        g = random_ncpoly(rng, system, 3, 3)
        total = NCPoly.zero(system)
        for i in range(2):
            total = total + poisson_bracket(f, g, i).scale(system.commutators[i])
        assert slow_commutator(f, g) == total


class TestLaws:
    @settings(max_examples=20, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=10 ** 6))
    def test_linearity_unequal_commutators(self, seed):
        rng = random.Random(seed)
        system = CanonicalSystem.formal(2)
        f = random_ncpoly(rng, system, 3, 3)
        g = random_ncpoly(rng, system, 3, 3)
        h = random_ncpoly(rng, system, 3, 3)
        assert linearity_residual(f, g, h).is_zero()

    @settings(max_examples=20, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=10 ** 6))
    def test_leibniz_shared_commutator(self, seed):
        rng = random.Random(seed)
        system = equal_commutator_system(2)
        f = random_ncpoly(rng, system, 3, 3)
        g = random_ncpoly(rng, system, 3, 3)
        h = random_ncpoly(rng, system, 3, 3)
        assert leibniz_residual(f, g, h).is_zero()

    def test_leibniz_simple_case(self):
        assert leibniz_residual(A, B, A * B).is_zero()

    def test_leibniz_fails_for_unequal_commutators(self):
        # minimal counterexample; the weighted per-pair sum still cancels,
        # which is exactly what the correspondence theorem enforces
        system = CanonicalSystem.formal(2)
        x1, p1, x2, p2 = (NCPoly.gen(system, n)
                          for n in ("x1", "p1", "x2", "p2"))
        f, g, h = x2, x1 * p1 ** 2, x1 * x2 * p2
        c1 = ScalarPoly.symbol("c1")
        c2 = ScalarPoly.symbol("c2")
        residual = leibniz_residual(f, g, h)
        assert residual == (x1 * p1 * x2).scale((c1 - c2) * -2)
        per_pair = [
            poisson_bracket(f * g, h, i) - poisson_bracket(f, h, i) * g
            - f * poisson_bracket(g, h, i) for i in range(2)]
        assert (per_pair[0].scale(c1) + per_pair[1].scale(c2)).is_zero()

    @settings(max_examples=15, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=10 ** 6))
    def test_antisymmetry_and_jacobi_standard(self, seed):
        rng = random.Random(seed)
        system = CanonicalSystem.standard(2)
        f = random_ncpoly(rng, system, 3, 2)
        g = random_ncpoly(rng, system, 3, 2)
        h = random_ncpoly(rng, system, 3, 2)
        assert antisymmetry_residual(f, g).is_zero()
        assert jacobi_residual(f, g, h).is_zero()

    def test_self_bracket_standard(self):
        system = CanonicalSystem.standard(1)
        f = random_ncpoly(random.Random(1), system, 3, 3)
        assert poisson_bracket_total(f, f).is_zero()

    def test_jacobi_fixture(self):
        system = CanonicalSystem.standard(1, names=[("A", "B")])
        a = NCPoly.gen(system, "A")
        b = NCPoly.gen(system, "B")
        assert jacobi_residual(a ** 2, b ** 2, a * b).is_zero()


class TestClassicalLimit:
    @settings(max_examples=20, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=10 ** 6))
    def test_matches_commutative_oracle(self, seed):
        rng = random.Random(seed)
        system = CanonicalSystem.classical(2)
        f = random_ncpoly(rng, system, 4, 3)
        g = random_ncpoly(rng, system, 4, 3)
        assert poisson_bracket_total(f, g) == classical_poisson_oracle(f, g)

    def test_textbook_case(self):
        system = CanonicalSystem.classical(1)
        x = NCPoly.gen(system, "x")
        p = NCPoly.gen(system, "p")
        assert poisson_bracket_total(x ** 2, p ** 2) == (x * p).scale(4)


class TestLawReport:
    def test_report_shape(self):
        entries = law_checks(A, B, A * B)
        assert [e["law"] for e in entries] == \
            ["linearity", "leibniz", "antisymmetry", "jacobi"]
        digest = inputs_digest(A, B, A * B)
        for entry in entries:
            assert entry["inputs_digest"] == digest
            assert set(entry) == {"law", "inputs_digest", "residual_zero",
                                  "residual_terms"}
            assert entry["residual_zero"] == (entry["residual_terms"] == 0)

    def test_digest_depends_on_inputs(self):
        assert inputs_digest(A, B) != inputs_digest(B, A)
