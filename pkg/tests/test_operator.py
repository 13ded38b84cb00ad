import random
from fractions import Fraction

import pytest

from specpoly import (
    DegreeViolation,
    DiffOperator,
    EmptyOperator,
    FamilySpec,
    Poly,
    build_operator,
    falling_factorial,
)

from oracles import random_operator, random_poly


def P(*coeffs):
    return Poly(coeffs)


D2 = DiffOperator([Poly(), Poly(), Poly.one()])
LEGENDRE = build_operator(FamilySpec.jacobi(-1, -2, 0))
CHAUDHRY_QADIR = build_operator(FamilySpec.chaudhry_qadir())


class TestValidation:
    def test_pure_second_derivative(self):
        op = DiffOperator([P(0), P(0), P(1)])
        assert op.order == 2

    def test_degree_violation_identifies_k(self):
        with pytest.raises(DegreeViolation) as err:
            DiffOperator([Poly(), Poly.monomial(2)])
        assert err.value.k == 1
        assert err.value.deg == 2

    def test_jacobi_type_coefficients_valid(self):
        op = DiffOperator([Poly(), P(0, -2), P(1, 0, -1)])
        assert op.order == 2
        assert op == LEGENDRE

    def test_empty_operator_rejected(self):
        with pytest.raises(EmptyOperator):
            DiffOperator([Poly(), Poly()])

    def test_trailing_zero_coefficients_dropped(self):
        op = DiffOperator([P(1), Poly(), Poly()])
        assert op.order == 0

    def test_json_round_trip(self):
        op = CHAUDHRY_QADIR
        assert DiffOperator.from_json(op.to_json()) == op


class TestFallingFactorial:
    def test_five_choose_two_falling(self):
        assert falling_factorial(5, 2) == 20

    def test_more_factors_than_j(self):
        assert falling_factorial(3, 4) == 0

    def test_k_zero(self):
        assert falling_factorial(7, 0) == 1
        assert falling_factorial(0, 0) == 1


class TestApply:
    def test_second_derivative_of_cubic(self):
        assert D2.apply(Poly.monomial(3)) == P(0, 6)

    def test_legendre_type_on_x_squared(self):
        assert LEGENDRE.apply(Poly.monomial(2)) == P(2, 0, -6)

    def test_chaudhry_qadir_on_one_minus_t(self):
        # eigenfunction: L(1-t) = -(1-t), confirming eigenvalue -1
        assert CHAUDHRY_QADIR.apply(P(1, -1)) == P(-1, 1)

    def test_linearity(self):
        rng = random.Random(23)
        for _ in range(20):
            op = random_operator(rng, 4)
            p = random_poly(rng, 6)
            q = random_poly(rng, 6)
            c = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
            assert op.apply(p + q) == op.apply(p) + op.apply(q)
            assert op.apply(c * p) == c * op.apply(p)

    def test_degree_preservation(self):
        rng = random.Random(29)
        for _ in range(20):
            op = random_operator(rng, 4)
            for j in range(8):
                assert op.apply(Poly.monomial(j)).degree <= j


class TestMatrix:
    def test_hand_computed_columns(self):
        op = DiffOperator([Poly(), P(0, -2), P(1, 0, 1)])
        m = op.matrix(2)
        assert m.entry(0, 2) == 2
        assert m.entry(1, 1) == -2
        assert m.entry(2, 2) == -2
        for i in range(3):
            for j in range(3):
                if (i, j) not in {(0, 2), (1, 1), (2, 2)}:
                    assert m.entry(i, j) == 0

    def test_derivative_operator_strictly_upper(self):
        op = DiffOperator([Poly(), Poly.one()])
        m = op.matrix(5)
        for j in range(1, 6):
            assert m.entry(j - 1, j) == j
        assert all(m.entry(i, i) == 0 for i in range(6))

    def test_identity_operator(self):
        op = DiffOperator([Poly.one()])
        m = op.matrix(3)
        for i in range(4):
            for j in range(4):
                assert m.entry(i, j) == (1 if i == j else 0)

    def test_upper_triangular_and_diagonal_matches_spectrum(self):
        rng = random.Random(31)
        for _ in range(20):
            op = random_operator(rng, 4)
            n = rng.randint(0, 10)
            m = op.matrix(n)
            spec = op.spectrum(n)
            for i in range(n + 1):
                for j in range(n + 1):
                    if i > j:
                        assert m.entry(i, j) == 0
            assert m.diagonal == spec.values


class TestSpectrum:
    def test_chaudhry_qadir_minus_n_squared(self):
        spec = CHAUDHRY_QADIR.spectrum(4)
        assert spec.values == tuple(Fraction(-n * n) for n in range(5))
        assert spec.distinct

    def test_jacobi_closed_form(self):
        rng = random.Random(37)
        for _ in range(10):
            alpha = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            beta = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            op = build_operator(FamilySpec.jacobi(-1, alpha, beta))
            spec = op.spectrum(8)
            for j in range(9):
                assert spec.values[j] == -j * (j - 1) + j * alpha

    def test_derivative_operator_all_zero(self):
        op = DiffOperator([Poly(), Poly.one()])
        spec = op.spectrum(4)
        assert spec.values == (Fraction(0),) * 5
        assert spec.multiplicity == {Fraction(0): (0, 1, 2, 3, 4)}
        assert not spec.distinct

    def test_prop_two_plus_eps_eigenvalues(self):
        # (x^2+1) y'' + (alpha x) y' has eigenvalues j(j-1) + alpha*j on L
        alpha = Fraction(-4)
        op = build_operator(FamilySpec.jacobi(1, alpha, 0))
        spec = op.spectrum(6)
        for j in range(7):
            assert spec.values[j] == j * (j - 1) + alpha * j

    def test_degrees_for(self):
        spec = CHAUDHRY_QADIR.spectrum(5)
        assert spec.degrees_for(-4) == (2,)
        assert spec.degrees_for(7) == ()
