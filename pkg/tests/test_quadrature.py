import math

import pytest

from specpoly import NoConvergence, tanh_sinh


def plain(func):
    """Adapt a plain f(x) to the (x, d_lo, d_hi) integrand signature."""
    return lambda x, d_lo, d_hi: func(x)


class TestSmoothIntegrands:
    def test_polynomial(self):
        res = tanh_sinh(plain(lambda x: x * x), 0.0, 1.0, 1e-12)
        assert res.value == pytest.approx(1 / 3, abs=1e-12)
        assert res.err_est <= 1e-12 * (1 + abs(res.value))

    def test_shifted_interval(self):
        res = tanh_sinh(plain(math.exp), -2.0, 3.0, 1e-12)
        assert res.value == pytest.approx(math.exp(3) - math.exp(-2), rel=1e-12)

    def test_oscillatory(self):
        res = tanh_sinh(plain(math.sin), 0.0, math.pi, 1e-12)
        assert res.value == pytest.approx(2.0, rel=1e-11)


class TestSingularIntegrands:
    def test_inverse_square_root_at_right_endpoint(self):
        # integral of (1-x)^(-1/2) over (0,1) = 2; uses the passed distance
        res = tanh_sinh(lambda x, d_lo, d_hi: d_hi ** -0.5, 0.0, 1.0, 1e-12)
        assert res.value == pytest.approx(2.0, rel=1e-11)

    def test_chebyshev_mass(self):
        res = tanh_sinh(
            lambda x, d_lo, d_hi: (d_lo * d_hi) ** -0.5, -1.0, 1.0, 1e-12
        )
        assert res.value == pytest.approx(math.pi, rel=1e-11)

    def test_log_singularity(self):
        res = tanh_sinh(lambda x, d_lo, d_hi: math.log(d_lo), 0.0, 1.0, 1e-12)
        assert res.value == pytest.approx(-1.0, rel=1e-10)


class TestContract:
    def test_rejects_bad_bounds(self):
        with pytest.raises(ValueError):
            tanh_sinh(plain(lambda x: x), 1.0, 0.0)

    def test_no_convergence_raises(self):
        # a non-integrable singularity cannot satisfy the tolerance
        with pytest.raises(NoConvergence):
            tanh_sinh(lambda x, d_lo, d_hi: 1.0 / d_hi, 0.0, 1.0, 1e-12, max_levels=8)

    def test_error_estimate_tracks_truth(self):
        res = tanh_sinh(plain(lambda x: x ** 7), 0.0, 1.0, 1e-10)
        assert abs(res.value - 1 / 8) <= max(res.err_est, 1e-12) * 10

    def test_level_budget_controls_work(self):
        coarse = tanh_sinh(plain(math.cos), 0.0, 1.0, 1e-3)
        fine = tanh_sinh(plain(math.cos), 0.0, 1.0, 1e-13)
        assert coarse.levels <= fine.levels
        assert fine.value == pytest.approx(math.sin(1.0), rel=1e-12)

    def test_deterministic(self):
        a = tanh_sinh(plain(lambda x: math.exp(-x * x)), -1.0, 1.0, 1e-11)
        b = tanh_sinh(plain(lambda x: math.exp(-x * x)), -1.0, 1.0, 1e-11)
        assert a.value == b.value and a.evals == b.evals
