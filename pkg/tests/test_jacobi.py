"""Classical Jacobi layer: closed forms, finite-difference oracles, quadrature."""

import math

import mpmath as mp
import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.special import roots_jacobi

import xjulia as xj
from xjulia.errors import NodeConvergenceError
from xjulia.jacobi import jacobi_table, log_leading_coeff_jacobi

LEGENDRE = xj.JacobiParams(0.0, 0.0)
CHEB = xj.JacobiParams(-0.5, -0.5)


def beta_integral_oracle(alpha, beta, k):
    """Exact integral of x^k (1-x)^alpha (1+x)^beta over [-1, 1].

    Binomial expansion of x = (1+x) - 1 into shifted beta functions; the
    alternating sum cancels catastrophically in doubles, so it is carried out
    in 50-digit arithmetic and rounded at the end.
    """
    with mp.workdps(50):
        a, b = mp.mpf(alpha), mp.mpf(beta)
        total = mp.mpf(0)
        for j in range(k + 1):
            total += (math.comb(k, j) * mp.mpf(-1) ** (k - j)
                      * mp.mpf(2) ** (a + b + 1 + j) * mp.beta(a + 1, b + j + 1))
        return float(total)


class TestParams:
    def test_rejects_alpha_at_minus_one(self):
        with pytest.raises(ValueError, match="alpha"):
            xj.JacobiParams(-1.0, 0.0)

    def test_rejects_beta_below_minus_one(self):
        with pytest.raises(ValueError, match="beta"):
            xj.JacobiParams(0.0, -1.5)

    def test_dynamics_range_flagged_not_enforced(self):
        p = xj.JacobiParams(-0.9, 0.0)
        assert not p.in_dynamics_range
        assert xj.JacobiParams(-0.5, 2.0).in_dynamics_range


class TestEvaluation:
    def test_legendre_degree_one(self):
        assert_allclose(xj.eval_orthonormal_jacobi(LEGENDRE, 1, 1.0),
                        np.sqrt(1.5), rtol=1e-14)
        for x in (-0.7, 0.12, 0.99):
            assert_allclose(xj.eval_orthonormal_jacobi(LEGENDRE, 1, x),
                            np.sqrt(1.5) * x, rtol=1e-13)

    def test_constant_normalization(self):
        assert_allclose(xj.eval_orthonormal_jacobi(LEGENDRE, 0, 123.0 + 4j),
                        1.0 / np.sqrt(2.0), rtol=1e-14)

    def test_chebyshev_closed_form(self):
        # orthonormal Chebyshev is sqrt(2/pi) T_n; T_3(0.5) = -1
        assert_allclose(xj.eval_orthonormal_jacobi(CHEB, 3, 0.5),
                        np.sqrt(2.0 / np.pi) * (-1.0), rtol=1e-13)

    def test_complex_argument_matches_chebyshev_recurrence(self):
        z = 0.3 + 1.7j
        t = [1.0, z]
        for _ in range(8):
            t.append(2 * z * t[-1] - t[-2])
        assert_allclose(xj.eval_orthonormal_jacobi(CHEB, 9, z),
                        np.sqrt(2.0 / np.pi) * t[9], rtol=1e-12)

    def test_negative_degree_rejected(self):
        with pytest.raises(ValueError):
            xj.eval_orthonormal_jacobi(LEGENDRE, -1, 0.0)


class TestDerivative:
    def test_legendre_degree_one_slope(self):
        assert_allclose(xj.eval_jacobi_derivative(LEGENDRE, 1, 0.3),
                        np.sqrt(1.5), rtol=1e-14)

    def test_constant_has_zero_slope(self):
        assert xj.eval_jacobi_derivative(LEGENDRE, 0, 0.4) == 0.0

    def test_against_central_differences(self):
        # finite-difference oracle, h = 1e-6
        params = xj.JacobiParams(-0.5, -0.5)
        h = 1e-6
        f = lambda x: xj.eval_orthonormal_jacobi(params, 5, x)
        fd = (f(0.2 + h) - f(0.2 - h)) / (2 * h)
        assert_allclose(xj.eval_jacobi_derivative(params, 5, 0.2), fd, rtol=1e-6)

    @pytest.mark.parametrize("n", [3, 10, 30])
    @pytest.mark.parametrize("alpha,beta", [(0.0, 0.0), (0.7, -0.3), (2.5, 1.0)])
    def test_derivative_grid_consistency(self, n, alpha, beta):
        params = xj.JacobiParams(alpha, beta)
        grid = np.linspace(-0.9, 0.9, 100)
        h = 1e-6
        hi = jacobi_table(params, n, grid + h)[n].real
        lo = jacobi_table(params, n, grid - h)[n].real
        fd = (hi - lo) / (2 * h)
        exact = xj.eval_jacobi_derivative(params, n, grid).real
        assert_allclose(exact, fd, rtol=1e-6, atol=1e-8)

    def test_second_derivative_against_differences(self):
        from xjulia.jacobi import eval_jacobi_second_derivative
        params = xj.JacobiParams(1.0, 0.5)
        h = 1e-5
        f = lambda x: xj.eval_orthonormal_jacobi(params, 8, x)
        fd = (f(0.3 + h) - 2 * f(0.3) + f(0.3 - h)) / h ** 2
        assert_allclose(eval_jacobi_second_derivative(params, 8, 0.3), fd, rtol=1e-5)


class TestLeadingCoefficient:
    def test_legendre(self):
        assert_allclose(xj.leading_coeff_jacobi(LEGENDRE, 1), np.sqrt(1.5), rtol=1e-14)

    def test_chebyshev_power_of_two(self):
        # orthonormal T_4 has leading coefficient sqrt(2/pi) * 2^3
        assert_allclose(xj.leading_coeff_jacobi(CHEB, 4),
                        np.sqrt(2.0 / np.pi) * 8.0, rtol=1e-13)

    def test_nth_root_approaches_two(self):
        params = xj.JacobiParams(0.5, 0.3)
        root = np.exp(log_leading_coeff_jacobi(params, 40) / 40)
        assert abs(root - 2.0) < 0.15

    def test_ratio_trend(self):
        # |gamma_{n+1}/gamma_n - 2| keeps shrinking through n in [20, 60]
        params = xj.JacobiParams(0.7, 1.3)
        def ratio_gap(n):
            return abs(np.exp(log_leading_coeff_jacobi(params, n + 1)
                              - log_leading_coeff_jacobi(params, n)) - 2.0)
        for n in range(20, 61):
            assert ratio_gap(n) < ratio_gap(n // 2) + 0.05

    def test_matches_explicit_product(self):
        # independent oracle: gamma_n = lead(P_n) / ||P_n|| via gamma functions
        from scipy.special import gammaln
        a, b = 0.3, 1.7
        n = 17
        lg_lead = (gammaln(2 * n + a + b + 1) - n * np.log(2.0)
                   - gammaln(n + 1) - gammaln(n + a + b + 1))
        lg_norm_sq = ((a + b + 1) * np.log(2.0) - np.log(2 * n + a + b + 1)
                      + gammaln(n + a + 1) + gammaln(n + b + 1)
                      - gammaln(n + a + b + 1) - gammaln(n + 1))
        oracle = np.exp(lg_lead - 0.5 * lg_norm_sq)
        assert_allclose(xj.leading_coeff_jacobi(xj.JacobiParams(a, b), n),
                        oracle, rtol=1e-11)


class TestQuadrature:
    def test_chebyshev_weight_sum(self):
        for order in (1, 2, 7, 40):
            rule = xj.gauss_jacobi_rule(CHEB, order)
            assert_allclose(rule.weights.sum(), np.pi, rtol=1e-13)

    def test_legendre_weight_sum(self):
        rule = xj.gauss_jacobi_rule(LEGENDRE, 13)
        assert_allclose(rule.weights.sum(), 2.0, rtol=1e-14)

    def test_x_squared_against_beta_closed_form(self):
        rule = xj.gauss_jacobi_rule(xj.JacobiParams(1.0, 1.0), 2)
        assert_allclose(rule.integrate(lambda x: x ** 2), 4.0 / 15.0, rtol=1e-13)

    def test_order_one(self):
        rule = xj.gauss_jacobi_rule(xj.JacobiParams(2.0, 0.5), 1)
        assert rule.order == 1
        assert_allclose(rule.weights.sum(), rule.params.weight_mass, rtol=1e-14)

    @pytest.mark.parametrize("alpha,beta", [(0.0, 0.0), (-0.5, -0.5), (1.5, 0.25),
                                            (3.0, 3.0), (-0.9, 4.0)])
    def test_exactness_against_beta_integrals(self, alpha, beta):
        order = 9
        rule = xj.gauss_jacobi_rule(xj.JacobiParams(alpha, beta), order)
        scale = rule.params.weight_mass
        for k in range(2 * order):
            exact = beta_integral_oracle(alpha, beta, k)
            got = rule.integrate(lambda x: x ** k)
            # odd moments of symmetric weights vanish; compare those absolutely
            assert abs(got - exact) <= 1e-12 * max(abs(exact), 1e-3 * scale)

    @pytest.mark.parametrize("order", [5, 24, 60])
    def test_against_golub_welsch_oracle(self, order):
        # scipy computes the same rule by eigenvalue methods
        rule = xj.gauss_jacobi_rule(xj.JacobiParams(0.7, -0.3), order)
        x, w = roots_jacobi(order, 0.7, -0.3)
        assert_allclose(rule.nodes, x, atol=1e-13)
        assert_allclose(rule.weights, w, rtol=1e-10)

    def test_nodes_strictly_increasing(self):
        rule = xj.gauss_jacobi_rule(xj.JacobiParams(4.0, 0.1), 50)
        assert np.all(np.diff(rule.nodes) > 0)
        assert np.all(np.abs(rule.nodes) < 1)

    def test_orthonormality_matrix(self):
        params = xj.JacobiParams(0.25, 2.0)
        rule = xj.gauss_jacobi_rule(params, 40)
        table = jacobi_table(params, 20, rule.nodes).real
        gram = (table * rule.weights) @ table.T
        assert np.max(np.abs(gram - np.eye(21))) <= 1e-10

    def test_invalid_order(self):
        with pytest.raises(ValueError):
            xj.gauss_jacobi_rule(LEGENDRE, 0)

    def test_node_error_type_carries_index(self):
        err = NodeConvergenceError(3, "stalled")
        assert err.index == 3
