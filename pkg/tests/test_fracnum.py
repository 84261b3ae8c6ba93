"""Grid fractional calculus: GL/L1 operators, Mittag-Leffler, the J
functional, residual reports, invariance checks, and grid I/O."""

import math

import numpy as np
import pytest

from liesym.catalog import FRACTIONAL, HeatEquation
from liesym.fracnum import (
    FracDerivSpec,
    GridFunction,
    GridError,
    gamma_reciprocal,
    gl_weights,
    invariance_check,
    j_quadrature,
    mittag_leffler,
    residual_on_grid,
    right_rl_derivative_grid,
    right_rl_integral_values,
    rl_derivative_grid,
    rl_integral_values,
)


def brute_mittag_leffler(alpha, beta, z, terms=10000):
    vals = []
    for k in range(terms):
        r = gamma_reciprocal(alpha * k + beta)
        if r == 0.0:
            continue
        try:
            vals.append(z ** k * r)
        except OverflowError:
            break
    return math.fsum(vals)


class TestGLWeights:
    def test_first_values_frozen(self):
        w = gl_weights(0.5, 2)
        assert w[0] == 1.0
        assert w[1] == -0.5
        assert w[2] == -0.125

    def test_alpha_to_one_limit(self):
        w = gl_weights(1.0 - 1e-12, 4)
        assert w[0] == pytest.approx(1.0)
        assert w[1] == pytest.approx(-1.0)
        assert abs(w[2]) < 1e-9 and abs(w[3]) < 1e-9

    def test_partial_sum_asymptotics(self):
        # sum_{j<=K} w_j = K^{-alpha}/Gamma(1-alpha) asymptotically
        K, alpha = 1000, 0.5
        s = float(gl_weights(alpha, K).sum())
        predicted = K ** (-alpha) / math.gamma(1.0 - alpha)
        assert abs(s - predicted) / predicted < 0.02

    def test_window(self):
        with pytest.raises(GridError):
            gl_weights(1.5, 4)


class TestLeftDerivative:
    def test_power_rule(self):
        # D^0.5 t = Gamma(2)/Gamma(1.5) * t^0.5 via log-gamma
        alpha, K = 0.5, 1000
        g = GridFunction.sample(lambda t, xs: t, 1.0, K)
        d = rl_derivative_grid(g, FracDerivSpec(alpha))
        t = g.t_axis()
        exact = math.gamma(2.0) / math.gamma(1.5) * np.sqrt(t)
        mask = t >= 0.1
        rel = np.max(np.abs(d.values[mask] - exact[mask]) / exact[mask])
        assert rel < 0.01

    def test_kernel_function_refines_to_zero(self):
        alpha = 0.6
        prev = None
        for K in (500, 1000, 2000):
            g = GridFunction.sample(lambda t, xs: t ** (alpha - 1.0), 1.0, K,
                                    zero_at_origin=True)
            d = rl_derivative_grid(g, FracDerivSpec(alpha))
            t = g.t_axis()
            m = float(np.max(np.abs(d.values[t >= 0.1])))
            if prev is not None:
                assert m < prev * 1.1
            prev = m

    def test_zero_input(self):
        g = GridFunction(0.01, np.zeros(101))
        d = rl_derivative_grid(g, FracDerivSpec(0.5))
        assert np.all(d.values == 0.0)

    def test_l1_beats_gl_on_smooth_data(self):
        alpha, K = 0.4, 400
        g = GridFunction.sample(lambda t, xs: t * t, 1.0, K)
        t = g.t_axis()
        exact = math.gamma(3.0) / math.gamma(3.0 - alpha) * t ** (2.0 - alpha)
        mask = t >= 0.2
        err_gl = np.max(np.abs(rl_derivative_grid(g, FracDerivSpec(alpha)).values[mask]
                               - exact[mask]))
        err_l1 = np.max(np.abs(rl_derivative_grid(g, FracDerivSpec(alpha, scheme="l1")).values[mask]
                               - exact[mask]))
        assert err_l1 < err_gl

    def test_direction_guard(self):
        g = GridFunction(0.01, np.zeros(101))
        with pytest.raises(GridError):
            rl_derivative_grid(g, FracDerivSpec(0.5, direction="right"))


class TestRightDerivative:
    def test_right_kernel_refines_to_zero(self):
        alpha, T = 0.6, 1.0
        prev = None
        for K in (500, 1000, 2000):
            g = GridFunction.sample(
                lambda t, xs: (T - t) ** (alpha - 1.0) if t < T else 0.0, T, K)
            d = right_rl_derivative_grid(g, FracDerivSpec(alpha, direction="right"))
            t = g.t_axis()
            m = float(np.max(np.abs(d.values[t <= 0.9])))
            if prev is not None:
                assert m < prev * 1.1
            prev = m

    def test_reflection_symmetry(self):
        # right derivative of u(T-t) mirrors the left derivative of u(t)
        alpha, T, K = 0.5, 1.0, 256
        g = GridFunction.sample(lambda t, xs: t * (1 + t), T, K)
        left = rl_derivative_grid(g, FracDerivSpec(alpha)).values
        refl = GridFunction(g.dt, g.values[::-1].copy())
        right = right_rl_derivative_grid(refl, FracDerivSpec(alpha, direction="right")).values
        assert np.max(np.abs(right[::-1] - left)) < 1e-10

    def test_power_rule_by_reflection(self):
        alpha, T, K = 0.5, 1.0, 1000
        g = GridFunction.sample(lambda t, xs: T - t, T, K)
        d = right_rl_derivative_grid(g, FracDerivSpec(alpha, direction="right"))
        t = g.t_axis()
        exact = math.gamma(2.0) / math.gamma(1.5) * np.sqrt(np.maximum(T - t, 0.0))
        mask = t <= 0.9
        rel = np.max(np.abs(d.values[mask] - exact[mask]) / exact[mask])
        assert rel < 0.01


class TestFractionalIntegrals:
    def test_integral_power_rule(self):
        # I^beta t = t^(1+beta)/Gamma(2+beta) * Gamma(2)
        beta, K = 0.5, 1000
        g = GridFunction.sample(lambda t, xs: t, 1.0, K)
        vals = rl_integral_values(g, beta)
        t = g.t_axis()
        exact = math.gamma(2.0) / math.gamma(2.0 + beta) * t ** (1.0 + beta)
        mask = t >= 0.1
        assert np.max(np.abs(vals[mask] - exact[mask])) < 5e-3

    def test_integral_of_kernel_is_constant(self):
        # I^(1-alpha) t^(alpha-1) = Gamma(alpha) exactly; the GL quadrature
        # approaches it at rate h^alpha (the first-cell mass of the singular
        # integrand dominates the error)
        alpha = 0.5
        errs = []
        for K in (500, 1000, 2000):
            g = GridFunction.sample(lambda t, xs: t ** (alpha - 1.0), 1.0, K,
                                    zero_at_origin=True)
            vals = rl_integral_values(g, 1.0 - alpha)
            t = g.t_axis()
            mask = t >= 0.2
            errs.append(float(np.max(np.abs(vals[mask] - math.gamma(alpha)))))
        assert errs[2] < errs[1] < errs[0]
        assert errs[2] < 5e-2

    def test_right_integral_mirror(self):
        beta, T, K = 0.5, 1.0, 512
        g = GridFunction.sample(lambda t, xs: (T - t), T, K)
        vals = right_rl_integral_values(g, beta)
        refl = GridFunction.sample(lambda t, xs: t, T, K)
        left = rl_integral_values(refl, beta)
        assert np.max(np.abs(vals - left[::-1])) < 1e-10


class TestMittagLeffler:
    def test_at_zero(self):
        assert mittag_leffler(0.5, 1.0, 0.0) == pytest.approx(1.0)

    def test_exponential_identity(self):
        assert abs(mittag_leffler(1.0, 1.0, 1.0) - math.e) < 1e-12

    def test_brute_force_oracle(self):
        mine = mittag_leffler(0.5, 0.5, -1.0)
        ref = brute_mittag_leffler(0.5, 0.5, -1.0)
        assert abs(mine - ref) < 1e-12

    def test_recurrence_lattice(self):
        # E_{a,b}(z) = z E_{a,a+b}(z) + 1/Gamma(b) on a 5x5x5 lattice
        for a in (0.4, 0.5, 0.6, 0.8, 1.0):
            for b in (0.5, 0.8, 1.0, 1.5, 2.0):
                for z in (-2.0, -1.0, 0.0, 0.5, 2.0):
                    lhs = mittag_leffler(a, b, z)
                    rhs = z * mittag_leffler(a, a + b, z) + gamma_reciprocal(b)
                    assert abs(lhs - rhs) < 1e-10

    def test_window_rejection(self):
        with pytest.raises(ValueError):
            mittag_leffler(0.5, 1.0, 75.0)
        with pytest.raises(ValueError):
            mittag_leffler(-0.5, 1.0, 0.5)

    def test_cancellation_guard(self):
        with pytest.raises(ArithmeticError):
            mittag_leffler(0.3, 0.5, -3.0)


class TestResidualOnGrid:
    def test_zero_field(self):
        eq = HeatEquation(1, FRACTIONAL)
        g = GridFunction(1.0 / 64, np.zeros((65, 17)), (0.0,), (1.0 / 16,))
        rep = residual_on_grid(eq, g, 0.5)
        assert rep.max_residual == 0.0 and rep.interior_max == 0.0

    def test_kernel_solution_refinement_trend(self):
        eq = HeatEquation(1, FRACTIONAL)
        alpha = 0.5
        vals = []
        for K in (250, 500, 1000):
            g = GridFunction.sample(lambda t, xs, a: t ** (a - 1.0), 1.0, K,
                                    ((-1.0, 1.0, 17),), alpha=alpha,
                                    zero_at_origin=True)
            vals.append(residual_on_grid(eq, g, alpha).interior_max)
        assert vals[1] < vals[0] * 1.1 and vals[2] < vals[1] * 1.1

    def test_linear_power_solution(self):
        eq = HeatEquation(1, FRACTIONAL)
        alpha = 0.5
        vals = []
        for K in (250, 500):
            g = GridFunction.sample(lambda t, xs, a: xs[0] * t ** (a - 1.0), 1.0, K,
                                    ((-1.0, 1.0, 17),), alpha=alpha,
                                    zero_at_origin=True)
            vals.append(residual_on_grid(eq, g, alpha).interior_max)
        assert vals[1] < vals[0] * 1.1

    def test_coarse_grid_rejected(self):
        eq = HeatEquation(1, FRACTIONAL)
        g = GridFunction(0.1, np.zeros((11, 17)), (0.0,), (0.1,))
        with pytest.raises(GridError):
            residual_on_grid(eq, g, 0.5)


class TestJQuadrature:
    def test_zero_second_argument(self):
        assert j_quadrature(lambda t: 1.0, lambda t: 0.0, 0.5, 1.0, 2.0) == 0.0

    def test_constant_closed_form(self):
        # oracle: (1/Gamma(0.5)) * (4/3) * (2^(3/2) - 2), computed by hand
        exact = (4.0 / 3.0) * (2.0 ** 1.5 - 2.0) / math.gamma(0.5)
        val = j_quadrature(lambda t: 1.0, lambda t: 1.0, 0.5, 1.0, 2.0, nodes=256)
        assert exact == pytest.approx(0.6231866060136243)
        assert abs(val - exact) < 1e-4

    def test_bilinearity(self):
        f1 = lambda t: math.sin(t)
        f2 = lambda t: t * t
        g = lambda t: math.exp(-t)
        a, b = 2.0, -3.0
        lhs = j_quadrature(lambda t: a * f1(t) + b * f2(t), g, 0.5, 1.0, 2.0)
        rhs = a * j_quadrature(f1, g, 0.5, 1.0, 2.0) + b * j_quadrature(f2, g, 0.5, 1.0, 2.0)
        assert abs(lhs - rhs) < 1e-10

    def test_time_derivative_identity(self):
        # D_t J(f,g) = f * tI_T^(1-alpha) g - g * 0I_t^(1-alpha) f
        alpha, T = 0.5, 2.0
        f = lambda t: 1.0 + 0.5 * t
        g = lambda t: math.cos(t)
        t0, h = 1.0, 1e-4
        dj = (j_quadrature(f, g, alpha, t0 + h, T, nodes=192)
              - j_quadrature(f, g, alpha, t0 - h, T, nodes=192)) / (2 * h)
        K = 4000
        gf = GridFunction.sample(lambda t, xs: f(t), T, K)
        gg = GridFunction.sample(lambda t, xs: g(t), T, K)
        k0 = int(round(t0 / gf.dt))
        right = right_rl_integral_values(gg, 1.0 - alpha)[k0]
        left = rl_integral_values(gf, 1.0 - alpha)[k0]
        expect = f(t0) * right - g(t0) * left
        assert abs(dj - expect) < 5e-3

    def test_grid_function_arguments(self):
        gf = GridFunction.sample(lambda t, xs: t, 2.0, 256)
        val = j_quadrature(gf, gf, 0.5, 1.0, 2.0, nodes=64)
        ref = j_quadrature(lambda t: t, lambda t: t, 0.5, 1.0, 2.0, nodes=64)
        assert abs(val - ref) < 1e-3

    def test_domain_guards(self):
        with pytest.raises(GridError):
            j_quadrature(lambda t: 1.0, lambda t: 1.0, 0.5, 2.5, 2.0)
        with pytest.raises(GridError):
            j_quadrature(lambda t: 1.0, lambda t: 1.0, 1.5, 1.0, 2.0)


class TestInvariance:
    def test_identity_transformation(self):
        from liesym.catalog import exact_solutions, generators
        from liesym.prolong import exponentiate_catalog

        eq = HeatEquation(1, FRACTIONAL)
        sol = exact_solutions(eq, k=1.0)[2]
        g01 = next(g for g in generators(eq) if g.name == "G01")
        tr = exponentiate_catalog(g01, 0.0)
        rep = invariance_check(eq, sol, tr, 0.5, T=1.0, K=128, spatial=((-1.0, 1.0, 17),))
        assert rep.ratio == pytest.approx(1.0)

    def test_window_violation_reported(self):
        from liesym.prolong import PointTransformation

        eq = HeatEquation(1, FRACTIONAL)
        shift = PointTransformation(
            "t-shift", 1, 0.5,
            lambda t, xs: (t + 0.5, xs),
            lambda t, xs: (t - 0.5, xs),
            lambda t, xs: 1.0,
        )
        with pytest.raises(GridError) as err:
            invariance_check(eq, lambda t, xs, a: t, shift, 0.5, K=64,
                             spatial=((-1.0, 1.0, 17),))
        assert "leaves the sampled window" in str(err.value)


class TestGridIO:
    def _grid(self):
        return GridFunction.sample(lambda t, xs: t + 2 * xs[0], 1.0, 8,
                                   ((0.0, 1.0, 5),))

    def test_csv_roundtrip(self):
        g = self._grid()
        back = GridFunction.from_csv(g.to_csv())
        assert np.allclose(back.values, g.values)
        assert back.dt == pytest.approx(g.dt)
        assert back.spatial_steps[0] == pytest.approx(g.spatial_steps[0])

    def test_binary_roundtrip(self):
        g = self._grid()
        blob = g.to_binary()
        assert blob[:7] == b"FHGRID1"
        back = GridFunction.from_binary(blob)
        assert np.array_equal(back.values, g.values)
        assert back.dt == g.dt

    def test_binary_magic_guard(self):
        with pytest.raises(GridError):
            GridFunction.from_binary(b"NOTGRID" + b"\x00" * 64)

    def test_finite_values_enforced(self):
        with pytest.raises(GridError):
            GridFunction(0.1, np.array([0.0, math.inf, 1.0]))
