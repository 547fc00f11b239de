"""Tests for the density-condition functionals and auxiliary identities."""

import math

import numpy as np
import pytest
from scipy import special

from varentropy import (
    Exponential,
    NormalDiag,
    Pareto,
    Uniform,
    ball_average_profile,
    condition_report,
    density_ratio_floor,
    domination_constants,
    estimate_k_functional,
    estimate_q_functional,
    estimate_t_functional,
    inequality_suite,
    integrability_gauge,
    local_average,
    tail_log_moment_identity,
)
from varentropy.conditions import DIVERGING, FINITE_PASS, INCONCLUSIVE
from varentropy.estimator import EULER_GAMMA, log_unit_ball_volume
from varentropy.exceptions import (
    BudgetTooSmallError,
    InvalidParamsError,
    NegativeArgumentError,
)

PHI0 = 1.0 / math.sqrt(2 * math.pi)


class TestGauge:
    def test_zero_below_one(self):
        assert integrability_gauge(0.5) == 0.0

    def test_zero_at_one(self):
        assert integrability_gauge(1.0) == 0.0

    def test_e_log_e(self):
        assert integrability_gauge(math.e) == pytest.approx(math.e, abs=1e-14)

    def test_vanishes_whenever_log_power_below_one(self):
        """Distances inside (1/e, e) contribute nothing for any exponent."""
        rho = np.exp(np.linspace(-0.99, 0.99, 101))
        for alpha in (1, 2, 3, 4):
            assert np.all(integrability_gauge(np.abs(np.log(rho)) ** alpha) == 0.0)

    def test_negative_rejected(self):
        with pytest.raises(NegativeArgumentError):
            integrability_gauge(-0.1)

    def test_nondecreasing(self):
        t = np.sort(np.concatenate([np.linspace(0, 3, 301), [1.0 - 1e-12, 1.0]]))
        v = integrability_gauge(t)
        assert np.all(np.diff(v) >= 0)

    def test_superlinear_growth(self):
        ratios = [integrability_gauge(10.0 ** k) / 10.0 ** k for k in range(1, 7)]
        assert all(b > a for a, b in zip(ratios, ratios[1:]))


class TestLocalAverage:
    def test_uniform_interior_is_exactly_one(self):
        """Constant density with the ball inside the support."""
        assert local_average(Uniform(0, 1), 0.5, 0.1) == pytest.approx(
            1.0, rel=1e-12)

    def test_standard_normal_unit_radius(self):
        expected = (special.ndtr(1.0) - special.ndtr(-1.0)) / 2.0
        assert local_average(NormalDiag(0, 1), 0.0, 1.0) == pytest.approx(
            expected, rel=1e-12)

    def test_small_radius_approaches_density(self):
        assert local_average(NormalDiag(0, 1), 0.0, 1e-6) == pytest.approx(
            PHI0, abs=1e-6)

    def test_lebesgue_linear_error_bound(self):
        """|average - f(x)| <= C*r for small r, with C fitted per family."""
        cases = [(NormalDiag(0, 1), 0.3), (Exponential(1.0), 0.7)]
        for dist, x in cases:
            fx = dist.density(x)
            radii = 1e-3 * 2.0 ** (-np.arange(6))
            errs = [abs(local_average(dist, x, float(r)) - fx) for r in radii]
            C = 2.0 * errs[0] / radii[0] + 1e-9
            assert all(e <= C * r for e, r in zip(errs, radii))

    def test_mc_path_matches_closed_form_ball_mass(self):
        """d=2 standard normal: mass of B(0,r) is 1 - exp(-r^2/2)."""
        dist = NormalDiag([0, 0], [1, 1])
        r = 0.5
        exact = -math.expm1(-r * r / 2) / (math.pi * r * r)
        approx = local_average(dist, [0.0, 0.0], r, budget=200_000, seed=4)
        assert approx == pytest.approx(exact, rel=0.02)

    def test_mc_budget_floor(self):
        with pytest.raises(BudgetTooSmallError):
            local_average(NormalDiag([0, 0], [1, 1]), [0.0, 0.0], 0.5, budget=10)

    def test_bad_radius(self):
        with pytest.raises(InvalidParamsError):
            local_average(Uniform(0, 1), 0.5, 0.0)


class TestBallAverageProfile:
    def test_uniform_flat_profile(self):
        prof = ball_average_profile(Uniform(0, 1), 0.5, 0.2)
        assert prof.sup_value == pytest.approx(1.0, rel=1e-9)
        assert prof.inf_value == pytest.approx(1.0, rel=1e-9)

    def test_normal_at_mode(self):
        """Averages grow as r shrinks, so sup sits at the smallest radius."""
        prof = ball_average_profile(NormalDiag(0, 1), 0.0, 1.0)
        assert prof.sup_value == prof.averages[-1]
        assert prof.inf_value == prof.averages[0]
        expected_at_cap = (special.ndtr(1.0) - special.ndtr(-1.0)) / 2.0
        assert prof.averages[0] == pytest.approx(expected_at_cap, rel=1e-12)
        assert prof.sup_value == pytest.approx(PHI0, rel=1e-4)

    def test_normal_in_tail(self):
        """Three sigmas out, mass grows toward the mode: sup at the cap."""
        prof = ball_average_profile(NormalDiag(0, 1), 3.0, 1.0)
        assert prof.sup_value == prof.averages[0]

    def test_profile_invariants(self):
        prof = ball_average_profile(Exponential(1.0), 0.5, 2.0)
        assert np.all(prof.averages >= 0)
        assert prof.inf_value <= prof.averages.min() + 1e-15
        assert prof.sup_value >= prof.averages.max() - 1e-15

    def test_nested_grid_monotonicity(self):
        """Doubling the cap with a nested grid never shrinks the sup."""
        for dist, x in ((NormalDiag(0, 1), 0.7), (Exponential(1.0), 0.4)):
            small = ball_average_profile(dist, x, 0.5, grid_size=12)
            large = ball_average_profile(dist, x, 1.0, grid_size=13)
            assert large.sup_value >= small.sup_value
            assert large.inf_value <= small.inf_value

    def test_grid_size_floor(self):
        with pytest.raises(InvalidParamsError):
            ball_average_profile(Uniform(0, 1), 0.5, 0.1, grid_size=4)


class TestPairGaugeFunctional:
    def test_uniform_alpha_one_finite(self):
        est = estimate_k_functional(Uniform(0, 1), 1, budget=160_000, seed=2)
        assert est.verdict == FINITE_PASS
        assert est.value > 0

    def test_normal_all_alphas_structure(self):
        for alpha in (1, 2):
            est = estimate_k_functional(NormalDiag(0, 1), alpha,
                                        budget=160_000, seed=3)
            assert len(est.estimates) == 3
            assert est.verdict in (FINITE_PASS, INCONCLUSIVE)
            assert all(se >= 0 for se in est.stderrs)

    def test_budget_floor(self):
        with pytest.raises(BudgetTooSmallError):
            estimate_k_functional(Uniform(0, 1), 1, budget=100)

    def test_bad_alpha(self):
        with pytest.raises(InvalidParamsError):
            estimate_k_functional(Uniform(0, 1), 5)


class TestProfileFunctionals:
    def test_uniform_sup_profile_is_one(self):
        """Interior points have grid sup exactly 1, so the mean is ~1."""
        est = estimate_q_functional(Uniform(0, 1), budget=4_000, seed=5)
        assert est.verdict == FINITE_PASS
        assert abs(est.value - 1.0) < 1e-3
        assert est.value <= 1.0 + 1e-9

    def test_normal_sup_profile_respects_density_ceiling(self):
        """sup-profile values cannot exceed (sup f)^eps."""
        est = estimate_q_functional(NormalDiag(0, 1), eps1=0.5, budget=4_000, seed=6)
        assert est.verdict == FINITE_PASS
        assert est.value <= PHI0 ** 0.5 + 3 * est.stderr

    def test_uniform_inf_profile_finite(self):
        est = estimate_t_functional(Uniform(0, 1), eps2=0.5, radius_cap=0.05,
                                    budget=4_000, seed=7)
        assert est.verdict == FINITE_PASS
        assert est.value <= 1.5

    def test_pareto_inf_profile_finite(self):
        """Heavy tail: f^(1-eps) integrates in closed form, so the
        lower-envelope route predicts a finite inf-profile functional."""
        shape, eps = 3.0, 0.5
        tail_integral = shape ** (1 - eps) / ((shape + 1) * (1 - eps) - 1)
        assert math.isfinite(tail_integral) and tail_integral == pytest.approx(
            math.sqrt(3), rel=1e-12)
        assert density_ratio_floor(Pareto(3, 1), radius_cap=1.0, budget=2_000,
                                   seed=8) > 0
        est = estimate_t_functional(Pareto(3, 1), eps2=eps, radius_cap=1.0,
                                    budget=4_000, seed=8)
        assert est.verdict in (FINITE_PASS, INCONCLUSIVE)
        assert math.isfinite(est.value)

    def test_normal_lower_envelope_ratio_positive(self):
        c = density_ratio_floor(NormalDiag(0, 1), radius_cap=1.0, budget=2_000,
                                seed=9)
        assert c > 0

    def test_eps1_range(self):
        with pytest.raises(InvalidParamsError):
            estimate_q_functional(Uniform(0, 1), eps1=1.5)


class TestConditionReport:
    def test_json_shape(self):
        report = condition_report(
            Uniform(0, 1), alphas=(1,), budget_pairs=10_000,
            budget_profile=1_000, seed=11)
        doc = report.to_json_dict()
        assert doc["schema"] == "1"
        assert doc["distribution"] == "uniform(a=0.0, b=1.0, d=1)"
        names = [f["functional"] for f in doc["functionals"]]
        assert names == ["pair_gauge", "sup_profile", "inf_profile"]
        for f in doc["functionals"]:
            assert len(f["budgets"]) == len(f["estimates"]) == len(f["stderr"]) == 3
            assert f["verdict"] in (FINITE_PASS, DIVERGING, INCONCLUSIVE)


class TestTailLogMomentIdentities:
    @pytest.mark.parametrize("power", [3, 4])
    @pytest.mark.parametrize("tail", ["lower", "upper"])
    @pytest.mark.parametrize("dist", [Exponential(1.0), Uniform(0, 1)],
                             ids=["exp1", "unif01"])
    def test_identities_hold(self, power, tail, dist):
        check = tail_log_moment_identity(dist, power, tail)
        assert check.abs_diff <= 1e-6

    def test_empty_lower_region(self):
        """A cdf vanishing on (0, 1/e] makes both sides exactly zero."""
        dist = Uniform(1.01 / math.e, 1.0)
        check = tail_log_moment_identity(dist, 3, "lower")
        assert check.lhs == 0.0
        assert check.rhs == 0.0

    def test_requires_nonnegative_support(self):
        with pytest.raises(InvalidParamsError):
            tail_log_moment_identity(NormalDiag(0, 1), 3, "lower")

    def test_rejects_bad_power(self):
        with pytest.raises(InvalidParamsError):
            tail_log_moment_identity(Exponential(1.0), 2, "lower")


class TestInequalitySuite:
    def test_all_pass_randomized(self):
        report = inequality_suite(trials=20_000, seed=13)
        assert report.all_pass
        for result in report.results:
            assert result.violations == 0
            assert result.max_gap <= 0

    def test_domination_constants_are_valid_bounds(self):
        """Dense log-spaced sweep of rho for every (d, alpha)."""
        rho_log = np.linspace(math.log(1e-10), math.log(1e10), 20_001)
        for d in range(1, 9):
            c0 = log_unit_ball_volume(d) + EULER_GAMMA
            for alpha in range(1, 5):
                a, b = domination_constants(d, alpha)
                lhs = integrability_gauge(np.abs(d * rho_log + c0) ** alpha)
                rhs = a * integrability_gauge(np.abs(rho_log) ** alpha) + b
                assert np.all(lhs <= rhs), (d, alpha)

    def test_json_report(self):
        doc = inequality_suite(trials=1_000, seed=14).to_json_dict()
        assert doc["all_pass"] is True
        assert len(doc["results"]) == 4
