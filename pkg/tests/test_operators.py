import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from qkantorovich.errors import GrowthError, QDomainError, TruncationError
from qkantorovich.functions import TargetFunction, WeightDominated, build_catalog, monomial, polynomial
from qkantorovich.operators import (
    OperatorSpec,
    StancuParams,
    basis_weight,
    basis_weight_ratio,
    discrete_beta_apply,
    drifting_q,
    kantorovich_apply,
    kantorovich_stancu_apply,
    stancu_shift,
)
from qkantorovich.qcore import QContext, q_integer

CAT = build_catalog()
E0, E1, E2 = monomial(0), monomial(1), monomial(2)


def spec(n=10, q=0.9, alpha=0.0, beta=0.0, **kw):
    return OperatorSpec(n, QContext(q), StancuParams(alpha, beta), **kw)


class TestTypes:
    def test_stancu_order(self):
        StancuParams(0.0, 0.0)
        StancuParams(1.0, 2.0)
        with pytest.raises(QDomainError):
            StancuParams(2.0, 1.0)
        with pytest.raises(QDomainError):
            StancuParams(-1.0, 1.0)

    def test_spec_validation(self):
        with pytest.raises(QDomainError):
            spec(n=0)
        with pytest.raises(QDomainError):
            spec(k_tail_tol=0.0)
        with pytest.raises(QDomainError):
            spec(k_max=0)
        with pytest.raises(QDomainError):
            spec(variant="other")

    def test_drifting_schedule(self):
        assert drifting_q(8) == 0.875


class TestBasis:
    def test_vanishes_at_origin(self):
        for k in (1, 2, 9):
            assert basis_weight(5, k, 0.0, QContext(0.7)) == 0.0

    def test_origin_k0(self):
        c = QContext(0.7)
        assert basis_weight(5, 0, 0.0, c) == pytest.approx(q_integer(5, c), rel=1e-15)

    def test_matches_reference(self):
        ref = float(oracles.basis(5, 3, 0.5, 0.9))
        assert basis_weight(5, 3, 0.5, QContext(0.9)) == pytest.approx(ref, rel=1e-12)
        assert ref == pytest.approx(0.73805579838228184237, rel=1e-15)

    @settings(max_examples=30)
    @given(n=st.integers(1, 40), k=st.integers(0, 40), x=st.floats(0.01, 10), q=st.floats(0.3, 0.98))
    def test_against_high_precision(self, n, k, x, q):
        ref = float(oracles.basis(n, k, x, q))
        got = basis_weight(n, k, x, QContext(q))
        assert got == pytest.approx(ref, rel=1e-11, abs=1e-300)

    def test_ratio_k0(self):
        c = QContext(0.5)
        x = 1.3
        expected = q_integer(3, c) * x / (1.0 * (1 + 0.5**3 * x))
        assert basis_weight_ratio(2, 0, x, c) == pytest.approx(expected, rel=1e-14)
        quotient = basis_weight(2, 1, x, c) / basis_weight(2, 0, x, c)
        assert basis_weight_ratio(2, 0, x, c) == pytest.approx(quotient, rel=1e-12)

    def test_ratio_matches_quotient(self):
        c = QContext(0.5)
        quotient = oracles.basis(1, 2, 1.0, 0.5) / oracles.basis(1, 1, 1.0, 0.5)
        assert basis_weight_ratio(1, 1, 1.0, c) == pytest.approx(float(quotient), rel=1e-12)

    @pytest.mark.parametrize("q", [0.5, 0.9, 0.99])
    def test_ratio_eventually_decreasing(self, q):
        c = QContext(q)
        r = np.array([basis_weight_ratio(10, k, 3.0, c) for k in range(200)])
        tail = r[np.argmax(r < 1):]
        assert tail.size > 0 and np.all(tail < 1) and np.all(np.diff(tail) < 0)

    def test_ratio_domain(self):
        with pytest.raises(QDomainError):
            basis_weight_ratio(3, 1, 0.0, QContext(0.5))


class TestDiscrete:
    @pytest.mark.parametrize("q", [0.5, 0.9, 0.99])
    def test_reproduces_constants_and_identity(self, q):
        s = spec(12, q)
        x = np.array([0.0, 0.3, 1.0, 4.0, 10.0])
        np.testing.assert_allclose(discrete_beta_apply(E0, s, x), 1.0, atol=1e-12)
        np.testing.assert_allclose(discrete_beta_apply(E1, s, x), x, rtol=1e-12, atol=1e-13)

    def test_second_moment(self):
        s = spec(5, 0.9)
        n1 = q_integer(6, s.ctx)
        x = 0.5
        expected = (1 / (0.9 * n1) + 1) * x * x + x / n1
        assert discrete_beta_apply(E2, s, x) == pytest.approx(expected, rel=1e-12)

    def test_endpoint(self):
        f = CAT["sigmoid"].f
        assert discrete_beta_apply(f, spec(), 0.0) == pytest.approx(float(f(0.0)), abs=1e-15)

    def test_matches_reference(self):
        ref = float(oracles.discrete(mp.tanh, 10, 0.8, 0.7))
        assert discrete_beta_apply(CAT["sigmoid"].f, spec(10, 0.8), 0.7) == pytest.approx(ref, rel=1e-12)


class TestKantorovich:
    @pytest.mark.parametrize("q", [0.5, 0.8, 0.99])
    def test_normalised(self, q):
        x = np.linspace(0, 10, 11)
        np.testing.assert_allclose(kantorovich_apply(E0, spec(20, q), x), 1.0, atol=1e-12)

    def test_first_moment_aligned(self):
        s = spec(10, 0.9)
        x = np.array([0.0, 0.5, 2.0])
        h = 0.9 / s.n1q
        np.testing.assert_allclose(kantorovich_apply(E1, s, x), (2 * x + h) / 1.9, rtol=1e-13)

    def test_published_first_moment_holds_at_origin(self):
        s = spec(10, 0.9)
        expected = 0.9 / (1.9 * s.n1q)
        assert kantorovich_apply(E1, s, 0.0) == pytest.approx(expected, rel=1e-13)

    def test_literal_variant_is_not_normalised(self):
        s = spec(10, 0.9, variant="literal")
        x = np.array([0.0, 1.0, 3.0])
        expected = 0.9 + (1 - 0.9) * s.n1q * x
        np.testing.assert_allclose(kantorovich_apply(E0, s, x), expected, rtol=1e-12)

    @pytest.mark.parametrize("variant", ["aligned", "literal"])
    def test_numeric_path_matches_reference(self, variant):
        f = CAT["abs_half"].f
        ref = float(oracles.stancu(lambda t: abs(t - mp.mpf(0.5)), 10, 0.8, 0.7, 0, 0, variant))
        got = kantorovich_apply(f, spec(10, 0.8, variant=variant), 0.7)
        assert got == pytest.approx(ref, rel=1e-12)

    def test_numeric_and_exact_paths_agree(self):
        generic = TargetFunction(lambda t: t * t, WeightDominated(1.0))
        x = np.linspace(0, 5, 11)
        for q in (0.5, 0.9, 0.99):
            s = spec(16, q)
            np.testing.assert_allclose(
                kantorovich_apply(generic, s, x), kantorovich_apply(E2, s, x), rtol=1e-11
            )


class TestStancu:
    def test_shift_identity(self):
        c = QContext(0.5)
        t = np.array([0.0, 0.4, 3.0])
        np.testing.assert_array_equal(stancu_shift(t, 4, StancuParams(), c), t)

    def test_shift_origin(self):
        c = QContext(0.7)
        assert stancu_shift(0.0, 6, StancuParams(1, 2), c) == pytest.approx(1 / (q_integer(6, c) + 2), rel=1e-15)

    def test_shift_fixed_point(self):
        assert stancu_shift(1.0, 3, StancuParams(1, 1), QContext(0.5)) == pytest.approx(1.0, rel=1e-15)

    @pytest.mark.parametrize("ab", [(0, 0), (0, 1), (1, 2), (0.5, 0.7)])
    def test_normalised(self, ab):
        x = np.linspace(0, 10, 21)
        np.testing.assert_allclose(kantorovich_stancu_apply(E0, spec(20, 0.9, *ab), x), 1.0, atol=1e-12)

    def test_reduction_to_kantorovich(self):
        x = np.linspace(0, 4, 9)
        for name in ("abs_half", "sigmoid", "e2"):
            f = CAT[name].f
            a = kantorovich_stancu_apply(f, spec(15, 0.85), x)
            b = kantorovich_apply(f, spec(15, 0.85), x)
            np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-15)

    def test_first_moment_example(self):
        s = spec(10, 0.9, 1, 2)
        nq, n1 = s.nq, s.n1q
        c, d = nq / (nq + 2), 1 / (nq + 2)
        expected = c * (2 * 0.5 + 0.9 / n1) / 1.9 + d
        assert kantorovich_stancu_apply(E1, s, 0.5) == pytest.approx(expected, rel=1e-13)

    @pytest.mark.parametrize("variant", ["aligned", "literal"])
    def test_matches_reference_with_shift(self, variant):
        s = spec(10, 0.8, 1, 2, variant=variant)
        ref = float(oracles.stancu(lambda t: abs(t - mp.mpf(0.5)), 10, 0.8, 0.7, 1, 2, variant))
        assert kantorovich_stancu_apply(CAT["abs_half"].f, s, 0.7) == pytest.approx(ref, rel=1e-12)
        ref2 = float(oracles.stancu(None, 10, 0.8, 0.3, 1, 2, variant, monomial=2))
        assert kantorovich_stancu_apply(E2, s, 0.3) == pytest.approx(ref2, rel=1e-12)

    def test_literal_prefactor_with_fractional_beta(self):
        s = spec(10, 0.8, 0.25, 0.5, variant="literal")
        ref = float(oracles.stancu(None, 10, 0.8, 1.2, 0.25, 0.5, "literal", monomial=1))
        assert kantorovich_stancu_apply(E1, s, 1.2) == pytest.approx(ref, rel=1e-12)

    def test_endpoint_uses_first_cell_only(self):
        s = spec(8, 0.7, 1, 2)
        f = CAT["sigmoid"].f
        nq, n1 = s.nq, s.n1q
        # first aligned cell is [0, q/[n+1]]
        ref = float(oracles.stancu(mp.tanh, 8, 0.7, 0.0, 1, 2))
        assert kantorovich_stancu_apply(f, s, 0.0) == pytest.approx(ref, rel=1e-12)
        assert s.q / n1 > 0 and nq > 0

    @settings(max_examples=25, deadline=None)
    @given(
        a=st.floats(-2, 2), b=st.floats(-2, 2),
        x=st.floats(0, 5), q=st.floats(0.3, 0.97), n=st.integers(1, 40),
        names=st.sampled_from([("abs_half", "sigmoid"), ("e2", "x_over_1px"), ("sqrt_clipped", "e1")]),
    )
    def test_linearity(self, a, b, x, q, n, names):
        f, g = CAT[names[0]].f, CAT[names[1]].f
        s = spec(n, q, 1, 2)
        h = TargetFunction(lambda t: a * f(t) + b * g(t), WeightDominated(abs(a) * 2 + abs(b) * 2 + 1))
        lhs = kantorovich_stancu_apply(h, s, x)
        rhs = a * kantorovich_stancu_apply(f, s, x) + b * kantorovich_stancu_apply(g, s, x)
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))

    @settings(max_examples=25, deadline=None)
    @given(x=st.floats(0, 10), q=st.floats(0.3, 0.99), n=st.integers(1, 60),
           name=st.sampled_from(["x_over_1px", "sigmoid", "sqrt_clipped", "e2", "x2_over_1px"]))
    def test_positivity(self, x, q, n, name):
        s = spec(n, q, 1, 2)
        assert kantorovich_stancu_apply(CAT[name].f, s, x) >= -10 * s.k_tail_tol

    def test_tail_tolerance_halving(self):
        x = np.linspace(0, 10, 21)
        for name in ("abs_half", "e2", "sigmoid"):
            a = kantorovich_stancu_apply(CAT[name].f, spec(30, 0.95, 1, 2, k_tail_tol=1e-13), x)
            b = kantorovich_stancu_apply(CAT[name].f, spec(30, 0.95, 1, 2, k_tail_tol=5e-14), x)
            assert np.max(np.abs(a - b)) < 1e-13

    def test_korovkin_behaviour(self):
        x = np.linspace(0, 1, 101)
        for m in (0, 1, 2):
            errs = [np.max(np.abs(kantorovich_stancu_apply(monomial(m), spec(n, drifting_q(n)), x) - x**m))
                    for n in (8, 128)]
            assert errs[1] < errs[0] or errs[0] < 1e-12


class TestErrors:
    def test_negative_x(self):
        with pytest.raises(QDomainError):
            kantorovich_stancu_apply(E1, spec(), -0.1)

    def test_q_one(self):
        with pytest.raises(QDomainError):
            kantorovich_stancu_apply(E1, spec(q=1.0), 0.5)

    def test_k_max(self):
        with pytest.raises(TruncationError):
            kantorovich_stancu_apply(E2, spec(10, 0.99, k_max=40), 8.0)

    def test_growth_violation(self):
        cubic = TargetFunction(lambda t: t**3, WeightDominated(1.0), name="cubic")
        with pytest.raises(GrowthError):
            kantorovich_stancu_apply(cubic, spec(10, 0.9), 3.0)
        with pytest.raises(GrowthError):
            discrete_beta_apply(cubic, spec(10, 0.9), 3.0)

    def test_scalar_and_array_shapes(self):
        s = spec()
        assert isinstance(kantorovich_stancu_apply(E1, s, 0.5), float)
        assert kantorovich_stancu_apply(E1, s, np.zeros((2, 3))).shape == (2, 3)
