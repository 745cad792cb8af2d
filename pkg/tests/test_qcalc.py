import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import reference_values as ref
from qfunc.errors import DomainError, NonConvergence, ParameterPole, PoleError
from qfunc.qcalc import (
    QBase,
    basic_hyper,
    lattice_decompose,
    lattice_reconstruct,
    qdiff_apply,
    qgamma,
    qpoch_finite,
    qpoch_infinite,
)

BASE = QBase(0.5)


class TestQBase:
    @pytest.mark.parametrize("q", [0.0, 1.0, -0.5, 1.5])
    def test_rejects_q_outside_open_interval(self, q):
        with pytest.raises(ValueError):
            QBase(q)

    def test_rejects_bad_tolerances(self):
        with pytest.raises(ValueError):
            QBase(0.5, tol=0.0)
        with pytest.raises(ValueError):
            QBase(0.5, max_terms=0)

    def test_squared_keeps_tolerances(self):
        b = QBase(0.5, tol=1e-10, max_terms=77).squared()
        assert b.q == 0.25 and b.tol == 1e-10 and b.max_terms == 77


class TestPochhammerFinite:
    def test_empty_product_is_one(self):
        assert qpoch_finite(0.3, BASE, 0) == 1.0

    def test_matches_reference_complex(self):
        got = qpoch_finite(0.3 + 0.4j, QBase(0.7), 5)
        assert abs(got - ref.QPOCH_FIN_COMPLEX) < 1e-14 * abs(ref.QPOCH_FIN_COMPLEX)

    def test_negative_length_rejected(self):
        with pytest.raises(ValueError):
            qpoch_finite(0.3, BASE, -1)

    @given(
        a=st.floats(-2.0, 2.0),
        n=st.integers(0, 20),
        q=st.floats(0.05, 0.95),
    )
    @settings(max_examples=60)
    def test_recurrence_one_step(self, a, n, q):
        base = QBase(q)
        lhs = qpoch_finite(a, base, n + 1)
        rhs = qpoch_finite(a, base, n) * (1.0 - a * q**n)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


class TestPochhammerInfinite:
    def test_zero_argument(self):
        sv = qpoch_infinite(0.0, BASE)
        assert sv.value == 1.0 and sv.err_estimate == 0.0

    def test_matches_reference(self):
        sv = qpoch_infinite(0.5, QBase(0.5, tol=1e-15))
        assert abs(sv.value - ref.QPOCH_INF_HALF) < 1e-13

    def test_vanishing_factor_gives_exact_zero(self):
        assert qpoch_infinite(1.0, BASE).value == 0.0

    def test_error_estimate_bounds_truncation(self):
        sv = qpoch_infinite(0.3, QBase(0.9))
        exact = 1.0
        a = 0.3
        q = 0.9
        f = a
        for _ in range(20000):
            exact *= 1.0 - f
            f *= q
        assert abs(sv.value - exact) <= max(sv.err_estimate, 1e-14)

    @given(a=st.floats(-0.9, 0.9), q=st.floats(0.1, 0.9))
    @settings(max_examples=60)
    def test_splitting_identity(self, a, q):
        # (a;q)_inf = (a;q)_3 * (a q^3;q)_inf
        base = QBase(q)
        whole = qpoch_infinite(a, base).value
        split = qpoch_finite(a, base, 3) * qpoch_infinite(a * q**3, base).value
        assert abs(whole - split) <= 1e-11 * max(1.0, abs(whole))


class TestQGamma:
    def test_at_one(self):
        assert abs(qgamma(1.0, BASE) - 1.0) < 1e-14

    def test_matches_reference(self):
        assert abs(qgamma(0.5, QBase(0.9)) - ref.QGAMMA_HALF_09) < 1e-12

    @pytest.mark.parametrize("alpha", [0.0, -1.0, -7.0])
    def test_pole_at_nonpositive_integers(self, alpha):
        with pytest.raises(PoleError):
            qgamma(alpha, BASE)

    @given(x=st.floats(0.2, 3.0), q=st.floats(0.1, 0.9))
    @settings(max_examples=60)
    def test_functional_equation(self, x, q):
        base = QBase(q)
        lhs = qgamma(x + 1.0, base)
        rhs = (1.0 - q**x) / (1.0 - q) * qgamma(x, base)
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))


class TestBasicHyper:
    def test_zero_argument_is_one(self):
        sv = basic_hyper([0.3], [0.2], BASE, 0.0)
        assert sv.value == 1.0

    @given(a=st.floats(-0.8, 0.8), z=st.floats(-0.8, 0.8), q=st.floats(0.2, 0.8))
    @settings(max_examples=60)
    def test_q_binomial_theorem(self, a, z, q):
        # 1Phi0(a; -; q, z) = (a z; q)_inf / (z; q)_inf for |z| < 1.
        base = QBase(q)
        lhs = basic_hyper([a], [], base, z).value
        rhs = qpoch_infinite(a * z, base).value / qpoch_infinite(z, base).value
        assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(rhs))

    def test_balanced_series_outside_unit_disc_rejected(self):
        with pytest.raises(NonConvergence):
            basic_hyper([0.3], [], BASE, 1.5)

    def test_terminating_series_allows_large_argument(self):
        # Upper parameter q^(-2) terminates the sum after three terms.
        sv = basic_hyper([BASE.q**-2], [], BASE, 5.0)
        assert sv.err_estimate == 0.0
        q = BASE.q
        z = 5.0
        a = q**-2
        t1 = (1 - a) / (1 - q) * z
        t2 = t1 * (1 - a * q) / (1 - q**2) * z
        assert abs(sv.value - (1 + t1 + t2)) < 1e-12 * abs(sv.value)

    def test_lower_parameter_pole(self):
        with pytest.raises(ParameterPole):
            basic_hyper([0.3], [BASE.q**-1], BASE, 0.1)

    def test_gaussian_weight_converges_anywhere(self):
        sv = basic_hyper([0.3], [0.2, 0.1], BASE, 40.0)
        assert sv.err_estimate < 1e-10 * abs(sv.value)


class TestQDiff:
    def test_identity_function(self):
        got = qdiff_apply(lambda z: z, 2.0, BASE)
        assert abs(got - 1.0 / (1.0 + BASE.q)) < 1e-15

    def test_undefined_at_origin(self):
        with pytest.raises(DomainError):
            qdiff_apply(lambda z: z, 0.0, BASE)


class TestLattice:
    def test_rejects_zero(self):
        with pytest.raises(DomainError):
            lattice_decompose(0.0, BASE)

    def test_exact_power_has_zero_offset(self):
        p = lattice_decompose(BASE.q**3, BASE)
        assert p.n == 3 and p.lam == 0.0 and p.theta == 0.0

    def test_negative_real_axis_maps_to_pi(self):
        assert lattice_decompose(-1.0, BASE).theta == math.pi

    @given(
        mag=st.floats(1e-6, 1e6),
        theta=st.floats(-3.14, 3.14),
        q=st.floats(0.1, 0.9),
    )
    @settings(max_examples=120)
    def test_round_trip(self, mag, theta, q):
        base = QBase(q)
        u = mag * cmath.exp(1j * theta)
        p = lattice_decompose(u, base)
        assert 0.0 <= p.lam < 1.0
        assert -math.pi < p.theta <= math.pi
        back = lattice_reconstruct(p, base)
        assert abs(back - u) <= 4e-12 * abs(u)
