import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import reference_values as ref
from qfunc.errors import DomainError, PoleError
from qfunc.qcalc import QBase, lattice_decompose, qpoch_infinite
from qfunc.qexp import (
    KindTag,
    classical_limit_check,
    lambda_closed_form,
    lambda_laurent_coeff,
    lambda_laurent_eval,
    lambda_laurent_table,
    lambda_product,
    qexp_asymptotic,
    qexp_eval,
    qexp_functional_residual,
)

BASE = QBase(0.5, tol=1e-15)
K1, K2, K3 = KindTag.from_j(1), KindTag.from_j(2), KindTag.from_j(3)


class TestKindTag:
    def test_valid_pairs(self):
        assert (K1.j, K1.delta) == (1, 2)
        assert (K2.j, K2.delta) == (2, 0)
        assert (K3.j, K3.delta) == (3, 1)

    @pytest.mark.parametrize("j,delta", [(1, 0), (2, 2), (3, 0), (0, 1)])
    def test_invalid_pairs_rejected(self, j, delta):
        with pytest.raises(ValueError):
            KindTag(j, delta)

    def test_from_j_rejects_unknown(self):
        with pytest.raises(ValueError):
            KindTag.from_j(4)


class TestEval:
    def test_type3_reference_value(self):
        got = qexp_eval(K3, 1.0, BASE).value
        assert abs(got - ref.EXP3_AT_1_Q05) < 1e-13 * ref.EXP3_AT_1_Q05

    def test_type1_reference_value(self):
        got = qexp_eval(K1, 0.3 + 0.2j, BASE).value
        assert abs(got - ref.EXP1_COMPLEX_Q05) < 1e-13 * abs(ref.EXP1_COMPLEX_Q05)

    def test_type2_reference_value(self):
        got = qexp_eval(K2, 1.5, BASE).value
        assert abs(got - ref.EXP2_AT_15_Q05) < 1e-13 * ref.EXP2_AT_15_Q05

    def test_all_kinds_at_zero(self):
        for kind in (K1, K2, K3):
            assert qexp_eval(kind, 0.0, BASE).value == 1.0

    @pytest.mark.parametrize("m", [0, 1, 3])
    def test_type1_pole_guard(self, m):
        with pytest.raises(PoleError):
            qexp_eval(K1, BASE.q**-m, BASE)
        with pytest.raises(PoleError):
            qexp_eval(K1, BASE.q**-m * (1.0 + 1e-9), BASE)

    @given(
        re=st.floats(-0.9, 0.9),
        im=st.floats(-0.9, 0.9),
        q=st.floats(0.2, 0.8),
    )
    @settings(max_examples=60)
    def test_type1_is_reciprocal_product(self, re, im, q):
        base = QBase(q)
        u = complex(re, im)
        prod = qpoch_infinite(u, base).value
        got = qexp_eval(K1, u, base).value
        assert abs(got * prod - 1.0) < 1e-12

    def test_classical_limit_distances_shrink(self):
        for kind in (K1, K2, K3):
            d = classical_limit_check(kind, 0.5, [0.9, 0.99, 0.999])
            assert d[0] > d[1] > d[2]


class TestLaurent:
    @pytest.mark.parametrize(
        "kind,expected",
        [(K1, ref.LAURENT_J1_Q05), (K2, ref.LAURENT_J2_Q05), (K3, ref.LAURENT_J3_Q05)],
    )
    def test_coefficients_match_reference(self, kind, expected):
        for l, want in enumerate(expected):
            got = lambda_laurent_coeff(kind, l, BASE)
            assert abs(got - want) < 1e-12 * abs(want)

    def test_two_methods_agree(self):
        for kind in (K1, K2, K3):
            for l in range(0, 11):
                a = lambda_laurent_coeff(kind, l, BASE, method="sum")
                b = lambda_laurent_coeff(kind, l, BASE, method="bessel")
                assert abs(a - b) < 1e-12 * abs(a)

    def test_mirror_symmetry(self):
        for kind in (K1, K2, K3):
            for l in (1, 2, 5):
                a = lambda_laurent_coeff(kind, l, BASE)
                assert lambda_laurent_coeff(kind, -l, BASE) == pytest.approx(
                    BASE.q**l * a, rel=1e-14
                )

    def test_table_window(self):
        t = lambda_laurent_table(K2, 5, BASE)
        assert set(t.coeffs) == set(range(-5, 6))

    @pytest.mark.parametrize("kind", [K2, K3])
    def test_two_sided_matches_product_entire_kinds(self, kind):
        for u in (0.7, 2.0, 0.3 + 0.9j, -1.4 + 0.2j):
            direct = lambda_product(kind, u, BASE)
            sv = lambda_laurent_eval(kind, u, 40, BASE)
            assert abs(sv.value - direct) < 1e-10 * abs(direct)

    def test_two_sided_matches_product_type1_annulus(self):
        # Convergence in the annulus is geometric in q/|u|, so the window-40
        # truncation is coarse; the reported error bound must cover it.
        for u in (0.6, 0.55 + 0.4j):
            direct = lambda_product(K1, u, BASE)
            sv = lambda_laurent_eval(K1, u, 40, BASE)
            assert abs(sv.value - direct) <= 10.0 * sv.err_estimate + 1e-10 * abs(direct)

    def test_type1_annulus_enforced(self):
        with pytest.raises(DomainError):
            lambda_laurent_eval(K1, 1.5, 40, BASE)
        with pytest.raises(DomainError):
            lambda_laurent_eval(K1, 0.3, 40, BASE)

    def test_product_undefined_at_zero(self):
        with pytest.raises(DomainError):
            lambda_product(K1, 0.0, BASE)


class TestProductReference:
    def test_reference_values(self):
        assert lambda_product(K1, 0.7, BASE).real == pytest.approx(
            ref.LAMBDA1_AT_07_Q05, rel=1e-12
        )
        assert lambda_product(K2, 2.0, BASE).real == pytest.approx(
            ref.LAMBDA2_AT_2_Q05, rel=1e-12
        )
        assert lambda_product(K3, 1.3, BASE).real == pytest.approx(
            ref.LAMBDA3_AT_13_Q05, rel=1e-12
        )


class TestFunctionalEquations:
    @given(
        lam=st.floats(0.05, 0.95),
        theta=st.floats(-3.0, 3.0),
        n=st.integers(-4, 2),
        q=st.floats(0.2, 0.8),
    )
    @settings(max_examples=40)
    def test_residuals_vanish(self, lam, theta, n, q):
        base = QBase(q)
        u = q ** (n + lam) * cmath.exp(1j * theta)
        for kind in (K1, K2, K3):
            assert qexp_functional_residual(kind, u, base) < 1e-7


class TestClosedForm:
    @given(
        lam=st.floats(0.05, 0.95),
        theta=st.floats(0.2, 2.9),
        n=st.integers(-6, 3),
        q=st.floats(0.2, 0.8),
    )
    @settings(max_examples=60)
    def test_exact_for_product_kinds(self, lam, theta, n, q):
        base = QBase(q)
        u = q ** (n + lam) * cmath.exp(1j * theta)
        for kind in (K1, K2):
            closed = lambda_closed_form(kind, u, base)
            direct = lambda_product(kind, u, base)
            assert abs(closed - direct) < 1e-10 * abs(direct)

    def test_type3_model_normalization_at_window_zero(self):
        # The type-3 lattice form is a growth-envelope model: at n=0 it
        # reproduces the product only up to its q^(-1/24) normalization.
        u = 0.8
        closed = lambda_closed_form(K3, u, BASE)
        direct = lambda_product(K3, u, BASE)
        assert abs(closed / direct - BASE.q ** (-1.0 / 24.0)) < 1e-12


class TestAsymptotic:
    def test_estimate_components_multiply(self):
        pt = lattice_decompose(0.5 ** (-5.7), BASE)
        for kind in (K1, K2, K3):
            est = qexp_asymptotic(kind, pt, BASE)
            assert est.leading == pytest.approx(
                BASE.q**est.scale_exponent * est.phase * est.constant, rel=1e-12
            )
            assert est.N == pytest.approx(pt.n * (pt.n - 1) + 2 * pt.lam * pt.n)

    def test_leading_error_decays_for_product_kinds(self):
        for kind in (K1, K2):
            errs = []
            for n in (-3, -5, -7):
                u = BASE.q ** (n + 0.3)
                pt = lattice_decompose(u, BASE)
                exact = qexp_eval(kind, u, BASE).value
                leading = qexp_asymptotic(kind, pt, BASE).leading
                errs.append(abs(exact - leading) / abs(leading))
            assert errs[0] > errs[1] > errs[2]
