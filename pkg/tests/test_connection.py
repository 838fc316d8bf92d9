"""Levi-Civita coefficients, derivative operators, and form calculus."""
from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccmv.connection import (
    cov_deriv_endo,
    cov_deriv_oneform,
    cov_deriv_vector,
    exterior_d_oneform,
    levi_civita,
    sigma_form,
    wedge,
)
from ccmv.core import Endomorphism, FrameVector, OneForm, inner_product
from tests.conftest import make_nilpotent_model

# every nonzero gamma[i][j][k] of the built-in model
GAMMA_TABLE = {
    (0, 2, 4): -1, (0, 4, 2): 1, (0, 3, 5): -1, (0, 5, 3): 1,
    (1, 2, 5): -1, (1, 5, 2): 1, (1, 3, 4): 1, (1, 4, 3): -1,
    (2, 0, 4): 1, (2, 4, 0): -1, (2, 1, 5): 1, (2, 5, 1): -1,
    (3, 0, 5): 1, (3, 5, 0): -1, (3, 1, 4): -1, (3, 4, 1): 1,
    (4, 0, 2): 1, (4, 2, 0): -1, (4, 1, 3): -1, (4, 3, 1): 1,
    (5, 0, 3): 1, (5, 3, 0): -1, (5, 1, 2): 1, (5, 2, 1): -1,
}

coeffs6 = st.lists(
    st.fractions(min_value=-4, max_value=4, max_denominator=5),
    min_size=6, max_size=6,
).map(lambda cs: FrameVector.from_coeffs(cs))


class TestCoefficientTable:
    def test_frozen_table(self, heis_conn):
        for i in range(6):
            for j in range(6):
                for k in range(6):
                    expected = GAMMA_TABLE.get((i, j, k), 0)
                    assert heis_conn.coeff(i, j, k) == expected, (i, j, k)

    def test_vector_accessor(self, heis_conn):
        assert heis_conn.vector(0, 2) == FrameVector.basis(6, 4).scale(-1)
        assert heis_conn.vector(4, 0) == FrameVector.basis(6, 2)
        assert heis_conn.vector(0, 0).is_zero()
        assert heis_conn.vector(4, 5).is_zero()

    def test_abelian_connection_is_flat(self, abelian):
        conn = levi_civita(abelian)
        assert all(conn.coeff(i, j, k) == 0
                   for i in range(6) for j in range(6) for k in range(6))

    @pytest.mark.parametrize("seed", range(3))
    def test_metric_compatibility(self, heisenberg, seed):
        models = {0: heisenberg}
        m = models.get(seed) or make_nilpotent_model(seed)
        conn = levi_civita(m)
        for i in range(6):
            for j in range(6):
                for k in range(6):
                    assert conn.coeff(i, j, k) == -conn.coeff(i, k, j)

    @pytest.mark.parametrize("seed", range(3))
    def test_torsion_free(self, heisenberg, seed):
        models = {0: heisenberg}
        m = models.get(seed) or make_nilpotent_model(seed)
        conn = levi_civita(m)
        c = m.constants.coeff
        for i in range(6):
            for j in range(6):
                for k in range(6):
                    assert (conn.coeff(i, j, k) - conn.coeff(j, i, k)
                            == c(i, j, k))


class TestCovariantDerivatives:
    @given(x=coeffs6, y=coeffs6)
    @settings(max_examples=25, deadline=None)
    def test_vector_extension_is_bilinear(self, heisenberg, heis_conn, x, y):
        lhs = cov_deriv_vector(heis_conn, x, y)
        expected = FrameVector.zero(6)
        for i, xi in enumerate(x.coefficients):
            for j, yj in enumerate(y.coefficients):
                expected = expected + heis_conn.vector(i, j).scale(xi * yj)
        assert lhs == expected

    @given(x=coeffs6, y=coeffs6)
    @settings(max_examples=25, deadline=None)
    def test_torsion_free_on_vectors(self, heisenberg, heis_conn, x, y):
        lhs = cov_deriv_vector(heis_conn, x, y) - cov_deriv_vector(heis_conn, y, x)
        assert lhs == heisenberg.constants.bracket(x, y)

    @given(x=coeffs6, y=coeffs6, z=coeffs6)
    @settings(max_examples=25, deadline=None)
    def test_metric_compatibility_on_vectors(self, heis_conn, x, y, z):
        # invariant fields have constant inner products, so the derivative
        # terms must cancel pairwise
        assert (inner_product(cov_deriv_vector(heis_conn, x, y), z)
                == -inner_product(y, cov_deriv_vector(heis_conn, x, z)))

    def test_endo_derivative_is_leibniz_correction(self, heisenberg, heis_conn):
        for tensor in (heisenberg.G, heisenberg.H, heisenberg.J):
            for i in range(6):
                x = FrameVector.basis(6, i)
                nabla = cov_deriv_endo(heis_conn, x, tensor)
                for j in range(6):
                    y = FrameVector.basis(6, j)
                    expected = (cov_deriv_vector(heis_conn, x, tensor.apply(y))
                                - tensor.apply(cov_deriv_vector(heis_conn, x, y)))
                    assert nabla.apply(y) == expected

    def test_identity_is_parallel(self, heis_conn):
        ident = Endomorphism.identity(6)
        for i in range(6):
            x = FrameVector.basis(6, i)
            assert cov_deriv_endo(heis_conn, x, ident).is_zero()

    def test_oneform_derivative_pairs_with_vector(self, heisenberg, heis_conn):
        for form in (heisenberg.u, heisenberg.v, OneForm.dual(6, 0)):
            for i in range(6):
                x = FrameVector.basis(6, i)
                nabla = cov_deriv_oneform(heis_conn, x, form)
                for j in range(6):
                    y = FrameVector.basis(6, j)
                    assert nabla.value(y) == -form.value(
                        cov_deriv_vector(heis_conn, x, y))


class TestRotationForm:
    def test_sigma_vanishes(self, heisenberg, heis_conn):
        sigma = sigma_form(heisenberg, heis_conn)
        assert sigma.is_zero()

    def test_d_sigma_vanishes(self, heisenberg, heis_conn):
        dsigma = exterior_d_oneform(heisenberg, sigma_form(heisenberg, heis_conn))
        assert all(dsigma.value(FrameVector.basis(6, i), FrameVector.basis(6, j)) == 0
                   for i in range(6) for j in range(6))


class TestExteriorDerivative:
    def test_vertical_duals(self, heisenberg):
        du = exterior_d_oneform(heisenberg, heisenberg.u)
        dv = exterior_d_oneform(heisenberg, heisenberg.v)
        e = [FrameVector.basis(6, i) for i in range(6)]
        expected_du = {(0, 2): 1, (1, 3): -1}
        expected_dv = {(0, 3): 1, (1, 2): 1}
        for i in range(6):
            for j in range(6):
                want = (expected_du.get((i, j), 0) - expected_du.get((j, i), 0))
                assert du.value(e[i], e[j]) == want, (i, j)
                want = (expected_dv.get((i, j), 0) - expected_dv.get((j, i), 0))
                assert dv.value(e[i], e[j]) == want, (i, j)

    def test_horizontal_duals_are_closed(self, heisenberg):
        for h in range(4):
            dw = exterior_d_oneform(heisenberg, OneForm.dual(6, h))
            assert all(dw.value(FrameVector.basis(6, i),
                                FrameVector.basis(6, j)) == 0
                       for i in range(6) for j in range(6))

    def test_abelian_duals_are_closed(self, abelian):
        dw = exterior_d_oneform(abelian, abelian.u)
        assert all(dw.value(FrameVector.basis(6, i), FrameVector.basis(6, j)) == 0
                   for i in range(6) for j in range(6))


class TestWedge:
    def test_halved_convention(self):
        a = OneForm.dual(6, 0)
        b = OneForm.dual(6, 1)
        w = wedge(a, b)
        e0, e1 = FrameVector.basis(6, 0), FrameVector.basis(6, 1)
        assert w.value(e0, e1) == Fraction(1, 2)
        assert w.value(e1, e0) == Fraction(-1, 2)
        assert w.value(e0, e0) == 0

    @given(x=coeffs6, y=coeffs6)
    @settings(max_examples=25, deadline=None)
    def test_formula_on_vectors(self, x, y):
        a = OneForm(tuple(Fraction(k + 1) for k in range(6)))
        b = OneForm(tuple(Fraction(1, k + 2) for k in range(6)))
        w = wedge(a, b)
        expected = Fraction(1, 2) * (a.value(x) * b.value(y)
                                     - a.value(y) * b.value(x))
        assert w.value(x, y) == expected

    def test_self_wedge_vanishes(self):
        a = OneForm(tuple(Fraction(k - 2) for k in range(6)))
        w = wedge(a, a)
        assert all(w.value(FrameVector.basis(6, i), FrameVector.basis(6, j)) == 0
                   for i in range(6) for j in range(6))
