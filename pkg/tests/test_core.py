"""Exact arithmetic primitives."""
from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccmv.core import (
    DimensionMismatch,
    Endomorphism,
    FrameVector,
    OneForm,
    Status,
    Tensor4,
    TwoForm,
    format_scalar,
    format_sparse_vector,
    inner_product,
    outer,
    parse_scalar,
    parse_sparse_vector,
    vector_combine,
)

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=5)
vectors6 = st.lists(rationals, min_size=6, max_size=6).map(
    lambda cs: FrameVector(tuple(cs)))


class TestScalarText:
    def test_parse_integer(self):
        assert parse_scalar("-7") == Fraction(-7)

    def test_parse_fraction(self):
        assert parse_scalar("3/4") == Fraction(3, 4)

    def test_format_integer(self):
        assert format_scalar(Fraction(-2)) == "-2"

    def test_format_fraction(self):
        assert format_scalar(Fraction(-1, 2)) == "-1/2"

    @pytest.mark.parametrize("bad", ["", "1/0", "a", "1.5", "1 /2"])
    def test_parse_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_scalar(bad)

    @given(rationals)
    @settings(max_examples=50, deadline=None)
    def test_roundtrip(self, q):
        assert parse_scalar(format_scalar(q)) == q


class TestFrameVector:
    def test_basis(self):
        e2 = FrameVector.basis(4, 2)
        assert e2.coefficients == (0, 0, 1, 0)
        assert e2[2] == 1

    def test_zero(self):
        assert FrameVector.zero(3).is_zero()

    def test_arithmetic(self):
        x = FrameVector.from_coeffs([1, 2])
        y = FrameVector.from_coeffs([3, -1])
        assert (x + y).coefficients == (4, 1)
        assert (x - y).coefficients == (-2, 3)
        assert (-x).coefficients == (-1, -2)
        assert x.scale(Fraction(1, 2)).coefficients == (Fraction(1, 2), 1)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            FrameVector.from_coeffs([1]) + FrameVector.from_coeffs([1, 2])

    def test_vector_combine(self):
        x = FrameVector.basis(3, 0)
        y = FrameVector.basis(3, 2)
        combo = vector_combine([(Fraction(2), x), (Fraction(-1), y)])
        assert combo.coefficients == (2, 0, -1)

    def test_vector_combine_empty_rejected(self):
        with pytest.raises(ValueError):
            vector_combine([])

    @given(vectors6, vectors6, rationals)
    @settings(max_examples=30, deadline=None)
    def test_inner_product_bilinear_symmetric(self, x, y, a):
        assert inner_product(x, y) == inner_product(y, x)
        assert inner_product(x.scale(a), y) == a * inner_product(x, y)

    @given(vectors6, vectors6, vectors6)
    @settings(max_examples=30, deadline=None)
    def test_inner_product_additive(self, x, y, z):
        assert inner_product(x + y, z) == inner_product(x, z) + inner_product(y, z)


class TestEndomorphism:
    def test_identity_and_zero(self):
        ident = Endomorphism.identity(3)
        x = FrameVector.from_coeffs([1, 2, 3])
        assert ident.apply(x) == x
        assert Endomorphism.zero(3).apply(x).is_zero()

    def test_from_columns_entry_column(self):
        a = Endomorphism.from_columns(2, {0: {1: Fraction(5)}})
        assert a.entry(1, 0) == 5
        assert a.column(0).coefficients == (0, 5)
        assert a.apply(FrameVector.basis(2, 0)).coefficients == (0, 5)

    def test_compose_order(self):
        # compose(other) is self after other
        swap = Endomorphism.from_columns(2, {0: {1: Fraction(1)},
                                             1: {0: Fraction(1)}})
        scale0 = Endomorphism.from_columns(2, {0: {0: Fraction(2)},
                                               1: {1: Fraction(1)}})
        x = FrameVector.basis(2, 0)
        assert scale0.compose(swap).apply(x) == scale0.apply(swap.apply(x))

    def test_transpose(self):
        a = Endomorphism.from_columns(2, {0: {1: Fraction(3)}})
        assert a.transpose().entry(0, 1) == 3

    def test_outer(self):
        vec = FrameVector.basis(3, 1)
        form = OneForm.dual(3, 2)
        rank_one = outer(vec, form)
        assert rank_one.apply(FrameVector.basis(3, 2)) == vec
        assert rank_one.apply(FrameVector.basis(3, 0)).is_zero()


class TestForms:
    def test_oneform_dual(self):
        u = OneForm.dual(4, 3)
        assert u.value(FrameVector.basis(4, 3)) == 1
        assert u.value(FrameVector.basis(4, 0)) == 0

    def test_twoform_requires_antisymmetry(self):
        with pytest.raises(ValueError):
            TwoForm(((Fraction(1), Fraction(0)), (Fraction(0), Fraction(0))))

    def test_twoform_value(self):
        w = TwoForm(((Fraction(0), Fraction(2)), (Fraction(-2), Fraction(0))))
        x = FrameVector.basis(2, 0)
        y = FrameVector.basis(2, 1)
        assert w.value(x, y) == 2
        assert w.value(y, x) == -2


class TestTensor4:
    def test_from_function_and_contract(self):
        t = Tensor4.from_function(
            2, lambda i, j, k, el: Fraction(1) if (i, j, k, el) == (0, 1, 1, 0)
            else Fraction(0))
        assert t.entry(0, 1, 1, 0) == 1
        x = FrameVector.basis(2, 0)
        y = FrameVector.basis(2, 1)
        assert t.contract(x, y, y, x) == 1
        assert t.contract(y, x, y, x) == 0

    @given(vectors6, vectors6, rationals)
    @settings(max_examples=15, deadline=None)
    def test_contract_linear_in_first_slot(self, x, y, a):
        t = Tensor4.from_function(
            6, lambda i, j, k, el: Fraction((i - j) * (k - el)))
        z = FrameVector.basis(6, 2)
        w = FrameVector.basis(6, 5)
        assert t.contract(x.scale(a) + y, z, w, z) == \
            a * t.contract(x, z, w, z) + t.contract(y, z, w, z)


class TestSparseVectorText:
    def test_format_zero(self):
        assert format_sparse_vector(FrameVector.zero(4)) == "0"

    def test_format_entries(self):
        x = FrameVector.from_coeffs([0, Fraction(-1, 2), 0, 3])
        assert format_sparse_vector(x) == "-1/2:1,3:3"

    def test_parse(self):
        x = parse_sparse_vector("-1/2:1,3:3", 4)
        assert x.coefficients == (0, Fraction(-1, 2), 0, 3)

    def test_parse_zero(self):
        assert parse_sparse_vector("0", 3).is_zero()

    @pytest.mark.parametrize("bad", ["1:9", "1:", ":2", "1:1,1:1", "x:0"])
    def test_parse_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_sparse_vector(bad, 4)

    @given(vectors6)
    @settings(max_examples=40, deadline=None)
    def test_roundtrip(self, x):
        assert parse_sparse_vector(format_sparse_vector(x), 6) == x


def test_status_renders_as_value():
    assert str(Status.PASS) == "PASS"
    assert str(Status.FAIL) == "FAIL"
