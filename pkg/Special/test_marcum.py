import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special as sc
from scipy import stats

from Core.config import EvalConfig
from Core.errors import ConvergenceError, DomainError
from Special.marcum import (
    MarcumArgs,
    marcum_q,
    marcum_q_direct,
    marcum_q_negative_order,
    marcum_q_via_phi3,
)

orders = st.integers(min_value=-3, max_value=6)
arguments = st.floats(min_value=0.1, max_value=8.0)


def noncentral_chi2_tail(m, a, b):
    # Q_m(a, b) = P(chi'^2_{2m}(a^2) > b^2)
    return float(stats.ncx2.sf(b * b, 2 * m, a * a))


def test_args_validation():
    with pytest.raises(DomainError):
        MarcumArgs(1.5, 1.0, 1.0)
    with pytest.raises(DomainError):
        MarcumArgs(1, 0.0, 1.0)
    with pytest.raises(DomainError):
        MarcumArgs(1, 1.0, -0.1)


def test_args_are_cast():
    args = MarcumArgs(2.0, 1, 3)
    assert isinstance(args.m, int) and isinstance(args.a, float)
    assert args.swapped() == MarcumArgs(-1, 3.0, 1.0)


def test_zero_threshold_is_one():
    assert marcum_q(MarcumArgs(1, 1.0, 0.0)) == 1.0
    assert marcum_q(MarcumArgs(4, 2.5, 0.0)) == 1.0


def test_small_a_reduces_to_upper_gamma():
    for m in (1, 2, 5):
        assert marcum_q(MarcumArgs(m, 1e-9, 2.0)) == pytest.approx(float(sc.gammaincc(m, 2.0)), rel=1e-12)


@pytest.mark.parametrize("m, a, b", [(1, 1.0, 1.0), (2, 0.5, 2.0), (3, 4.0, 3.0), (1, 2.0, 6.0), (5, 7.0, 1.5)])
def test_matches_noncentral_chi2(m, a, b):
    assert marcum_q(MarcumArgs(m, a, b)) == pytest.approx(noncentral_chi2_tail(m, a, b), rel=1e-8)


def test_q1_symmetric_identity():
    # Q1(a, b) + Q1(b, a) = 1 + exp(-(a^2 + b^2)/2) I0(ab)
    a, b = 1.3, 2.1
    lhs = marcum_q(MarcumArgs(1, a, b)) + marcum_q(MarcumArgs(1, b, a))
    assert lhs == pytest.approx(1.0 + math.exp(-(a * a + b * b) / 2) * float(sc.i0(a * b)), rel=1e-13)


@settings(max_examples=60, deadline=None)
@given(m=orders, a=arguments, b=arguments)
def test_complement_identity(m, a, b):
    args = MarcumArgs(m, a, b)
    assert marcum_q(args) + marcum_q(args.swapped()) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(m=st.integers(min_value=1, max_value=6), a=arguments, b=arguments)
def test_positive_order_is_probability(m, a, b):
    assert 0.0 <= marcum_q(MarcumArgs(m, a, b)) <= 1.0


def test_rounding_never_pushes_q_above_one():
    # the Poisson-gamma sum lands an ulp above 1 here without the clamp
    assert marcum_q(MarcumArgs(6, 2.3336, 0.125)) <= 1.0
    assert marcum_q(MarcumArgs(6, 2.3336, 0.125)) == pytest.approx(1.0, abs=1e-12)
    assert marcum_q(MarcumArgs(-5, 0.125, 2.3336)) >= 0.0


@settings(max_examples=40, deadline=None)
@given(m=st.integers(min_value=1, max_value=6), a=arguments, b=arguments)
def test_monotone_in_order_and_threshold(m, a, b):
    q = marcum_q(MarcumArgs(m, a, b))
    assert marcum_q(MarcumArgs(m + 1, a, b)) >= q - 1e-15
    assert marcum_q(MarcumArgs(m, a, b + 0.25)) <= q + 1e-15


def test_negative_order_tiny_value_keeps_relative_accuracy():
    # Q_0(0.1, 10) = 1 - Q_1(10, 0.1) is ~1e-22; the complement series keeps its digits
    args = MarcumArgs(0, 0.1, 10.0)
    value = marcum_q(args)
    assert 0.0 < value < 1e-15
    assert value == pytest.approx(marcum_q_direct(args), rel=1e-9)


def test_negative_order_requires_nonzero_b():
    with pytest.raises(DomainError):
        marcum_q(MarcumArgs(0, 1.0, 0.0))
    with pytest.raises(DomainError):
        marcum_q_negative_order(MarcumArgs(1, 1.0, 1.0))


def test_max_terms_exhaustion_raises():
    with pytest.raises(ConvergenceError) as info:
        marcum_q(MarcumArgs(1, 30.0, 30.0), EvalConfig(max_terms=5))
    assert info.value.terms == 5


@pytest.mark.parametrize("m, a, b", [(1, 1.0, 1.0), (3, 2.0, 0.5), (-2, 1.5, 2.5), (0, 0.3, 0.7), (6, 5.0, 9.0)])
def test_phi3_paths_agree_with_series(m, a, b):
    args = MarcumArgs(m, a, b)
    expected = marcum_q(args)
    assert marcum_q_via_phi3(args, form="direct") == pytest.approx(expected, rel=1e-9)
    assert marcum_q_via_phi3(args) == pytest.approx(expected, abs=1e-10)


def test_via_phi3_zero_threshold():
    assert marcum_q_via_phi3(MarcumArgs(2, 1.0, 0.0)) == 1.0
    with pytest.raises(DomainError):
        marcum_q_via_phi3(MarcumArgs(-1, 1.0, 0.0))


def test_via_phi3_unknown_form():
    with pytest.raises(DomainError):
        marcum_q_via_phi3(MarcumArgs(1, 1.0, 1.0), form="contour")
