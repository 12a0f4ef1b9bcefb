import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special as sc

from Core.config import EvalConfig
from Core.errors import ConvergenceError, DomainError
from Special.marcum import MarcumArgs, marcum_q
from Special.phi3 import (
    Phi3Args,
    coeff_polynomial,
    phi3_series,
    phi3_tilde_one_step,
    phi3_tilde_recursive,
    phi3_tilde_series,
    phi3_tilde_series_log,
    phi3_tilde_via_marcum,
    recursion_weights,
)

GRID_WZ = (0.1, 0.5, 1.0, 2.0, 5.0)


# --------------------------------------------------
# Series and closed forms
# --------------------------------------------------
def test_origin_is_reciprocal_gamma():
    assert phi3_tilde_series(Phi3Args(2, 3, 0, 0)) == pytest.approx(0.5, rel=1e-15)
    assert phi3_tilde_series(Phi3Args(1, -1, 0, 0)) == 0.0


def test_w_zero_is_bessel():
    c, z = 2.5, 1.7
    expected = z ** ((1 - c) / 2) * float(sc.iv(c - 1, 2 * math.sqrt(z)))
    assert phi3_tilde_series(Phi3Args(3, c, 0, z)) == pytest.approx(expected, rel=1e-13)


def test_w_zero_negative_integer_c_uses_symmetric_bessel():
    # 1/Gamma(c + n) kills n < 2 for c = -1; I_{-2} = I_2
    z = 0.8
    expected = z * float(sc.iv(2, 2 * math.sqrt(z)))
    assert phi3_tilde_series(Phi3Args(1, -1, 0, z)) == pytest.approx(expected, rel=1e-13)


def test_z_zero_is_confluent():
    b, c, w = 2.0, 3.5, 1.2
    expected = float(sc.hyp1f1(b, c, w)) / math.gamma(c)
    assert phi3_tilde_series(Phi3Args(b, c, w, 0)) == pytest.approx(expected, rel=1e-12)


def test_b_zero_drops_w():
    # (0)_k = 0 for k > 0, so only the Bessel part in z remains
    c, w, z = 2.0, 3.0, 1.5
    assert phi3_tilde_series(Phi3Args(0, c, w, z)) == pytest.approx(
        phi3_tilde_series(Phi3Args(0, c, 0, z)), rel=1e-12)


def test_double_series_against_direct_sum():
    b, c, w, z = 1.5, 2.5, 0.7, 1.3
    direct = sum(
        sc.poch(b, k) * w ** k * z ** m / (math.gamma(c + k + m) * math.factorial(k) * math.factorial(m))
        for k in range(40) for m in range(40)
    )
    assert phi3_tilde_series(Phi3Args(b, c, w, z)) == pytest.approx(direct, rel=1e-12)


def test_negative_arguments_alternate():
    b, c, w, z = 2.0, 2.0, -0.5, -0.4
    direct = sum(
        sc.poch(b, k) * w ** k * z ** m / (math.gamma(c + k + m) * math.factorial(k) * math.factorial(m))
        for k in range(50) for m in range(50)
    )
    assert phi3_tilde_series(Phi3Args(b, c, w, z)) == pytest.approx(direct, rel=1e-11)


def test_unregularized_phi3():
    args = Phi3Args(2, 3, 0.5, 0.25)
    assert phi3_series(args) == pytest.approx(2.0 * phi3_tilde_series(args), rel=1e-14)
    with pytest.raises(DomainError):
        phi3_series(Phi3Args(2, 0, 0.5, 0.25))


def test_series_exhaustion_raises():
    with pytest.raises(ConvergenceError):
        phi3_tilde_series(Phi3Args(1, 1, 50.0, 50.0), EvalConfig(max_terms=10))


def test_overflow_is_domain_error():
    # log Phi3~ is finite but exp() overflows float64
    sign, lg = phi3_tilde_series_log(Phi3Args(1, 1, 800.0, 0.0))
    assert sign == 1 and lg > 709.78
    with pytest.raises(DomainError):
        phi3_tilde_series(Phi3Args(1, 1, 800.0, 0.0))


@settings(max_examples=40, deadline=None)
@given(
    b=st.floats(min_value=0.1, max_value=4.0),
    c=st.floats(min_value=0.5, max_value=4.0),
    x=st.floats(min_value=0.0, max_value=3.0),
    y=st.floats(min_value=0.0, max_value=3.0),
)
def test_positive_parameters_give_positive_values(b, c, x, y):
    assert phi3_tilde_series(Phi3Args(b, c, x, y)) > 0.0


# --------------------------------------------------
# A_i polynomials
# --------------------------------------------------
def test_a0_is_constant():
    poly = coeff_polynomial(1, 5, 0)
    assert poly.degree == 0
    assert poly.exact == (Fraction(1),)
    assert poly.evaluate(3.0) == pytest.approx(1.0)


def test_a2_for_b3_c4():
    poly = coeff_polynomial(3, 4, 2)
    assert poly.exact == (Fraction(1), Fraction(-1))
    assert poly.evaluate(2.0) == pytest.approx(-1.0, rel=1e-15)
    assert poly.evaluate(0.0) == pytest.approx(1.0, rel=1e-15)


def test_a1_for_b2_c5():
    poly = coeff_polynomial(2, 5, 1)
    assert poly.exact == (Fraction(-3),)
    assert poly.evaluate(0.3) == pytest.approx(-3.0, rel=1e-15)


def test_non_integer_c_matches_integer_limit():
    exact = coeff_polynomial(3, 4, 2).evaluate(0.7)
    nearby = coeff_polynomial(3, 4 + 1e-9, 2).evaluate(0.7)
    assert nearby == pytest.approx(exact, rel=1e-7)


def test_coeff_polynomial_index_range():
    with pytest.raises(IndexError):
        coeff_polynomial(2, 3, 3)
    with pytest.raises(IndexError):
        coeff_polynomial(2, 3, -1)
    with pytest.raises(DomainError):
        coeff_polynomial(1.5, 3, 0)


def test_recursion_weights_need_nonzero_arguments():
    assert len(recursion_weights(3, 2, 0.5, 0.5)) == 5
    with pytest.raises(DomainError):
        recursion_weights(3, 2, 0.0, 0.5)


# --------------------------------------------------
# Recursive and Marcum paths
# --------------------------------------------------
@pytest.mark.parametrize("b", [1, 2, 3, 4])
@pytest.mark.parametrize("c", [-2, 0, 1, 3, 4])
@pytest.mark.parametrize("w, z", [(0.1, 5.0), (0.5, 0.5), (2.0, 1.0), (5.0, 0.1), (5.0, 5.0)])
def test_three_paths_agree(b, c, w, z):
    args = Phi3Args(b, c, w, z)
    expected = phi3_tilde_series(args)
    assert phi3_tilde_via_marcum(args) == pytest.approx(expected, rel=1e-8)
    assert phi3_tilde_recursive(args) == pytest.approx(expected, rel=1e-8)


def test_recursive_non_integer_c():
    args = Phi3Args(3, 2.5, 1.0, 2.0)
    assert phi3_tilde_recursive(args) == pytest.approx(phi3_tilde_series(args), rel=1e-9)


def test_recursive_z_zero_falls_back_to_series():
    args = Phi3Args(2, 3, 1.0, 0.0)
    assert phi3_tilde_recursive(args) == phi3_tilde_series(args)


def test_b1_marcum_path_is_single_term():
    c, w, z = 1, 2.0, 3.0
    q = marcum_q(MarcumArgs(2 - c, math.sqrt(2 * w), math.sqrt(2 * z / w)))
    expected = w ** (1 - c) * math.exp(w + z / w) * q
    assert phi3_tilde_via_marcum(Phi3Args(1, c, w, z)) == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("args", [
    Phi3Args(1.5, 2, 1.0, 1.0),     # non-integer b
    Phi3Args(2, 2.5, 1.0, 1.0),     # non-integer c
    Phi3Args(2, 2, 0.0, 1.0),       # w = 0
    Phi3Args(2, 2, 1.0, 0.0),       # z = 0
    Phi3Args(2, 2, 1.0, -1.0),      # negative z
])
def test_marcum_path_domain(args):
    with pytest.raises(DomainError):
        phi3_tilde_via_marcum(args)


@pytest.mark.parametrize("b, c, w, z", [(2, 3, 0.5, 1.0), (3, -1, 2.0, 0.5), (4, 2.5, 1.0, 5.0), (2, 0, 0.1, 0.1)])
def test_one_step_recursion(b, c, w, z):
    args = Phi3Args(b, c, w, z)
    assert phi3_tilde_one_step(args) == pytest.approx(phi3_tilde_series(args), rel=1e-9)


def test_one_step_domain():
    with pytest.raises(DomainError):
        phi3_tilde_one_step(Phi3Args(1, 2, 1.0, 1.0))
    with pytest.raises(DomainError):
        phi3_tilde_one_step(Phi3Args(2, 2, 0.0, 1.0))
