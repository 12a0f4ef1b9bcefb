import math

import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import special as sc

from Core.config import EvalConfig
from Core.errors import ConvergenceError, DomainError
from Special.special_fns import (
    bessel_i_scaled,
    log_gamma,
    log_rgamma,
    pochhammer_log,
    pochhammer_log_table,
    reg_confluent_1f1,
    regularized_lower_gamma,
    regularized_upper_gamma,
    signed_logsumexp,
)


def test_log_gamma_matches_factorial():
    assert log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-14)


def test_log_gamma_rejects_nonpositive():
    with pytest.raises(DomainError):
        log_gamma(0.0)


@pytest.mark.parametrize("x", [0.0, -1.0, -2.0, -7.0])
def test_log_rgamma_poles_are_exact_zero(x):
    assert log_rgamma(x) == (0, -math.inf)


def test_log_rgamma_sign_between_poles():
    # Gamma(-0.5) = -2 sqrt(pi)
    sign, lg = log_rgamma(-0.5)
    assert sign == -1
    assert math.exp(lg) == pytest.approx(1.0 / (2.0 * math.sqrt(math.pi)), rel=1e-14)


def test_incomplete_gamma_pair_sums_to_one():
    assert regularized_lower_gamma(3.0, 2.0) + regularized_upper_gamma(3.0, 2.0) == pytest.approx(1.0, abs=1e-15)


def test_upper_gamma_tail_has_no_cancellation():
    # Q(1, x) = exp(-x) exactly
    assert regularized_upper_gamma(1.0, 50.0) == pytest.approx(math.exp(-50.0), rel=1e-13)


def test_incomplete_gamma_domain():
    with pytest.raises(DomainError):
        regularized_lower_gamma(0.0, 1.0)
    with pytest.raises(DomainError):
        regularized_upper_gamma(1.0, -1.0)


def test_bessel_i_scaled_matches_unscaled():
    assert bessel_i_scaled(2.0, 3.0) * math.exp(3.0) == pytest.approx(float(sc.iv(2.0, 3.0)), rel=1e-14)


@pytest.mark.parametrize("nu, x", [(-1.0, 1.0), (0.0, -0.5)])
def test_bessel_i_scaled_domain(nu, x):
    with pytest.raises(DomainError):
        bessel_i_scaled(nu, x)


def test_pochhammer_log_small_integer():
    sign, lg = pochhammer_log(3, 2)        # 3 * 4
    assert sign == 1
    assert math.exp(lg) == pytest.approx(12.0, rel=1e-14)


def test_pochhammer_log_zero_factor():
    # (-2)(-1)(0)
    assert pochhammer_log(-2, 3) == (0, -math.inf)


def test_pochhammer_log_negative_product_sign():
    sign, lg = pochhammer_log(-2.5, 2)      # (-2.5)(-1.5)
    assert sign == 1
    assert math.exp(lg) == pytest.approx(3.75, rel=1e-14)
    sign, _ = pochhammer_log(-2.5, 3)       # times -0.5
    assert sign == -1


def test_pochhammer_log_gamma_form_matches_product_form():
    product = pochhammer_log(0.5, 64)
    gamma_form = pochhammer_log(0.5, 65)
    # (0.5)_65 = (0.5)_64 * 64.5
    assert gamma_form[1] == pytest.approx(product[1] + math.log(64.5), rel=1e-12)


def test_pochhammer_log_table_matches_scalar():
    signs, logs = pochhammer_log_table(-1.5, 6)
    for k in range(7):
        sign, lg = pochhammer_log(-1.5, k)
        assert signs[k] == sign
        assert logs[k] == pytest.approx(lg, rel=1e-13, abs=1e-13)


def test_signed_logsumexp_exact_cancellation():
    assert signed_logsumexp([1.0, 1.0], [1, -1]) == (0, -math.inf)


def test_signed_logsumexp_negative_result():
    sign, lg = signed_logsumexp([math.log(2.0), math.log(5.0)], [1, -1])
    assert sign == -1
    assert math.exp(lg) == pytest.approx(3.0, rel=1e-14)


def test_signed_logsumexp_skips_zero_signs():
    sign, lg = signed_logsumexp([math.log(4.0), 1000.0], [1, 0])
    assert sign == 1
    assert lg == pytest.approx(math.log(4.0))


def test_signed_logsumexp_tied_opposite_maxima_keep_the_rest():
    sign, lg = signed_logsumexp([0.0, 0.0, -1.0], [1, -1, 1])
    assert sign == 1
    assert lg == pytest.approx(-1.0, rel=1e-15)


def test_signed_logsumexp_tied_maxima_under_large_shift():
    # e^700 - e^700 + e^698 would overflow without the shift
    sign, lg = signed_logsumexp([700.0, 700.0, 698.0], [-1, 1, -1])
    assert sign == -1
    assert lg == pytest.approx(698.0, rel=1e-15)


def test_signed_logsumexp_rejects_nan_terms():
    with pytest.raises(ConvergenceError):
        signed_logsumexp([0.0, math.nan], [1, 1])


@given(
    b=st.floats(min_value=0.1, max_value=5.0),
    c=st.floats(min_value=0.5, max_value=6.0),
    w=st.floats(min_value=0.0, max_value=10.0),
)
def test_reg_confluent_1f1_matches_scipy(b, c, w):
    expected = float(sc.hyp1f1(b, c, w)) / math.gamma(c)
    assert reg_confluent_1f1(b, c, w, EvalConfig()) == pytest.approx(expected, rel=1e-9, abs=1e-12)


def test_reg_confluent_1f1_through_pole_of_c():
    # c = -1: the k = 0, 1 terms vanish; 1F1~(b, -n; w) = (b)_{n+1} w^{n+1} 1F1(b+n+1, n+2; w) / (n+1)!
    b, w = 2.0, 0.7
    expected = (b * (b + 1)) * w ** 2 / 2.0 * float(sc.hyp1f1(b + 2, 3, w))
    assert reg_confluent_1f1(b, -1.0, w) == pytest.approx(expected, rel=1e-12)


def test_reg_confluent_1f1_kummer_transformation():
    b, c, x = 1.5, 2.5, 3.0
    assert reg_confluent_1f1(b, c, -x) == pytest.approx(math.exp(-x) * reg_confluent_1f1(c - b, c, x), rel=1e-11)


def test_reg_confluent_1f1_at_zero_is_rgamma():
    assert reg_confluent_1f1(1.5, 3.0, 0.0) == pytest.approx(0.5, rel=1e-15)
