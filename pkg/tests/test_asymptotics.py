import math

import pytest

from errors import DomainError, UsageError
from schemas.asymptotics import Order, Regime
from services import asymptotics as asym
from services.cycle import total_work


def test_otto_limit_of_first_order_low_T_efficiency():
    for scale in (0.01, 1.0, 3.0):
        for r in (0.0, 0.7, 2.0):
            assert asym.tls_eta_mw_low_T(scale * 1.0, scale * 4.0, 1.0, r, Order.FIRST) == pytest.approx(
                0.75, abs=1e-12)


def test_second_order_low_T_efficiency_tends_to_otto():
    eta = asym.tls_eta_mw_low_T(1.0, 4.0, 1e8, 0.0, Order.SECOND)
    assert eta == pytest.approx(0.75, abs=1e-6)


def test_first_order_work():
    assert asym.tls_work_low_T(1.0, 5.0, 2.0, 0.5, Order.FIRST) == 2.0
    assert asym.ho_work_high_T(1.0, math.e, 3.0, 1.0, 0.5, Order.FIRST) == pytest.approx(2.0)
    assert asym.ho_work_low_T(1.0, 1.0, 3.0, 0.5, Order.FIRST) == 0.0


def test_tls_high_T_work_without_squeezing():
    # S_r = 1: (omega2^2 - omega1^2)/8 (1/T_c - 1/T_h)
    assert asym.tls_work_high_T(1.0, 3.0, 4.0, 2.0, 0.0) == pytest.approx(1.0 * (0.5 - 0.25))


def test_analytic_tls_maximiser_matches_stationary_point_only_without_squeezing(make_config):
    unsqueezed = make_config(omega1=0.5, omega2=1.0, T_h=2.0)
    assert asym.tls_omega2_max_low_T(2.0, 0.0) == pytest.approx(
        asym.stationary_point_omega2(unsqueezed, Regime.LOW_T), rel=1e-14)
    squeezed = make_config(omega1=0.5, omega2=1.0, T_h=2.0, r=1.0)
    assert asym.tls_omega2_max_low_T(2.0, 1.0) != pytest.approx(
        asym.stationary_point_omega2(squeezed, Regime.LOW_T), rel=1e-3)


@pytest.mark.parametrize("medium,regime", [("tls", Regime.LOW_T), ("ho", Regime.HIGH_T), ("ho", Regime.LOW_T)])
@pytest.mark.parametrize("r", [0.0, 0.5, 1.0])
def test_stationary_point_matches_numeric_maximum(make_config, medium, regime, r):
    config = make_config(medium=medium, omega1=0.5, omega2=1.0, T_h=2.0, T_c=1.0, r=r)
    expected = asym.stationary_point_omega2(config, regime)
    found = asym.stationary_omega2(config, regime)
    assert not found.at_boundary
    assert found.x == pytest.approx(expected, rel=1e-6)


def test_stationary_point_closed_forms(make_config):
    config = make_config(medium="ho", omega1=0.5, omega2=1.0, T_h=2.0, T_c=1.0)
    assert asym.stationary_point_omega2(config, Regime.HIGH_T) == pytest.approx(math.sqrt(24.0))
    assert asym.stationary_point_omega2(config, Regime.LOW_T, Order.FIRST) == 4.0
    assert asym.stationary_point_omega2(config, Regime.HIGH_T, Order.FIRST) is None
    tls = make_config(medium="tls", omega1=0.5, omega2=1.0, T_h=2.0)
    assert asym.stationary_point_omega2(tls, Regime.HIGH_T) is None


def test_ho_efficiency_forms():
    log_ratio = math.log(3.0)
    assert asym.ho_eta_mw_high_T(1.0, 3.0, 0.5, 0.0) == pytest.approx(0.5 * log_ratio / (0.5 + log_ratio))
    # unsqueezed: 1 + (omega1 - 2 T_h)/(2 T_h (1 + log) - omega2)
    expected = 1.0 + (1.0 - 4.0) / (4.0 * (1.0 + log_ratio) - 3.0)
    assert asym.ho_eta_mw_low_T(1.0, 3.0, 2.0, 0.0) == pytest.approx(expected)


@pytest.mark.parametrize("eta_c", [0.0, 1.0, 1.5])
def test_efficiency_rejects_carnot_out_of_range(eta_c):
    with pytest.raises(DomainError):
        asym.tls_eta_mw_high_T(1.0, 2.0, eta_c, 0.3)
    with pytest.raises(DomainError):
        asym.ho_omega2_max_high_T(1.0, eta_c, 0.3)


def test_regime_config(make_config):
    base = make_config(omega1=1.0, omega2=2.0, T_h=2.0, T_c=1.0)
    low = asym.regime_config(base, Regime.LOW_T, 20.0)
    assert (low.cold.temperature, low.hot.temperature, low.omega1, low.omega2) == (0.05, 20.0, 1.0, 2.0)
    high = asym.regime_config(base, Regime.HIGH_T, 0.1)
    assert high.omega2 == pytest.approx(0.2)
    assert high.omega1 == pytest.approx(0.1)
    assert high.hot.temperature == 2.0
    with pytest.raises(UsageError):
        asym.regime_config(base, Regime.LOW_T, 0.0)


def _errors(config, regime, values):
    errors = []
    for value in values:
        point = asym.regime_config(config, regime, value)
        exact = total_work(point)
        errors.append(abs(asym.work_approx(point, regime) - exact) / abs(exact))
    return errors


def test_tls_low_T_expansion_converges(make_config):
    errors = _errors(make_config(omega1=1.0, omega2=2.0, r=0.5), Regime.LOW_T, [20.0, 40.0, 80.0])
    assert errors[0] > errors[1] > errors[2]
    assert errors[2] < 1e-3


def test_ho_high_T_expansion_converges(make_config):
    errors = _errors(make_config(medium="ho", r=0.5), Regime.HIGH_T, [0.1, 0.05, 0.01])
    assert errors[0] > errors[1] > errors[2]


def test_limit_table(make_config):
    rows = asym.limit_table(make_config(omega1=1.0, omega2=2.0), Regime.LOW_T, [10.0, 20.0])
    assert [row.regime_parameter for row in rows] == [10.0, 20.0]
    assert rows[1].T_h == 20.0
    assert rows[1].relative_error < rows[0].relative_error


def test_regime_report_tls_high_T_has_no_maximiser(make_config):
    report = asym.regime_report(make_config(), Regime.HIGH_T)
    assert report.omega2_star is None
    assert report.omega2_star_numeric is None
    assert report.W_exact == pytest.approx(total_work(make_config()))


def test_optimize_report(make_config):
    report = asym.optimize_report(make_config(medium="ho", omega1=0.5, omega2=1.0), upper=20.0)
    assert report.omega2_star_high_T == pytest.approx(math.sqrt(24.0))
    assert report.omega2_star_low_T > 0.0
    assert 0.5 <= report.omega2_star <= 20.0
