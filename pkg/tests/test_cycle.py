import pytest
from pydantic import ValidationError

from errors import UsageError
from schemas.cycle import AxisRange, CycleConfig, EngineRegime, Medium, SweepAxis, SweepSpec
from schemas.reservoir import Reservoir
from services import cycle


def test_reference_efficiencies():
    assert cycle.carnot_efficiency(2.0, 1.0) == 0.5
    assert cycle.curzon_ahlborn_efficiency(4.0, 1.0) == 0.5


def test_degenerate_cycle(make_config):
    report = cycle.run_cycle(make_config(omega1=2.0, omega2=2.0, r=0.5))
    assert report.performance.regime is EngineRegime.DEGENERATE
    assert report.performance.eta is None
    assert report.ledger.W_total == pytest.approx(0.0, abs=1e-14)


@pytest.mark.parametrize("medium", ["tls", "ho"])
def test_thermal_engine_stays_below_carnot(make_config, medium):
    perf = cycle.run_cycle(make_config(medium=medium)).performance
    assert perf.regime is EngineRegime.ENGINE
    assert 0.0 < perf.eta < perf.eta_carnot
    assert not perf.surpasses_carnot


@pytest.mark.parametrize("medium,r", [("tls", 1.0), ("ho", 1.2)])
def test_squeezing_surpasses_carnot(make_config, medium, r):
    perf = cycle.run_cycle(make_config(medium=medium, T_h=1.1, r=r)).performance
    assert perf.eta_carnot == pytest.approx(1.0 / 11.0)
    assert perf.surpasses_carnot
    assert perf.eta > 0.4


@pytest.mark.parametrize("medium", ["tls", "ho"])
def test_efficiency_forms_agree(make_config, medium):
    report = cycle.run_cycle(make_config(medium=medium, omega1=0.7, omega2=4.2, T_h=3.0, T_c=0.8, r=0.6))
    perf = report.performance
    assert report.first_law_residual < 1e-10
    assert perf.eta == pytest.approx(perf.eta_from_heats, rel=1e-10)
    assert perf.W_total == pytest.approx(report.ledger.W_AB + report.ledger.W_CD)
    assert perf.Q_H == pytest.approx(report.ledger.Q_AB + report.ledger.Q_DA)


def test_effective_temperature_reported_for_tls_only(make_config):
    tls_report = cycle.run_cycle(make_config(medium="tls", r=0.5))
    assert tls_report.t_eff_omega1 > 2.0
    assert tls_report.t_eff_omega2 > 2.0
    ho_report = cycle.run_cycle(make_config(medium="ho", r=0.5))
    assert ho_report.t_eff_omega1 is None
    assert ho_report.t_eff_omega2 is None


@pytest.mark.parametrize("kwargs", [
    {"omega1": 5.0, "omega2": 1.0},
    {"T_h": 1.0, "T_c": 2.0},
    {"T_h": 1.0, "T_c": 1.0},
    {"omega1": 0.0},
    {"r": -0.1},
])
def test_invalid_configs_rejected(make_config, kwargs):
    with pytest.raises(ValidationError):
        make_config(**kwargs)


def test_squeezed_cold_bath_rejected():
    with pytest.raises(ValidationError):
        CycleConfig(medium=Medium.TLS, omega1=1.0, omega2=2.0,
                    hot=Reservoir.thermal(2.0), cold=Reservoir(temperature=1.0, squeeze_r=0.1))


def test_axis_values():
    assert cycle.axis_values(AxisRange(start=1.0, stop=2.0, steps=5)) == pytest.approx([1.0, 1.25, 1.5, 1.75, 2.0])
    assert cycle.axis_values(AxisRange(start=3.0, stop=3.0, steps=1)) == [3.0]
    for bad in (AxisRange(start=2.0, stop=1.0, steps=3), AxisRange(start=1.0, stop=2.0, steps=1),
                AxisRange(start=1.0, stop=1.0, steps=4), AxisRange(start=1.0, stop=float("inf"), steps=4)):
        with pytest.raises(UsageError):
            cycle.axis_values(bad)


def test_with_axis(make_config):
    base = make_config(omega1=2.0, T_c=0.5)
    assert cycle.with_axis(base, SweepAxis.OMEGA_RATIO, 3.0).omega2 == 6.0
    assert cycle.with_axis(base, SweepAxis.TEMP_RATIO, 4.0).hot.temperature == 2.0
    assert cycle.with_axis(base, SweepAxis.SQUEEZE, 0.3).hot.squeeze_r == 0.3
    with pytest.raises(UsageError):
        cycle.with_axis(base, SweepAxis.TEMP_RATIO, 0.5)
    with pytest.raises(UsageError):
        cycle.with_axis(base, SweepAxis.SURFACE, 1.0)


def test_single_step_sweep_matches_cycle(make_config):
    base = make_config(medium="ho", r=0.4)
    spec = SweepSpec(axis=SweepAxis.OMEGA_RATIO, range=AxisRange(start=5.0, stop=5.0, steps=1))
    [row] = cycle.sweep(base, spec)
    report = cycle.run_cycle(base)
    assert row.W_over_Tc == report.performance.W_total / base.cold.temperature
    assert row.eta == report.performance.eta
    assert row.omega_ratio == 5.0


def test_sweep_order_series_outer(make_config):
    spec = SweepSpec(axis=SweepAxis.OMEGA_RATIO, range=AxisRange(start=1.0, stop=4.0, steps=4),
                     series_axis=SweepAxis.SQUEEZE, series_values=[0.0, 0.5])
    rows = cycle.sweep(make_config(), spec, workers=2)
    assert [(row.r, row.omega_ratio) for row in rows] == [
        (0.0, 1.0), (0.0, 2.0), (0.0, 3.0), (0.0, 4.0),
        (0.5, 1.0), (0.5, 2.0), (0.5, 3.0), (0.5, 4.0),
    ]
    assert rows[0].regime is EngineRegime.DEGENERATE
    assert all(b.W_over_Tc >= a.W_over_Tc for a, b in zip(rows[:4], rows[4:]))


def test_sweep_rejects_inconsistent_series(make_config):
    values_only = SweepSpec(axis=SweepAxis.SQUEEZE, range=AxisRange(start=0.0, stop=1.0, steps=3),
                            series_values=[2.0])
    with pytest.raises(UsageError):
        cycle.sweep(make_config(), values_only)
    clash = SweepSpec(axis=SweepAxis.SQUEEZE, range=AxisRange(start=0.0, stop=1.0, steps=3),
                      series_axis=SweepAxis.SQUEEZE, series_values=[0.5])
    with pytest.raises(UsageError):
        cycle.sweep(make_config(), clash)


def test_surface(make_config):
    rows = cycle.surface(make_config(), AxisRange(start=2.0, stop=4.0, steps=3), AxisRange(start=0.0, stop=1.0, steps=4))
    assert len(rows) == 12
    assert [row.omega_ratio for row in rows[:4]] == [2.0] * 4
    assert [row.r for row in rows[:4]] == pytest.approx([0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0])
    with pytest.raises(UsageError):
        cycle.sweep(make_config(), SweepSpec(axis=SweepAxis.SURFACE, range=AxisRange(start=2.0, stop=4.0, steps=3)))
