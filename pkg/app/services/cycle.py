import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional

import numpy as np
from pydantic import ValidationError

from config import settings
from errors import UsageError
from schemas.cycle import (
    AxisRange,
    CycleConfig,
    CyclePerformance,
    CycleReport,
    EngineRegime,
    Medium,
    StrokeEnergies,
    StrokeLedger,
    SweepAxis,
    SweepRow,
    SweepSpec,
)
from schemas.reservoir import Reservoir
from services import medium_ho, medium_tls

logger = logging.getLogger(__name__)

_LEDGERS: Dict[Medium, Callable[[float, float, Reservoir, Reservoir], StrokeLedger]] = {
    Medium.TLS: medium_tls.stroke_ledger,
    Medium.HO: medium_ho.stroke_ledger,
}

_ENERGIES: Dict[Medium, Callable[[float, float, Reservoir, Reservoir], StrokeEnergies]] = {
    Medium.TLS: medium_tls.stroke_energies,
    Medium.HO: medium_ho.stroke_energies,
}


def carnot_efficiency(T_h: float, T_c: float) -> float:
    return 1.0 - T_c / T_h


def curzon_ahlborn_efficiency(T_h: float, T_c: float) -> float:
    return 1.0 - math.sqrt(T_c / T_h)


def stroke_ledger(config: CycleConfig) -> StrokeLedger:
    return _LEDGERS[config.medium](config.omega1, config.omega2, config.hot, config.cold)


def evaluate_performance(config: CycleConfig, ledger: StrokeLedger) -> CyclePerformance:
    """Efficiency straight from the ledger: W/Q_H and 1 + (Q_BC + Q_CD)/(Q_AB + Q_DA)."""
    t_h, t_c = config.hot.temperature, config.cold.temperature
    eta_c = carnot_efficiency(t_h, t_c)
    performance = CyclePerformance(
        W_total=ledger.W_total,
        Q_H=ledger.Q_H,
        eta_carnot=eta_c,
        eta_curzon_ahlborn=curzon_ahlborn_efficiency(t_h, t_c),
        regime=EngineRegime.ENGINE,
    )
    if config.degenerate:
        performance.regime = EngineRegime.DEGENERATE
        return performance
    if ledger.Q_H <= 0.0:
        performance.regime = EngineRegime.NOT_AN_ENGINE
        return performance

    performance.eta = ledger.W_total / ledger.Q_H
    performance.eta_from_heats = 1.0 + (ledger.Q_BC + ledger.Q_CD) / ledger.Q_H
    performance.surpasses_carnot = performance.eta > eta_c + settings.tolerances.carnot_margin
    return performance


def run_cycle(config: CycleConfig) -> CycleReport:
    ledger = stroke_ledger(config)

    residual = ledger.closure_residual
    if residual > settings.tolerances.first_law:
        logger.warning(f"First-law residual {residual:.3e} exceeds tolerance for {config.medium.value} cycle")

    performance = evaluate_performance(config, ledger)
    if performance.regime is EngineRegime.NOT_AN_ENGINE:
        logger.debug(f"Q_H = {ledger.Q_H:.6g} <= 0: not an engine")

    report = CycleReport(
        config=config,
        ledger=ledger,
        performance=performance,
        energies=_ENERGIES[config.medium](config.omega1, config.omega2, config.hot, config.cold),
        first_law_residual=residual,
    )
    if config.medium is Medium.TLS:
        t_h, r = config.hot.temperature, config.hot.squeeze_r
        report.t_eff_omega1 = medium_tls.effective_temperature(config.omega1, t_h, r)
        report.t_eff_omega2 = medium_tls.effective_temperature(config.omega2, t_h, r)
    return report


def total_work(config: CycleConfig) -> float:
    return stroke_ledger(config).W_total


def axis_values(axis_range: AxisRange) -> List[float]:
    start, stop, steps = axis_range.start, axis_range.stop, axis_range.steps
    if not (math.isfinite(start) and math.isfinite(stop)):
        raise UsageError(f"Range bounds must be finite, got [{start}, {stop}]")
    if stop < start:
        raise UsageError(f"Range is reversed: [{start}, {stop}]")
    if steps == 1:
        if start != stop:
            raise UsageError(f"A single-step range needs start == stop, got [{start}, {stop}]")
        return [start]
    if start == stop:
        raise UsageError(f"Range [{start}, {stop}] is empty for {steps} steps")
    return np.linspace(start, stop, steps).tolist()


def with_axis(config: CycleConfig, axis: SweepAxis, value: float) -> CycleConfig:
    data = config.model_dump()
    if axis is SweepAxis.OMEGA_RATIO:
        data["omega2"] = value * config.omega1
    elif axis is SweepAxis.TEMP_RATIO:
        data["hot"]["temperature"] = value * config.cold.temperature
    elif axis is SweepAxis.SQUEEZE:
        data["hot"]["squeeze_r"] = value
    else:
        raise UsageError(f"Axis {axis.value} cannot be applied to a single cycle")
    try:
        return CycleConfig.model_validate(data)
    except ValidationError as e:
        raise UsageError(f"{axis.value}={value} gives an invalid cycle: {e.errors()[0]['msg']}") from e


def sweep_row(config: CycleConfig) -> SweepRow:
    report = run_cycle(config)
    perf = report.performance
    t_c = config.cold.temperature
    return SweepRow(
        medium=config.medium,
        omega1=config.omega1,
        omega2=config.omega2,
        omega_ratio=config.omega2 / config.omega1,
        temp_ratio=config.hot.temperature / t_c,
        r=config.hot.squeeze_r,
        W_over_Tc=perf.W_total / t_c,
        eta=perf.eta,
        eta_carnot=perf.eta_carnot,
        eta_curzon_ahlborn=perf.eta_curzon_ahlborn,
        regime=perf.regime,
    )


def sweep_configs(config: CycleConfig, spec: SweepSpec) -> List[CycleConfig]:
    configs: List[CycleConfig] = []
    if spec.axis is SweepAxis.SURFACE:
        if spec.squeeze_range is None:
            raise UsageError("A surface sweep needs a squeeze range")
        for ratio in axis_values(spec.range):
            row_base = with_axis(config, SweepAxis.OMEGA_RATIO, ratio)
            configs.extend(with_axis(row_base, SweepAxis.SQUEEZE, r) for r in axis_values(spec.squeeze_range))
        return configs

    if spec.series_values and spec.series_axis is None:
        raise UsageError("series_values given without a series_axis")
    if spec.series_axis in (spec.axis, SweepAxis.SURFACE):
        raise UsageError(f"Series axis {spec.series_axis.value} conflicts with sweep axis {spec.axis.value}")

    values = axis_values(spec.range)
    bases = [with_axis(config, spec.series_axis, s) for s in spec.series_values] if spec.series_values else [config]
    for base in bases:
        configs.extend(with_axis(base, spec.axis, v) for v in values)
    return configs


def sweep(config: CycleConfig, spec: SweepSpec, workers: Optional[int] = None) -> List[SweepRow]:
    """Rows come back in construction order: series value outer, axis value inner."""
    configs = sweep_configs(config, spec)
    logger.info(f"Sweeping {len(configs)} {config.medium.value} cycles along {spec.axis.value}")
    with ThreadPoolExecutor(max_workers=workers or settings.sweep_workers) as pool:
        return list(pool.map(sweep_row, configs))


def surface(config: CycleConfig, ratio_range: AxisRange, squeeze_range: AxisRange,
            workers: Optional[int] = None) -> List[SweepRow]:
    spec = SweepSpec(axis=SweepAxis.SURFACE, range=ratio_range, squeeze_range=squeeze_range)
    return sweep(config, spec, workers=workers)
