"""Named parameter bundles fig1..fig9, one per plotted data set.

Units: T_c = 1, omega1 = 1 (so omega1 = k_B T_c / hbar)
and, unless the axis says otherwise, T_h = 2 T_c and omega2 = 5 omega1.
The r-series is settings.preset_squeeze_values; presets whose series is a
frequency ratio use settings.preset_ratio_series.
"""
import logging
from typing import Dict, List, Optional

from pydantic import BaseModel

from config import settings
from errors import UsageError
from schemas.cycle import AxisRange, CycleConfig, Medium, SweepAxis, SweepRow, SweepSpec
from schemas.reservoir import Reservoir
from services.cycle import sweep

logger = logging.getLogger(__name__)


class Preset(BaseModel):
    name: str
    caption: str
    config: CycleConfig
    spec: SweepSpec


def _base(medium: Medium, r: float = 0.0) -> CycleConfig:
    return CycleConfig(
        medium=medium,
        omega1=1.0,
        omega2=5.0,
        hot=Reservoir(temperature=2.0, squeeze_r=r),
        cold=Reservoir.thermal(1.0),
    )


def _r_series() -> List[float]:
    return list(settings.preset_squeeze_values)


def _ratio_series() -> List[float]:
    return list(settings.preset_ratio_series)


def _build() -> Dict[str, Preset]:
    squeeze_axis = AxisRange(start=0.0, stop=1.5, steps=31)
    presets = [
        Preset(
            name="fig1",
            caption="TLS: W/T_c versus omega2/omega1 for several r (T_h = 2 T_c)",
            config=_base(Medium.TLS),
            spec=SweepSpec(axis=SweepAxis.OMEGA_RATIO, range=AxisRange(start=1.0, stop=10.0, steps=37),
                           series_axis=SweepAxis.SQUEEZE, series_values=_r_series()),
        ),
        Preset(
            name="fig2",
            caption="TLS: W/T_c versus T_h/T_c for several r (omega2 = 5 omega1)",
            config=_base(Medium.TLS),
            spec=SweepSpec(axis=SweepAxis.TEMP_RATIO, range=AxisRange(start=1.1, stop=5.0, steps=40),
                           series_axis=SweepAxis.SQUEEZE, series_values=_r_series()),
        ),
        Preset(
            name="fig3",
            caption="TLS: efficiency versus r against eta_C and eta_CA (omega2 = 5 omega1, T_h = 2 T_c)",
            config=_base(Medium.TLS),
            spec=SweepSpec(axis=SweepAxis.SQUEEZE, range=squeeze_axis),
        ),
        Preset(
            name="fig4",
            caption="TLS: efficiency versus temperature ratio for several omega2/omega1 (r = 0.5)",
            config=_base(Medium.TLS, r=0.5),
            spec=SweepSpec(axis=SweepAxis.TEMP_RATIO, range=AxisRange(start=1.1, stop=10.0, steps=90),
                           series_axis=SweepAxis.OMEGA_RATIO, series_values=_ratio_series()),
        ),
        Preset(
            name="fig5",
            caption="TLS: efficiency over (omega2/omega1, r) at T_h = 2 T_c",
            config=_base(Medium.TLS),
            spec=SweepSpec(axis=SweepAxis.SURFACE, range=AxisRange(start=1.5, stop=10.0, steps=18),
                           squeeze_range=AxisRange(start=0.0, stop=1.5, steps=16)),
        ),
        Preset(
            name="fig6",
            caption="HO: W/T_c versus omega2/omega1 for several r (omega1 = T_c, T_h = 2 T_c)",
            config=_base(Medium.HO),
            spec=SweepSpec(axis=SweepAxis.OMEGA_RATIO, range=AxisRange(start=1.0, stop=10.0, steps=37),
                           series_axis=SweepAxis.SQUEEZE, series_values=_r_series()),
        ),
        Preset(
            name="fig7",
            caption="HO: W/T_c versus T_h/T_c for several r (omega2 = 5 omega1)",
            config=_base(Medium.HO),
            spec=SweepSpec(axis=SweepAxis.TEMP_RATIO, range=AxisRange(start=1.1, stop=5.0, steps=40),
                           series_axis=SweepAxis.SQUEEZE, series_values=_r_series()),
        ),
        Preset(
            name="fig8",
            caption="HO: efficiency versus r for several omega2/omega1 (omega1 = T_c, T_h = 2 T_c)",
            config=_base(Medium.HO),
            spec=SweepSpec(axis=SweepAxis.SQUEEZE, range=squeeze_axis,
                           series_axis=SweepAxis.OMEGA_RATIO, series_values=_ratio_series()),
        ),
        Preset(
            name="fig9",
            caption="HO: efficiency over (omega2/omega1, r) at T_h = 2 T_c, omega1 = T_c",
            config=_base(Medium.HO),
            spec=SweepSpec(axis=SweepAxis.SURFACE, range=AxisRange(start=1.5, stop=10.0, steps=18),
                           squeeze_range=AxisRange(start=0.0, stop=1.5, steps=16)),
        ),
    ]
    return {p.name: p for p in presets}


def list_presets() -> List[Preset]:
    return list(_build().values())


def get_preset(name: str) -> Preset:
    presets = _build()
    if name not in presets:
        raise UsageError(f"Unknown preset '{name}'. Available: {', '.join(presets)}")
    return presets[name]


def run_preset(name: str, workers: Optional[int] = None) -> List[SweepRow]:
    preset = get_preset(name)
    logger.info(f"Regenerating {name}: {preset.caption}")
    return sweep(preset.config, preset.spec, workers=workers)
