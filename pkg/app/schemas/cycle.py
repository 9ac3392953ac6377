from enum import Enum
from typing import List, Optional
from pydantic import BaseModel, Field, model_validator
from schemas.reservoir import Reservoir


class Medium(str, Enum):
    TLS = "tls"
    HO = "ho"


class EngineRegime(str, Enum):
    ENGINE = "engine"
    NOT_AN_ENGINE = "not-an-engine"
    DEGENERATE = "degenerate"


class IsochoricDirection(str, Enum):
    # B -> C at omega1, hot to cold
    HOT_TO_COLD = "hot-to-cold"
    # D -> A at omega2, cold to hot
    COLD_TO_HOT = "cold-to-hot"


class CycleConfig(BaseModel):
    medium: Medium
    omega1: float = Field(gt=0)
    omega2: float = Field(gt=0)
    hot: Reservoir
    cold: Reservoir

    @model_validator(mode='after')
    def check_orientation(self) -> 'CycleConfig':
        if self.omega2 < self.omega1:
            raise ValueError(f"Engine orientation needs omega2 >= omega1, got {self.omega2} < {self.omega1}")
        if self.hot.temperature <= self.cold.temperature:
            raise ValueError(
                f"Hot bath must be hotter than cold bath: T_h={self.hot.temperature}, T_c={self.cold.temperature}"
            )
        if not self.cold.is_thermal:
            raise ValueError(f"Cold bath must be thermal, got squeeze_r={self.cold.squeeze_r}")
        return self

    @property
    def degenerate(self) -> bool:
        return self.omega1 == self.omega2


class StrokeLedger(BaseModel):
    Q_AB: float
    W_AB: float
    Q_BC: float
    Q_CD: float
    W_CD: float
    Q_DA: float

    @property
    def W_total(self) -> float:
        return self.W_AB + self.W_CD

    @property
    def Q_H(self) -> float:
        return self.Q_AB + self.Q_DA

    @property
    def heat_sum(self) -> float:
        return self.Q_AB + self.Q_BC + self.Q_CD + self.Q_DA

    @property
    def scale(self) -> float:
        return max(abs(self.Q_AB), abs(self.W_AB), abs(self.Q_BC), abs(self.Q_CD), abs(self.W_CD), abs(self.Q_DA))

    @property
    def closure_residual(self) -> float:
        """|sum Q - sum W| relative to the largest flow (0 for an all-zero ledger)."""
        scale = self.scale
        if scale == 0.0:
            return 0.0
        return abs(self.heat_sum - self.W_total) / scale


class StrokeEnergies(BaseModel):
    U_A: float
    U_B: float
    U_C: float
    U_D: float


class CyclePerformance(BaseModel):
    W_total: float
    Q_H: float
    eta: Optional[float] = None
    eta_from_heats: Optional[float] = None
    eta_carnot: float
    eta_curzon_ahlborn: float
    regime: EngineRegime
    surpasses_carnot: bool = False


class CycleReport(BaseModel):
    config: CycleConfig
    ledger: StrokeLedger
    performance: CyclePerformance
    energies: StrokeEnergies
    first_law_residual: float
    # TLS only: effective temperature of the hot squeezed bath seen at omega1 / omega2
    t_eff_omega1: Optional[float] = None
    t_eff_omega2: Optional[float] = None


class SweepAxis(str, Enum):
    OMEGA_RATIO = "omega_ratio"
    TEMP_RATIO = "temp_ratio"
    SQUEEZE = "squeeze"
    SURFACE = "surface"


class AxisRange(BaseModel):
    start: float
    stop: float
    steps: int = Field(ge=1)


class SweepSpec(BaseModel):
    axis: SweepAxis
    range: AxisRange
    # second (squeeze) axis of a surface; the first axis is omega_ratio
    squeeze_range: Optional[AxisRange] = None
    series_axis: Optional[SweepAxis] = None
    series_values: List[float] = []


class SweepRow(BaseModel):
    medium: Medium
    omega1: float
    omega2: float
    omega_ratio: float
    temp_ratio: float
    r: float
    W_over_Tc: float
    eta: Optional[float] = None
    eta_carnot: float
    eta_curzon_ahlborn: float
    regime: EngineRegime
