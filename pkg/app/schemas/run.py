from enum import Enum
from typing import Any, Dict, List, Optional
from pydantic import BaseModel, Field
from schemas.asymptotics import Order, Regime
from schemas.cycle import CycleConfig, Medium, SweepSpec


class Command(str, Enum):
    CYCLE = "cycle"
    SWEEP = "sweep"
    SURFACE = "surface"
    LIMITS = "limits"
    OPTIMIZE = "optimize"
    VERIFY = "verify"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class RunSpec(BaseModel):
    command: Command
    medium: Optional[Medium] = None
    preset: Optional[str] = None
    parameters: Dict[str, Any] = {}
    format: OutputFormat = OutputFormat.CSV
    output: Optional[str] = None


class TableDocument(BaseModel):
    meta: RunSpec
    rows: List[Dict[str, Any]]


class SweepRequest(BaseModel):
    config: CycleConfig
    spec: SweepSpec


class LimitsRequest(BaseModel):
    config: CycleConfig
    regime: Regime
    order: Order = Order.SECOND
    values: List[float] = Field(min_length=1)


class RegimeRequest(BaseModel):
    config: CycleConfig
    regime: Regime
    order: Order = Order.SECOND


class OptimizeRequest(BaseModel):
    config: CycleConfig
    lower: Optional[float] = None
    upper: Optional[float] = None


class OptimizeReport(BaseModel):
    config: CycleConfig
    omega2_star: float
    W_star: float
    at_boundary: bool
    eta: Optional[float] = None
    omega2_star_low_T: Optional[float] = None
    omega2_star_high_T: Optional[float] = None


class VerifyRequest(BaseModel):
    tolerance_scale: float = Field(default=1.0, gt=0)
    only: List[str] = []


class CheckResult(BaseModel):
    name: str
    passed: bool
    max_error: Optional[float] = None
    tolerance: Optional[float] = None
    detail: str = ""
    seconds: float = 0.0


class VerificationReport(BaseModel):
    passed: bool
    checks: List[CheckResult]
