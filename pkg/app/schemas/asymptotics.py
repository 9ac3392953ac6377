from enum import Enum
from typing import Optional
from pydantic import BaseModel
from schemas.cycle import Medium


class Regime(str, Enum):
    HIGH_T = "high_T"
    LOW_T = "low_T"


class Order(str, Enum):
    FIRST = "first"
    SECOND = "second"


class MaxResult(BaseModel):
    x: float
    value: float
    at_boundary: bool = False
    iterations: int = 0


class MaxWorkResult(BaseModel):
    omega2_star: float
    W_star: float
    at_boundary: bool = False
    eta: Optional[float] = None


class RegimeReport(BaseModel):
    medium: Medium
    regime: Regime
    order: Order
    W_approx: float
    W_exact: float
    relative_error: Optional[float] = None
    # analytic maximiser formula (None where the expansion has no maximum)
    omega2_star: Optional[float] = None
    # stationary point of W_approx located numerically
    omega2_star_numeric: Optional[float] = None
    eta_mw: Optional[float] = None
    # efficiency of the exact cycle at the numeric max-work frequency (ground truth)
    eta_numeric: Optional[float] = None
    numeric_at_boundary: bool = False


class LimitRow(BaseModel):
    regime_parameter: float
    omega1: float
    omega2: float
    T_h: float
    T_c: float
    W_exact: float
    W_approx: float
    relative_error: Optional[float] = None
    eta_exact_at_max: Optional[float] = None
    eta_mw_analytic: Optional[float] = None
