"""Deterministic golden-section search for scalar maxima."""
import logging
import math
from typing import Callable, Optional, Tuple

from config import settings
from errors import UsageError
from schemas.asymptotics import MaxResult, MaxWorkResult
from schemas.cycle import CycleConfig, EngineRegime
from services.cycle import run_cycle, total_work

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0


def golden_section_maximize(f: Callable[[float], float], lower: float, upper: float,
                            rel_tol: Optional[float] = None) -> MaxResult:
    """Maximise a unimodal f on [lower, upper].

    Brackets shrink until their width falls below rel_tol * max(1, |x|). A result
    within one final bracket width of either end is flagged as a boundary solution.
    """
    if not (math.isfinite(lower) and math.isfinite(upper)) or upper <= lower:
        raise UsageError(f"Invalid search bracket [{lower}, {upper}]")
    tol = rel_tol if rel_tol is not None else settings.tolerances.max_work_rel
    a, b = lower, upper
    scale = max(1.0, abs(lower), abs(upper))
    dist = b - a
    n = max(1, int(math.ceil(math.log(tol * scale / dist) / math.log(INV_PHI)))) if dist > tol * scale else 1

    c = a + INV_PHI_SQ * dist
    d = a + INV_PHI * dist
    yc, yd = f(c), f(d)
    for _ in range(n - 1):
        if yc > yd:
            b, d, yd = d, c, yc
            dist = INV_PHI * dist
            c = a + INV_PHI_SQ * dist
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            dist = INV_PHI * dist
            d = a + INV_PHI * dist
            yd = f(d)

    x = 0.5 * (a + d) if yc > yd else 0.5 * (c + b)
    value = f(x)
    # compare against the ends so a monotone objective is caught
    y_lower, y_upper = f(lower), f(upper)
    at_boundary = False
    if y_upper >= value:
        x, value, at_boundary = upper, y_upper, True
    elif y_lower >= value:
        x, value, at_boundary = lower, y_lower, True
    elif min(x - lower, upper - x) <= 2.0 * dist:
        at_boundary = True
    return MaxResult(x=x, value=value, at_boundary=at_boundary, iterations=n)


def default_omega2_bounds(config: CycleConfig) -> Tuple[float, float]:
    upper = settings.max_work_upper_factor * max(config.hot.temperature, config.omega1)
    return config.omega1, max(upper, 2.0 * config.omega1)


def numeric_max_work(config: CycleConfig, lower: Optional[float] = None,
                     upper: Optional[float] = None) -> MaxWorkResult:
    """Maximise the exact total work of the cycle over omega2, all else fixed."""
    lo_default, hi_default = default_omega2_bounds(config)
    lo = lo_default if lower is None else lower
    hi = hi_default if upper is None else upper
    if lo < config.omega1:
        raise UsageError(f"Lower omega2 bound {lo} is below omega1={config.omega1}")

    base = config.model_dump()

    def work(omega2: float) -> float:
        return total_work(CycleConfig.model_validate({**base, "omega2": omega2}))

    result = golden_section_maximize(work, lo, hi)
    if result.at_boundary:
        logger.warning(f"No interior work maximum in [{lo}, {hi}] for {config.medium.value}; "
                       f"reporting boundary omega2={result.x:.6g}")

    report = run_cycle(CycleConfig.model_validate({**base, "omega2": result.x}))
    eta = report.performance.eta if report.performance.regime is EngineRegime.ENGINE else None
    return MaxWorkResult(omega2_star=result.x, W_star=result.value, at_boundary=result.at_boundary, eta=eta)

