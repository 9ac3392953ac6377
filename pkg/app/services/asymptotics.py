"""High- and low-temperature expansions of the cycle, next to numeric ground truth.

S_r = sech(2r) and S_2r = sech(4r). The regimes are joint limits: "high" means
omega/T_h -> 0 and omega/T_c -> 0; "low" means omega/T_c -> infinity while the
hot bath stays in its high-temperature expansion (omega/T_h -> 0).
"""
import logging
import math
from typing import Callable, List, Optional

from errors import DomainError, UsageError
from schemas.asymptotics import LimitRow, MaxResult, Order, Regime, RegimeReport
from schemas.cycle import CycleConfig, Medium
from schemas.run import OptimizeReport
from services.cycle import carnot_efficiency, total_work
from services.guards import require_positive
from services.maximizer import default_omega2_bounds, golden_section_maximize, numeric_max_work
from services.medium_tls import squeeze_factors

logger = logging.getLogger(__name__)


def _factors(r: float):
    sf = squeeze_factors(r)
    return sf.S_r, sf.S_2r


# two-level system

def tls_work_high_T(omega1: float, omega2: float, T_h: float, T_c: float, r: float) -> float:
    require_positive(omega1=omega1, omega2=omega2, T_h=T_h, T_c=T_c)
    s, _ = _factors(r)
    return (omega2 ** 2 - omega1 ** 2) / 8.0 * (s * (s - 2.0) / T_h + 1.0 / T_c)


def tls_work_low_T(omega1: float, omega2: float, T_h: float, r: float, order: Order = Order.SECOND) -> float:
    require_positive(omega1=omega1, omega2=omega2, T_h=T_h)
    s, _ = _factors(r)
    first = 0.5 * (omega2 - omega1)
    if order is Order.FIRST:
        return first
    return first + (omega2 ** 2 - omega1 ** 2) / (8.0 * T_h) * s * (s - 2.0)


def tls_omega2_max_low_T(T_h: float, r: float) -> float:
    require_positive(T_h=T_h)
    s, _ = _factors(r)
    return 2.0 * T_h / (4.0 - 3.0 * s * s)


def tls_eta_mw_low_T(omega1: float, omega2: float, T_h: float, r: float, order: Order = Order.FIRST) -> float:
    require_positive(omega1=omega1, omega2=omega2, T_h=T_h)
    if order is Order.FIRST:
        return 1.0 - omega1 / omega2
    s, _ = _factors(r)
    rho2 = (omega1 / omega2) ** 2
    denominator = 4.0 * T_h / omega2 - s * (2.0 - s * (1.0 - rho2))
    if denominator == 0.0:
        raise DomainError(f"Second-order low-T efficiency is singular at omega2={omega2}, T_h={T_h}, r={r}")
    return 1.0 - rho2 * (4.0 * T_h / omega1 - 2.0 * s) / denominator


def tls_eta_mw_high_T(omega1: float, omega2: float, eta_C: float, r: float) -> float:
    """Second-order high-T efficiency at maximum work, with hbar = 1.

    The numerator is grouped as
    (2 rho^2 S_r (1 - eta_C) - 1) - (1 - rho^2), rho = omega1/omega2.
    """
    require_positive(omega1=omega1, omega2=omega2)
    if not 0.0 < eta_C < 1.0:
        raise DomainError(f"eta_C must lie in (0, 1), got {eta_C}")
    s, _ = _factors(r)
    tau = 1.0 - eta_C
    rho2 = (omega1 / omega2) ** 2
    numerator = (2.0 * rho2 * s * tau - 1.0) - (1.0 - rho2)
    denominator = 2.0 - tau * s * (2.0 - s * tau * (1.0 - rho2))
    return 1.0 + numerator / denominator


# harmonic oscillator

def ho_work_high_T(omega1: float, omega2: float, T_h: float, T_c: float, r: float,
                   order: Order = Order.SECOND) -> float:
    require_positive(omega1=omega1, omega2=omega2, T_h=T_h, T_c=T_c)
    first = (T_h - T_c) * math.log(omega2 / omega1)
    if order is Order.FIRST:
        return first
    s, s2 = _factors(r)
    d2 = omega2 ** 2 - omega1 ** 2
    return first + d2 / (12.0 * T_h * s) - d2 / 24.0 * (s / (T_h * s2) + 1.0 / T_c)


def ho_work_low_T(omega1: float, omega2: float, T_h: float, r: float, order: Order = Order.SECOND) -> float:
    require_positive(omega1=omega1, omega2=omega2, T_h=T_h)
    first = T_h * math.log(omega2 / omega1) + 0.5 * (omega1 - omega2)
    if order is Order.FIRST:
        return first
    s, s2 = _factors(r)
    return first + (omega1 ** 2 - omega2 ** 2) / 12.0 * (1.0 / s - s / (2.0 * s2 * T_h))


def ho_omega2_max_high_T(T_c: float, eta_C: float, r: float) -> float:
    require_positive(T_c=T_c)
    if not 0.0 < eta_C < 1.0:
        raise DomainError(f"eta_C must lie in (0, 1), got {eta_C}")
    s, s2 = _factors(r)
    return 2.0 * math.sqrt(3.0 * T_c * eta_C) / math.sqrt(1.0 + s * s * (1.0 - eta_C) / s2)


def ho_omega2_max_low_T(T_h: float, r: float) -> float:
    require_positive(T_h=T_h)
    s, s2 = _factors(r)
    return 0.5 * (1.0 + s2) * T_h * (-3.0 + math.sqrt(3.0 * (11.0 - 4.0 * s * s)))


def ho_eta_mw_high_T(omega1: float, omega2: float, eta_C: float, r: float) -> float:
    require_positive(omega1=omega1, omega2=omega2)
    s, _ = _factors(r)
    log_ratio = math.log(omega2 / omega1)
    return eta_C * log_ratio / (eta_C - 1.0 + 1.0 / s + log_ratio)


def ho_eta_mw_low_T(omega1: float, omega2: float, T_h: float, r: float) -> float:
    require_positive(omega1=omega1, omega2=omega2, T_h=T_h)
    s, _ = _factors(r)
    denominator = -omega2 + 2.0 * T_h * (1.0 / s + math.log(omega2 / omega1))
    if denominator == 0.0:
        raise DomainError(f"Low-T efficiency is singular at omega2={omega2}, T_h={T_h}, r={r}")
    return 1.0 + (omega1 - 2.0 * T_h / s) / denominator


# dispatch over (medium, regime)

def work_approx_fn(config: CycleConfig, regime: Regime, order: Order = Order.SECOND) -> Callable[[float], float]:
    """W_approx as a function of omega2 with everything else taken from config."""
    w1, t_h, t_c, r = config.omega1, config.hot.temperature, config.cold.temperature, config.hot.squeeze_r
    if config.medium is Medium.TLS:
        if regime is Regime.HIGH_T:
            return lambda w2: tls_work_high_T(w1, w2, t_h, t_c, r)
        return lambda w2: tls_work_low_T(w1, w2, t_h, r, order)
    if regime is Regime.HIGH_T:
        return lambda w2: ho_work_high_T(w1, w2, t_h, t_c, r, order)
    return lambda w2: ho_work_low_T(w1, w2, t_h, r, order)


def work_approx(config: CycleConfig, regime: Regime, order: Order = Order.SECOND) -> float:
    return work_approx_fn(config, regime, order)(config.omega2)


def analytic_omega2_star(config: CycleConfig, regime: Regime) -> Optional[float]:
    t_h, t_c, r = config.hot.temperature, config.cold.temperature, config.hot.squeeze_r
    if config.medium is Medium.TLS:
        # the first-order high-T work has no local maximum
        return None if regime is Regime.HIGH_T else tls_omega2_max_low_T(t_h, r)
    if regime is Regime.HIGH_T:
        return ho_omega2_max_high_T(t_c, carnot_efficiency(t_h, t_c), r)
    return ho_omega2_max_low_T(t_h, r)


def eta_mw_analytic(config: CycleConfig, regime: Regime, order: Order, omega2: float) -> float:
    w1, t_h, t_c, r = config.omega1, config.hot.temperature, config.cold.temperature, config.hot.squeeze_r
    eta_c = carnot_efficiency(t_h, t_c)
    if config.medium is Medium.TLS:
        if regime is Regime.HIGH_T:
            return tls_eta_mw_high_T(w1, omega2, eta_c, r)
        return tls_eta_mw_low_T(w1, omega2, t_h, r, order)
    if regime is Regime.HIGH_T:
        return ho_eta_mw_high_T(w1, omega2, eta_c, r)
    return ho_eta_mw_low_T(w1, omega2, t_h, r)


def stationary_point_omega2(config: CycleConfig, regime: Regime, order: Order = Order.SECOND) -> Optional[float]:
    """Zero of dW_approx/domega2 solved in closed form; None where W_approx has no interior maximum.

    These differ from the analytic omega2* formulas above for r > 0.
    """
    t_h, t_c, r = config.hot.temperature, config.cold.temperature, config.hot.squeeze_r
    if order is Order.FIRST and not (config.medium is Medium.HO and regime is Regime.LOW_T):
        return None
    s, s2 = _factors(r)
    if config.medium is Medium.TLS:
        return None if regime is Regime.HIGH_T else 2.0 * t_h / (s * (2.0 - s))
    if regime is Regime.HIGH_T:
        return math.sqrt(12.0 * t_h * t_c * (t_h - t_c) / (t_h - s * t_c))
    if order is Order.FIRST:
        return 2.0 * t_h
    # c w^2 + w/2 - T_h = 0, smaller positive root
    c = (1.0 / s - s / (2.0 * s2 * t_h)) / 6.0
    if c == 0.0:
        return 2.0 * t_h
    discriminant = 0.25 + 4.0 * c * t_h
    if discriminant < 0.0:
        return None
    return (-0.5 + math.sqrt(discriminant)) / (2.0 * c)


def stationary_omega2(config: CycleConfig, regime: Regime, order: Order = Order.SECOND,
                      lower: Optional[float] = None, upper: Optional[float] = None) -> MaxResult:
    """Numeric maximiser of W_approx over omega2."""
    lo_default, hi_default = default_omega2_bounds(config)
    return golden_section_maximize(
        work_approx_fn(config, regime, order),
        lo_default if lower is None else lower,
        hi_default if upper is None else upper,
    )


def _relative_error(approx: float, exact: float) -> Optional[float]:
    if exact == 0.0:
        return None
    return abs(approx - exact) / abs(exact)


def regime_report(config: CycleConfig, regime: Regime, order: Order = Order.SECOND) -> RegimeReport:
    w_approx = work_approx(config, regime, order)
    w_exact = total_work(config)
    omega2_star = analytic_omega2_star(config, regime)

    omega2_star_numeric = None
    if not (config.medium is Medium.TLS and regime is Regime.HIGH_T):
        stationary = stationary_omega2(config, regime, order)
        omega2_star_numeric = None if stationary.at_boundary else stationary.x

    try:
        eta_mw = eta_mw_analytic(config, regime, order, omega2_star if omega2_star is not None else config.omega2)
    except DomainError as e:
        logger.warning(f"Analytic efficiency unavailable: {e}")
        eta_mw = None

    ground_truth = numeric_max_work(config)
    return RegimeReport(
        medium=config.medium,
        regime=regime,
        order=order,
        W_approx=w_approx,
        W_exact=w_exact,
        relative_error=_relative_error(w_approx, w_exact),
        omega2_star=omega2_star,
        omega2_star_numeric=omega2_star_numeric,
        eta_mw=eta_mw,
        eta_numeric=None if ground_truth.at_boundary else ground_truth.eta,
        numeric_at_boundary=ground_truth.at_boundary,
    )


def regime_config(config: CycleConfig, regime: Regime, parameter: float) -> CycleConfig:
    """Place config at a point of the regime's sequence.

    high: parameter = omega2/T_h; omega2 = parameter * T_h and omega1 keeps the ratio.
    low:  parameter = omega1/T_c; T_c = omega1/parameter and T_h = parameter * omega1.
    """
    if not parameter > 0:
        raise UsageError(f"Regime parameter must be positive, got {parameter}")
    data = config.model_dump()
    if regime is Regime.HIGH_T:
        ratio = config.omega2 / config.omega1
        data["omega2"] = parameter * config.hot.temperature
        data["omega1"] = data["omega2"] / ratio
    else:
        data["cold"]["temperature"] = config.omega1 / parameter
        data["hot"]["temperature"] = parameter * config.omega1
    return CycleConfig.model_validate(data)


def limit_table(config: CycleConfig, regime: Regime, values: List[float],
                order: Order = Order.SECOND) -> List[LimitRow]:
    rows: List[LimitRow] = []
    for value in values:
        point = regime_config(config, regime, value)
        w_exact = total_work(point)
        w_approx = work_approx(point, regime, order)
        omega2_star = analytic_omega2_star(point, regime)
        try:
            eta_analytic = eta_mw_analytic(point, regime, order,
                                           omega2_star if omega2_star is not None else point.omega2)
        except DomainError:
            eta_analytic = None
        ground_truth = numeric_max_work(point)
        rows.append(LimitRow(
            regime_parameter=value,
            omega1=point.omega1,
            omega2=point.omega2,
            T_h=point.hot.temperature,
            T_c=point.cold.temperature,
            W_exact=w_exact,
            W_approx=w_approx,
            relative_error=_relative_error(w_approx, w_exact),
            eta_exact_at_max=None if ground_truth.at_boundary else ground_truth.eta,
            eta_mw_analytic=eta_analytic,
        ))
    logger.info(f"Built {len(rows)} {regime.value} limit rows for {config.medium.value}")
    return rows


def optimize_report(config: CycleConfig, lower: Optional[float] = None,
                    upper: Optional[float] = None) -> OptimizeReport:
    """Exact max-work frequency next to the stationary points of both expansions."""
    result = numeric_max_work(config, lower=lower, upper=upper)
    return OptimizeReport(
        config=config,
        omega2_star=result.omega2_star,
        W_star=result.W_star,
        at_boundary=result.at_boundary,
        eta=result.eta,
        omega2_star_low_T=stationary_point_omega2(config, Regime.LOW_T),
        omega2_star_high_T=stationary_point_omega2(config, Regime.HIGH_T),
    )
