"""Harmonic-oscillator working medium with a squeezed hot bath.

The squeeze phase is accepted on the reservoir and ignored: energies and the
N-based entropies below do not depend on it. The oscillator mass never enters.
"""
import math
from scipy.special import xlogy
from schemas.cycle import IsochoricDirection, StrokeEnergies, StrokeLedger
from schemas.reservoir import GaussianOccupancy, Reservoir
from services.guards import require_non_negative_squeeze, require_positive, require_thermal
from services.medium_tls import thermal_occupation
from services.special import coth, log_sinh


def ho_internal_energy(omega: float, reservoir: Reservoir) -> float:
    require_positive(omega=omega)
    x = omega / reservoir.temperature
    return 0.5 * omega * math.cosh(2.0 * reservoir.squeeze_r) * coth(0.5 * x)


def ho_coefficient_F(omega: float, T: float, r: float) -> float:
    require_positive(omega=omega, T=T)
    require_non_negative_squeeze(r)
    return 0.5 * (1.0 + math.cosh(2.0 * r) * coth(0.5 * omega / T))


def gaussian_occupancy(omega: float, reservoir: Reservoir) -> GaussianOccupancy:
    return GaussianOccupancy(
        F=ho_coefficient_F(omega, reservoir.temperature, reservoir.squeeze_r),
        n=thermal_occupation(omega, reservoir.temperature),
    )


def _entropy_summand(F: float) -> float:
    # F log F - (F - 1) log(F - 1)
    return float(xlogy(F, F) - xlogy(F - 1.0, F - 1.0))


def ho_heat_isothermal_hot(omega1: float, omega2: float, hot: Reservoir) -> float:
    """Q_AB = T_h sum_i (-1)^(i+1) [F_i log F_i - (F_i - 1) log(F_i - 1)]."""
    require_positive(omega1=omega1, omega2=omega2)
    f1 = gaussian_occupancy(omega1, hot).F
    f2 = gaussian_occupancy(omega2, hot).F
    return hot.temperature * (_entropy_summand(f1) - _entropy_summand(f2))


def ho_work_isothermal_hot(omega1: float, omega2: float, hot: Reservoir) -> float:
    q_ab = ho_heat_isothermal_hot(omega1, omega2, hot)
    return q_ab + ho_internal_energy(omega2, hot) - ho_internal_energy(omega1, hot)


def ho_heat_isochoric(omega: float, hot: Reservoir, cold: Reservoir, direction: IsochoricDirection) -> float:
    require_thermal(cold)
    u_hot = ho_internal_energy(omega, hot)
    u_cold = ho_internal_energy(omega, cold)
    if direction is IsochoricDirection.HOT_TO_COLD:
        return u_cold - u_hot
    return u_hot - u_cold


def ho_heat_isothermal_cold(omega1: float, omega2: float, cold: Reservoir) -> float:
    require_positive(omega1=omega1, omega2=omega2)
    require_thermal(cold)
    tc = cold.temperature
    z1, z2 = omega1 / (2.0 * tc), omega2 / (2.0 * tc)
    return (
        tc * (log_sinh(z1) - log_sinh(z2))
        + 0.5 * omega2 * coth(z2)
        - 0.5 * omega1 * coth(z1)
    )


def ho_work_isothermal_cold(omega1: float, omega2: float, cold: Reservoir) -> float:
    require_positive(omega1=omega1, omega2=omega2)
    require_thermal(cold)
    tc = cold.temperature
    return tc * (log_sinh(omega1 / (2.0 * tc)) - log_sinh(omega2 / (2.0 * tc)))


def ho_total_work(omega1: float, omega2: float, hot: Reservoir, cold: Reservoir) -> float:
    # W_AB + W_CD; the hot-isotherm Delta U stays in (it is part of W_AB)
    return ho_work_isothermal_hot(omega1, omega2, hot) + ho_work_isothermal_cold(omega1, omega2, cold)


def stroke_energies(omega1: float, omega2: float, hot: Reservoir, cold: Reservoir) -> StrokeEnergies:
    return StrokeEnergies(
        U_A=ho_internal_energy(omega2, hot),
        U_B=ho_internal_energy(omega1, hot),
        U_C=ho_internal_energy(omega1, cold),
        U_D=ho_internal_energy(omega2, cold),
    )


def stroke_ledger(omega1: float, omega2: float, hot: Reservoir, cold: Reservoir) -> StrokeLedger:
    return StrokeLedger(
        Q_AB=ho_heat_isothermal_hot(omega1, omega2, hot),
        W_AB=ho_work_isothermal_hot(omega1, omega2, hot),
        Q_BC=ho_heat_isochoric(omega1, hot, cold, IsochoricDirection.HOT_TO_COLD),
        Q_CD=ho_heat_isothermal_cold(omega1, omega2, cold),
        W_CD=ho_work_isothermal_cold(omega1, omega2, cold),
        Q_DA=ho_heat_isochoric(omega2, hot, cold, IsochoricDirection.COLD_TO_HOT),
    )
