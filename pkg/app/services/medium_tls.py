"""Two-level working medium, H = (omega/2) sigma_z, in contact with a squeezed thermal bath.

Basis order is (excited, ground); the excited level sits at +omega/2 and carries
population N/(2N+1). Everything is expressed through the polarization
a = S_r tanh(omega/2T) = 1/(2N+1), which stays finite for any omega/T.
"""
import math
from typing import Tuple
from scipy.special import entr, xlogy
from schemas.cycle import IsochoricDirection, StrokeEnergies, StrokeLedger
from schemas.reservoir import Occupancy, Reservoir, SqueezeFactors
from services.guards import require_non_negative_squeeze, require_positive, require_thermal
from services.special import log_cosh, log_one_minus_s2_tanh2, log_squeeze_ratio, sech


def squeeze_factors(r: float) -> SqueezeFactors:
    require_non_negative_squeeze(r)
    return SqueezeFactors(S_r=sech(2.0 * r), S_2r=sech(4.0 * r))


def thermal_occupation(omega: float, T: float) -> float:
    require_positive(omega=omega, T=T)
    x = omega / T
    return math.exp(-x) / -math.expm1(-x)


def squeezed_occupancy(omega: float, reservoir: Reservoir) -> Occupancy:
    n = thermal_occupation(omega, reservoir.temperature)
    r = reservoir.squeeze_r
    return Occupancy(
        n=n,
        N=n * math.cosh(2.0 * r) + math.sinh(r) ** 2,
        M_mag=math.cosh(r) * math.sinh(r) * (2.0 * n + 1.0),
        phi=reservoir.squeeze_phi,
    )


def tls_polarization(omega: float, reservoir: Reservoir) -> float:
    """1/(2N+1) = sech(2r) tanh(omega/2T)."""
    require_positive(omega=omega)
    return sech(2.0 * reservoir.squeeze_r) * math.tanh(omega / (2.0 * reservoir.temperature))


def tls_steady_state(omega: float, reservoir: Reservoir) -> Tuple[float, float]:
    a = tls_polarization(omega, reservoir)
    return (1.0 - a) / 2.0, (1.0 + a) / 2.0


def tls_internal_energy(omega: float, reservoir: Reservoir) -> float:
    return -0.5 * omega * tls_polarization(omega, reservoir)


def tls_entropy(omega: float, reservoir: Reservoir) -> float:
    p_excited, p_ground = tls_steady_state(omega, reservoir)
    return float(entr(p_excited) + entr(p_ground))


def tls_entropy_closed_form(omega: float, reservoir: Reservoir) -> float:
    """Grouped closed form in (n, r):

    S = -[ (cosh^2 r + nC) log((2n+1 + sech 2r)/(4n+2))
          + (nC + sinh^2 r) log((2n+1 - sech 2r)/(4n+2)) ] / ((2n+1) C),   C = cosh 2r
    """
    n = thermal_occupation(omega, reservoir.temperature)
    r = reservoir.squeeze_r
    c = math.cosh(2.0 * r)
    s = sech(2.0 * r)
    ground = xlogy(math.cosh(r) ** 2 + n * c, (2.0 * n + 1.0 + s) / (4.0 * n + 2.0))
    excited = xlogy(n * c + math.sinh(r) ** 2, (2.0 * n + 1.0 - s) / (4.0 * n + 2.0))
    return float(-(ground + excited) / ((2.0 * n + 1.0) * c))


def coefficient_F(omega: float, T: float, r: float) -> float:
    require_positive(omega=omega, T=T)
    x = omega / T
    s = sech(2.0 * r)
    return s * (1.0 + log_squeeze_ratio(x, s) / x)


def coefficient_G(omega: float, T: float, r: float) -> float:
    require_positive(omega=omega, T=T)
    x = omega / T
    s = sech(2.0 * r)
    return s * log_squeeze_ratio(x, s) / x


def _log_sinh_term(y: float, s: float) -> float:
    # log[1 + (1 - s^2) sinh^2 y]
    return 2.0 * log_cosh(y) + log_one_minus_s2_tanh2(s, y)


def heat_isothermal_hot(omega1: float, omega2: float, hot: Reservoir) -> float:
    """Q_AB: heat exchanged with the squeezed bath while omega2 -> omega1."""
    require_positive(omega1=omega1, omega2=omega2)
    th = hot.temperature
    r = hot.squeeze_r
    s = sech(2.0 * r)
    y1, y2 = omega1 / (2.0 * th), omega2 / (2.0 * th)
    f1, f2 = coefficient_F(omega1, th, r), coefficient_F(omega2, th, r)
    return (
        th * (log_cosh(y1) - log_cosh(y2))
        + f2 * 0.5 * omega2 * math.tanh(y2)
        - f1 * 0.5 * omega1 * math.tanh(y1)
        + 0.5 * th * (_log_sinh_term(y2, s) - _log_sinh_term(y1, s))
    )


def heat_isothermal_hot_thermal(omega1: float, omega2: float, T_h: float) -> float:
    """Q_AB for an unsqueezed hot bath in plain cosh/tanh form (valid while omega/2T_h < 700)."""
    require_positive(omega1=omega1, omega2=omega2, T_h=T_h)
    y1, y2 = omega1 / (2.0 * T_h), omega2 / (2.0 * T_h)
    return (
        T_h * math.log(math.cosh(y1) / math.cosh(y2))
        + 0.5 * omega2 * math.tanh(y2)
        - 0.5 * omega1 * math.tanh(y1)
    )


def work_isothermal_hot(omega1: float, omega2: float, hot: Reservoir) -> float:
    """W_AB from the G-coefficient form (the G terms carry omega_i/2)."""
    require_positive(omega1=omega1, omega2=omega2)
    th = hot.temperature
    r = hot.squeeze_r
    s = sech(2.0 * r)
    y1, y2 = omega1 / (2.0 * th), omega2 / (2.0 * th)
    g1, g2 = coefficient_G(omega1, th, r), coefficient_G(omega2, th, r)
    return (
        th * (log_cosh(y1) - log_cosh(y2))
        + 0.5 * th * (_log_sinh_term(y2, s) - _log_sinh_term(y1, s))
        + g2 * 0.5 * omega2 * math.tanh(y2)
        - g1 * 0.5 * omega1 * math.tanh(y1)
    )


def heat_isothermal_cold(omega1: float, omega2: float, cold: Reservoir) -> float:
    """Q_CD: heat exchanged with the thermal cold bath while omega1 -> omega2."""
    require_positive(omega1=omega1, omega2=omega2)
    require_thermal(cold)
    tc = cold.temperature
    z1, z2 = omega1 / (2.0 * tc), omega2 / (2.0 * tc)
    return (
        tc * (log_cosh(z2) - log_cosh(z1))
        + 0.5 * omega1 * math.tanh(z1)
        - 0.5 * omega2 * math.tanh(z2)
    )


def work_isothermal_cold(omega1: float, omega2: float, cold: Reservoir) -> float:
    require_positive(omega1=omega1, omega2=omega2)
    require_thermal(cold)
    tc = cold.temperature
    return tc * (log_cosh(omega2 / (2.0 * tc)) - log_cosh(omega1 / (2.0 * tc)))


def heat_isochoric(omega: float, hot: Reservoir, cold: Reservoir, direction: IsochoricDirection) -> float:
    """Q_BC (hot-to-cold at omega1) or Q_DA (cold-to-hot at omega2); equals the stroke's Delta U."""
    require_thermal(cold)
    u_hot = tls_internal_energy(omega, hot)
    u_cold = tls_internal_energy(omega, cold)
    if direction is IsochoricDirection.HOT_TO_COLD:
        return u_cold - u_hot
    return u_hot - u_cold


def effective_temperature(omega: float, T: float, r: float) -> float:
    """Thermal temperature whose TLS populations equal those of the squeezed bath at (T, r)."""
    require_positive(omega=omega, T=T)
    require_non_negative_squeeze(r)
    x = omega / T
    s = sech(2.0 * r)
    z = s * math.tanh(0.5 * x)
    if z < 0.9:
        rapidity = 2.0 * math.atanh(z)
    else:
        rapidity = x + log_squeeze_ratio(x, s)
    if rapidity <= 0.0:
        return math.inf
    return omega / rapidity


def stroke_energies(omega1: float, omega2: float, hot: Reservoir, cold: Reservoir) -> StrokeEnergies:
    return StrokeEnergies(
        U_A=tls_internal_energy(omega2, hot),
        U_B=tls_internal_energy(omega1, hot),
        U_C=tls_internal_energy(omega1, cold),
        U_D=tls_internal_energy(omega2, cold),
    )


def stroke_ledger(omega1: float, omega2: float, hot: Reservoir, cold: Reservoir) -> StrokeLedger:
    return StrokeLedger(
        Q_AB=heat_isothermal_hot(omega1, omega2, hot),
        W_AB=work_isothermal_hot(omega1, omega2, hot),
        Q_BC=heat_isochoric(omega1, hot, cold, IsochoricDirection.HOT_TO_COLD),
        Q_CD=heat_isothermal_cold(omega1, omega2, cold),
        W_CD=work_isothermal_cold(omega1, omega2, cold),
        Q_DA=heat_isochoric(omega2, hot, cold, IsochoricDirection.COLD_TO_HOT),
    )
