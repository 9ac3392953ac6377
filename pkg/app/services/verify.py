"""Oracle-versus-closed-form verification suite.

Each check returns a CheckResult; run_verification collects them into a
VerificationReport. The "qab-sign" fault flips the sign of Q_AB in every
ledger the first-law check builds, which that check must then reject.
"""
import logging
import math
import time
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np

from config import ToleranceConfig, settings
from errors import StirlingError, UsageError
from schemas.asymptotics import Order, Regime
from schemas.cycle import CycleConfig, EngineRegime, Medium, StrokeLedger
from schemas.oracle import LindbladParams
from schemas.reservoir import Reservoir
from schemas.run import CheckResult, VerificationReport
from services import asymptotics, medium_ho, medium_tls, oracle
from services.cycle import evaluate_performance, run_cycle, stroke_ledger
from services.presets import get_preset, run_preset

logger = logging.getLogger(__name__)

FAULTS = ("qab-sign",)
FIRST_LAW_SAMPLES = 10_000

Check = Callable[[ToleranceConfig, Optional[str]], CheckResult]


def _config(medium: Medium, omega1: float, omega2: float, T_h: float, T_c: float, r: float) -> CycleConfig:
    return CycleConfig(
        medium=medium,
        omega1=omega1,
        omega2=omega2,
        hot=Reservoir(temperature=T_h, squeeze_r=r),
        cold=Reservoir.thermal(T_c),
    )


def _result(name: str, max_error: float, tolerance: float, detail: str = "") -> CheckResult:
    return CheckResult(name=name, passed=bool(max_error <= tolerance), max_error=max_error,
                       tolerance=tolerance, detail=detail)


def check_tls_oracle(tol: ToleranceConfig, fault: Optional[str] = None, points: Tuple[int, int] = (40, 20)) -> CheckResult:
    """Closed-form TLS entropy and energy against the kernel of the master-equation generator."""
    worst = 0.0
    for x in np.logspace(-2.0, math.log10(20.0), points[0]):
        for r in np.linspace(0.0, 2.0, points[1]):
            reservoir = Reservoir(temperature=1.0 / x, squeeze_r=r)
            params = LindbladParams(gamma=settings.lindblad_gamma, reservoir=reservoir, omega=1.0)
            rho = oracle.lindblad_steady_state_tls(params, method="nullspace")
            entropy = medium_tls.tls_entropy(1.0, reservoir)
            worst = max(
                worst,
                abs(entropy - oracle.von_neumann_entropy(rho)),
                abs(medium_tls.tls_internal_energy(1.0, reservoir)
                    - oracle.energy_expectation(rho, oracle.tls_hamiltonian(1.0))),
                abs(medium_tls.tls_entropy_closed_form(1.0, reservoir) - entropy),
            )
    return _result("tls-oracle", worst, tol.closed_form, f"{points[0]}x{points[1]} grid, omega/T in [1e-2, 20]")


LINDBLAD_CASES: List[Tuple[float, float, float, float, float]] = [
    # omega, T, r, phi, gamma
    (1.0, 1.0, 0.8, 0.0, 1.0),
    (1.0, 1.0, 0.8, math.pi / 2, 1.0),
    (1.0, 1.0, 0.8, math.pi, 1.0),
    (1.0, 1.0, 0.8, 0.0, 0.1),
    (1.0, 1.0, 0.8, 0.0, 10.0),
    (2.0, 1.0, 0.3, 0.0, 1.0),
    (0.5, 2.0, 0.5, math.pi / 2, 0.1),
    (1.0, 0.5, 1.2, math.pi, 10.0),
    (3.0, 1.0, 0.0, 0.0, 1.0),
    (1.0, 0.05, 0.0, 0.0, 1.0),
    (0.2, 1.0, 1.5, math.pi / 2, 1.0),
    (1.0, 4.0, 0.1, math.pi, 0.1),
]


def check_lindblad(tol: ToleranceConfig, fault: Optional[str] = None,
                   cases: Optional[List[Tuple[float, float, float, float, float]]] = None) -> CheckResult:
    """Integrated and kernel steady states against the closed-form populations; gamma/phi independence."""
    cases = LINDBLAD_CASES if cases is None else cases
    worst = 0.0
    states = {}
    for omega, T, r, phi, gamma in cases:
        reservoir = Reservoir(temperature=T, squeeze_r=r, squeeze_phi=phi)
        params = LindbladParams(gamma=gamma, reservoir=reservoir, omega=omega)
        integrated = oracle.lindblad_steady_state_tls(params, method="integrate")
        kernel = oracle.lindblad_steady_state_tls(params, method="nullspace")
        expected = oracle.tls_closed_form_state(omega, reservoir)
        worst = max(worst, oracle.trace_distance(integrated, expected), oracle.trace_distance(kernel, integrated))
        states[(omega, T, r, phi, gamma)] = integrated

    # same (omega, T, r), different gamma or phi
    spread = 0.0
    groups: Dict[Tuple[float, float, float], list] = {}
    for (omega, T, r, _phi, _gamma), rho in states.items():
        groups.setdefault((omega, T, r), []).append(rho)
    for members in groups.values():
        for rho in members[1:]:
            spread = max(spread, oracle.trace_distance(members[0], rho))

    passed = worst <= tol.lindblad_trace_distance and spread <= min(tol.gamma_independence, tol.phase_independence)
    return CheckResult(name="lindblad", passed=passed, max_error=max(worst, spread),
                       tolerance=tol.lindblad_trace_distance,
                       detail=f"{len(cases)} cases, fixed-point error {worst:.2e}, gamma/phi spread {spread:.2e}")


HO_CASES: List[Tuple[float, float, float]] = [
    (1.0, 1.0, 0.0),
    (1.0, 1.0, 0.5),
    (1.0, 2.0, 0.3),
    (2.0, 1.0, 0.8),
    (1.0, 0.5, 1.0),
    (0.5, 1.0, 0.2),
    (1.0, 3.0, 0.1),
    (3.0, 1.0, 1.2),
    (1.0, 1.0, 0.9),
]


def _ho_energy(omega: float, T: float, r: float, theta: float = 0.0, cutoff: Optional[int] = None) -> float:
    state = oracle.squeezed_thermal_state_ho(omega, T, r, theta=theta, cutoff=cutoff)
    return oracle.energy_expectation(state.rho, oracle.ho_hamiltonian(omega, state.cutoff))


def check_ho_oracle(tol: ToleranceConfig, fault: Optional[str] = None,
                    cases: Optional[List[Tuple[float, float, float]]] = None) -> CheckResult:
    """Closed-form oscillator energy against the truncated Fock-space squeezed thermal state."""
    cases = HO_CASES if cases is None else cases
    worst = 0.0
    for omega, T, r in cases:
        expected = medium_ho.ho_internal_energy(omega, Reservoir(temperature=T, squeeze_r=r))
        worst = max(worst, abs(_ho_energy(omega, T, r) - expected) / abs(expected))

    # squeeze phase and cutoff doubling on one representative point
    omega, T, r = 1.0, 1.0, 0.5
    cutoff = oracle.choose_cutoff(omega, T, r)
    reference = _ho_energy(omega, T, r, cutoff=cutoff)
    phase_shift = abs(_ho_energy(omega, T, r, theta=math.pi / 2, cutoff=cutoff) - reference) / reference
    doubling = abs(_ho_energy(omega, T, r, cutoff=2 * cutoff) - reference) / reference

    passed = worst <= tol.ho_relative and phase_shift <= tol.phase_independence and doubling <= tol.cutoff_doubling
    return CheckResult(name="ho-oracle", passed=passed, max_error=worst, tolerance=tol.ho_relative,
                       detail=f"{len(cases)} cases, theta shift {phase_shift:.2e}, cutoff doubling {doubling:.2e}")


def check_ho_entropy(tol: ToleranceConfig, fault: Optional[str] = None) -> CheckResult:
    """Isothermal heats as T * (entropy difference) of truncated thermal-form states."""
    omega1, omega2, T_h, T_c, r = 1.0, 5.0, 2.0, 1.0, 0.5
    hot = Reservoir(temperature=T_h, squeeze_r=r)
    cold = Reservoir.thermal(T_c)

    def matrix_entropy(N: float) -> float:
        return oracle.von_neumann_entropy(oracle.thermal_state_from_occupancy(N))

    n_hot = [medium_tls.squeezed_occupancy(w, hot).N for w in (omega1, omega2)]
    n_cold = [medium_tls.thermal_occupation(w, T_c) for w in (omega1, omega2)]
    q_ab = T_h * (matrix_entropy(n_hot[0]) - matrix_entropy(n_hot[1]))
    q_cd = T_c * (matrix_entropy(n_cold[1]) - matrix_entropy(n_cold[0]))

    occupancy = medium_tls.squeezed_occupancy(1.0, Reservoir(temperature=2.0, squeeze_r=0.7)).N
    worst = max(
        abs(q_ab - medium_ho.ho_heat_isothermal_hot(omega1, omega2, hot)),
        abs(q_cd - medium_ho.ho_heat_isothermal_cold(omega1, omega2, cold)),
        abs(matrix_entropy(occupancy) - oracle.bosonic_entropy_from_N(occupancy)),
    )
    return _result("ho-entropy", worst, tol.bosonic_entropy)


def _flip_qab(ledger: StrokeLedger) -> StrokeLedger:
    return ledger.model_copy(update={"Q_AB": -ledger.Q_AB})


def random_configs(medium: Medium, count: int, seed: int = 7) -> Iterable[CycleConfig]:
    rng = np.random.default_rng(seed)
    for _ in range(count):
        omega1 = rng.uniform(0.1, 5.0)
        t_c = rng.uniform(0.1, 5.0)
        yield _config(
            medium,
            omega1=omega1,
            omega2=omega1 * rng.uniform(1.0, 10.0),
            T_h=t_c * rng.uniform(1.01, 10.0),
            T_c=t_c,
            r=rng.uniform(0.0, 2.0),
        )


def check_first_law(tol: ToleranceConfig, fault: Optional[str] = None,
                    samples: Optional[int] = None) -> CheckResult:
    """Sum of heats equals sum of works, and the two efficiency forms agree, on random cycles.

    The efficiency comparison skips cycles whose Q_H is below 1% of the largest flow.
    """
    samples = samples or FIRST_LAW_SAMPLES
    closure = 0.0
    eta_gap = 0.0
    for medium in Medium:
        for config in random_configs(medium, samples):
            ledger = stroke_ledger(config)
            if fault == "qab-sign":
                ledger = _flip_qab(ledger)
            closure = max(closure, ledger.closure_residual)
            perf = evaluate_performance(config, ledger)
            if perf.regime is EngineRegime.ENGINE and ledger.Q_H >= 1e-2 * ledger.scale:
                eta_gap = max(eta_gap, abs(perf.eta - perf.eta_from_heats))
    passed = closure <= tol.first_law and eta_gap <= tol.first_law
    return CheckResult(name="first-law", passed=passed, max_error=max(closure, eta_gap), tolerance=tol.first_law,
                       detail=f"{samples} cycles per medium, closure {closure:.2e}, efficiency gap {eta_gap:.2e}")


def check_thermal_reduction(tol: ToleranceConfig, fault: Optional[str] = None) -> CheckResult:
    """r = 0 reproduces the thermal Q_AB path and never beats Carnot."""
    heat_gap = 0.0
    excess = -math.inf
    for omega1 in (0.2, 1.0, 3.0):
        for ratio in (1.5, 3.0, 8.0):
            omega2 = omega1 * ratio
            for t_h in (0.5, 1.0, 2.0, 5.0):
                squeezed = medium_tls.heat_isothermal_hot(omega1, omega2, Reservoir.thermal(t_h))
                thermal = medium_tls.heat_isothermal_hot_thermal(omega1, omega2, t_h)
                heat_gap = max(heat_gap, abs(squeezed - thermal) / max(1.0, abs(thermal)))
            for temp_ratio in (1.05, 1.2, 1.5, 2.0, 4.0):
                for medium in Medium:
                    perf = run_cycle(_config(medium, omega1, omega2, temp_ratio, 1.0, 0.0)).performance
                    if perf.eta is not None:
                        excess = max(excess, perf.eta - perf.eta_carnot)
    passed = heat_gap <= tol.thermal_reduction and excess <= tol.carnot_margin
    return CheckResult(name="thermal-reduction", passed=passed, max_error=heat_gap, tolerance=tol.thermal_reduction,
                       detail=f"max eta - eta_C at r=0: {excess:.3e}")


def check_carnot_surpass(tol: ToleranceConfig, fault: Optional[str] = None) -> CheckResult:
    """Squeezing beats Carnot somewhere on the grid for each medium; r = 0 never does."""
    found = {medium: 0 for medium in Medium}
    thermal_violations = 0
    for medium in Medium:
        for temp_ratio in np.linspace(1.05, 1.5, 10):
            for ratio in np.linspace(2.0, 8.0, 13):
                perf = run_cycle(_config(medium, 1.0, ratio, temp_ratio, 1.0, 0.0)).performance
                thermal_violations += int(perf.surpasses_carnot)
                for r in np.linspace(0.5, 1.5, 11):
                    perf = run_cycle(_config(medium, 1.0, ratio, temp_ratio, 1.0, r)).performance
                    found[medium] += int(perf.surpasses_carnot)
    passed = all(count > 0 for count in found.values()) and thermal_violations == 0
    detail = ", ".join(f"{m.value}: {c} surpassing configs" for m, c in found.items())
    return CheckResult(name="carnot-surpass", passed=passed, detail=f"{detail}; r=0 violations: {thermal_violations}")


def check_effective_temperature(tol: ToleranceConfig, fault: Optional[str] = None) -> CheckResult:
    """T_eff >= T everywhere, equal at r = 0 and strictly above it for r > 0."""
    worst = 0.0
    strict = True
    for omega in np.logspace(-2.0, 1.3, 20):
        for T in (0.1, 1.0, 10.0):
            for r in np.linspace(0.0, 2.0, 11):
                t_eff = medium_tls.effective_temperature(omega, T, r)
                if r == 0.0:
                    worst = max(worst, abs(t_eff - T) / T)
                else:
                    strict = strict and t_eff > T
                    worst = max(worst, max(0.0, T - t_eff) / T)
    passed = strict and worst <= tol.identity
    return CheckResult(name="effective-temperature", passed=passed, max_error=worst, tolerance=tol.identity,
                       detail="" if strict else "T_eff <= T for some r > 0")


STATIONARY_CASES = [(Medium.TLS, Regime.LOW_T), (Medium.HO, Regime.HIGH_T), (Medium.HO, Regime.LOW_T)]


def check_asymptotics(tol: ToleranceConfig, fault: Optional[str] = None) -> CheckResult:
    """Relative error of each expansion shrinks along its regime sequence; stationary points match."""
    notes: List[str] = []
    monotone = True
    sequences = [
        (_config(Medium.TLS, 1.0, 2.0, 2.0, 1.0, 0.5), Regime.LOW_T, [20.0, 40.0, 80.0]),
        (_config(Medium.HO, 1.0, 5.0, 2.0, 1.0, 0.5), Regime.HIGH_T, [0.1, 0.05, 0.01]),
    ]
    for base, regime, values in sequences:
        errors = []
        for value in values:
            point = asymptotics.regime_config(base, regime, value)
            exact = stroke_ledger(point).W_total
            errors.append(abs(asymptotics.work_approx(point, regime) - exact) / abs(exact))
        decreasing = all(b < a for a, b in zip(errors, errors[1:]))
        monotone = monotone and decreasing
        notes.append(f"{base.medium.value} {regime.value}: " + ", ".join(f"{e:.2e}" for e in errors))

    worst = 0.0
    for medium, regime in STATIONARY_CASES:
        for r in (0.0, 0.5, 1.0):
            config = _config(medium, 0.5, 1.0, 2.0, 1.0, r)
            expected = asymptotics.stationary_point_omega2(config, regime)
            found = asymptotics.stationary_omega2(config, regime)
            worst = max(worst, abs(found.x - expected) / expected)

    # closed-form TLS low-T maximiser coincides with the stationary point without squeezing
    unsqueezed = _config(Medium.TLS, 0.5, 1.0, 2.0, 1.0, 0.0)
    closed_form_gap = abs(asymptotics.tls_omega2_max_low_T(2.0, 0.0)
                      - asymptotics.stationary_point_omega2(unsqueezed, Regime.LOW_T))
    passed = monotone and worst <= tol.stationarity and closed_form_gap <= tol.identity
    return CheckResult(name="asymptotics", passed=passed, max_error=worst, tolerance=tol.stationarity,
                       detail="; ".join(notes))


def check_otto_limit(tol: ToleranceConfig, fault: Optional[str] = None) -> CheckResult:
    worst = 0.0
    for omega1, omega2 in ((1.0, 2.0), (0.3, 5.0), (2.0, 7.5)):
        otto = 1.0 - omega1 / omega2
        for scale in (1.0, 3.0, 0.01):
            for r in (0.0, 0.7, 2.0):
                eta = asymptotics.tls_eta_mw_low_T(scale * omega1, scale * omega2, 1.0, r, Order.FIRST)
                worst = max(worst, abs(eta - otto))
    return _result("otto-limit", worst, tol.identity)


W_MONOTONE_PRESETS = ("fig1", "fig2", "fig3", "fig5", "fig6", "fig7", "fig8", "fig9")
SURFACE_PRESETS = ("fig5", "fig9")


def _groups(rows, along: str) -> List[list]:
    """Rows split into lines that vary only in `along`, each sorted by it."""
    fixed = tuple(f for f in ("omega_ratio", "temp_ratio", "r") if f != along)
    groups: Dict[Tuple[float, ...], list] = {}
    for row in rows:
        groups.setdefault(tuple(getattr(row, f) for f in fixed), []).append(row)
    return [sorted(members, key=lambda row: getattr(row, along)) for members in groups.values()]


def _non_decreasing(rows, field: str, along: str, tolerance: float) -> bool:
    for line in _groups(rows, along):
        values = [getattr(row, field) for row in line]
        if any(v is None for v in values):
            continue
        scale = max(1.0, max(abs(v) for v in values))
        if any(b - a < -tolerance * scale for a, b in zip(values, values[1:])):
            return False
    return True


def dips_then_rises(values: List[float], tolerance: float) -> bool:
    """Non-decreasing from the minimum on, and ending above the first value."""
    low = int(np.argmin(values))
    tail = values[low:]
    return values[-1] > values[0] and all(b - a >= -tolerance for a, b in zip(tail, tail[1:]))


def check_presets(tol: ToleranceConfig, fault: Optional[str] = None) -> CheckResult:
    """Figure tables.

    W rises with r on every preset. TLS efficiency on fig3 dips just above r = 0
    and rises from its minimum on. Surface efficiency rises along omega2/omega1
    (along r it does not). HO efficiency on fig8 settles at its large-r limit.
    """
    failures: List[str] = []
    for name in W_MONOTONE_PRESETS:
        if not _non_decreasing(run_preset(name), "W_over_Tc", "r", tol.closed_form):
            failures.append(f"{name}: W not monotone in r")
    if not dips_then_rises([row.eta for row in run_preset("fig3")], tol.closed_form):
        failures.append("fig3: eta does not rise from its minimum in r")
    for name in SURFACE_PRESETS:
        if not _non_decreasing(run_preset(name), "eta", "omega_ratio", tol.closed_form):
            failures.append(f"{name}: eta not monotone in omega2/omega1")

    fig8 = get_preset("fig8")
    t_h = fig8.config.hot.temperature
    worst = 0.0
    for ratio in fig8.spec.series_values:
        omega1 = fig8.config.omega1
        omega2 = ratio * omega1
        eta = run_cycle(_config(Medium.HO, omega1, omega2, t_h, fig8.config.cold.temperature, 6.0)).performance.eta
        limit = 1.0 - (omega1 / math.tanh(omega1 / (2 * t_h))) / (omega2 / math.tanh(omega2 / (2 * t_h)))
        worst = max(worst, abs(eta - limit))
    if worst > 1e-3:
        failures.append(f"fig8: large-r efficiency off its limit by {worst:.2e}")
    return CheckResult(name="presets", passed=not failures, max_error=worst, tolerance=1e-3,
                       detail="; ".join(failures))


CHECKS: Dict[str, Check] = {
    "tls-oracle": check_tls_oracle,
    "lindblad": check_lindblad,
    "ho-oracle": check_ho_oracle,
    "ho-entropy": check_ho_entropy,
    "first-law": check_first_law,
    "thermal-reduction": check_thermal_reduction,
    "carnot-surpass": check_carnot_surpass,
    "effective-temperature": check_effective_temperature,
    "asymptotics": check_asymptotics,
    "otto-limit": check_otto_limit,
    "presets": check_presets,
}


def run_verification(tolerance_scale: float = 1.0, only: Optional[List[str]] = None,
                     fault: Optional[str] = None) -> VerificationReport:
    if fault is not None and fault not in FAULTS:
        raise UsageError(f"Unknown fault '{fault}'. Available: {', '.join(FAULTS)}")
    names = list(only) if only else list(CHECKS)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise UsageError(f"Unknown checks: {', '.join(unknown)}. Available: {', '.join(CHECKS)}")

    tol = settings.tolerances.scaled(tolerance_scale)
    results: List[CheckResult] = []
    for name in names:
        started = time.perf_counter()
        try:
            result = CHECKS[name](tol, fault)
        except StirlingError as e:
            logger.error(f"Check {name} raised: {e}")
            result = CheckResult(name=name, passed=False, detail=str(e))
        result.seconds = time.perf_counter() - started
        results.append(result)
        if not result.passed:
            logger.warning(f"Check {name} failed: {result.detail}")

    passed = all(r.passed for r in results)
    logger.info(f"Verification {'passed' if passed else 'failed'}: "
                f"{sum(r.passed for r in results)}/{len(results)} checks")
    return VerificationReport(passed=passed, checks=results)
