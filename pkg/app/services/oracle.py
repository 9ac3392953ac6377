"""First-principles matrix computations used to check the closed forms.

TLS matrices use the basis (excited, ground), so sigma_+ = |e><g| is
[[0, 1], [0, 0]]. Superoperators act on column-stacked density matrices:
vec(A rho B) = kron(B.T, A) vec(rho).
"""
import logging
import math
from typing import Optional, Union

import numpy as np
from pydantic import ValidationError
from scipy.integrate import solve_ivp
from scipy.linalg import expm, null_space
from scipy.special import entr, xlogy

from config import settings
from errors import ConvergenceError, CutoffError, DomainError
from schemas.oracle import DensityMatrix, LindbladParams, TruncatedState
from schemas.reservoir import Reservoir
from services.guards import require_non_negative_squeeze, require_positive
from services.medium_tls import squeezed_occupancy, thermal_occupation, tls_steady_state

logger = logging.getLogger(__name__)

SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
SIGMA_MINUS = SIGMA_PLUS.conj().T
_I2 = np.eye(2, dtype=complex)


def _left(op: np.ndarray) -> np.ndarray:
    return np.kron(np.eye(op.shape[0]), op)


def _right(op: np.ndarray) -> np.ndarray:
    return np.kron(op.T, np.eye(op.shape[0]))


def _sandwich(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(b.T, a)


def _dissipator(jump: np.ndarray) -> np.ndarray:
    jdj = jump.conj().T @ jump
    return _sandwich(jump, jump.conj().T) - 0.5 * (_left(jdj) + _right(jdj))


def _vec(rho: np.ndarray) -> np.ndarray:
    return rho.reshape(-1, order="F")


def _unvec(v: np.ndarray) -> np.ndarray:
    dim = int(round(math.sqrt(v.size)))
    return v.reshape(dim, dim, order="F")


def _hermitize(rho: np.ndarray) -> np.ndarray:
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.real(np.trace(rho))


def tls_hamiltonian(omega: float) -> np.ndarray:
    require_positive(omega=omega)
    return np.diag([0.5 * omega, -0.5 * omega]).astype(complex)


def tls_closed_form_state(omega: float, reservoir: Reservoir) -> DensityMatrix:
    """Diagonal steady state diag(N, N+1)/(2N+1) from the closed-form populations."""
    p_excited, p_ground = tls_steady_state(omega, reservoir)
    return DensityMatrix(matrix=np.diag([p_excited, p_ground]).astype(complex))


def lindblad_generator(params: LindbladParams) -> np.ndarray:
    """4x4 generator of the squeezed-bath master equation in the interaction picture."""
    occ = squeezed_occupancy(params.omega, params.reservoir)
    gamma = params.gamma
    m = -occ.M_mag * np.exp(1j * occ.phi)

    generator = gamma * (occ.N + 1.0) * _dissipator(SIGMA_MINUS)
    generator = generator + gamma * occ.N * _dissipator(SIGMA_PLUS)
    generator = generator - gamma * m * _sandwich(SIGMA_PLUS, SIGMA_PLUS)
    generator = generator - gamma * np.conj(m) * _sandwich(SIGMA_MINUS, SIGMA_MINUS)
    return generator


def trace_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    if rho.dim != sigma.dim:
        raise DomainError(f"Dimension mismatch: {rho.dim} vs {sigma.dim}")
    diff = rho.matrix - sigma.matrix
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(0.5 * (diff + diff.conj().T)))))


def _nullspace_steady_state(generator: np.ndarray) -> np.ndarray:
    kernel = null_space(generator)
    if kernel.shape[1] != 1:
        raise ConvergenceError("Generator kernel is not one-dimensional", {"kernel_dim": kernel.shape[1]})
    return _hermitize(_unvec(kernel[:, 0]))


def _slowest_rate(generator: np.ndarray) -> float:
    rates = np.abs(np.real(np.linalg.eigvals(generator)))
    scale = max(float(np.max(rates)), 1.0)
    nonzero = rates[rates > 1e-12 * scale]
    if nonzero.size == 0:
        raise ConvergenceError("Generator has no relaxing modes", {"rates": rates.tolist()})
    return float(np.min(nonzero))


def _integrated_steady_state(generator: np.ndarray) -> np.ndarray:
    tol = settings.tolerances
    rho = np.array([[0.3, 0.2 + 0.1j], [0.2 - 0.1j, 0.7]], dtype=complex)
    chunk = 1.0 / _slowest_rate(generator)

    def rhs(_t, y):
        return generator @ y

    change = math.inf
    for index in range(settings.lindblad_max_chunks):
        solution = solve_ivp(rhs, (0.0, chunk), _vec(rho), method="DOP853", rtol=1e-12, atol=1e-14)
        if not solution.success:
            raise ConvergenceError("Lindblad integration failed", {"chunk": index, "message": solution.message})

        # positivity along every accepted step
        for column in solution.y.T:
            step = _unvec(column)
            smallest = float(np.linalg.eigvalsh(0.5 * (step + step.conj().T))[0])
            if smallest < -tol.positivity:
                raise ConvergenceError("Integrated state lost positivity",
                                       {"chunk": index, "min_eigenvalue": smallest})

        nxt = _hermitize(_unvec(solution.y[:, -1]))
        diff = nxt - rho
        change = 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(0.5 * (diff + diff.conj().T)))))
        rho = nxt
        if change < tol.lindblad_convergence:
            logger.debug(f"Lindblad integration converged after {index + 1} chunks of length {chunk:.4g}")
            return rho

    raise ConvergenceError(
        "Lindblad integration did not reach a fixed point",
        {"chunks": settings.lindblad_max_chunks, "last_change": change, "chunk_length": chunk},
    )


def lindblad_steady_state_tls(params: LindbladParams, method: str = "integrate") -> DensityMatrix:
    """Stationary state of the master equation, by time integration or by a kernel solve."""
    generator = lindblad_generator(params)
    if method == "integrate":
        rho = _integrated_steady_state(generator)
    elif method == "nullspace":
        rho = _nullspace_steady_state(generator)
    else:
        raise DomainError(f"Unknown steady-state method: {method}")
    return DensityMatrix(matrix=rho)


def as_density_matrix(rho: Union[DensityMatrix, np.ndarray]) -> DensityMatrix:
    if isinstance(rho, DensityMatrix):
        return rho
    try:
        return DensityMatrix(matrix=np.asarray(rho))
    except ValidationError as e:
        raise DomainError(f"Not a density matrix: {e.errors()[0]['msg']}") from e


def von_neumann_entropy(rho: Union[DensityMatrix, np.ndarray]) -> float:
    eigenvalues = np.clip(np.linalg.eigvalsh(as_density_matrix(rho).matrix), 0.0, None)
    return float(np.sum(entr(eigenvalues)))


def energy_expectation(rho: Union[DensityMatrix, np.ndarray], hamiltonian: np.ndarray) -> float:
    rho = as_density_matrix(rho)
    hamiltonian = np.asarray(hamiltonian)
    if hamiltonian.shape != rho.matrix.shape:
        raise DomainError(f"Hamiltonian shape {hamiltonian.shape} does not match state dimension {rho.dim}")
    value = np.trace(rho.matrix @ hamiltonian)
    if abs(value.imag) > settings.tolerances.imag_residue * max(1.0, abs(value.real)):
        raise DomainError(f"Energy expectation has imaginary residue {value.imag}")
    return float(value.real)


def bosonic_entropy_from_N(N: float) -> float:
    """g(N) = (N+1) log(N+1) - N log N, the entropy of a thermal mode with mean occupancy N."""
    if not N >= 0:
        raise DomainError(f"Occupancy must be non-negative, got {N}")
    return float(xlogy(N + 1.0, N + 1.0) - xlogy(N, N))


# harmonic oscillator in a truncated Fock space

def ho_hamiltonian(omega: float, cutoff: int) -> np.ndarray:
    require_positive(omega=omega)
    return np.diag(omega * (np.arange(cutoff) + 0.5)).astype(complex)


def annihilation(cutoff: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, cutoff)), 1).astype(complex)


def _cutoff_for_decay(ratio: float) -> int:
    if ratio <= 0.0:
        return settings.min_cutoff
    levels = 2 * math.ceil(math.log(settings.tolerances.cutoff_tail) / math.log(ratio))
    return int(min(max(levels, settings.min_cutoff), settings.max_cutoff))


def choose_cutoff(omega: float, T: float, r: float) -> int:
    """Smallest Fock dimension whose squeezed-thermal tail falls below the cutoff tolerance.

    Fock populations of the state decay like lambda^k with
    lambda = (V - 1/2)/(V + 1/2), V = (n + 1/2) e^{2r} the stretched quadrature variance.
    """
    require_non_negative_squeeze(r)
    n = thermal_occupation(omega, T)
    variance = (n + 0.5) * math.exp(2.0 * r)
    cutoff = _cutoff_for_decay((variance - 0.5) / (variance + 0.5))
    logger.info(f"Fock cutoff {cutoff} for omega={omega}, T={T}, r={r}")
    return cutoff


def thermal_state_from_occupancy(N: float, cutoff: Optional[int] = None) -> DensityMatrix:
    """Diagonal thermal-form state with populations N^k/(N+1)^(k+1), renormalised on the cutoff."""
    if not N >= 0:
        raise DomainError(f"Occupancy must be non-negative, got {N}")
    ratio = N / (N + 1.0)
    dim = _cutoff_for_decay(ratio) if cutoff is None else cutoff
    populations = ratio ** np.arange(dim) / (N + 1.0)
    if populations[-1] > settings.tolerances.gibbs_tail:
        raise CutoffError(f"Cutoff {dim} leaves tail population {populations[-1]:.3e}; increase the cutoff")
    return DensityMatrix(matrix=np.diag(populations / populations.sum()).astype(complex))


def squeezed_thermal_state_ho(omega: float, T: float, r: float, theta: float = 0.0,
                              cutoff: Optional[int] = None) -> TruncatedState:
    """S(xi) rho_G S(xi)^dagger on a truncated Fock space, xi = r e^{i theta}."""
    require_positive(omega=omega, T=T)
    require_non_negative_squeeze(r)
    tol = settings.tolerances
    dim = choose_cutoff(omega, T, r) if cutoff is None else cutoff
    if dim < 2:
        raise CutoffError(f"Cutoff must be at least 2, got {dim}")

    x = omega / T
    gibbs = np.exp(-x * np.arange(dim)) * -math.expm1(-x)
    if gibbs[-1] > tol.gibbs_tail:
        raise CutoffError(f"Gibbs tail {gibbs[-1]:.3e} at cutoff {dim} exceeds {tol.gibbs_tail}; increase the cutoff")
    rho_gibbs = np.diag(gibbs / gibbs.sum()).astype(complex)

    a = annihilation(dim)
    xi = r * np.exp(1j * theta)
    squeeze = expm(0.5 * (np.conj(xi) * (a @ a) - xi * (a.conj().T @ a.conj().T)))
    unitarity_defect = float(np.max(np.abs(squeeze @ squeeze.conj().T - np.eye(dim))))
    if unitarity_defect > tol.unitarity:
        raise ConvergenceError("Truncated squeeze operator is not unitary",
                               {"cutoff": dim, "defect": unitarity_defect})

    rho = squeeze @ rho_gibbs @ squeeze.conj().T
    populations = np.real(np.diag(rho))
    tail = float(np.sum(populations[dim - max(dim // 8, 1):]))
    if tail > tol.squeezed_tail:
        raise CutoffError(f"Squeezed tail population {tail:.3e} at cutoff {dim} exceeds {tol.squeezed_tail}; "
                          f"increase the cutoff")

    return TruncatedState(
        rho=DensityMatrix(matrix=_hermitize(rho)),
        cutoff=dim,
        tail_population=tail,
        unitarity_defect=unitarity_defect,
    )
