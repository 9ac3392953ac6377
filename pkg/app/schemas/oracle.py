import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator
from config import settings
from schemas.reservoir import Reservoir


class DensityMatrix(BaseModel):
    """Dense Hermitian, unit-trace, positive semidefinite matrix."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    matrix: np.ndarray

    @field_validator('matrix')
    @classmethod
    def check_density_matrix(cls, value: np.ndarray) -> np.ndarray:
        tol = settings.tolerances
        rho = np.asarray(value, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] == 0:
            raise ValueError(f"Density matrix must be square and non-empty, got shape {rho.shape}")
        if np.max(np.abs(rho - rho.conj().T)) > tol.hermitian:
            raise ValueError("Density matrix is not Hermitian")
        trace = np.trace(rho)
        if abs(trace - 1.0) > tol.trace:
            raise ValueError(f"Density matrix trace is {trace}, expected 1")
        smallest = np.linalg.eigvalsh(rho)[0]
        if smallest < -tol.eigen_floor:
            raise ValueError(f"Density matrix has negative eigenvalue {smallest}")
        return rho

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def populations(self) -> np.ndarray:
        return np.real(np.diag(self.matrix))


class LindbladParams(BaseModel):
    gamma: float = Field(default=1.0, gt=0)
    reservoir: Reservoir
    omega: float = Field(gt=0)


class TruncatedState(BaseModel):
    rho: DensityMatrix
    cutoff: int
    # population in the top eighth of the Fock space after squeezing
    tail_population: float
    unitarity_defect: float
