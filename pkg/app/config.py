from typing import List, Optional
from pydantic import BaseModel, Field, SecretStr, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class ToleranceConfig(BaseModel):
    # closed forms
    identity: float = 1e-12
    closed_form: float = 1e-10
    first_law: float = 1e-10
    thermal_reduction: float = 1e-12
    carnot_margin: float = 1e-12
    effective_temperature: float = 1e-9

    # oracle
    lindblad_trace_distance: float = 1e-8
    lindblad_convergence: float = 1e-12
    gamma_independence: float = 1e-9
    phase_independence: float = 1e-9
    ho_relative: float = 1e-8
    bosonic_entropy: float = 1e-8
    hermitian: float = 1e-12
    trace: float = 1e-12
    eigen_floor: float = 1e-12
    positivity: float = 1e-10
    imag_residue: float = 1e-12
    gibbs_tail: float = 1e-14
    squeezed_tail: float = 1e-9
    cutoff_tail: float = 1e-12
    cutoff_doubling: float = 1e-9
    unitarity: float = 1e-9

    # maximizer
    max_work_rel: float = 1e-10
    stationarity: float = 1e-6

    def scaled(self, factor: float) -> "ToleranceConfig":
        """Thresholds divided by factor: factor < 1 loosens every check, factor > 1 tightens it."""
        if factor <= 0:
            raise ValueError(f"Tolerance scale must be positive, got {factor}")
        return ToleranceConfig(**{k: v / factor for k, v in self.model_dump().items()})


class Settings(BaseSettings):
    # Security
    api_key: Optional[SecretStr] = Field(default=None, alias="API_KEY")

    log_level: str = "INFO"

    # Sweeps & output
    sweep_workers: int = 4
    float_digits: int = 12
    preset_squeeze_values: List[float] = [0.0, 0.25, 0.5, 0.75, 1.0]
    preset_ratio_series: List[float] = [2.0, 5.0, 10.0]

    # Oracle
    max_cutoff: int = 1024
    min_cutoff: int = 32
    lindblad_gamma: float = 1.0
    lindblad_max_chunks: int = 400

    # Max-work search: omega2 upper bound = factor * max(T_h, omega1)
    max_work_upper_factor: float = 40.0

    tolerances: ToleranceConfig = ToleranceConfig()

    model_config = SettingsConfigDict(
        env_prefix="STIRLING_", env_file=".env", env_nested_delimiter="__", extra="ignore"
    )

    @model_validator(mode='after')
    def check_consistency(self) -> 'Settings':
        if not self.preset_squeeze_values:
            raise ValueError("preset_squeeze_values must not be empty")
        if self.sweep_workers < 1:
            raise ValueError(f"sweep_workers must be >= 1, got {self.sweep_workers}")
        if self.max_cutoff < 8 or self.min_cutoff > self.max_cutoff:
            raise ValueError(f"Invalid cutoff bounds: min={self.min_cutoff}, max={self.max_cutoff}")
        return self

settings = Settings()
