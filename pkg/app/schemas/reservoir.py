import math
from pydantic import BaseModel, Field, model_validator

TWO_PI = 2.0 * math.pi


class Reservoir(BaseModel):
    """Heat bath: temperature plus squeezing (r, phi). k_B = hbar = 1."""
    temperature: float = Field(gt=0)
    squeeze_r: float = Field(default=0.0, ge=0, le=100)
    squeeze_phi: float = Field(default=0.0, ge=0, lt=TWO_PI)

    @classmethod
    def thermal(cls, temperature: float) -> "Reservoir":
        return cls(temperature=temperature)

    @property
    def is_thermal(self) -> bool:
        return self.squeeze_r == 0.0


class Occupancy(BaseModel):
    n: float = Field(ge=0)
    N: float = Field(ge=0)
    M_mag: float = Field(ge=0)
    phi: float = 0.0

    @model_validator(mode='after')
    def check_squeezed_exceeds_thermal(self) -> 'Occupancy':
        if self.N < self.n:
            raise ValueError(f"Squeezed occupancy N={self.N} below thermal n={self.n}")
        return self


class SqueezeFactors(BaseModel):
    S_r: float = Field(gt=0, le=1)
    S_2r: float = Field(gt=0, le=1)


class GaussianOccupancy(BaseModel):
    # F = nu + 1/2 of the squeezed thermal oscillator
    F: float = Field(ge=1)
    n: float = Field(ge=0)
