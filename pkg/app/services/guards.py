from errors import DomainError
from schemas.reservoir import Reservoir


def require_positive(**values: float) -> None:
    for name, value in values.items():
        if not value > 0:
            raise DomainError(f"{name} must be positive, got {value}")


def require_non_negative_squeeze(r: float) -> None:
    if r < 0:
        raise DomainError(f"squeeze parameter must be non-negative, got {r}")


def require_thermal(reservoir: Reservoir) -> None:
    if not reservoir.is_thermal:
        raise DomainError(f"Cold bath must be thermal, got squeeze_r={reservoir.squeeze_r}")
