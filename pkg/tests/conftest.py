import pytest
from schemas.cycle import CycleConfig, Medium
from schemas.reservoir import Reservoir


def _make_config(medium: str = "tls", omega1: float = 1.0, omega2: float = 5.0, T_h: float = 2.0,
                 T_c: float = 1.0, r: float = 0.0, phi: float = 0.0) -> CycleConfig:
    return CycleConfig(
        medium=Medium(medium),
        omega1=omega1,
        omega2=omega2,
        hot=Reservoir(temperature=T_h, squeeze_r=r, squeeze_phi=phi),
        cold=Reservoir.thermal(T_c),
    )


@pytest.fixture
def make_config():
    return _make_config
