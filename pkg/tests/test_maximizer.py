import pytest

from errors import UsageError
from services.maximizer import default_omega2_bounds, golden_section_maximize, numeric_max_work


def test_golden_section_interior_maximum():
    result = golden_section_maximize(lambda x: -(x - 2.0) ** 2 + 3.0, 0.0, 5.0)
    assert result.x == pytest.approx(2.0, abs=1e-6)
    assert result.value == pytest.approx(3.0, abs=1e-12)
    assert not result.at_boundary
    assert result.iterations > 10


def test_golden_section_monotone_objective_hits_boundary():
    increasing = golden_section_maximize(lambda x: x, 1.0, 3.0)
    assert increasing.at_boundary
    assert increasing.x == 3.0
    decreasing = golden_section_maximize(lambda x: -x, 1.0, 3.0)
    assert decreasing.at_boundary
    assert decreasing.x == 1.0


def test_golden_section_is_deterministic():
    f = lambda x: -(x - 0.3) ** 4
    assert golden_section_maximize(f, -1.0, 1.0) == golden_section_maximize(f, -1.0, 1.0)


@pytest.mark.parametrize("lower,upper", [(1.0, 1.0), (2.0, 1.0), (0.0, float("inf"))])
def test_golden_section_rejects_bad_bracket(lower, upper):
    with pytest.raises(UsageError):
        golden_section_maximize(lambda x: x, lower, upper)


def test_default_bounds(make_config):
    assert default_omega2_bounds(make_config(omega1=1.0, T_h=2.0)) == (1.0, 80.0)


def test_numeric_max_work_unsqueezed_tls_runs_to_the_boundary(make_config):
    # at r = 0 the total work keeps rising with omega2
    result = numeric_max_work(make_config(r=0.0), upper=8.0)
    assert result.at_boundary
    assert result.omega2_star == 8.0
    assert result.W_star > 0.0
    assert result.eta is not None


def test_numeric_max_work_rejects_low_bound(make_config):
    with pytest.raises(UsageError):
        numeric_max_work(make_config(omega1=1.0), lower=0.5)
