import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from iho.errors import DomainError, GridMismatchError
from iho.fields import GridSpec, WaveField, check_same_grid, derivative, inner_product, l2_norm, moments


def _gauss(g, x0=0.0, s=1.0, k=0.0):
    x = g.x
    return (2 * np.pi * s * s) ** -0.25 * np.exp(-((x - x0) ** 2) / (4 * s * s) + 1j * k * x)


def test_grid_defaults_and_spacing():
    g = GridSpec()
    assert (g.x_min, g.x_max, g.n_points) == (-40.0, 40.0, 8192)
    assert g.x[0] == -40.0 and g.x[-1] == 40.0
    assert g.h == pytest.approx(80 / 8191)
    assert GridSpec.symmetric(5, 101).to_dict() == {"x_min": -5.0, "x_max": 5.0, "n_points": 101}


@pytest.mark.parametrize("args", [(1.0, 0.0, 100), (0.0, 1.0, 8), (0.0, 1.0, 100.5)])
def test_grid_validation(args):
    with pytest.raises(DomainError):
        GridSpec(*args)


def test_field_is_read_only_and_validated():
    g = GridSpec(-5, 5, 101)
    f = WaveField(g, _gauss(g))
    with pytest.raises(ValueError):
        f.values[0] = 1.0
    with pytest.raises(GridMismatchError):
        WaveField(g, np.zeros(100))
    with pytest.raises(DomainError):
        WaveField(g, np.full(101, np.nan))


def test_gaussian_norm_and_moments():
    g = GridSpec(-20, 20, 2001)
    f = WaveField(g, _gauss(g, x0=1.5, s=0.8, k=2.0))
    assert f.norm() == pytest.approx(1.0, abs=1e-12)
    mean, width = moments(f)
    assert mean == pytest.approx(1.5, abs=1e-12)
    assert width == pytest.approx(0.8, abs=1e-12)
    assert f.replace(values=3 * f.values).normalized().norm() == pytest.approx(1.0, abs=1e-14)


def test_inner_product_and_mismatch():
    g = GridSpec(-20, 20, 2001)
    a = WaveField(g, _gauss(g))
    b = WaveField(g, _gauss(g, x0=2.0))
    # overlap of two unit Gaussians displaced by 2 (s = 1): exp(-d**2 / 8)
    assert inner_product(a, b) == pytest.approx(np.exp(-0.5), abs=1e-12)
    with pytest.raises(GridMismatchError):
        inner_product(a, WaveField(GridSpec(-20, 20, 2003), _gauss(GridSpec(-20, 20, 2003))))
    with pytest.raises(GridMismatchError):
        check_same_grid(a, b.replace(t=1.0), same_time=True)
    assert check_same_grid(a, b) == g


def test_csv_round_trip(tmp_path):
    g = GridSpec(-7, 3, 257)
    rng = np.random.default_rng(3)
    v = rng.normal(size=257) + 1j * rng.normal(size=257)
    f = WaveField(g, v, t=0.123456789)
    path = tmp_path / "f.csv"
    f.to_csv(path, {"kind": "test"})
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# {") and lines[1] == "x,re,im"
    back = WaveField.from_csv(path)
    assert back.grid == g and back.t == f.t
    assert np.max(np.abs(back.values - v)) <= 1e-15 * np.max(np.abs(v))


@pytest.mark.parametrize("method,tol", [("fd4", 1e-6), ("spectral", 5e-11)])
def test_derivatives_of_gaussian(method, tol):
    g = GridSpec(-20, 20, 2001)
    x = g.x
    f = np.exp(-x * x / 2)
    assert np.max(np.abs(derivative(f, g.h, 1, method) + x * f)) < tol
    assert np.max(np.abs(derivative(f, g.h, 2, method) - (x * x - 1) * f)) < tol


def test_derivative_options():
    with pytest.raises(ValueError):
        derivative(np.ones(10), 0.1, order=3)
    with pytest.raises(ValueError):
        derivative(np.ones(10), 0.1, method="nope")


@settings(max_examples=40, deadline=None)
@given(st.floats(-3, 3), st.floats(0.5, 2.0), st.floats(-3, 3))
def test_norm_is_phase_and_shift_invariant(x0, s, k):
    g = GridSpec(-30, 30, 3001)
    v = _gauss(g, x0, s, k)
    assert l2_norm(v, g) == pytest.approx(1.0, abs=1e-10)
    assert l2_norm(v * np.exp(1j * 0.7), g) == pytest.approx(l2_norm(v, g), rel=1e-14)
