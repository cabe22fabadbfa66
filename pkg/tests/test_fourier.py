import numpy as np
import pytest

from configlab.diagnostics import fourier_decay, fourier_transform, probe_directions
from configlab.errors import AliasLimit, InvalidArgument
from configlab.fractal import atom, circle_measure, uniform_measure
from oracles import CIRCLE_DECAY, INTERVAL_DECAY


def test_transform_of_interval_is_sinc():
    mu = uniform_measure(1, 20_000, layout="grid", box=(-0.5, 0.5))
    xi = np.array([[3.0], [10.0], [25.0]])
    expected = np.sin(xi[:, 0] / 2) / (xi[:, 0] / 2)
    assert np.allclose(fourier_transform(mu, xi), expected, atol=1e-6)


def test_transform_of_atom_is_a_phase():
    mu = atom([0.5, -1.0])
    values = fourier_transform(mu, np.array([[1.0, 2.0], [3.0, 0.0]]))
    assert np.allclose(np.abs(values), 1.0)
    assert values[0] == pytest.approx(np.exp(-1j * (0.5 - 2.0)))


def test_directions_include_axes():
    dirs = probe_directions(3, 8, seed=0)
    assert dirs.shape == (11, 3)
    assert np.allclose(np.linalg.norm(dirs, axis=1), 1.0)
    assert np.array_equal(dirs[-3:], np.eye(3))


def test_circle_decay():
    fit = fourier_decay(circle_measure(1000), 150.0)
    assert fit.exponent == pytest.approx(CIRCLE_DECAY, abs=0.1)


def test_interval_decay():
    fit = fourier_decay(uniform_measure(1, 4000, layout="grid"), 1000.0)
    assert fit.exponent == pytest.approx(INTERVAL_DECAY, abs=0.1)
    assert fit.max_modulus <= 1.0 + 1e-12


def test_worker_independent():
    mu = circle_measure(300)
    a = fourier_decay(mu, 40.0, workers=1)
    b = fourier_decay(mu, 40.0, workers=4)
    assert np.array_equal(a.envelope, b.envelope)


def test_alias_limit():
    mu = circle_measure(100)
    with pytest.raises(AliasLimit):
        fourier_decay(mu, 1.0 / (2 * mu.positional_error))


def test_argument_checks():
    with pytest.raises(InvalidArgument):
        fourier_decay(circle_measure(100), 10.0, n_directions=4)
    with pytest.raises(InvalidArgument):
        fourier_decay(atom([0.0, 0.0]), 10.0)
    with pytest.raises(InvalidArgument):
        fourier_decay(circle_measure(100), 3.0)
