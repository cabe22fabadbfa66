import math

import numpy as np
import pytest

from configlab.errors import InvalidArgument
from configlab.measure import Mollifier, normalization
from oracles import mollifier_mass


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_unit_mass(k):
    mol = Mollifier(k, 1.0)
    assert mollifier_mass(lambda r: mol.profile_sq(r * r), k) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_normalisation_constant(k):
    raw = mollifier_mass(lambda r: (1 - r * r) ** 4, k)
    assert normalization(k) == pytest.approx(1.0 / raw, rel=1e-12)


def test_rescaled_mass_one_dimension():
    mol = Mollifier(1, 0.05)
    t = np.linspace(-0.06, 0.06, 120_001)
    assert np.trapezoid(mol(t), t) == pytest.approx(1.0, abs=1e-8)


def test_support_and_peak():
    mol = Mollifier(2, 0.1)
    assert mol(np.array([0.1, 0.0])) == 0.0
    assert mol(np.array([0.0999, 0.0])) > 0.0
    assert mol(np.zeros(2)) == pytest.approx(normalization(2) / 0.01)
    assert mol.profile(np.array([[0.6, 0.8]]))[0] == 0.0


def test_radial_symmetry():
    mol = Mollifier(3, 0.5)
    u = np.array([0.1, -0.2, 0.3])
    assert mol(u) == pytest.approx(mol(u[::-1])) == pytest.approx(mol(-u))


@pytest.mark.parametrize("k, eps", [(0, 1.0), (5, 1.0), (1, 0.0), (2, -1.0)])
def test_invalid(k, eps):
    with pytest.raises(InvalidArgument):
        Mollifier(k, eps)


def test_closed_form_k1():
    # c_1 = Gamma(5.5) / (sqrt(pi) Gamma(5)) = 315/256
    assert normalization(1) == pytest.approx(315 / 256)
    assert math.isclose(normalization(2), 5 / math.pi)
