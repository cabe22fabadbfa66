from fractions import Fraction

import numpy as np
import pytest

from configlab.errors import InvalidArgument, MaxKExceeded, Unsupported
from configlab.geometry import (
    QuadraticEnsemble,
    alp_max_k,
    build_quadratic_ensemble,
    ensemble_nonsingularity_check,
    radon_hurwitz,
)
from oracles import RADON_HURWITZ_1_16


def test_radon_hurwitz_table():
    assert [radon_hurwitz(n) for n in range(1, 17)] == RADON_HURWITZ_1_16


def test_radon_hurwitz_large_powers():
    assert radon_hurwitz(32) == 10
    assert radon_hurwitz(256) == 17
    assert radon_hurwitz(3 * 64) == 12


def test_radon_hurwitz_half_integers_are_zero():
    assert radon_hurwitz(Fraction(3, 2)) == 0
    assert radon_hurwitz(2.5) == 0


@pytest.mark.parametrize("bad", [0, -4, Fraction(1, 3), float("nan")])
def test_radon_hurwitz_rejects(bad):
    with pytest.raises(InvalidArgument):
        radon_hurwitz(bad)


@pytest.mark.parametrize("d, k", [(1, 1), (2, 2), (3, 1), (4, 3), (8, 5), (16, 9), (6, 2)])
def test_alp_max_k(d, k):
    assert alp_max_k(d) == k


@pytest.mark.parametrize("d, k", [(3, 1), (2, 2), (6, 2), (4, 3), (8, 3)])
def test_built_ensembles_are_nonsingular(d, k):
    ens = build_quadratic_ensemble(d, k)
    result = ensemble_nonsingularity_check(ens, trials=2000, seed=3)
    assert result.passed
    assert result.min_abs_det > 1e-6
    assert result.trials >= 2000


def test_quaternionic_determinant_is_norm_power():
    ens = build_quadratic_ensemble(4, 3)
    c = np.random.default_rng(11).standard_normal((10_000, 3))
    dets = np.linalg.det(np.einsum("nj,jab->nab", c, ens.matrices))
    assert np.max(np.abs(dets - np.sum(c**2, axis=1) ** 2)) < 1e-9


def test_ensemble_evaluates_forms():
    ens = build_quadratic_ensemble(4, 3)
    z = np.array([1.0, 2.0, 3.0, 4.0])
    x1, x2, x3, x4 = z
    expected = [x1**2 + x2**2 - x3**2 - x4**2, 2 * (x1 * x3 + x2 * x4), 2 * (x1 * x4 - x2 * x3)]
    assert np.allclose(ens(z), expected)


def test_too_many_forms():
    with pytest.raises(MaxKExceeded):
        build_quadratic_ensemble(3, 2)
    with pytest.raises(MaxKExceeded):
        QuadraticEnsemble(2, 3, np.zeros((3, 2, 2)))


def test_unsupported_construction():
    with pytest.raises(Unsupported):
        build_quadratic_ensemble(8, 5)


def test_singular_ensemble_is_caught():
    mats = np.array([np.diag([1.0, 0.0]), np.diag([0.0, 1.0])])
    result = ensemble_nonsingularity_check(QuadraticEnsemble(2, 2, mats), trials=500)
    assert not result.passed
    assert result.min_abs_det < 1e-9


def test_asymmetric_matrices_rejected():
    with pytest.raises(InvalidArgument):
        QuadraticEnsemble(2, 1, np.array([[[0.0, 1.0], [0.0, 0.0]]]))
