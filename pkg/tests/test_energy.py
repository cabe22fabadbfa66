import numpy as np
import pytest

from configlab.diagnostics import energy_by_depth, energy_by_samples, energy_integral, energy_verdict, ifs_energies
from configlab.errors import AllPairsDegenerate, InvalidArgument
from configlab.fractal import SampledMeasure, atom, enumerate_ifs, ifs_with_dimension, uniform_measure
from oracles import CANTOR_DIM, UNIFORM_HALF_ENERGY


def test_two_atoms():
    mu = SampledMeasure(np.array([[0.0], [1.0]]), np.array([0.5, 0.5]))
    assert energy_integral(mu, 0.7) == pytest.approx(0.5)


def test_uniform_interval_half_energy():
    mu = uniform_measure(1, 2000, seed=3)
    assert energy_integral(mu, 0.5) == pytest.approx(UNIFORM_HALF_ENERGY, abs=0.05)


def test_sampled_pairs_agree_with_all_pairs():
    mu = uniform_measure(2, 3000, seed=1)
    exact = energy_integral(mu, 1.0, pair_budget=10**7)
    sampled = energy_integral(mu, 1.0, pair_budget=500_000, seed=2)
    assert sampled == pytest.approx(exact, rel=0.02)


def test_worker_independent():
    mu = uniform_measure(2, 3000, seed=1)
    assert energy_integral(mu, 1.0, 200_000, seed=5, workers=1) == energy_integral(mu, 1.0, 200_000, seed=5, workers=4)


@pytest.mark.parametrize("s", [0.3, 0.5, 0.9])
def test_depth_recursion_matches_direct_sum(s):
    spec = ifs_with_dimension(1, 2, CANTOR_DIM)
    energies = ifs_energies(spec, s, 8)
    for depth in (1, 4, 8):
        direct = energy_integral(enumerate_ifs(spec, depth), s, pair_budget=10**6)
        assert energies[depth] == pytest.approx(direct, rel=1e-10)


def test_cantor_verdicts():
    spec = ifs_with_dimension(1, 2, CANTOR_DIM)
    assert energy_by_depth(spec, 0.5).verdict == "converged"
    assert energy_by_depth(spec, 0.7).verdict == "diverging"


def test_cantor_energy_limit():
    # sum_{D >= 0} (r^-s/m)^D times the level-0 cross term is an upper bound on the limit
    spec = ifs_with_dimension(1, 2, CANTOR_DIM)
    report = energy_by_depth(spec, 0.5)
    assert 4.0 < report.estimates[-1] < 5.5
    assert list(report.estimates) == sorted(report.estimates)


@pytest.mark.parametrize(
    "estimates, verdict",
    [
        ([1.0, 1.3, 1.7, 2.3], "diverging"),
        ([1.0, 1.5, 1.6, 1.62], "converged"),
        ([1.0, 1.1, 1.3, 1.5], "inconclusive"),
        ([1.0], "inconclusive"),
        ([0.0, 1.0], "inconclusive"),
    ],
)
def test_verdict_rules(estimates, verdict):
    assert energy_verdict(estimates) == verdict


def test_by_samples_prefixes():
    mu = uniform_measure(1, 4000, seed=2)
    report = energy_by_samples(mu, 0.5, doublings=3)
    assert report.levels == (1000, 2000, 4000)
    assert report.verdict == "converged"
    assert report.describe()["kind"] == "samples"


def test_errors():
    with pytest.raises(AllPairsDegenerate):
        energy_integral(atom([0.0]), 0.5)
    with pytest.raises(InvalidArgument):
        energy_integral(uniform_measure(1, 10), 0.0)
    with pytest.raises(InvalidArgument):
        energy_by_samples(uniform_measure(1, 4), 0.5, doublings=4)
