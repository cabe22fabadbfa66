import pytest

from configlab.diagnostics import dimension_sum, local_dimension
from configlab.errors import InvalidArgument
from configlab.fractal import falconer_lattice_set, ifs_with_dimension, sample_ifs, uniform_measure
from oracles import CANTOR_DIM


def test_cantor():
    mu = sample_ifs(ifs_with_dimension(1, 2, CANTOR_DIM), 20, 100_000, seed=1)
    assert local_dimension(mu) == pytest.approx(CANTOR_DIM, abs=0.05)


def test_plane_ifs():
    mu = sample_ifs(ifs_with_dimension(2, 4, 1.5), 12, 100_000, seed=1)
    assert local_dimension(mu) == pytest.approx(1.5, abs=0.1)


def test_cube():
    assert local_dimension(uniform_measure(3, 100_000, seed=2)) == pytest.approx(3.0, abs=0.15)


def test_single_stage_lattice_reads_below_a_line():
    # one stage is point-like below 1/q and line-like above it, so it reads between s and 1
    mu = falconer_lattice_set(1, 0.5, 10, 20_000, seed=0)
    assert 0.5 < local_dimension(mu) < 0.9


def test_sum():
    a = uniform_measure(1, 20_000, seed=1)
    b = uniform_measure(2, 20_000, seed=2)
    first, second = dimension_sum(a, b)
    assert first == pytest.approx(1.0, abs=0.05)
    assert second == pytest.approx(2.0, abs=0.05)


def test_needs_centres():
    with pytest.raises(InvalidArgument):
        local_dimension(uniform_measure(1, 1000), centers=10)
