import math

import numpy as np
import pytest

from configlab.errors import InfeasiblePacking, InvalidArgument
from configlab.fractal import IfsSpec, enumerate_ifs, ifs_with_dimension, sample_ifs
from oracles import CANTOR_DIM


def test_middle_thirds():
    spec = ifs_with_dimension(1, 2, CANTOR_DIM)
    assert spec.ratio == pytest.approx(1 / 3)
    assert spec.offsets.ravel() == pytest.approx([0.0, 2 / 3])


def test_similarity_dimension_in_the_plane():
    spec = ifs_with_dimension(2, 4, 1.5)
    assert spec.dim == pytest.approx(1.5)
    assert spec.ratio == pytest.approx(4 ** (-1 / 1.5))


def test_open_set_condition_violated():
    with pytest.raises(InfeasiblePacking):
        IfsSpec(1, 2, 0.45, np.array([[0.0], [0.4]]), math.log(2) / math.log(1 / 0.45))
    with pytest.raises(InfeasiblePacking):
        ifs_with_dimension(2, 5, 1.99)


def test_dimension_must_match_ratio():
    with pytest.raises(InvalidArgument):
        IfsSpec(1, 2, 1 / 3, np.array([[0.0], [2 / 3]]), 0.5)


def test_enumerate_counts_and_weights():
    spec = ifs_with_dimension(1, 2, CANTOR_DIM)
    mu = enumerate_ifs(spec, 5)
    assert mu.n == 32
    assert np.allclose(mu.weights, 1 / 32)
    assert mu.positional_error == pytest.approx(3.0**-5 / 2)


def test_samples_identical_across_workers():
    spec = ifs_with_dimension(2, 3, 1.2)
    a = sample_ifs(spec, 10, 40_000, seed=2, workers=1)
    b = sample_ifs(spec, 10, 40_000, seed=2, workers=4)
    assert np.array_equal(a.points, b.points)


def test_deeper_samples_refine_shallow_ones():
    spec = ifs_with_dimension(1, 3, 0.8)
    shallow = sample_ifs(spec, 6, 1000, seed=1)
    deep = sample_ifs(spec, 9, 1000, seed=1)
    assert np.max(np.abs(shallow.points - deep.points)) <= spec.ratio**6 / 2 + 1e-12


def test_samples_stay_in_cylinders():
    spec = ifs_with_dimension(1, 2, CANTOR_DIM)
    mu = sample_ifs(spec, 8, 5000, seed=0)
    # every point lies in the first-level image [0, 1/3] or [2/3, 1]
    x = mu.points[:, 0]
    assert np.all((x <= 1 / 3) | (x >= 2 / 3))
