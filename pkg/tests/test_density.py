import numpy as np
import pytest

from configlab.errors import InsufficientResolution, InvalidArgument, ParseError, ResolutionConflict
from configlab.fractal import SampledMeasure, atom, uniform_measure
from configlab.geometry import get_map
from configlab.measure import GridSpec, estimate_density, read_density
from configlab.measure.mollifier import normalization
from oracles import tent


def brute_density(cmap, mu1, mu2, eps, nodes):
    """Direct double sum over every pair and node."""
    x = np.repeat(mu1.points, mu2.n, axis=0)
    y = np.tile(mu2.points, (mu1.n, 1))
    w = np.repeat(mu1.weights, mu2.n) * np.tile(mu2.weights, mu1.n)
    phi = cmap.evaluate(x, y)
    r2 = np.sum(((phi[None, :, :] - nodes[:, None, :]) / eps) ** 2, axis=2)
    kern = np.where(r2 < 1, normalization(cmap.k) * np.clip(1 - r2, 0, None) ** 4, 0.0) / eps**cmap.k
    return kern @ w


@pytest.mark.parametrize("name, params, d", [("distance", {"d": 2}, 2), ("difference", {"d": 2}, 2), ("multi_distance", {"parts": (2, 2)}, 4)])
def test_matches_direct_sum(name, params, d):
    cmap = get_map(name, **params)
    mu1 = uniform_measure(d, 40, seed=1)
    mu2 = uniform_measure(d, 30, seed=2)
    est = estimate_density(cmap, mu1, mu2, eps=0.2, seed=0)
    assert est.pairs_used == 1200
    expected = brute_density(cmap, mu1, mu2, 0.2, est.grid.nodes())
    assert np.max(np.abs(est.values.reshape(-1) - expected)) < 1e-10


def test_tent_density_small():
    cmap = get_map("difference", d=1)
    mu = uniform_measure(1, 400, layout="grid")
    grid = GridSpec((-1.1,), (1.1,), (0.01,))
    est = estimate_density(cmap, mu, mu, eps=0.02, grid=grid)
    nodes = grid.nodes()[:, 0]
    assert np.max(np.abs(est.values - tent(nodes))) < 0.05
    assert est.riemann_sum() == pytest.approx(1.0, abs=0.01)
    assert est.stderr.max() < 0.05


def test_sampled_pairs_report_error_bars():
    cmap = get_map("difference", d=1)
    mu1 = uniform_measure(1, 2000, seed=1)
    mu2 = uniform_measure(1, 2000, seed=2)
    est = estimate_density(cmap, mu1, mu2, eps=0.05, pair_budget=200_000, seed=4)
    assert est.pairs_used == 200_000
    assert est.stderr.max() > 0
    value, err = est.at([0.0])
    assert abs(value - 1.0) < 5 * err + 0.05


def test_same_result_for_any_worker_count():
    cmap = get_map("distance", d=2)
    mu1 = uniform_measure(2, 3000, seed=1)
    mu2 = uniform_measure(2, 3000, seed=2)
    runs = [estimate_density(cmap, mu1, mu2, 0.05, pair_budget=300_000, seed=7, workers=w) for w in (1, 3)]
    assert np.array_equal(runs[0].values, runs[1].values)
    assert np.array_equal(runs[0].stderr, runs[1].stderr)


def test_singular_pairs_carry_no_mass():
    cmap = get_map("distance", d=2)
    est = estimate_density(cmap, atom([0.0, 0.0]), atom([0.0, 0.0]), 0.1, grid=GridSpec((-0.1,), (0.1,), (0.05,)))
    assert np.all(est.values == 0.0)


def test_grid_too_coarse():
    cmap = get_map("difference", d=1)
    mu = uniform_measure(1, 100, layout="grid")
    with pytest.raises(ResolutionConflict):
        estimate_density(cmap, mu, mu, 0.02, grid=GridSpec((-1.0,), (1.0,), (0.02,)))


def test_eps_below_positional_error():
    cmap = get_map("difference", d=1)
    mu = uniform_measure(1, 10, layout="grid")
    with pytest.raises(InsufficientResolution):
        estimate_density(cmap, mu, mu, 0.01)


def test_grid_dimension_checked():
    cmap = get_map("difference", d=2)
    mu = uniform_measure(2, 100, seed=0)
    with pytest.raises(InvalidArgument):
        estimate_density(cmap, mu, mu, 0.1, grid=GridSpec((-1.0,), (1.0,), (0.05,)))


def test_csv_round_trip(tmp_path):
    cmap = get_map("difference", d=2)
    mu = uniform_measure(2, 200, seed=3)
    est = estimate_density(cmap, mu, mu, 0.2)
    sidecar = est.write(tmp_path / "density.csv")
    assert sidecar.name == "density.meta.json"
    back = read_density(tmp_path / "density.csv")
    assert back.grid == est.grid
    assert np.array_equal(back.values, est.values)
    assert np.array_equal(back.stderr, est.stderr)
    assert back.metadata() == est.metadata()
    header = (tmp_path / "density.csv").read_text().splitlines()[0]
    assert header == "t1,t2,value,stderr"


def test_csv_damaged(tmp_path):
    cmap = get_map("difference", d=1)
    mu = uniform_measure(1, 200, layout="grid")
    path = tmp_path / "d.csv"
    estimate_density(cmap, mu, mu, 0.1).write(path)
    lines = path.read_text().splitlines()
    path.write_text("\n".join(lines[:-3]) + "\n")
    with pytest.raises(ParseError):
        read_density(path)
    path.write_text("x,value,stderr\n" + "\n".join(lines[1:]) + "\n")
    with pytest.raises(ParseError):
        read_density(path)


def test_grid_spec_layout():
    grid = GridSpec((0.0, -1.0), (1.0, 1.0), (0.5, 1.0))
    assert grid.shape == (3, 3)
    assert grid.cell_volume == 0.5
    assert grid.nodes()[:4].tolist() == [[0.0, -1.0], [0.0, 0.0], [0.0, 1.0], [0.5, -1.0]]
    assert GridSpec.from_dict(grid.describe()) == grid


def test_weighted_measure_shifts_density():
    cmap = get_map("difference", d=1)
    heavy = SampledMeasure(np.array([[0.0], [1.0]]), np.array([0.9, 0.1]))
    est = estimate_density(cmap, heavy, atom([0.0]), 0.1, grid=GridSpec((-0.5,), (1.5,), (0.05,)))
    assert est.at([0.0])[0] == pytest.approx(0.9 * normalization(1) / 0.1)
    assert est.at([1.0])[0] == pytest.approx(0.1 * normalization(1) / 0.1)
