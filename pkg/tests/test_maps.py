from fractions import Fraction

import numpy as np
import pytest

from configlab.errors import DimensionMismatch, SingularConfiguration, UnknownMap, Unsupported
from configlab.geometry import (
    CATALOG,
    HeisPoint,
    catalog,
    eval_configuration,
    get_map,
    heis_inv,
    heis_mul,
    heis_phi,
    sample_parameter_space,
    threshold_for,
)


def test_thresholds_agree_with_catalog_data():
    for cmap in catalog():
        assert threshold_for(cmap) == cmap.threshold_sum, cmap.name
        assert cmap.alpha + cmap.beta == Fraction(cmap.d2 - cmap.k, 2)


@pytest.mark.parametrize(
    "name, params, expected",
    [
        ("distance", {"d": 2}, 3),
        ("distance", {"d": 3}, 4),
        ("difference", {"d": 1}, 2),
        ("multi_distance", {"parts": (2, 2)}, 7),
        ("multi_distance", {"parts": (3, 2)}, 9),
        ("heisenberg", {}, Fraction(16, 3)),
        ("quadratic", {"d": 4, "k": 3}, 7),
        ("line_line", {"d": 3}, 5),
    ],
)
def test_known_thresholds(name, params, expected):
    assert threshold_for(get_map(name, **params)) == expected


def test_unknown_map():
    with pytest.raises(UnknownMap):
        get_map("hexagon")


def test_every_catalog_entry_listed():
    assert {c.name for c in catalog()} == set(CATALOG)


@pytest.mark.parametrize("cmap", [c for c in catalog() if c.translation_type], ids=lambda c: c.name)
def test_translation_invariance(cmap):
    rng = np.random.default_rng(5)
    x = rng.uniform(-1, 1, (10_000, cmap.x_width))
    y = rng.uniform(-1, 1, (10_000, cmap.y_width))
    z = rng.uniform(-1, 1, (10_000, cmap.x_width))
    assert np.max(np.abs(cmap.evaluate(x + z, y + z) - cmap.evaluate(x, y))) < 1e-12


def test_heisenberg_right_invariance():
    rng = np.random.default_rng(6)
    x, y, z = (rng.uniform(-1, 1, (10_000, 3)) for _ in range(3))
    assert np.max(np.abs(heis_phi(heis_mul(x, z), heis_mul(y, z)) - heis_phi(x, y))) < 1e-12


def test_heisenberg_group_laws():
    rng = np.random.default_rng(7)
    x, y, z = (rng.uniform(-1, 1, (1000, 3)) for _ in range(3))
    assert np.allclose(heis_mul(heis_mul(x, y), z), heis_mul(x, heis_mul(y, z)), atol=1e-14)
    assert np.allclose(heis_mul(x, heis_inv(x)), 0.0, atol=1e-15)
    p = HeisPoint((1.0, 2.0), 3.0)
    q = HeisPoint((-1.0, 0.5), 0.0)
    assert (p * q).x3 == pytest.approx(3.0 + 0.5 * (2.0 * -1.0 - 1.0 * 0.5))
    assert (p * p.inverse()).as_array() == pytest.approx(np.zeros(3))


def test_heisenberg_phi_is_horizontal_distance_and_height():
    rng = np.random.default_rng(8)
    x, y = rng.uniform(-1, 1, (2, 500, 3))
    w = heis_mul(x, heis_inv(y))
    phi = heis_phi(x, y)
    assert np.allclose(phi[:, 0], np.hypot(w[:, 0], w[:, 1]))
    assert np.allclose(phi[:, 1], w[:, 2])


def test_eval_configuration_singular_set():
    cmap = get_map("distance", d=2)
    assert eval_configuration(cmap, [0.0, 0.0], [3.0, 4.0]) == pytest.approx([5.0])
    with pytest.raises(SingularConfiguration):
        eval_configuration(cmap, [1.0, 1.0], [1.0, 1.0])
    with pytest.raises(DimensionMismatch):
        eval_configuration(cmap, [1.0, 1.0, 0.0], [1.0, 1.0])


def test_ellipsoid_metric():
    cmap = get_map("distance", d=2, metric=[[2.0, 0.0], [0.0, 1.0]])
    assert cmap.evaluate([[0.0, 0.0]], [[1.0, 1.0]])[0, 0] == pytest.approx(np.sqrt(5.0))


def test_catalog_only_map():
    cmap = get_map("step_two", n=2, m=1)
    assert not cmap.implemented
    with pytest.raises(Unsupported):
        cmap.evaluate(np.zeros((1, 3)), np.zeros((1, 3)))


@pytest.mark.parametrize("cmap", [c for c in catalog() if c.implemented], ids=lambda c: c.name)
def test_sampled_parameter_spaces_evaluate(cmap):
    x = sample_parameter_space(cmap, "X", 50, seed=1)
    y = sample_parameter_space(cmap, "Y", 50, seed=2)
    out = cmap.evaluate(x, y)
    assert out.shape == (50, cmap.k)
    assert np.all(np.isfinite(out))


def test_line_point_map_matches_projection():
    cmap = get_map("line_point", d=3)
    x = np.array([[0.0, 0.0, 1.0, 1.0, 0.0, 0.0]])
    assert cmap.evaluate(x, [[4.0, 3.0, 9.0]])[0, 0] == pytest.approx(np.hypot(3.0, 3.0))
