import csv
import math
from functools import reduce

import numpy as np
import pytest

import gallery
from errors import BudgetExceededError
from pointcloud import build_cloud, cloud_gap, code_images, export_csv, initial_cloud, refine

LEMMA_GENERATIONS = range(0, 5)


def _sorted_rows(coords, weights):
    """Rows of (coords..., weight) in a canonical order, for multiset comparison."""
    table = np.column_stack([coords, weights])
    keys = tuple(np.round(table[:, k], 10) for k in reversed(range(table.shape[1])))
    return table[np.lexsort(keys)]


# --- Examples ---

def test_initial_cantor_cloud(cantor):
    cloud = initial_cloud(cantor)
    assert cloud.generation == 0
    np.testing.assert_allclose(cloud.coords[:, 0], [0.0, 1.0], atol=1e-12)
    np.testing.assert_allclose(cloud.weights, [0.5, 0.5], atol=1e-15)
    assert [p.code for p in cloud.points] == [(0,), (1,)]


def test_initial_symmetric_cantor_cloud(sym_cantor):
    np.testing.assert_allclose(initial_cloud(sym_cantor).coords[:, 0], [0.0, 0.5, 1.0], atol=1e-12)


def test_initial_quarter_cantor_cloud(quarter_cantor):
    cloud = initial_cloud(quarter_cantor)
    np.testing.assert_allclose(cloud.coords, [[0, 0], [1, 0], [0, 1], [1, 1]], atol=1e-12)
    np.testing.assert_allclose(cloud.weights, [0.25] * 4, atol=1e-15)


def test_refine_cantor_once(cantor):
    cloud = refine(initial_cloud(cantor))
    assert cloud.generation == 1
    np.testing.assert_allclose(cloud.coords[:, 0], [0.0, 1 / 3, 2 / 3, 1.0], atol=1e-12)
    np.testing.assert_allclose(cloud.weights, [0.25] * 4, atol=1e-15)
    assert [p.code for p in cloud.points] == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_cantor_generation_two_keeps_generation_one(cantor):
    g1 = build_cloud(cantor, 1)
    g2 = refine(g1)
    assert g2.size == 8
    for x in g1.coords[:, 0]:
        assert np.min(np.abs(g2.coords[:, 0] - x)) <= 1e-12


def test_codes_are_lexicographic_and_indexable(sierpinski):
    cloud = build_cloud(sierpinski, 3)
    codes = [tuple(c) for c in cloud.codes.tolist()]
    assert codes == sorted(codes)
    assert len(set(codes)) == cloud.size == 3 ** 4
    assert cloud.index_of((0, 1, 2, 2)) == codes.index((0, 1, 2, 2))
    with pytest.raises(ValueError):
        cloud.index_of((0, 1))


def test_refine_over_budget_names_limit_and_request(cantor):
    cloud = build_cloud(cantor, 2)
    with pytest.raises(BudgetExceededError) as exc:
        refine(cloud, budget=10)
    assert exc.value.limit == 10
    assert exc.value.requested == 16
    assert "limit: 10" in str(exc.value) and "requested: 16" in str(exc.value)


def test_cloud_gap_values(cantor, sierpinski):
    r_up = cantor.geometry.diameter_up
    assert cloud_gap(initial_cloud(cantor)) == pytest.approx(r_up / 3, rel=1e-14)
    assert cloud_gap(build_cloud(cantor, 3)) == pytest.approx(r_up / 81, rel=1e-14)
    assert cloud_gap(build_cloud(cantor, 3)) == pytest.approx(0.0123, abs=1e-4)
    assert cloud_gap(build_cloud(sierpinski, 2)) == pytest.approx(0.008 * sierpinski.geometry.diameter_up, rel=1e-12)
    assert cloud_gap(build_cloud(sierpinski, 2)) == pytest.approx(0.008, rel=1e-3)


def test_coincident_points_are_flagged(cantor, touching_halves):
    assert not build_cloud(cantor, 3).coincident
    assert build_cloud(touching_halves, 1).coincident


def test_code_images_of_fixed_point_anchor(cantor):
    # Anchor 0 is the fixed point of map 0, so codes ending in 0 land on cloud points
    cloud = build_cloud(cantor, 3)
    images = code_images(cloud, np.array([0.0]))
    ends_in_zero = cloud.codes[:, -1] == 0
    np.testing.assert_allclose(images[ends_in_zero], cloud.coords[ends_in_zero], atol=1e-12)


def test_export_csv(tmp_path, sierpinski):
    cloud = build_cloud(sierpinski, 1)
    path = tmp_path / "cloud.csv"
    export_csv(cloud, path)
    with open(path, newline="", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["code", "x1", "x2", "weight"]
    assert len(rows) == 1 + 9
    assert rows[1][0] == "00"
    assert float(rows[6][1]) == cloud.coords[5, 0]


# --- Lemma suite over the whole catalog ---

@pytest.mark.parametrize("name", gallery.CATALOG_NAMES)
class TestCloudLemmas:

    def test_weights_are_normalized(self, name):
        cloud = initial_cloud(gallery.get(name).system)
        for g in LEMMA_GENERATIONS:
            assert cloud.total_weight() == pytest.approx(1.0, abs=1e-12)
            assert cloud.size == cloud.system.m ** (g + 1)
            if g < LEMMA_GENERATIONS[-1]:
                cloud = refine(cloud)

    def test_generations_are_nested(self, name):
        system = gallery.get(name).system
        prev = initial_cloud(system)
        for _ in LEMMA_GENERATIONS[1:]:
            cur = refine(prev)
            diff = np.abs(prev.coords[:, None, :] - cur.coords[None, :, :]).max(axis=-1)
            assert diff.min(axis=1).max() <= 1e-12
            prev = cur

    def test_markov_identity(self, name):
        system = gallery.get(name).system
        cloud = initial_cloud(system)
        for _ in LEMMA_GENERATIONS[1:]:
            refined = refine(cloud)
            pushed_coords = np.concatenate([sim(cloud.coords) for sim in system.maps])
            pushed_weights = np.concatenate([w * cloud.weights for w in system.cylinder_weights])
            np.testing.assert_allclose(
                _sorted_rows(refined.coords, refined.weights),
                _sorted_rows(pushed_coords, pushed_weights), atol=1e-12)
            cloud = refined

    def test_points_match_their_codes(self, name):
        system = gallery.get(name).system
        cloud = build_cloud(system, 3)
        s = system.dimension_s
        for p in cloud.points:
            x = system.fixed_points[p.code[-1]]
            for symbol in reversed(p.code):
                x = system.maps[symbol](x)
            np.testing.assert_allclose(p.coords, x, atol=1e-12)
            expected = reduce(lambda acc, j: acc * system.ratios[j] ** s, p.code, 1.0)
            assert p.weight == pytest.approx(expected, rel=1e-14)

    def test_cylinder_mass_matches_prefix(self, name):
        system = gallery.get(name).system
        cloud = build_cloud(system, 4)
        w = system.cylinder_weights
        for i in range(system.m):
            for j in range(system.m):
                mask = (cloud.codes[:, 0] == i) & (cloud.codes[:, 1] == j)
                assert math.fsum(cloud.weights[mask].tolist()) == pytest.approx(w[i] * w[j], abs=1e-14)

    def test_homogeneous_weights_are_exact(self, name):
        system = gallery.get(name).system
        if not system.is_homogeneous:
            pytest.skip("unequal ratios")
        cloud = initial_cloud(system)
        for g in LEMMA_GENERATIONS:
            np.testing.assert_allclose(cloud.weights, system.m ** -(g + 1), rtol=1e-14, atol=0)
            if g < LEMMA_GENERATIONS[-1]:
                cloud = refine(cloud)
