import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import gallery
from errors import DegenerateSystemError, GeometryError, SystemValidationError
from ifs_core import (IFSystem, Similitude, check_ssc, default_geometry_depth, estimate_geometry,
                      fixed_point, similarity_dimension, solve_dimension)
from models import SscStatus
from pointcloud import build_cloud

_ratio = st.floats(min_value=0.01, max_value=0.95, allow_nan=False, allow_infinity=False)
_coord = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)


def _rotation(theta):
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


# --- Similitude ---

class TestSimilitude:

    def test_fixed_point_of_pure_contraction_is_origin(self):
        assert fixed_point(Similitude(1 / 3, [0.0]))[0] == pytest.approx(0.0, abs=1e-15)

    def test_fixed_point_of_right_cantor_map(self):
        assert fixed_point(Similitude(1 / 3, [2 / 3]))[0] == pytest.approx(1.0, abs=1e-12)

    def test_fixed_point_of_top_gasket_map(self):
        r = 0.2
        sim = Similitude(r, [(1 - r) / 2, (1 - r) * math.sqrt(3) / 2])
        x = fixed_point(sim)
        np.testing.assert_allclose(x, [0.5, math.sqrt(3) / 2], atol=1e-12)

    @given(r=_ratio, theta=st.floats(0, 2 * math.pi), bx=_coord, by=_coord)
    def test_fixed_point_is_fixed(self, r, theta, bx, by):
        sim = Similitude(r, [bx, by], _rotation(theta))
        x = fixed_point(sim)
        assert np.linalg.norm(sim(x) - x) <= 1e-12 * (1 + np.linalg.norm(x))

    @given(r=_ratio, theta=st.floats(0, 2 * math.pi),
           p=st.lists(_coord, min_size=4, max_size=4))
    def test_scales_distances_by_ratio(self, r, theta, p):
        sim = Similitude(r, [0.3, -1.2], _rotation(theta))
        x, y = np.array(p[:2]), np.array(p[2:])
        d = np.linalg.norm(x - y)
        assert np.linalg.norm(sim(x) - sim(y)) == pytest.approx(r * d, rel=1e-12, abs=1e-12)

    @pytest.mark.parametrize("ratio", [0.0, 1.0, 1.5, -0.2, float("nan"), float("inf")])
    def test_rejects_ratio_outside_unit_interval(self, ratio):
        with pytest.raises(SystemValidationError) as exc:
            Similitude(ratio, [0.0])
        assert exc.value.key_path == "ratio"

    def test_rejects_non_orthogonal_matrix(self):
        with pytest.raises(SystemValidationError) as exc:
            Similitude(0.5, [0.0, 0.0], [[1.0, 0.1], [0.0, 1.0]])
        assert exc.value.key_path == "orthogonal"

    def test_rejects_wrong_matrix_shape(self):
        with pytest.raises(SystemValidationError):
            Similitude(0.5, [0.0, 0.0], [[1.0, 0.0, 0.0]])

    def test_nearly_orthogonal_matrix_is_reorthonormalized(self):
        q = _rotation(0.7)
        q[0, 0] += 5e-13
        sim = Similitude(0.5, [0.0, 0.0], q)
        np.testing.assert_allclose(sim.orthogonal.T @ sim.orthogonal, np.eye(2), atol=1e-15)

    def test_reflection_is_accepted(self):
        sim = Similitude(0.5, [0.0, 0.0], [[1.0, 0.0], [0.0, -1.0]])
        np.testing.assert_allclose(sim(np.array([1.0, 1.0])), [0.5, -0.5])

    def test_is_immutable(self):
        sim = Similitude(0.5, [0.0])
        with pytest.raises(AttributeError):
            sim.ratio = 0.25
        with pytest.raises(ValueError):
            sim.translation[0] = 1.0


# --- Dimension ---

class TestDimension:

    def test_two_thirds_maps(self, cantor):
        assert similarity_dimension(cantor) == pytest.approx(math.log(2) / math.log(3), abs=1e-12)

    def test_three_thirds_maps_give_one(self):
        system = IFSystem.from_parameters([1 / 3] * 3, [[0.0], [1 / 3], [2 / 3]])
        assert similarity_dimension(system) == pytest.approx(1.0, abs=1e-12)

    def test_planar4_dimension(self, planar4):
        s = similarity_dimension(planar4)
        assert s == pytest.approx(math.log(math.sqrt(3) + 1) / math.log(20), abs=1e-12)
        assert s == pytest.approx(0.335495, abs=1e-6)

    def test_single_map_is_degenerate(self):
        with pytest.raises(DegenerateSystemError):
            solve_dimension([0.5])
        with pytest.raises(DegenerateSystemError):
            IFSystem([Similitude(0.5, [0.0])])

    @given(st.lists(_ratio, min_size=2, max_size=6))
    def test_residual_below_tolerance(self, ratios):
        s = solve_dimension(ratios)
        assert s >= 0
        assert abs(math.fsum(r ** s for r in ratios) - 1.0) <= 1e-12

    @given(m=st.integers(2, 8), r=_ratio)
    def test_homogeneous_closed_form(self, m, r):
        assert solve_dimension([r] * m) == pytest.approx(math.log(m) / -math.log(r), abs=1e-12)

    @pytest.mark.parametrize("name", gallery.CATALOG_NAMES)
    def test_gallery_residuals(self, name):
        system = gallery.get(name).system
        s = system.dimension_s
        assert abs(math.fsum(r ** s for r in system.ratios.tolist()) - 1.0) <= 1e-12
        assert system.r_max < 1


# --- System construction ---

class TestSystem:

    def test_dimension_mismatch_names_the_map(self):
        with pytest.raises(SystemValidationError) as exc:
            IFSystem([Similitude(0.5, [0.0]), Similitude(0.3, [0.0, 1.0])])
        assert exc.value.key_path == "maps[1]"

    def test_cylinder_weights_sum_to_one(self, sierpinski, planar4):
        for system in (sierpinski, planar4):
            assert math.fsum(system.cylinder_weights.tolist()) == pytest.approx(1.0, abs=1e-14)

    @pytest.mark.parametrize("name", gallery.CATALOG_NAMES)
    def test_enclosure_contains_deep_cloud(self, name):
        system = gallery.get(name).system
        c, rho = system.enclosure
        cloud = build_cloud(system, 3)
        assert np.all(np.linalg.norm(cloud.coords - c, axis=1) <= rho + 1e-12)

    def test_conjugate_moves_fixed_points(self, planar4):
        rot, shift = _rotation(1.1), np.array([3.0, -2.0])
        moved = planar4.conjugate(rot, shift)
        np.testing.assert_allclose(moved.fixed_points, planar4.fixed_points @ rot.T + shift, atol=1e-12)

    def test_scaled_scales_fixed_points(self, sierpinski):
        np.testing.assert_allclose(sierpinski.scaled(2.5).fixed_points, 2.5 * sierpinski.fixed_points, atol=1e-12)


# --- Geometry brackets ---

class TestGeometry:

    def test_cantor_brackets(self, cantor):
        geo = estimate_geometry(cantor, 6)
        assert geo.contains_diameter(1.0, slack=1e-12)
        assert geo.contains_gap(1 / 3, slack=1e-12)
        assert 0 < geo.diameter_low <= geo.diameter_up
        assert geo.depth_used == 6

    def test_sierpinski_diameter(self, sierpinski):
        assert estimate_geometry(sierpinski, 6).contains_diameter(1.0, slack=1e-12)

    @pytest.mark.parametrize("name,max_depth", [
        ("cantor-1-3", 8), ("sierpinski(1/5)", 5), ("planar4(1/400,1/20,1/400,1/20)", 4),
    ])
    def test_deeper_brackets_are_nested(self, name, max_depth):
        system = gallery.get(name).system
        prev = estimate_geometry(system, 1)
        for depth in range(2, max_depth + 1):
            cur = estimate_geometry(system, depth)
            assert cur.diameter_low >= prev.diameter_low - 1e-12
            assert cur.diameter_up <= prev.diameter_up + 1e-12
            assert cur.gap_low >= prev.gap_low - 1e-12
            assert cur.gap_up <= prev.gap_up + 1e-12
            prev = cur

    def test_rejects_shallow_depth(self):
        system = IFSystem.from_parameters([0.8, 0.1], [[0.0], [0.9]])
        with pytest.raises(GeometryError):
            estimate_geometry(system, 1)
        with pytest.raises(GeometryError):
            estimate_geometry(system, 0)

    def test_default_depth_respects_point_cap(self, cantor, quarter_cantor):
        assert default_geometry_depth(cantor) == 8
        assert default_geometry_depth(quarter_cantor) == 5


class TestSsc:

    def test_cantor_certified(self, cantor):
        assert check_ssc(cantor, 6) is SscStatus.CERTIFIED

    def test_touching_halves_not_certified(self, touching_halves):
        status = check_ssc(touching_halves, 6)
        assert status is not SscStatus.CERTIFIED
        assert status is SscStatus.VIOLATED
        assert estimate_geometry(touching_halves, 6).gap_low <= 0

    def test_planar4_certified_at_depth_four(self, planar4):
        assert check_ssc(planar4, 4) is SscStatus.CERTIFIED
        assert estimate_geometry(planar4, 4).gap_low > 0

    def test_status_is_cached_on_system(self, cantor):
        assert cantor.ssc_status is SscStatus.CERTIFIED
        assert cantor.geometry.gap_low > 0
