"""Tests for FFD, synthetic airfoils, coordinate files and metasurface fields."""

import math
import os
import tempfile

import numpy as np
import pytest

from gan_duf.errors import ConfigError, DegenerateGeometryError, ValidationError
from gan_duf.geometry import (
    AirfoilDesign,
    ControlLattice,
    LevelSetField,
    PerturbationConfig,
    airfoil_lattice,
    bernstein,
    deform_field,
    ffd_deform,
    gaussian_smooth,
    load_airfoil_file,
    motif_fields,
    naca_airfoil,
    parametric_coords,
    perturb_airfoil,
    perturb_lattice,
    perturb_metasurface,
    sample_synthetic_airfoil,
    scan_airfoil_files,
    synth_metasurface_nominal,
)


def _ellipse() -> np.ndarray:
    theta = np.linspace(0.0, 2.0 * np.pi, 192, endpoint=False)
    points = np.stack([0.5 + 0.5 * np.cos(theta), 0.1 * np.sin(theta)], axis=1)
    points[10] = (0.5, 0.0)
    return points


class TestBernstein:
    """Tests for the Bernstein polynomials."""

    def test_middle_value(self) -> None:
        """Test B_1^2(0.5) = 0.5."""
        assert bernstein(2, 1, 0.5) == pytest.approx(0.5)

    def test_endpoint(self) -> None:
        """Test B_0^7(0) = 1."""
        assert bernstein(7, 0, 0.0) == 1.0

    def test_partition_of_unity(self) -> None:
        """Test that the degree-7 basis sums to 1."""
        assert sum(bernstein(7, i, 0.37) for i in range(8)) == pytest.approx(1.0, abs=1e-14)

    def test_index_out_of_range(self) -> None:
        """Test that an index above the degree raises IndexError."""
        with pytest.raises(IndexError):
            bernstein(3, 4, 0.2)
        with pytest.raises(IndexError):
            bernstein(3, -1, 0.2)


class TestParametricCoords:
    """Tests for parametric coordinates."""

    def test_corners_and_center(self) -> None:
        """Test that box corners map to 0/1 and the center to 0.5."""
        design = AirfoilDesign(_ellipse())
        u, v = parametric_coords(design)
        assert u.min() == 0.0 and u.max() == 1.0
        assert v.min() == 0.0 and v.max() == 1.0
        assert u[10] == pytest.approx(0.5)
        assert v[10] == pytest.approx(0.5)

    def test_flat_plate_is_degenerate(self) -> None:
        """Test that a zero-height box raises DegenerateGeometryError."""
        points = np.zeros((192, 2))
        points[:, 0] = np.linspace(0.0, 1.0, 192)
        with pytest.raises(DegenerateGeometryError):
            parametric_coords(AirfoilDesign(points))

    def test_design_shape_validated(self) -> None:
        """Test that a design with the wrong point count is rejected."""
        with pytest.raises(ValidationError):
            AirfoilDesign(np.zeros((10, 2)))


class TestFfdDeform:
    """Tests for airfoil FFD deformation."""

    def test_identity_on_random_airfoils(self) -> None:
        """Test that the unperturbed lattice reproduces 100 random airfoils."""
        rng = np.random.default_rng(0)
        for _ in range(100):
            design, _ = sample_synthetic_airfoil(rng)
            out = ffd_deform(design, airfoil_lattice(design))
            assert np.max(np.abs(out.points - design.points)) <= 1e-12

    def test_translation_equivariance(self) -> None:
        """Test that translating the lattice translates every point."""
        design = naca_airfoil(0.02, 0.4, 0.12)
        out = ffd_deform(design, airfoil_lattice(design).translated((0.0, 0.25)))
        np.testing.assert_allclose(out.points, design.points + [0.0, 0.25], atol=1e-12, rtol=0)

    def test_single_control_point_matches_direct_sum(self) -> None:
        """Test raising one interior control point against a direct double sum."""
        design = naca_airfoil(0.03, 0.4, 0.1)
        lattice = airfoil_lattice(design)
        offsets = np.zeros_like(lattice.points)
        offsets[3, 1, 1] = 0.1
        moved = lattice.with_offsets(offsets)
        out = ffd_deform(design, moved)

        u, v = parametric_coords(design)
        for k in (0, 40, 96, 150):
            expected = np.zeros(2)
            for col in range(8):
                for row in range(3):
                    bu = math.comb(7, col) * u[k] ** col * (1 - u[k]) ** (7 - col)
                    bv = math.comb(2, row) * v[k] ** row * (1 - v[k]) ** (2 - row)
                    expected += bu * bv * moved.points[col, row]
            np.testing.assert_allclose(out.points[k], expected, atol=1e-12, rtol=0)

    def test_wrong_lattice_shape(self) -> None:
        """Test that a lattice other than 3x8 is a configuration error."""
        design = naca_airfoil(0.02, 0.4, 0.12)
        with pytest.raises(ConfigError):
            ffd_deform(design, ControlLattice.regular((0.0, 1.0, -0.1, 0.1), 12, 12))


class TestPerturbAirfoil:
    """Tests for simulated airfoil fabrication."""

    def test_deterministic_under_seed(self) -> None:
        """Test that a fixed seed yields identical fabrications."""
        design = naca_airfoil(0.02, 0.4, 0.12)
        cfg = PerturbationConfig(0.02)
        a = perturb_airfoil(design, cfg, np.random.default_rng(11))
        b = perturb_airfoil(design, cfg, np.random.default_rng(11))
        assert a.points.tobytes() == b.points.tobytes()

    def test_end_columns_fixed(self) -> None:
        """Test that the leftmost and rightmost lattice columns never move."""
        design = naca_airfoil(0.02, 0.4, 0.12)
        base = airfoil_lattice(design)
        moved = perturb_lattice(base, 0.02, np.random.default_rng(3))
        np.testing.assert_array_equal(moved.points[0], base.points[0])
        np.testing.assert_array_equal(moved.points[-1], base.points[-1])
        np.testing.assert_array_equal(moved.points[:, :, 0], base.points[:, :, 0])
        assert np.any(moved.points[1:-1, :, 1] != base.points[1:-1, :, 1])

    def test_vanishing_noise_converges_to_nominal(self) -> None:
        """Test that a tiny noise level leaves the design essentially unchanged."""
        design = naca_airfoil(0.02, 0.4, 0.12)
        out = perturb_airfoil(design, PerturbationConfig(1e-12), np.random.default_rng(0))
        assert np.max(np.abs(out.points - design.points)) < 1e-9

    def test_fabrications_stay_continuous(self) -> None:
        """Test that consecutive-point gaps stay within 3x the nominal maximum."""
        rng = np.random.default_rng(5)
        cfg = PerturbationConfig(0.02)
        for _ in range(20):
            design, _ = sample_synthetic_airfoil(rng)
            nominal_gap = np.linalg.norm(np.diff(design.points, axis=0), axis=1).max()
            fab = perturb_airfoil(design, cfg, rng)
            fab_gap = np.linalg.norm(np.diff(fab.points, axis=0), axis=1).max()
            assert fab_gap <= 3.0 * nominal_gap

    def test_invalid_noise(self) -> None:
        """Test that a non-positive noise level is rejected."""
        with pytest.raises(ConfigError):
            PerturbationConfig(0.0)
        with pytest.raises(ConfigError):
            PerturbationConfig(1.0, filter_std=-1.0)


class TestSyntheticAirfoils:
    """Tests for the four-digit family."""

    def test_shape_and_closure(self) -> None:
        """Test that sections have 192 points and start at the trailing edge."""
        design = naca_airfoil(0.04, 0.4, 0.12)
        assert design.points.shape == (192, 2)
        np.testing.assert_allclose(design.points[0], [1.0, 0.0], atol=1e-12)
        assert design.points[:, 0].min() == pytest.approx(0.0, abs=1e-3)

    def test_thickness_scales_section(self) -> None:
        """Test that a symmetric section's maximum thickness matches the parameter."""
        design = naca_airfoil(0.0, 0.4, 0.12)
        assert 2.0 * design.points[:, 1].max() == pytest.approx(0.12, abs=2e-3)

    def test_sampled_parameters_in_range(self) -> None:
        """Test that drawn parameters respect the documented ranges."""
        rng = np.random.default_rng(2)
        for _ in range(50):
            _, params = sample_synthetic_airfoil(rng)
            assert 0.0 <= params["camber"] <= 0.06
            assert 0.3 <= params["camber_position"] <= 0.6
            assert 0.06 <= params["thickness"] <= 0.16


class TestCoordinateFiles:
    """Tests for loading and scanning airfoil coordinate files."""

    def _write(self, path: str, points: np.ndarray) -> None:
        with open(path, "w", encoding="utf-8") as f:
            f.write("NACA 2412 test section\n")
            for x, y in points:
                f.write(f"{x:.8f} {y:.8f}\n")

    def test_load_resamples_and_normalizes(self) -> None:
        """Test that a long, scaled contour comes back as 192 unit-chord points."""
        source = naca_airfoil(0.02, 0.4, 0.12).points * 2.0 + [3.0, 0.0]
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "naca2412.dat")
            self._write(path, source)
            design = load_airfoil_file(path)

        assert design.points.shape == (192, 2)
        assert design.points[:, 0].min() == pytest.approx(0.0, abs=2e-3)
        assert design.points[:, 0].max() == pytest.approx(1.0, abs=1e-3)
        assert design.points[:, 1].max() == pytest.approx(
            naca_airfoil(0.02, 0.4, 0.12).points[:, 1].max(), abs=2e-3
        )

    def test_missing_file(self) -> None:
        """Test that a missing source file raises FileNotFoundError with the path."""
        with pytest.raises(FileNotFoundError, match="nowhere.dat"):
            load_airfoil_file("/nonexistent/nowhere.dat")

    def test_too_few_points(self) -> None:
        """Test that files without enough coordinate pairs are rejected."""
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "bad.dat")
            with open(path, "w", encoding="utf-8") as f:
                f.write("header\n1.0 0.0\n")
            with pytest.raises(ValidationError):
                load_airfoil_file(path)

    def test_scan_finds_sorted_coordinate_files(self) -> None:
        """Test recursive scanning for .dat/.txt files."""
        with tempfile.TemporaryDirectory() as tmpdir:
            os.makedirs(os.path.join(tmpdir, "sub"))
            for name in ("b.dat", "a.txt", "sub/c.DAT", "notes.md"):
                with open(os.path.join(tmpdir, name), "w", encoding="utf-8") as f:
                    f.write("")
            found = [os.path.relpath(p, tmpdir) for p in scan_airfoil_files(tmpdir)]
        assert found == ["a.txt", "b.dat", os.path.join("sub", "c.DAT")]

    def test_scan_missing_directory(self) -> None:
        """Test that scanning a missing directory raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            scan_airfoil_files("/nonexistent/airfoils")


class TestMetasurface:
    """Tests for level-set synthesis and fabrication."""

    def test_simplex_vertex_is_motif(self) -> None:
        """Test that weights (1, 0, 0) give the I-beam motif exactly."""
        field = synth_metasurface_nominal(np.array([1.0, 0.0, 0.0]))
        np.testing.assert_array_equal(field.values, motif_fields()[0])

    def test_linearity(self) -> None:
        """Test that weights (0.5, 0.5, 0) give the mean of two motifs."""
        motifs = motif_fields()
        field = synth_metasurface_nominal(np.array([0.5, 0.5, 0.0]))
        np.testing.assert_allclose(field.values, 0.5 * (motifs[0] + motifs[1]), atol=1e-15)

    def test_binary_image(self) -> None:
        """Test that thresholding produces a 64x64 0/1 image with solid material."""
        field = synth_metasurface_nominal(rng=np.random.default_rng(4))
        image = field.binary()
        assert image.shape == (64, 64)
        assert set(np.unique(image)) <= {0.0, 1.0}
        assert image.sum() > 0

    def test_motifs_have_distinct_topology(self) -> None:
        """Test that the ring has a hole at the cell center while the cross is solid there."""
        motifs = motif_fields()
        assert motifs[1][32, 32] > 0.0
        assert motifs[2][32, 32] < 0.0
        assert motifs[2][32, 13] > 0.0

    def test_invalid_weights(self) -> None:
        """Test that non-convex weights raise ValidationError."""
        with pytest.raises(ValidationError):
            synth_metasurface_nominal(np.array([0.7, 0.7, -0.4]))
        with pytest.raises(ValidationError):
            synth_metasurface_nominal(np.array([0.2, 0.2, 0.2]))

    def test_identity_path(self) -> None:
        """Test that zero offsets and no filtering leave the field unchanged."""
        field = synth_metasurface_nominal(np.array([0.2, 0.3, 0.5]))
        out = deform_field(field, np.zeros((12, 12, 2)), 0.0)
        assert np.max(np.abs(out.values - field.values)) <= 1e-12

    def test_constant_field_stays_constant(self) -> None:
        """Test that warping and filtering preserve a constant field."""
        field = LevelSetField(np.full((64, 64), 0.3))
        out = perturb_metasurface(field, PerturbationConfig(1.0, 2.0), np.random.default_rng(0))
        np.testing.assert_allclose(out.values, 0.3, atol=1e-12)

    def test_impulse_response_is_gaussian_kernel(self) -> None:
        """Test the filter against a directly built 2-D Gaussian kernel of std 2."""
        impulse = np.zeros((64, 64))
        impulse[32, 32] = 1.0
        out = gaussian_smooth(impulse, 2.0)

        offsets = np.arange(-8, 9)
        kernel_1d = np.exp(-0.5 * offsets**2 / 4.0)
        kernel_1d /= kernel_1d.sum()
        expected = np.zeros((64, 64))
        expected[24:41, 24:41] = np.outer(kernel_1d, kernel_1d)
        np.testing.assert_allclose(out, expected, atol=1e-12)

    def test_filter_preserves_mean(self) -> None:
        """Test that reflective filtering keeps the field mean."""
        values = np.random.default_rng(8).normal(size=(64, 64))
        assert gaussian_smooth(values, 2.0).mean() == pytest.approx(values.mean(), abs=1e-9)

    def test_fabrication_is_deterministic_and_different(self) -> None:
        """Test seeded fabrication of a unit cell."""
        field = synth_metasurface_nominal(np.array([0.0, 1.0, 0.0]))
        cfg = PerturbationConfig(1.0, 2.0)
        a = perturb_metasurface(field, cfg, np.random.default_rng(9))
        b = perturb_metasurface(field, cfg, np.random.default_rng(9))
        assert a.values.tobytes() == b.values.tobytes()
        assert not np.allclose(a.values, field.values)
