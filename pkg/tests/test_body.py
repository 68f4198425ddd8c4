import numpy as np
import pytest

from cnpick.body import (
    body_disk_x,
    body_membership,
    body_union,
    unconstrained_body,
)
from cnpick.errors import DomainError, NotPsdError
from cnpick.feasibility import ball_membership, one_point_disk
from cnpick.linalg import DEFAULT_TOL, is_psd
from cnpick.pick import DataSet, pick_matrix

from conftest import disk_point, random_dataset, rng_for


class TestUnconstrainedBody:
    def test_zero_target_centered_disk(self):
        ball = unconstrained_body(DataSet.scalar([0.5], [0.0]), 0.3)
        disk = ball.as_disk()
        assert disk.center == pytest.approx(0.0)
        # pseudo-hyperbolic radius of the Schwarz-Pick bound
        assert disk.radius == pytest.approx(abs((0.3 - 0.5) / (1 - 0.15)), abs=1e-12)

    def test_constant_value_always_inside(self):
        d = DataSet.scalar([0.5, -0.2], [0.3, 0.3])
        ball = unconstrained_body(d, 0.1 + 0.2j)
        inside, _, _ = ball_membership(ball, np.array([[0.3]]))
        assert inside

    def test_rejects_node_point(self):
        with pytest.raises(DomainError):
            unconstrained_body(DataSet.scalar([0.5], [0.0]), 0.5)

    def test_rejects_singular_pick(self):
        # two nodes forced to the same target by a unimodular-like pair
        d = DataSet.scalar([0.1, -0.1], [0.8, -0.8])
        with pytest.raises(NotPsdError):
            unconstrained_body(d, 0.3)

    @pytest.mark.parametrize("seed", range(30))
    def test_membership_matches_augmented_pick(self, seed):
        rng = rng_for(30_000 + seed)
        d = random_dataset(seed, k=1, wmax=0.8)
        if not is_psd(pick_matrix(d))[1] > 1e-6:
            return
        z0 = disk_point(rng, 0.8, rmin=0.1)
        if np.min(np.abs(d.nodes - z0)) < 5e-2:
            return
        ball = unconstrained_body(d, z0)
        disk = ball.as_disk()
        for _ in range(12):
            w0 = disk.center + disk.radius * rng.uniform(0.2, 1.8) * np.exp(
                2j * np.pi * rng.uniform()
            )
            augmented = DataSet.scalar(
                np.append(d.nodes, z0), np.append(d.scalar_values(), w0)
            )
            verdict, margin = is_psd(pick_matrix(augmented))
            if abs(margin) < 10 * DEFAULT_TOL.psd_tol:
                continue
            assert verdict == disk.contains(w0)


class TestBodyDisk:
    def test_interior_parameter_produces_disk(self):
        disk0 = one_point_disk(0.5, 0.3)
        disk = body_disk_x(0.5, 0.3, 0.3, complex(disk0.center))
        assert disk is not None
        assert disk.radius > 0

    def test_infeasible_parameter_produces_nothing(self):
        disk0 = one_point_disk(0.5, 0.3)
        outside = disk0.center + 2.5 * disk0.radius
        assert body_disk_x(0.5, 0.3, 0.3, complex(outside)) is None

    def test_constant_function_value_inside_its_disk(self):
        # x = w1: the constant interpolant attains w0 = w1 at z0.
        disk = body_disk_x(0.5, 0.3, 0.2, 0.3)
        assert disk is not None
        assert disk.contains(0.3, 1e-9)

    @pytest.mark.parametrize("seed", range(15))
    def test_disk_points_pass_membership_matrix(self, seed):
        rng = rng_for(45_000 + seed)
        z1, w1, z0 = 0.5, 0.3, 0.3
        disk0 = one_point_disk(z1, w1)
        x = disk0.center + 0.9 * disk0.radius * disk_point(rng, 1.0)
        disk = body_disk_x(z1, w1, z0, complex(x))
        if disk is None:
            return
        for w0 in disk.boundary(12):
            inside, witness, _ = body_membership(z1, w1, z0, w0, hints=[complex(x)])
            assert inside


class TestBodyMembership:
    def test_constant_value(self):
        inside, witness, _ = body_membership(0.5, 0.3, 0.2, 0.3)
        assert inside
        assert abs(witness - 0.3) < 0.2

    def test_outside_unit_disk(self):
        inside, witness, _ = body_membership(0.5, 0.3, 0.2, 1.5)
        assert not inside and witness is None

    def test_far_value_out(self):
        inside, _, margin = body_membership(0.5, 0.3, 0.3, -0.95)
        assert not inside and margin < 0


class TestBodyUnion:
    def test_zero_data_contains_zero(self):
        report = body_union(0.5, 0.0, 0.3, x_resolution=8, w_resolution=16)
        assert report.covers(0.0, 1e-12)
        assert len(report.inner_disks) > 0

    def test_inner_subset_of_outer(self):
        report = body_union(0.5, 0.3, 0.3, x_resolution=8, w_resolution=24)
        outer = {w0: inside for w0, inside in report.outer_grid}
        for w0, inside in report.outer_grid:
            if report.covers(w0, -1e-9):
                assert inside

    def test_collapse_as_z0_approaches_node(self):
        report = body_union(0.5, 0.3, 0.5 + 1e-4, x_resolution=6, w_resolution=8)
        assert report.diameter() <= 1e-2

    def test_body_interpolates_between_x_disk_and_node_value(self):
        # Moving z0 from the node towards 0 grows the body monotonically
        # (at grid scale) from {w1} towards the feasible-parameter disk.
        diameters = [
            body_union(0.5, 0.2, z0, x_resolution=6, w_resolution=8).diameter()
            for z0 in (0.45, 0.3, 0.15, 0.05)
        ]
        assert diameters[0] <= diameters[1] <= diameters[2] <= diameters[3]
        x_disk_diameter = 2 * one_point_disk(0.5, 0.2).radius
        assert diameters[3] <= x_disk_diameter + 1e-9
        assert diameters[3] >= 0.8 * x_disk_diameter
