import numpy as np
import pytest

from cnpick.errors import DegenerateDataError, DomainError, NotPsdError
from cnpick.feasibility import (
    FEASIBLE,
    INFEASIBLE,
    UNDETERMINED,
    MatrixBall,
    ball_membership,
    ball_sample,
    ball_unstructured,
    conjugation_diagnostic,
    lambda_alt,
    one_point_disk,
    pencil_build,
    pencil_from_parts,
    scalar_delta,
    scalar_feasible_x,
    search_lambda,
    search_x_grid,
)
from cnpick.kernels import necessity_scan
from cnpick.linalg import DEFAULT_TOL, hermitian_part, is_psd, operator_norm
from cnpick.pick import (
    BlaschkeSpec,
    DataSet,
    aux_matrices,
    constrained_pick_z2_quadratic,
    pick_matrix,
)
from cnpick.interpolant import generate_feasible

from conftest import random_dataset, rng_for

INFEASIBLE_DATA = DataSet.scalar([0.3, -0.3], [0.3, -0.3])


def criterion_matrix(pencil, xt):
    """The LMI matrix at a candidate parameter (test-side assembler)."""
    top = pencil.e_tilde + pencil.w_tilde @ xt.conj().T
    gap = hermitian_part(np.eye(xt.shape[0]) - xt @ xt.conj().T)
    return np.block([[pencil.p, top], [top.conj().T, gap]])


def pd_pencil(seed, k=1, n=None):
    """Random data whose Pick matrix is safely positive definite."""
    for offset in range(40):
        d = random_dataset(seed + 131 * offset, n=n, k=k, wmax=0.55)
        pencil = pencil_build(d)
        if pencil.p_is_pd and np.isfinite(pencil.m_cond) and pencil.m_cond < 1e10:
            return d, pencil
    raise AssertionError("could not find a usable pencil")


class TestPencil:
    def test_zero_targets_identity_pick(self):
        d = DataSet.scalar([0.5, -0.5], [0.0, 0.0])
        pencil = pencil_build(d)
        # With Wt = 0 the pivot is block diagonal: [I - Et* P^-1 Et, -I].
        a = pencil.e_tilde.shape[1]
        assert np.allclose(pencil.m[a:, :a], 0)
        assert np.allclose(pencil.m[a:, a:], -np.eye(a))

    def test_literal_identity_pick_pivot(self):
        rng = rng_for(0)
        et = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
        pencil = pencil_from_parts(np.eye(3), et, np.zeros((3, 2)))
        expected = np.block(
            [
                [np.eye(2) - et.conj().T @ et, np.zeros((2, 2))],
                [np.zeros((2, 2)), -np.eye(2)],
            ]
        )
        assert np.allclose(pencil.m, expected)

    @pytest.mark.parametrize("seed", range(30))
    def test_lambda_two_forms_agree(self, seed):
        _, pencil = pd_pencil(seed, k=int(rng_for(seed).integers(1, 3)))
        assert np.allclose(pencil.lam, lambda_alt(pencil), atol=DEFAULT_TOL.residual_tol)

    @pytest.mark.parametrize("seed", range(15))
    def test_pivot_corner_negative_definite(self, seed):
        _, pencil = pd_pencil(seed + 50)
        a = pencil.e_tilde.shape[1]
        ok, _ = is_psd(-pencil.m[a:, a:])
        assert ok

    def test_indefinite_pick_refuses_ball(self):
        d = DataSet.scalar([0.1, -0.1], [0.8, -0.8])
        pencil = pencil_build(d)
        assert not pencil.p_is_pd
        outcome = ball_unstructured(pencil)
        assert outcome.status == UNDETERMINED


class TestBall:
    def test_trivial_pencil_full_ball(self):
        pencil = pencil_from_parts(np.eye(2), np.zeros((2, 2)), np.zeros((2, 2)))
        outcome = ball_unstructured(pencil)
        assert outcome.status == FEASIBLE
        assert np.allclose(outcome.ball.center, 0)
        assert np.allclose(outcome.ball.left, np.eye(2))
        assert np.allclose(outcome.ball.right, np.eye(2))

    def test_center_feasible(self):
        _, pencil = pd_pencil(3)
        outcome = ball_unstructured(pencil)
        assert outcome.status == FEASIBLE
        assert is_psd(criterion_matrix(pencil, outcome.ball.center))[0]

    def test_membership_of_center_and_boundary(self):
        _, pencil = pd_pencil(7)
        ball = ball_unstructured(pencil).ball
        inside, k, norm = ball_membership(ball, ball.center)
        assert inside and norm < 1e-12 and np.allclose(k, 0)
        boundary = ball_sample(ball, np.eye(ball.center.shape[0]))
        inside, _, norm = ball_membership(ball, boundary)
        assert inside and norm == pytest.approx(1.0, abs=1e-9)

    def test_far_point_outside(self):
        _, pencil = pd_pencil(9)
        ball = ball_unstructured(pencil).ball
        scale = 10 * (operator_norm(ball.center) + operator_norm(ball.left) + operator_norm(ball.right) + 1)
        inside, _, _ = ball_membership(ball, ball.center + scale * np.eye(ball.center.shape[0]))
        assert not inside

    def test_membership_requires_pd_radii(self):
        ball = MatrixBall(np.zeros((1, 1)), np.zeros((1, 1)), np.eye(1))
        with pytest.raises(NotPsdError):
            ball_membership(ball, np.zeros((1, 1)))

    @pytest.mark.parametrize("seed", range(40))
    def test_two_sided_membership(self, seed):
        rng = rng_for(90_000 + seed)
        k = int(rng.integers(1, 3))
        _, pencil = pd_pencil(seed, k=k)
        outcome = ball_unstructured(pencil)
        assert outcome.status == FEASIBLE
        ball = outcome.ball
        dim = ball.center.shape[0]
        for _ in range(6):
            k0 = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
            k0 *= rng.uniform(0.3, 1.7) / operator_norm(k0)
            xt = ball_sample(ball, k0)
            verdict, margin = is_psd(criterion_matrix(pencil, xt))
            if abs(margin) < 10 * DEFAULT_TOL.psd_tol:
                continue
            assert verdict == (operator_norm(k0) <= 1.0)
            # pull-back recovers the contraction parameter
            _, k_back, norm = ball_membership(ball, xt)
            assert norm == pytest.approx(operator_norm(k0), rel=1e-8, abs=1e-10)


class TestScalarRoute:
    def test_delta_fixture(self):
        d = DataSet.scalar([0.5], [0.5])
        delta, delta_tilde = scalar_delta(d)
        assert delta[0, 0].real == pytest.approx(1.3125)
        prefactor = (0.25 * (1 - 0.25) / (1 - 0.25 * 0.0625)) ** 2
        assert delta_tilde[0, 0].real == pytest.approx(prefactor * 1.3125)

    def test_zero_targets_delta_is_pick(self):
        d = DataSet.scalar([0.5, -0.4], [0.0, 0.0])
        delta, delta_tilde = scalar_delta(d)
        p = pick_matrix(d)
        aux = aux_matrices(d)
        assert np.allclose(delta, p)
        expected = p - aux.e @ aux.e.conj().T - aux.z @ aux.e @ aux.e.conj().T @ aux.z.conj().T
        assert np.allclose(delta_tilde, expected)

    def test_disk_center_feasible_offset_not(self):
        d = DataSet.scalar([0.5], [0.5])
        deltas = scalar_delta(d)
        ok, _ = scalar_feasible_x(d, 0.476190, deltas)
        assert ok
        bad, _ = scalar_feasible_x(d, 0.476190 + 0.25, deltas)
        assert not bad

    def test_constant_data_constant_witness(self):
        d = DataSet.scalar([0.2, -0.4, 0.5j], [0.3 - 0.1j] * 3)
        ok, _ = scalar_feasible_x(d, 0.3 - 0.1j)
        assert ok

    def test_rejects_big_x(self):
        with pytest.raises(DomainError):
            scalar_feasible_x(DataSet.scalar([0.5], [0.5]), 1.0)

    @pytest.mark.parametrize("seed", range(500))
    def test_matches_quadratic_builder(self, seed):
        rng = rng_for(200_000 + seed)
        d = random_dataset(seed, k=1, wmax=0.85)
        try:
            deltas = scalar_delta(d)
        except Exception:
            return
        if not is_psd(deltas[0])[0] or np.linalg.eigvalsh(hermitian_part(deltas[0]))[0] < 1e-8:
            return
        x = rng.uniform(0, 0.95) * np.exp(2j * np.pi * rng.uniform())
        via_delta, m1 = scalar_feasible_x(d, x, deltas)
        via_pick, m2 = is_psd(constrained_pick_z2_quadratic(d, x))
        if min(abs(m1), abs(m2)) > 10 * DEFAULT_TOL.psd_tol:
            assert via_delta == via_pick


class TestOnePointDisk:
    def test_documented_fixture(self):
        disk = one_point_disk(0.5, 0.5)
        assert disk.center == pytest.approx(10.0 / 21.0, abs=1e-15)
        assert disk.radius == pytest.approx(4.0 / 21.0, abs=1e-15)

    def test_zero_target(self):
        disk = one_point_disk(0.5, 0.0)
        assert disk.center == 0
        assert disk.radius == pytest.approx(0.25)

    def test_large_target_small_disk(self):
        disk = one_point_disk(0.5, 0.9)
        assert disk.center == pytest.approx(0.888744, abs=1e-5)
        assert disk.radius == pytest.approx(0.050033, abs=1e-5)

    def test_grid_agreement(self):
        disk = one_point_disk(0.5, 0.5)
        d = DataSet.scalar([0.5], [0.5])
        side = np.linspace(-0.99, 0.99, 41)
        for re in side:
            for im in side[::4]:
                x = complex(re, im)
                verdict, margin = is_psd(constrained_pick_z2_quadratic(d, x))
                if abs(margin) > 10 * DEFAULT_TOL.psd_tol:
                    assert verdict == disk.contains(x)

    @pytest.mark.parametrize("seed", range(1000))
    def test_disk_inside_unit_disk(self, seed):
        rng = rng_for(300_000 + seed)
        z1 = rng.uniform(0.05, 0.95) * np.exp(2j * np.pi * rng.uniform())
        w1 = rng.uniform(0.0, 0.97) * np.exp(2j * np.pi * rng.uniform())
        disk = one_point_disk(z1, w1)
        assert 1.0 - abs(disk.center) - disk.radius > 0

    def test_boundary_target_degenerate(self):
        with pytest.raises(DegenerateDataError):
            one_point_disk(0.5, np.exp(0.4j))

    def test_rejects_origin_node(self):
        with pytest.raises(DomainError):
            one_point_disk(0.0, 0.5)


class TestSearch:
    def test_one_point_feasible_witness_in_disk(self):
        d = DataSet.scalar([0.5], [0.5])
        report = search_x_grid(d, resolution=48)
        assert report.status == FEASIBLE
        assert one_point_disk(0.5, 0.5).contains(complex(report.witness_x[0, 0]), 1e-9)

    def test_constant_data_feasible(self):
        d = DataSet.scalar([0.2, -0.3, 0.4j], [0.25 + 0.1j] * 3)
        report = search_x_grid(d, resolution=32)
        assert report.status == FEASIBLE
        assert abs(complex(report.witness_x[0, 0]) - (0.25 + 0.1j)) < 0.15

    def test_documented_gap_instance(self):
        assert is_psd(pick_matrix(INFEASIBLE_DATA))[0]
        report = search_x_grid(INFEASIBLE_DATA, resolution=200, refine=2)
        assert report.status == INFEASIBLE
        assert report.grid_stats["uniform_infeasible"]
        assert report.margin < -1e-3

    def test_undetermined_below_resolution_gate(self):
        report = search_x_grid(INFEASIBLE_DATA, resolution=64, refine=2)
        assert report.status == UNDETERMINED

    def test_lambda_one_point_target_witness(self):
        d = DataSet.scalar([0.5], [0.3 + 0.2j])
        report = search_lambda(d, resolution=32)
        assert report.status == FEASIBLE

    def test_lambda_documented_gap(self):
        report = search_lambda(INFEASIBLE_DATA, resolution=200, refine=2)
        assert report.status == INFEASIBLE

    def test_overlap_routes(self):
        d = DataSet.scalar([0.3, 0.5], [0.1, 0.4])
        b = BlaschkeSpec(np.array([0.3]), np.array([1]))
        report = search_x_grid(d, b, resolution=16)
        assert report.status == INFEASIBLE
        assert "overlap" in report.detail

    def test_matrix_data_constant_feasible(self):
        rng = rng_for(5)
        w = 0.2 * np.eye(2) + 0.02 * rng.standard_normal((2, 2))
        d = DataSet(np.array([0.3, -0.4 + 0.2j]), np.stack([w, w]))
        report = search_x_grid(d, resolution=16, seed=1)
        assert report.status == FEASIBLE

    def test_matrix_data_never_infeasible(self):
        w = np.array([[0.0, 2.0], [0.0, 0.0]])  # norm 2, clearly infeasible
        d = DataSet(np.array([0.3]), w.reshape(1, 2, 2))
        report = search_x_grid(d, resolution=16, seed=0)
        assert report.status == UNDETERMINED

    @pytest.mark.parametrize("seed", range(25))
    def test_feasible_implies_classical_psd(self, seed):
        data, _ = generate_feasible(seed, int(rng_for(seed).integers(1, 4)))
        report = search_x_grid(data, resolution=32)
        assert report.status == FEASIBLE
        assert is_psd(pick_matrix(data))[0]

    @pytest.mark.parametrize("seed", range(5))
    def test_feasible_implies_scan_pass(self, seed):
        data, _ = generate_feasible(400 + seed, 2)
        assert search_x_grid(data, resolution=32).status == FEASIBLE
        assert necessity_scan(data, samples=500, seed=seed).passed


class TestConjugationDiagnostic:
    def test_reports_distances_and_verdicts(self):
        d = DataSet.scalar([0.5, -0.3], [0.2, 0.1])
        out = conjugation_diagnostic(d, 0.2 + 0.1j, sweep=8)
        assert out["distance_to_lambda_criterion"] >= 0
        assert out["best_distance_to_scalar_criterion"] >= 0
        assert isinstance(out["verdict_compressed"], bool)

    @pytest.mark.parametrize("seed", range(20))
    def test_psd_verdicts_agree_pointwise(self, seed):
        rng = rng_for(660_000 + seed)
        d = random_dataset(seed, k=1, wmax=0.8)
        lam = rng.uniform(0, 0.85) * np.exp(2j * np.pi * rng.uniform())
        out = conjugation_diagnostic(d, lam)
        assert out["verdict_compressed"] == out["verdict_lambda_criterion"]
