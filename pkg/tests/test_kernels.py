import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cnpick.errors import DomainError
from cnpick.kernels import (
    GrassmannParam,
    XTuple,
    default_shapes,
    grassmann_sample,
    kernel_eval,
    kernel_gram,
    lambda_criterion_matrix,
    necessity_form,
    necessity_form_matrix,
    necessity_scan,
    scalar_criterion_matrix,
)
from cnpick.linalg import DEFAULT_TOL, is_psd
from cnpick.pick import DataSet

from conftest import distinct_nodes, random_dataset, rng_for


class TestGrassmannSample:
    def test_scalar_invariants(self):
        p = grassmann_sample(3, 1, 1)
        assert abs(abs(p.alpha[0, 0]) ** 2 + abs(p.beta[0, 0]) ** 2 - 1.0) < 1e-12
        assert p.alpha[0, 0] != 0

    def test_rectangular_invariants(self):
        p = grassmann_sample(5, 1, 2)
        gram = p.alpha @ p.alpha.conj().T + p.beta @ p.beta.conj().T
        assert np.allclose(gram, np.eye(2), atol=1e-12)
        assert np.linalg.svd(p.alpha, compute_uv=False)[-1] > 1e-6

    def test_deterministic(self):
        a = grassmann_sample(11, 2, 2)
        b = grassmann_sample(11, 2, 2)
        assert np.array_equal(a.alpha, b.alpha) and np.array_equal(a.beta, b.beta)

    def test_rejects_bad_shapes(self):
        with pytest.raises(DomainError):
            grassmann_sample(0, 2, 1)
        with pytest.raises(DomainError):
            grassmann_sample(0, 1, 3)

    def test_param_validation(self):
        with pytest.raises(DomainError):
            GrassmannParam(np.array([[1.0]]), np.array([[1.0]]))  # not normalized
        with pytest.raises(DomainError):
            GrassmannParam(np.array([[0.0]]), np.array([[1.0]]))  # alpha not injective


class TestKernelEval:
    def test_scalar_formula(self):
        p = GrassmannParam.scalar(1.0, 0.0)
        z, w = 0.4 + 0.1j, -0.2 + 0.3j
        expected = 1.0 + z**2 * np.conj(w) ** 2 / (1 - z * np.conj(w))
        assert kernel_eval(p, z, w)[0, 0] == pytest.approx(expected)

    def test_origin_truncates_series(self):
        p = grassmann_sample(2, 2, 2)
        assert np.allclose(kernel_eval(p, 0, 0), p.alpha.conj().T @ p.alpha)

    def test_balanced_scalar_at_origin(self):
        p = GrassmannParam.scalar(1 / np.sqrt(2), 1 / np.sqrt(2))
        assert kernel_eval(p, 0, 0)[0, 0] == pytest.approx(0.5)

    def test_rejects_boundary(self):
        p = GrassmannParam.scalar(1.0, 0.0)
        with pytest.raises(DomainError):
            kernel_eval(p, 1.0, 0.0)

    @pytest.mark.parametrize("seed", range(25))
    def test_conjugate_symmetry(self, seed):
        rng = rng_for(seed)
        lp = int(rng.integers(1, 3))
        l = int(rng.integers(1, lp + 1))
        p = grassmann_sample(seed, l, lp)
        z = rng.uniform(0, 0.9) * np.exp(2j * np.pi * rng.uniform())
        w = rng.uniform(0, 0.9) * np.exp(2j * np.pi * rng.uniform())
        assert np.allclose(
            kernel_eval(p, z, w).conj().T, kernel_eval(p, w, z), atol=DEFAULT_TOL.residual_tol
        )

    @pytest.mark.parametrize("seed", range(100))
    def test_gram_positivity(self, seed):
        rng = rng_for(40_000 + seed)
        lp = int(rng.integers(1, 4))
        l = int(rng.integers(max(1, (lp + 1) // 2), lp + 1))
        p = grassmann_sample(seed, l, lp)
        pts = distinct_nodes(rng, int(rng.integers(2, 7)), rmin=0.0, rmax=0.9, gap=0.01)
        verdict, min_eig = is_psd(kernel_gram(p, pts))
        assert verdict, f"kernel Gram indefinite: {min_eig}"

    def test_unitary_equivalence(self, rng):
        p = grassmann_sample(9, 2, 2)
        q, _ = np.linalg.qr(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
        rotated = GrassmannParam(q @ p.alpha, q @ p.beta)
        z, w = 0.3 + 0.2j, -0.1 + 0.5j
        assert np.allclose(
            kernel_eval(p, z, w), kernel_eval(rotated, z, w), atol=DEFAULT_TOL.residual_tol
        )


class TestCriterionMatrices:
    def test_zero_targets_gram(self):
        d = DataSet.scalar([0.3, -0.4], [0.0, 0.0])
        m = scalar_criterion_matrix(d, 1.0, 0.0)
        assert is_psd(m)[0]

    def test_one_point_value(self):
        d = DataSet.scalar([0.5], [0.5])
        m = scalar_criterion_matrix(d, 1.0, 0.0)
        assert m[0, 0] == pytest.approx(0.8125)

    def test_unimodular_target_boundary(self):
        # |w| = 1 zeroes the prefactor entirely.
        m = scalar_criterion_matrix(DataSet.scalar([0.5], [1.0]), 1.0, 0.0)
        assert m[0, 0] == pytest.approx(0.0)
        assert is_psd(m)[0]

    def test_requires_normalized_parameter(self):
        d = DataSet.scalar([0.5], [0.5])
        with pytest.raises(DomainError):
            scalar_criterion_matrix(d, 1.0, 1.0)

    def test_lambda_matrix_fixture(self):
        d = DataSet.scalar([0.5], [0.0])
        m = lambda_criterion_matrix(d, 0.0)
        assert m[0, 0] == pytest.approx(0.0625 / 0.75)

    def test_lambda_at_target_is_psd(self):
        d = DataSet.scalar([0.5], [0.3 + 0.2j])
        m = lambda_criterion_matrix(d, 0.3 + 0.2j)
        assert m[0, 0] == pytest.approx(0.0625 / 0.75)
        assert is_psd(m)[0]

    def test_lambda_rejects_outside(self):
        d = DataSet.scalar([0.5], [0.0])
        with pytest.raises(DomainError):
            lambda_criterion_matrix(d, 1.2)

    def test_lambda_grid_infeasible_instance(self):
        # No parameter value on a coarse disk grid rescues the documented
        # constrained-infeasible data.
        d = DataSet.scalar([0.3, -0.3], [0.3, -0.3])
        rng = rng_for(0)
        for _ in range(400):
            lam = np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
            assert not is_psd(lambda_criterion_matrix(d, lam))[0]


class TestNecessityForm:
    def test_zero_targets_nonnegative(self):
        d = DataSet.scalar([0.3, -0.5], [0.0, 0.0])
        p = grassmann_sample(1, 1, 1)
        xs = XTuple(np.array([[[1.0]], [[0.5 - 0.2j]]], dtype=complex))
        assert necessity_form(d, p, xs) >= 0

    def test_large_target_witness(self):
        d = DataSet.scalar([0.5], [1.5])
        p = GrassmannParam.scalar(1.0, 0.0)
        xs = XTuple(np.array([[[1.0]]], dtype=complex))
        expected = (1 - 1.5**2) * (1 + 0.5**4 / (1 - 0.25))
        assert necessity_form(d, p, xs) == pytest.approx(expected)
        assert expected < 0

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_scalar_quadratic_form(self, seed):
        rng = rng_for(seed)
        d = random_dataset(seed, k=1)
        theta = rng.uniform(-1.4, 1.4)
        alpha, beta = np.cos(theta), np.sin(theta)
        xs = rng.standard_normal((d.n, 1, 1)) + 1j * rng.standard_normal((d.n, 1, 1))
        form = necessity_form(d, GrassmannParam.scalar(alpha, beta), XTuple(xs))
        m = scalar_criterion_matrix(d, alpha, beta)
        vec = xs[:, 0, 0]
        assert form == pytest.approx(float((vec.conj() @ m @ vec).real), rel=1e-9, abs=1e-9)

    @pytest.mark.parametrize("seed", range(10))
    def test_matrix_form_matches_stacked_matrix(self, seed):
        rng = rng_for(800 + seed)
        k = 2
        d = random_dataset(900 + seed, n=2, k=k)
        p = grassmann_sample(seed, 1, 2)
        f = necessity_form_matrix(d, p)
        xs = rng.standard_normal((d.n, k, 1)) + 1j * rng.standard_normal((d.n, k, 1))
        vec = np.concatenate([xs[i].reshape(-1, order="F") for i in range(d.n)])
        direct = necessity_form(d, p, XTuple(xs))
        assert direct == pytest.approx(float((vec.conj() @ f @ vec).real), rel=1e-9, abs=1e-9)

    def test_shape_mismatch(self):
        d = DataSet.scalar([0.5], [0.0])
        p = grassmann_sample(0, 1, 1)
        with pytest.raises(DomainError):
            necessity_form(d, p, XTuple(np.zeros((1, 2, 1), dtype=complex)))


class TestNecessityScan:
    def test_zero_function_passes(self):
        d = DataSet.scalar([0.3, -0.4, 0.5j], [0.0, 0.0, 0.0])
        assert necessity_scan(d, samples=60, seed=0).passed

    def test_big_target_witnessed_immediately(self):
        d = DataSet.scalar([0.5], [1.5])
        report = necessity_scan(d, samples=50, seed=0)
        assert report.status == "WITNESS"
        assert report.witness_index == 0  # canonical scalar parameter first
        assert report.witness_value < 0

    def test_documented_infeasible_instance(self):
        d = DataSet.scalar([0.3, -0.3], [0.3, -0.3])
        report = necessity_scan(d, samples=2000, seed=0)
        assert report.status == "WITNESS"
        # the recorded tuple reproduces the recorded value
        value = necessity_form(d, report.witness_param, report.witness_tuple)
        assert value == pytest.approx(report.witness_value)

    def test_deterministic(self):
        d = DataSet.scalar([0.3, -0.3], [0.3, -0.3])
        a = necessity_scan(d, samples=64, seed=7)
        b = necessity_scan(d, samples=64, seed=7)
        assert a.witness_index == b.witness_index
        assert a.min_value == b.min_value

    def test_default_shapes(self):
        assert default_shapes(1) == ((1, 1),)
        assert default_shapes(2) == ((1, 1), (1, 2), (2, 2))


@settings(max_examples=30, deadline=None)
@given(
    st.integers(min_value=0, max_value=5_000),
    st.floats(min_value=-0.85, max_value=0.85),
    st.floats(min_value=-0.85, max_value=0.85),
)
def test_kernel_hermitian_on_diagonal(seed, re, im):
    if re**2 + im**2 >= 0.95**2:
        return
    p = grassmann_sample(seed, 1, 1)
    z = complex(re, im)
    val = kernel_eval(p, z, z)[0, 0]
    assert abs(val.imag) < 1e-12
    assert val.real > 0
