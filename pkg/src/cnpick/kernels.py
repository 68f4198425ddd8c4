"""Kernel-family criteria for constrained interpolation.

For interpolants constrained to have vanishing derivative at the origin,
solvability is governed by a family of reproducing kernels indexed by
pairs ``(alpha, beta)`` of ``ell' x ell`` matrices with
``alpha alpha* + beta beta* = I`` and ``alpha`` injective:

    K(z, w) = (alpha* + conj(w) beta*) (alpha + z beta)
              + conj(w)^2 z^2 / (1 - conj(w) z) * I.

The necessity side of the criterion says: if a constrained interpolant
exists for data ``(z_i, W_i)``, then for every admissible ``(alpha,
beta)`` and every tuple of ``k x ell`` coefficient matrices ``X_i``

    sum_ij trace[ X_j K(z_i, z_j) X_i*
                  - W_j* X_j K(z_i, z_j) X_i* W_i ]  >=  0.

A single negative value is a certificate of infeasibility; running out
of samples proves nothing, so a scan reports "no witness found among N
samples", never feasibility.  For scalar data the scalar parameter
family already decides the problem, which is why the scan sweeps the
normalized scalar pairs first.

There is also a complementary one-parameter test: solvability (k = 1) is
equivalent to the existence of a single ``lambda`` in the disk making

    [ (z_i^2 conj(z_j)^2 - phi(w_i) conj(phi(w_j))) / (1 - z_i conj(z_j)) ]

positive semidefinite, where ``phi`` is the disk automorphism
``phi(t) = (t - lambda) / (1 - conj(lambda) t)``.  Finding one good
``lambda`` certifies feasibility.

All functions here are pure; scan samples are independent and the
reported witness is the one with the lowest sample index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError
from .linalg import DEFAULT_TOL, ToleranceConfig
from .pick import DataSet

__all__ = [
    "GrassmannParam",
    "XTuple",
    "ScanReport",
    "grassmann_sample",
    "kernel_eval",
    "kernel_gram",
    "necessity_form",
    "necessity_form_matrix",
    "scalar_criterion_matrix",
    "lambda_criterion_matrix",
    "necessity_scan",
]


@dataclass(frozen=True)
class GrassmannParam:
    """Normalized kernel parameter: ``alpha alpha* + beta beta* = I``, alpha injective."""

    alpha: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        alpha = np.atleast_2d(np.asarray(self.alpha, dtype=complex))
        beta = np.atleast_2d(np.asarray(self.beta, dtype=complex))
        if alpha.shape != beta.shape:
            raise DomainError("alpha and beta must have the same shape")
        lp, l = alpha.shape
        if not 1 <= l <= lp:
            raise DomainError(f"need 1 <= ell <= ell', got ell={l}, ell'={lp}")
        gram = alpha @ alpha.conj().T + beta @ beta.conj().T
        if np.max(np.abs(gram - np.eye(lp))) > DEFAULT_TOL.residual_tol * 10:
            raise DomainError("alpha alpha* + beta beta* must equal the identity")
        smin = np.linalg.svd(alpha, compute_uv=False)[-1]
        if smin <= DEFAULT_TOL.residual_tol:
            raise DomainError(f"alpha must be injective (min singular value {smin:.2e})")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @classmethod
    def scalar(cls, alpha: complex, beta: complex) -> "GrassmannParam":
        return cls(np.array([[alpha]]), np.array([[beta]]))

    @property
    def ell(self) -> int:
        return self.alpha.shape[1]

    @property
    def ell_prime(self) -> int:
        return self.alpha.shape[0]


@dataclass(frozen=True)
class XTuple:
    """Coefficient tuple for the necessity form: array of shape (n, k, ell)."""

    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        if entries.ndim != 3:
            raise DomainError(f"entries must have shape (n, k, ell), got {entries.shape}")
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def grassmann_sample(seed: int, ell: int, ell_prime: int) -> GrassmannParam:
    """Deterministic sample of a normalized kernel parameter.

    Draws a complex Gaussian ``ell' x 2 ell`` block, orthonormalizes its
    rows and splits it into ``(alpha, beta)``.  Samples with nearly
    non-injective ``alpha`` (least singular value <= 1e-6) are rejected
    and redrawn; the rejected set has measure zero, so this does not
    bias coverage.  Bitwise deterministic for a fixed seed.
    """
    if not 1 <= ell <= ell_prime:
        raise DomainError(f"need 1 <= ell <= ell', got ell={ell}, ell'={ell_prime}")
    if ell_prime > 2 * ell:
        raise DomainError("ell' > 2 ell admits no normalized pair")
    rng = np.random.default_rng(seed)
    for _ in range(128):
        g = rng.standard_normal((ell_prime, 2 * ell)) + 1j * rng.standard_normal(
            (ell_prime, 2 * ell)
        )
        qmat, _ = np.linalg.qr(g.conj().T, mode="reduced")
        rows = qmat.conj().T  # ell' x 2 ell, orthonormal rows
        alpha, beta = rows[:, :ell], rows[:, ell:]
        if np.linalg.svd(alpha, compute_uv=False)[-1] > 1e-6:
            return GrassmannParam(alpha, beta)
    raise DomainError("failed to draw an injective alpha in 128 attempts")


def _check_disk(z, name):
    if np.any(np.abs(np.asarray(z)) >= 1.0):
        raise DomainError(f"{name} must lie in the open unit disk")


def kernel_eval(p: GrassmannParam, z: complex, w: complex) -> np.ndarray:
    """Evaluate the ``ell x ell`` kernel at a pair of disk points."""
    _check_disk(z, "z")
    _check_disk(w, "w")
    rank_part = (p.alpha.conj().T + np.conj(w) * p.beta.conj().T) @ (p.alpha + z * p.beta)
    tail = np.conj(w) ** 2 * z**2 / (1.0 - np.conj(w) * z)
    return rank_part + tail * np.eye(p.ell)


def kernel_gram(p: GrassmannParam, points) -> np.ndarray:
    """Block Gram matrix of the kernel on disk points.

    Block (i, j) holds ``K(z_j, z_i)``: the kernel is analytic in its
    first argument, and this is the arrangement under which the Gram
    matrix of kernel sections is positive semidefinite (both the
    rank-one part and the Cauchy tail decompose as sums of squares).
    For scalar parameters the two arrangements are transposes of each
    other and equally PSD.
    """
    points = np.asarray(points, dtype=complex).reshape(-1)
    _check_disk(points, "points")
    m, l = points.size, p.ell
    gram = np.empty((m * l, m * l), dtype=complex)
    for i, zi in enumerate(points):
        for j, zj in enumerate(points):
            gram[i * l : (i + 1) * l, j * l : (j + 1) * l] = kernel_eval(p, zj, zi)
    return gram


def _scalar_kernel_matrix(nodes: np.ndarray, alpha: complex, beta: complex) -> np.ndarray:
    a = alpha + beta * nodes
    cauchy = np.outer(nodes**2, np.conj(nodes) ** 2) / (1.0 - np.outer(nodes, np.conj(nodes)))
    return np.outer(a, a.conj()) + cauchy


def scalar_criterion_matrix(d: DataSet, alpha: complex, beta: complex) -> np.ndarray:
    """Criterion matrix for one scalar kernel parameter.

    For scalar data this is the n x n matrix with entries
    ``(1 - w_i conj(w_j)) K(z_i, z_j)``; for matrix data the nk x nk
    block matrix with blocks ``(I - W_i W_j*) K(z_i, z_j)``.  The
    parameter must satisfy ``|alpha|^2 + |beta|^2 = 1``.
    """
    if abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1.0) > DEFAULT_TOL.residual_tol * 10:
        raise DomainError("scalar parameter must satisfy |alpha|^2 + |beta|^2 = 1")
    kmat = _scalar_kernel_matrix(d.nodes, alpha, beta)
    if d.k == 1:
        w = d.scalar_values()
        return (1.0 - np.outer(w, w.conj())) * kmat
    k = d.k
    blocks = (np.eye(k) - np.einsum("iab,jcb->ijac", d.values, d.values.conj())) * kmat[
        :, :, None, None
    ]
    return blocks.transpose(0, 2, 1, 3).reshape(d.n * k, d.n * k)


def lambda_criterion_matrix(d: DataSet, lam: complex) -> np.ndarray:
    """One-parameter criterion matrix (k = 1) at a disk point ``lam``.

    Entry (i, j) is
    ``(z_i^2 conj(z_j)^2 - phi(w_i) conj(phi(w_j))) / (1 - z_i conj(z_j))``
    with ``phi`` the disk automorphism vanishing at ``lam``.  Feasibility
    of the constrained problem is equivalent to this matrix being PSD
    for some ``lam`` in the open disk.
    """
    if d.k != 1:
        raise DomainError("the one-parameter criterion applies to scalar data only")
    if abs(lam) >= 1.0:
        raise DomainError("lambda must lie in the open unit disk")
    w = d.scalar_values()
    u = (w - lam) / (1.0 - np.conj(lam) * w)
    z = d.nodes
    return (np.outer(z**2, np.conj(z) ** 2) - np.outer(u, u.conj())) / (
        1.0 - np.outer(z, z.conj())
    )


def _validate_form_inputs(d: DataSet, p: GrassmannParam, xs: Optional[XTuple]):
    if np.any(d.nodes == 0):
        raise DomainError("necessity criteria require nonzero nodes")
    if xs is not None:
        if xs.entries.shape != (d.n, d.k, p.ell):
            raise DomainError(
                f"coefficient tuple must have shape ({d.n}, {d.k}, {p.ell}), "
                f"got {xs.entries.shape}"
            )


def necessity_form(d: DataSet, p: GrassmannParam, xs: XTuple, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Evaluate the necessity form for one parameter and coefficient tuple.

    Nonnegative for every admissible input whenever the constrained
    problem is solvable; a negative value is an infeasibility witness.
    The result is real up to rounding; the imaginary part is checked
    against ``residual_tol`` and discarded.
    """
    _validate_form_inputs(d, p, xs)
    total = 0.0 + 0.0j
    for i in range(d.n):
        for j in range(d.n):
            kij = kernel_eval(p, d.nodes[i], d.nodes[j])
            core = xs.entries[j] @ kij @ xs.entries[i].conj().T
            total += np.trace(core) - np.trace(
                d.values[j].conj().T @ core @ d.values[i]
            )
    if abs(total.imag) > tol.residual_tol * (1.0 + abs(total.real)):
        raise DomainError(f"necessity form has non-real value {total}")
    return float(total.real)


def necessity_form_matrix(d: DataSet, p: GrassmannParam) -> np.ndarray:
    """Hermitian matrix of the necessity form in stacked coordinates.

    With the coefficient matrices vectorized column-major and stacked,
    the form equals ``v* F v`` where ``F`` has blocks
    ``K(z_i, z_j)^T  (x)  (I - W_i W_j*)``.  Its smallest eigenvalue is
    the sharpest witness value available for the given parameter, with
    the eigenvector giving the witness tuple.
    """
    _validate_form_inputs(d, p, None)
    n, k, l = d.n, d.k, p.ell
    f = np.empty((n * k * l, n * k * l), dtype=complex)
    for i in range(n):
        for j in range(n):
            kij = kernel_eval(p, d.nodes[i], d.nodes[j])
            blk = np.kron(kij.T, np.eye(k) - d.values[i] @ d.values[j].conj().T)
            f[i * k * l : (i + 1) * k * l, j * k * l : (j + 1) * k * l] = blk
    return f


def _unstack_tuple(v: np.ndarray, n: int, k: int, l: int) -> XTuple:
    entries = np.empty((n, k, l), dtype=complex)
    for i in range(n):
        entries[i] = v[i * k * l : (i + 1) * k * l].reshape((k, l), order="F")
    return XTuple(entries)


@dataclass(frozen=True)
class ScanReport:
    """Outcome of a necessity scan.

    ``status`` is ``"PASS"`` (no witness found among the evaluated
    samples; explicitly not a proof of feasibility) or ``"WITNESS"``.
    For a witness, the offending parameter, coefficient tuple, form
    value and sample index are recorded.  ``min_value`` tracks the most
    negative relative margin seen across all evaluated samples.
    """

    status: str
    samples_requested: int
    samples_evaluated: int
    min_value: float
    witness_param: Optional[GrassmannParam] = None
    witness_tuple: Optional[XTuple] = None
    witness_value: Optional[float] = None
    witness_index: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.status == "PASS"


def _canonical_scalar_params(count: int = 16):
    params = [GrassmannParam.scalar(1.0, 0.0)]
    for jj in range(count):
        theta = -np.pi / 2.0 + np.pi * (jj + 0.5) / count
        params.append(GrassmannParam.scalar(np.cos(theta), np.sin(theta)))
    return params


def default_shapes(k: int) -> Tuple[Tuple[int, int], ...]:
    """All admissible (ell, ell') shape pairs for k x k data."""
    return tuple((l, lp) for lp in range(1, k + 1) for l in range(1, lp + 1))


def necessity_scan(
    d: DataSet,
    samples: int = 500,
    shapes: Optional[Sequence[Tuple[int, int]]] = None,
    seed: int = 0,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> ScanReport:
    """Hunt for an infeasibility witness of the necessity criterion.

    The scan always evaluates the canonical scalar parameters first (the
    pair ``(1, 0)`` followed by a 16-point sweep of ``(cos t, sin t)``),
    since for scalar data the scalar family already decides feasibility
    and these are the cheapest witnesses.  Remaining samples draw random
    parameters cycling through the requested ``(ell, ell')`` shapes.
    Each sampled parameter is probed with the extremal coefficient tuple
    taken from the eigendecomposition of the induced quadratic form,
    which dominates any random tuple for that parameter.

    A sample is a witness when the relative margin of the form matrix
    drops below ``-psd_tol``.  Deterministic for a fixed seed; the first
    (lowest-index) witness is returned.
    """
    if samples < 1:
        raise DomainError("samples must be >= 1")
    if shapes is None:
        shapes = default_shapes(d.k)
    shapes = [
        (int(l), int(lp))
        for (l, lp) in shapes
        if 1 <= l <= lp <= d.k and lp <= 2 * l
    ]
    if not shapes:
        shapes = [(1, 1)]

    canonical = _canonical_scalar_params()
    min_rel = np.inf
    index = 0
    while index < samples:
        if index < len(canonical):
            param = canonical[index]
        else:
            l, lp = shapes[(index - len(canonical)) % len(shapes)]
            param = grassmann_sample(seed * 1_000_003 + index, l, lp)
        f = necessity_form_matrix(d, param)
        w, v = np.linalg.eigh(0.5 * (f + f.conj().T))
        scale = 1.0 + max(abs(w[0]), abs(w[-1]))
        rel = w[0] / scale
        min_rel = min(min_rel, rel)
        if w[0] < -tol.psd_tol * scale:
            xs = _unstack_tuple(v[:, 0], d.n, d.k, param.ell)
            value = necessity_form(d, param, xs, tol)
            return ScanReport(
                status="WITNESS",
                samples_requested=samples,
                samples_evaluated=index + 1,
                min_value=float(rel),
                witness_param=param,
                witness_tuple=xs,
                witness_value=value,
                witness_index=index,
            )
        index += 1
    return ScanReport(
        status="PASS",
        samples_requested=samples,
        samples_evaluated=samples,
        min_value=float(min_rel),
    )
