"""Pick-type matrices for interpolation in the algebras ``C + B H^inf``.

A problem instance consists of interpolation data ``(z_i, W_i)`` with
distinct nodes ``z_i`` in the open unit disk and k x k target matrices
``W_i``, together with a finite Blaschke product ``B`` whose zeros
``lambda_i`` (with multiplicities ``r_i``) carry the constraint: the
interpolant must lie in ``C + B H^inf``, i.e. take a common value at all
zeros of ``B`` and have vanishing jets there up to the multiplicities.
A function of sup-norm at most one satisfying all of that exists exactly
when one of the structured Hermitian matrices built here is positive
semidefinite for some choice of the free k x k parameter ``x`` (the
common value at the constraint zeros).

Builders
--------
``pick_matrix``
    The classical Pick matrix of the unconstrained problem.
``constrained_pick_z2_quadratic`` / ``constrained_pick_z2``
    The two forms specific to the double zero at the origin
    (``B(z) = z^2``, interpolants with vanishing derivative at 0): the
    Caratheodory-Fejer form, quadratic in ``x``, and its linearized
    5-block expansion.
``constrained_pick`` / ``constrained_pick_cf`` / ``constrained_pick_compressed``
    The general-Blaschke forms: linearized, Caratheodory-Fejer, and the
    Schur-complement compression onto the node block (the last one needs
    ``||x|| < 1``).

The general forms are expressed through a pair of Stein equations

    Q - J Q J* = Et Et*          Qt - J Qt Z* = Et E*

where ``J`` collects Jordan-type jet blocks at the constraint zeros and
``Z, E`` encode the nodes.  Both equations are solved exactly as finite
linear systems; the convergent-series form is kept only as a test
oracle (:func:`stein_series`).

All builders are Hermitian-exact: Hermitian blocks are filled once and
mirrored, never recomputed, so ``||M - M*|| = 0`` holds to the bit.
Builders are pure; a :class:`PickBundle` is immutable after construction
and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .errors import DomainError, IllConditionedError, SingularBlockError
from .linalg import (
    DEFAULT_TOL,
    ToleranceConfig,
    hermitian_part,
    is_psd,
    operator_norm,
    psd_margin,
    schur_complement,
)

__all__ = [
    "DataSet",
    "BlaschkeSpec",
    "AuxMatrices",
    "PickBundle",
    "OverlapVerdict",
    "pick_matrix",
    "aux_matrices",
    "jet_matrices",
    "stein_solve",
    "stein_series",
    "assemble_bundle",
    "constrained_pick_z2_quadratic",
    "constrained_pick_z2",
    "constrained_pick",
    "constrained_pick_cf",
    "constrained_pick_compressed",
    "check_overlap",
]


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class DataSet:
    """Interpolation data: nodes in the open disk and k x k target matrices.

    ``nodes`` has shape (n,), ``values`` shape (n, k, k).  Nodes must be
    pairwise distinct and of modulus < 1.  Node 0 is allowed here (the
    classical Pick matrix is fine with it); constrained builders reject
    it when the Blaschke product vanishes at the origin.
    """

    nodes: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=complex).reshape(-1)
        values = np.asarray(self.values, dtype=complex)
        if nodes.size < 1:
            raise DomainError("data set needs at least one node")
        if values.ndim != 3 or values.shape[0] != nodes.size or values.shape[1] != values.shape[2]:
            raise DomainError(
                f"values must have shape (n, k, k) with n={nodes.size}, got {values.shape}"
            )
        if not np.all(np.isfinite(nodes.view(float))) or not np.all(
            np.isfinite(values.view(float))
        ):
            raise DomainError("data set contains non-finite entries")
        if np.max(np.abs(nodes)) >= 1.0:
            raise DomainError("all nodes must lie in the open unit disk")
        for i in range(nodes.size):
            for j in range(i + 1, nodes.size):
                if nodes[i] == nodes[j]:
                    raise DomainError(f"nodes {i} and {j} coincide ({nodes[i]})")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)

    @classmethod
    def scalar(cls, nodes, values) -> "DataSet":
        """Build a k=1 data set from flat node and value sequences."""
        values = np.asarray(values, dtype=complex).reshape(-1, 1, 1)
        return cls(np.asarray(nodes, dtype=complex), values)

    @property
    def n(self) -> int:
        return self.nodes.size

    @property
    def k(self) -> int:
        return self.values.shape[1]

    def scalar_values(self) -> np.ndarray:
        if self.k != 1:
            raise DomainError("scalar_values requires k = 1")
        return self.values[:, 0, 0]


@dataclass(frozen=True)
class BlaschkeSpec:
    """Finite Blaschke product given by its distinct zeros and multiplicities."""

    zeros: np.ndarray
    multiplicities: np.ndarray

    def __post_init__(self):
        zeros = np.asarray(self.zeros, dtype=complex).reshape(-1)
        mult = np.asarray(self.multiplicities, dtype=int).reshape(-1)
        if zeros.size < 1 or mult.size != zeros.size:
            raise DomainError("need matching nonempty zero and multiplicity lists")
        if np.any(mult < 1):
            raise DomainError("multiplicities must be >= 1")
        if zeros.size and np.max(np.abs(zeros)) >= 1.0:
            raise DomainError("Blaschke zeros must lie in the open unit disk")
        for i in range(zeros.size):
            for j in range(i + 1, zeros.size):
                if zeros[i] == zeros[j]:
                    raise DomainError("Blaschke zeros must be pairwise distinct")
        object.__setattr__(self, "zeros", zeros)
        object.__setattr__(self, "multiplicities", mult)

    @classmethod
    def z_squared(cls) -> "BlaschkeSpec":
        """The default constraint B(z) = z^2 (vanishing derivative at 0)."""
        return cls(np.array([0.0 + 0.0j]), np.array([2]))

    @property
    def m(self) -> int:
        return self.zeros.size

    @property
    def degree(self) -> int:
        return int(self.multiplicities.sum())

    def is_z_squared(self) -> bool:
        return self.m == 1 and self.zeros[0] == 0 and self.multiplicities[0] == 2

    def evaluate(self, z):
        """Evaluate the Blaschke product at points of the closed disk."""
        z = np.asarray(z, dtype=complex)
        out = np.ones_like(z)
        for lam, r in zip(self.zeros, self.multiplicities):
            out = out * ((z - lam) / (1.0 - np.conj(lam) * z)) ** int(r)
        return out


class AuxMatrices(NamedTuple):
    """Node-side auxiliary matrices.

    z : (nk, nk) block diagonal of ``z_i I_k``
    e : (nk, k) stack of identities
    w_col : (nk, k) stack of the target matrices
    w_diag : (nk, nk) block diagonal of the target matrices
    """

    z: np.ndarray
    e: np.ndarray
    w_col: np.ndarray
    w_diag: np.ndarray


@dataclass(frozen=True)
class PickBundle:
    """All matrices needed by the general-Blaschke builders, precomputed.

    Fields mirror the construction: classical Pick matrix ``p``, node
    matrices ``z``/``e``/``w_col``/``w_diag``, jet matrices ``j`` and
    ``e_tilde`` at the constraint zeros, and the Stein solutions: ``q``
    (Hermitian positive definite; the identity exactly when all
    constraint zeros sit at the origin) and ``q_tilde`` coupling jets to
    nodes.
    """

    data: DataSet
    blaschke: BlaschkeSpec
    p: np.ndarray
    z: np.ndarray
    e: np.ndarray
    w_col: np.ndarray
    w_diag: np.ndarray
    j: np.ndarray
    e_tilde: np.ndarray
    q: np.ndarray
    q_tilde: np.ndarray
    q_inv: np.ndarray
    stein_residuals: tuple = field(default=(0.0, 0.0))


# ---------------------------------------------------------------------------
# elementary builders


def pick_matrix(d: DataSet) -> np.ndarray:
    """Classical Pick matrix with blocks ``(I - W_i W_j*) / (1 - z_i conj(z_j))``.

    Upper-triangle blocks are computed once and mirrored, so the result
    is Hermitian to the bit.
    """
    n, k = d.n, d.k
    out = np.empty((n * k, n * k), dtype=complex)
    eye = np.eye(k, dtype=complex)
    for i in range(n):
        rows = slice(i * k, (i + 1) * k)
        diag = (eye - d.values[i] @ d.values[i].conj().T) / (
            1.0 - d.nodes[i] * np.conj(d.nodes[i])
        )
        out[rows, rows] = hermitian_part(diag)
        for j in range(i + 1, n):
            cols = slice(j * k, (j + 1) * k)
            block = (eye - d.values[i] @ d.values[j].conj().T) / (
                1.0 - d.nodes[i] * np.conj(d.nodes[j])
            )
            out[rows, cols] = block
            out[cols, rows] = block.conj().T
    return out


def aux_matrices(d: DataSet) -> AuxMatrices:
    """Auxiliary node matrices: see :class:`AuxMatrices`."""
    n, k = d.n, d.k
    ik = np.eye(k, dtype=complex)
    z = np.kron(np.diag(d.nodes), ik)
    e = np.tile(ik, (n, 1))
    w_col = d.values.reshape(n * k, k)
    w_diag = np.zeros((n * k, n * k), dtype=complex)
    for i in range(n):
        w_diag[i * k : (i + 1) * k, i * k : (i + 1) * k] = d.values[i]
    return AuxMatrices(z=z, e=e, w_col=w_col, w_diag=w_diag)


def jet_matrices(b: BlaschkeSpec, k: int):
    """Jet matrices at the constraint zeros.

    Returns ``(j, e_tilde)`` where ``j`` is block diagonal with one
    lower-bidiagonal Jordan-type block per zero (``lambda_i I_k`` on the
    diagonal, ``I_k`` on the first block subdiagonal, size ``k r_i``)
    and ``e_tilde`` stacks ``(I_k, 0, ..., 0)^T`` blocks.
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    d = b.degree
    ik = np.eye(k, dtype=complex)
    j = np.zeros((k * d, k * d), dtype=complex)
    e_tilde = np.zeros((k * d, k), dtype=complex)
    row = 0
    for lam, r in zip(b.zeros, b.multiplicities):
        r = int(r)
        for s in range(r):
            j[row + s * k : row + (s + 1) * k, row + s * k : row + (s + 1) * k] = lam * ik
            if s > 0:
                j[row + s * k : row + (s + 1) * k, row + (s - 1) * k : row + s * k] = ik
        e_tilde[row : row + k, :] = ik
        row += r * k
    return j, e_tilde


def stein_solve(j, e_tilde, z, e, cond_limit: float = 1e13):
    """Solve the two Stein equations exactly as finite linear systems.

    Solves ``Q - J Q J* = Et Et*`` via the vectorized operator
    ``I - conj(J) (x) J`` and ``Qt - J Qt Z* = Et E*`` column by column
    (``Z`` is block diagonal, so each block column decouples).  Both
    operators are invertible whenever the spectra of ``J`` and ``Z``
    stay inside the unit disk; zeros or nodes creeping towards the
    boundary make them ill-conditioned, which is reported.

    Returns ``(q, q_tilde)`` with ``q`` Hermitian-exact.
    """
    j = np.asarray(j, dtype=complex)
    e_tilde = np.asarray(e_tilde, dtype=complex)
    z = np.asarray(z, dtype=complex)
    e = np.asarray(e, dtype=complex)
    kd = j.shape[0]
    op = np.eye(kd * kd, dtype=complex) - np.kron(j.conj(), j)
    # Amplification of the solve; blows up as |lambda_i conj(z_j)| -> 1.
    smin = np.linalg.svd(op, compute_uv=False)[-1]
    zdiag = np.diag(z)
    col_ops = np.eye(kd)[None, :, :] - np.conj(zdiag)[:, None, None] * j[None, :, :]
    smin = min(smin, np.min(np.linalg.svd(col_ops, compute_uv=False)[:, -1]))
    cond = np.inf if smin == 0 else 1.0 / smin
    if not np.isfinite(cond) or cond > cond_limit:
        raise IllConditionedError(
            f"Stein operator amplification ~ {cond:.3e} exceeds {cond_limit:.1e}",
            cond=cond,
        )
    rhs = (e_tilde @ e_tilde.conj().T).reshape(-1, order="F")
    q = np.linalg.solve(op, rhs).reshape(kd, kd, order="F")
    q = hermitian_part(q)

    # Qt column block i solves (I - conj(z_i) J) Qt_i = (Et E*)_i.
    rhs_t = e_tilde @ e.conj().T
    nk = z.shape[0]
    q_tilde = np.empty((kd, nk), dtype=complex)
    for col in range(nk):
        a = np.eye(kd, dtype=complex) - np.conj(zdiag[col]) * j
        q_tilde[:, col] = np.linalg.solve(a, rhs_t[:, col])
    return q, q_tilde


def stein_series(j, e_tilde, z, e, terms: int = 200):
    """Truncated-series solutions of the Stein equations (test oracle).

    ``Q = sum_i J^i Et Et* J*^i`` and ``Qt = sum_i J^i Et E* Z*^i``,
    truncated after ``terms`` terms.  Kept independent of
    :func:`stein_solve` so the two can check each other.
    """
    j = np.asarray(j, dtype=complex)
    e_tilde = np.asarray(e_tilde, dtype=complex)
    z = np.asarray(z, dtype=complex)
    e = np.asarray(e, dtype=complex)
    q = np.zeros((j.shape[0], j.shape[0]), dtype=complex)
    q_tilde = np.zeros((j.shape[0], z.shape[0]), dtype=complex)
    jp = np.eye(j.shape[0], dtype=complex)
    zp = np.eye(z.shape[0], dtype=complex)
    core_q = e_tilde @ e_tilde.conj().T
    core_t = e_tilde @ e.conj().T
    for _ in range(terms):
        q += jp @ core_q @ jp.conj().T
        q_tilde += jp @ core_t @ zp.conj().T
        jp = jp @ j
        zp = zp @ z
    return q, q_tilde


def _check_constrained_domain(d: DataSet, b: BlaschkeSpec):
    for i, zi in enumerate(d.nodes):
        for lam in b.zeros:
            if zi == lam:
                if zi == 0:
                    raise DomainError(
                        "node 0 coincides with a constraint zero at the origin; "
                        "the instance is a Caratheodory-Fejer problem in disguise "
                        "(value and jet data at 0) and must be posed that way, or "
                        "routed through check_overlap"
                    )
                raise DomainError(
                    f"node {i} ({zi}) coincides with a constraint zero; "
                    "route the instance through check_overlap"
                )


def assemble_bundle(
    d: DataSet, b: BlaschkeSpec, tol: ToleranceConfig = DEFAULT_TOL
) -> PickBundle:
    """Precompute everything the general-Blaschke builders need.

    Verifies the Stein residuals against ``residual_tol`` and positive
    semidefiniteness of the Stein solution before returning; both hold
    by construction, so a failure indicates numerically hostile data
    (zeros or nodes hugging the boundary).
    """
    _check_constrained_domain(d, b)
    p = pick_matrix(d)
    aux = aux_matrices(d)
    j, e_tilde = jet_matrices(b, d.k)
    q, q_tilde = stein_solve(j, e_tilde, aux.z, aux.e)

    res_q = operator_norm(q - j @ q @ j.conj().T - e_tilde @ e_tilde.conj().T)
    res_t = operator_norm(q_tilde - j @ q_tilde @ aux.z.conj().T - e_tilde @ aux.e.conj().T)
    if res_q > tol.residual_tol * (1.0 + operator_norm(q)):
        raise IllConditionedError(f"Stein residual {res_q:.3e} out of tolerance")
    if res_t > tol.residual_tol * (1.0 + operator_norm(q_tilde)):
        raise IllConditionedError(f"Stein residual {res_t:.3e} out of tolerance")
    # Q is positive definite (controllability of the jet pair); it equals
    # the identity exactly when all constraint zeros sit at the origin,
    # but in general its smallest eigenvalue can drop below 1 and, for
    # high multiplicities, very close to 0.
    min_eig, scale = psd_margin(q, tol)
    if min_eig < -tol.psd_tol * scale:
        raise IllConditionedError(f"Stein solution not PSD: min eig = {min_eig:.3e}")

    q_inv = hermitian_part(np.linalg.solve(q, np.eye(q.shape[0], dtype=complex)))
    return PickBundle(
        data=d,
        blaschke=b,
        p=p,
        z=aux.z,
        e=aux.e,
        w_col=aux.w_col,
        w_diag=aux.w_diag,
        j=j,
        e_tilde=e_tilde,
        q=q,
        q_tilde=q_tilde,
        q_inv=q_inv,
        stein_residuals=(res_q, res_t),
    )


# ---------------------------------------------------------------------------
# constrained builders, B(z) = z^2 special forms


def _as_param(x, k: int, name="x") -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    if x.ndim == 0:
        x = x.reshape(1, 1)
    if x.shape != (k, k):
        raise DomainError(f"{name} must be a {k}x{k} matrix, got shape {x.shape}")
    return x


def constrained_pick_z2_quadratic(d: DataSet, x) -> np.ndarray:
    """Caratheodory-Fejer Pick matrix for the origin constraint, quadratic in x.

    Rows and columns are grouped (nodes, value-at-0, jet-at-0):

        [ P            E - W x*      Z (E - W x*) ]
        [ *            I - x x*      0            ]
        [ *            0             I - x x*     ]
    """
    k = d.k
    x = _as_param(x, k)
    _check_constrained_domain(d, BlaschkeSpec.z_squared())
    p = pick_matrix(d)
    aux = aux_matrices(d)
    top1 = aux.e - aux.w_col @ x.conj().T
    top2 = aux.z @ top1
    gap = hermitian_part(np.eye(k) - x @ x.conj().T)
    zero = np.zeros((k, k), dtype=complex)
    return np.block(
        [
            [p, top1, top2],
            [top1.conj().T, gap, zero],
            [top2.conj().T, zero, gap],
        ]
    )


def constrained_pick_z2(d: DataSet, x) -> np.ndarray:
    """Linearized 5-block form of :func:`constrained_pick_z2_quadratic`.

    The free parameter enters affinely, which is what makes the
    feasibility question a linear matrix inequality.  Positive
    semidefiniteness of this matrix and of the quadratic form agree for
    every ``x``.
    """
    k = d.k
    x = _as_param(x, k)
    _check_constrained_domain(d, BlaschkeSpec.z_squared())
    p = pick_matrix(d)
    aux = aux_matrices(d)
    top1 = aux.e - aux.w_col @ x.conj().T
    top2 = aux.z @ top1
    ik = np.eye(k, dtype=complex)
    zk = np.zeros((k, k), dtype=complex)
    znk = np.zeros((d.n * k, k), dtype=complex)
    return np.block(
        [
            [p, top1, top2, znk, znk],
            [top1.conj().T, ik, zk, x, zk],
            [top2.conj().T, zk, ik, zk, x],
            [znk.conj().T, x.conj().T, zk, ik, zk],
            [znk.conj().T, zk, x.conj().T, zk, ik],
        ]
    )


# ---------------------------------------------------------------------------
# constrained builders, general Blaschke product


def _bundle_for(d, b, bundle: Optional[PickBundle]) -> PickBundle:
    if bundle is not None:
        if bundle.data is not d or bundle.blaschke is not b:
            # Same-content reuse is fine; only shapes are actually required.
            if bundle.p.shape[0] != d.n * d.k or bundle.q.shape[0] != b.degree * d.k:
                raise DomainError("bundle does not match the data set / Blaschke spec")
        return bundle
    return assemble_bundle(d, b)


def _coupling_block(bundle: PickBundle, x: np.ndarray) -> np.ndarray:
    """``Qt (I - X_n Wdiag*)`` where ``X_n`` repeats x along the node blocks."""
    n, k = bundle.data.n, bundle.data.k
    x_n = np.kron(np.eye(n, dtype=complex), x)
    return bundle.q_tilde @ (np.eye(n * k, dtype=complex) - x_n @ bundle.w_diag.conj().T)


def constrained_pick(
    d: DataSet, b: BlaschkeSpec, x, bundle: Optional[PickBundle] = None
) -> np.ndarray:
    """Linearized constrained Pick matrix for a general Blaschke constraint.

    Rows and columns are grouped (nodes, jets, mirrored jets):

        [ P                  (I - Wdiag Xn*) Qt*   0     ]
        [ Qt (I - Xn Wdiag*) Q                     Xd    ]
        [ 0                  Xd*                   Q^-1  ]

    with ``Xn`` (resp. ``Xd``) the block-diagonal repetition of ``x``
    over the node (resp. jet) blocks.  Solvability of the constrained
    interpolation problem is equivalent to this matrix being PSD for
    some ``x``.  For ``B(z) = z^2`` it reproduces the dedicated 5-block
    builder.
    """
    x = _as_param(x, d.k)
    bundle = _bundle_for(d, b, bundle)
    k, n, deg = d.k, d.n, b.degree
    lower = _coupling_block(bundle, x)
    x_d = np.kron(np.eye(deg, dtype=complex), x)
    z_nd = np.zeros((n * k, deg * k), dtype=complex)
    return np.block(
        [
            [bundle.p, lower.conj().T, z_nd],
            [lower, bundle.q, x_d],
            [z_nd.conj().T, x_d.conj().T, bundle.q_inv],
        ]
    )


def constrained_pick_cf(
    d: DataSet, b: BlaschkeSpec, x, bundle: Optional[PickBundle] = None
) -> np.ndarray:
    """Caratheodory-Fejer form of the general constrained Pick matrix:

        [ P                  (I - Wdiag Xn*) Qt* ]
        [ Qt (I - Xn Wdiag*) Q - Xd Q Xd*        ]

    PSD-equivalent to :func:`constrained_pick` for every ``x``.
    """
    x = _as_param(x, d.k)
    bundle = _bundle_for(d, b, bundle)
    deg = b.degree
    lower = _coupling_block(bundle, x)
    x_d = np.kron(np.eye(deg, dtype=complex), x)
    corner = hermitian_part(bundle.q - x_d @ bundle.q @ x_d.conj().T)
    return np.block([[bundle.p, lower.conj().T], [lower, corner]])


def constrained_pick_compressed(
    d: DataSet, b: BlaschkeSpec, x, bundle: Optional[PickBundle] = None
) -> np.ndarray:
    """Schur-complement compression of the CF form onto the node block.

    ``P - (I - Wdiag Xn*) Qt* (Q - Xd Q Xd*)^{-1} Qt (I - Xn Wdiag*)``.
    Requires ``Q - Xd Q Xd*`` invertible, which holds whenever
    ``||x|| < 1``; on the boundary a :class:`SingularBlockError` is
    raised and the caller should test the CF form directly.
    """
    x = _as_param(x, d.k)
    bundle = _bundle_for(d, b, bundle)
    cf = constrained_pick_cf(d, b, x, bundle=bundle)
    try:
        compressed = schur_complement(cf, head=d.n * d.k)
    except SingularBlockError as exc:
        raise SingularBlockError(
            f"Q - Xd Q Xd* is numerically singular (cond ~ {exc.cond:.3e}); "
            "test the CF form directly",
            cond=exc.cond,
        ) from exc
    return hermitian_part(compressed)


# ---------------------------------------------------------------------------
# overlapping nodes and constraint zeros


@dataclass(frozen=True)
class OverlapVerdict:
    """Outcome of the overlap analysis between nodes and constraint zeros.

    ``has_overlap`` is False for disjoint sets (nothing else is filled
    in).  With overlap, either the overlapped target values disagree
    (``conflict``, instantly infeasible) or the problem reduces to a
    single PSD test at the shared value, reported in ``feasible`` and
    ``margin``.
    """

    has_overlap: bool
    node_indices: tuple = ()
    conflict: bool = False
    anchor: Optional[np.ndarray] = None
    feasible: Optional[bool] = None
    margin: Optional[float] = None
    detail: str = ""


def check_overlap(d: DataSet, b: BlaschkeSpec, tol: ToleranceConfig = DEFAULT_TOL) -> OverlapVerdict:
    """Decide instances whose nodes meet the constraint zeros.

    If some nodes coincide with zeros of the Blaschke product, a
    solution exists exactly when all the overlapped target values agree
    (they all equal the shared value at the zeros) and the constrained
    Pick matrix at that value, built on the de-duplicated node set, is
    PSD.  With no remaining nodes this collapses to contractivity of the
    shared value.
    """
    overlap = [i for i, z in enumerate(d.nodes) if np.any(b.zeros == z)]
    if not overlap:
        return OverlapVerdict(has_overlap=False, detail="nodes and constraint zeros disjoint")

    anchor = d.values[overlap[0]]
    wscale = 1.0 + max(operator_norm(d.values[i]) for i in overlap)
    for i in overlap[1:]:
        if operator_norm(d.values[i] - anchor) > tol.residual_tol * wscale:
            return OverlapVerdict(
                has_overlap=True,
                node_indices=tuple(overlap),
                conflict=True,
                feasible=False,
                detail="overlap values differ",
            )

    keep = [i for i in range(d.n) if i not in overlap]
    if not keep:
        margin = 1.0 - operator_norm(anchor)
        return OverlapVerdict(
            has_overlap=True,
            node_indices=tuple(overlap),
            anchor=anchor,
            feasible=bool(margin >= -tol.psd_tol),
            margin=float(margin),
            detail="all nodes overlap; feasibility = contractivity of the shared value",
        )

    reduced = DataSet(d.nodes[keep], d.values[keep])
    verdict, margin = is_psd(constrained_pick(reduced, b, anchor), tol)
    return OverlapVerdict(
        has_overlap=True,
        node_indices=tuple(overlap),
        anchor=anchor,
        feasible=verdict,
        margin=margin,
        detail="reduced to a PSD test at the shared overlap value",
    )
