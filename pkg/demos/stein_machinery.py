"""
Jet matrices and Stein equations behind the general constraint
==============================================================

For a constraint algebra built from a finite Blaschke product, the
constrained Pick matrices are assembled from two Stein equations tying
the jet structure at the constraint zeros to the interpolation nodes.
This script shows the closed forms for the origin constraint, the exact
residuals of the solver, and a subtlety: the Stein solution dominates
the identity only when the zeros sit at the origin.
"""

import numpy as np

from cnpick import BlaschkeSpec, DataSet, assemble_bundle, stein_series

data = DataSet.scalar([0.5, -0.5, 0.25j], [0.1, 0.2, 0.0])

# Origin constraint (vanishing derivative at 0): the solutions have
# closed forms, the identity and a Vandermonde-like coupling.
bundle = assemble_bundle(data, BlaschkeSpec.z_squared())
print("origin constraint:")
print("Q =\n", bundle.q.real)
print("Qt =\n", bundle.q_tilde)
print(f"Stein residuals: {bundle.stein_residuals[0]:.2e}, {bundle.stein_residuals[1]:.2e}")

# A double zero away from the origin.  The solver stays exact (compare
# with the truncated-series oracle), but the smallest eigenvalue of Q
# drops below 1: the identity bound is special to the origin case.
b = BlaschkeSpec(np.array([0.45]), np.array([2]))
bundle = assemble_bundle(data, b)
q_series, qt_series = stein_series(bundle.j, bundle.e_tilde, bundle.z, bundle.e, terms=300)
print("\ndouble zero at 0.45:")
print(f"solver vs series: {np.max(np.abs(bundle.q - q_series)):.2e}")
print(f"eigenvalues of Q: {np.linalg.eigvalsh(bundle.q)}")

# Higher multiplicities push Q towards singularity; the solve is still
# exact because it is a finite linear system, not a truncated sum.
b = BlaschkeSpec(np.array([0.3, -0.2 + 0.4j]), np.array([3, 2]))
bundle = assemble_bundle(data, b)
print("\ndegree-5 constraint:")
print(f"jet matrix size: {bundle.j.shape}, residuals: "
      f"{bundle.stein_residuals[0]:.2e}, {bundle.stein_residuals[1]:.2e}")
print(f"eigenvalue range of Q: [{np.linalg.eigvalsh(bundle.q)[0]:.2e}, "
      f"{np.linalg.eigvalsh(bundle.q)[-1]:.2e}]")
