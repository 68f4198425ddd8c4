"""
The kernel family and infeasibility witnesses
=============================================

Feasibility of the constrained problem is equivalent to positivity of a
quadratic form for every member of a family of reproducing kernels
indexed by normalized parameter pairs.  One negative value for one
parameter is a certificate of infeasibility; this script finds such a
witness for the documented infeasible instance and shows the scan
passing on data that is feasible by construction.
"""

import numpy as np

from cnpick import (
    DataSet,
    generate_feasible,
    grassmann_sample,
    is_psd,
    kernel_eval,
    kernel_gram,
    necessity_form,
    necessity_scan,
)

# The kernels are positive: any finite Gram matrix is PSD.
param = grassmann_sample(seed=7, ell=2, ell_prime=2)
points = np.array([0.1, -0.4 + 0.2j, 0.5j, 0.3])
ok, min_eig = is_psd(kernel_gram(param, points))
print(f"kernel Gram matrix PSD: {ok} (min eigenvalue {min_eig:.2e})")

# Scalar parameters have an explicit formula; at the origin the tail
# vanishes and only the rank-one part survives.
scalar = grassmann_sample(seed=1, ell=1, ell_prime=1)
print(f"K(0, 0) = |alpha|^2 = {kernel_eval(scalar, 0, 0)[0, 0].real:.6f}")

# Witness hunt on the infeasible instance.  The canonical scalar
# parameters are swept first and already deliver the certificate.
data = DataSet.scalar([0.3, -0.3], [0.3, -0.3])
scan = necessity_scan(data, samples=500, seed=0)
print(f"\nscan status: {scan.status} at sample {scan.witness_index}")
print(f"witness parameter alpha={scan.witness_param.alpha.ravel()}, "
      f"beta={scan.witness_param.beta.ravel()}")
print(f"form value {scan.witness_value:.6f} (negative = infeasible)")

# Re-evaluate the recorded witness through the public evaluator.
value = necessity_form(data, scan.witness_param, scan.witness_tuple)
print(f"re-evaluated witness value: {value:.6f}")

# On feasible-by-construction data the scan finds nothing, and says so
# in the only honest way: no witness among N samples.
feasible_data, _ = generate_feasible(seed=5, n=3)
scan = necessity_scan(feasible_data, samples=500, seed=0)
print(f"\nfeasible instance: {scan.status} "
      f"(min relative margin {scan.min_value:.2e} over {scan.samples_evaluated} samples)")
