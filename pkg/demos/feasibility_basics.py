"""
Deciding solvability of constrained interpolation problems
==========================================================

A constrained interpolation problem asks for a holomorphic function on
the unit disk, bounded by one, with vanishing derivative at the origin,
taking prescribed values at prescribed nodes.  This script walks through
the two decision routes the library offers and the classic example where
the constraint genuinely bites.
"""

from cnpick import (
    DataSet,
    is_psd,
    one_point_disk,
    pick_matrix,
    search_lambda,
    search_x_grid,
)

# A single interpolation condition s(0.5) = 0.5.  One-point problems are
# always solvable, and the set of admissible origin values s(0) = x is a
# closed disk with an explicit center and radius.
data = DataSet.scalar([0.5], [0.5])
disk = one_point_disk(0.5, 0.5)
print(f"feasible origin values: disk centered {disk.center:.6f}, radius {disk.radius:.6f}")

# The grid search confirms and returns a concrete witness (the best
# margin lands at the disk center).
report = search_x_grid(data, resolution=64)
print(f"search: {report.status}, witness x = {complex(report.witness_x[0, 0]):.6f}")

# The complementary one-parameter criterion certifies feasibility by
# exhibiting a single disk point whose criterion matrix is PSD.
report = search_lambda(data, resolution=64)
print(f"one-parameter route: {report.status} at lambda = {report.witness_lambda:.6f}")

# Now the instance that shows the constraint is not free: targets
# w = (0.3, -0.3) at nodes z = (0.3, -0.3).  The identity function
# interpolates, so the unconstrained problem is solvable...
data = DataSet.scalar([0.3, -0.3], [0.3, -0.3])
ok, margin = is_psd(pick_matrix(data))
print(f"\nclassical Pick matrix PSD: {ok} (min eigenvalue {margin:.2e})")

# ... but no interpolant with vanishing derivative at 0 exists.  At the
# certifying resolution the margin stays uniformly negative over the
# whole refined parameter grid.
report = search_x_grid(data, resolution=200, refine=2)
print(f"constrained search: {report.status}, best margin {report.margin:.4f}")
print(f"grid stats: {report.grid_stats}")

report = search_lambda(data, resolution=200, refine=2)
print(f"one-parameter route agrees: {report.status}")
