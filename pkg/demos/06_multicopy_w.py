# Multi-copy states: two copies of W as a single 4 x 4 x 4 tensor.
#
# Regrouping merges corresponding parties, so ranks can only be probed in the
# combined space.  One copy of W has rank 3; two copies famously need only 7
# product terms, not 9.  ALS exhibits the rank-7 decomposition numerically
# (the matching lower bound is an analytic result, not something a desk
# computation reproduces).

import numpy as np

import slocc3 as s

w = s.w_state()
w2 = s.kron_regroup(w, w)
print("W x W dims:", w2.shape, "local ranks:", s.local_ranks(w2))

res9 = s.cp_als(w2, 9, seed=0)
res8 = s.cp_als(w2, 8, restarts=128, seed=0, tol=1e-6)
res7 = s.cp_als(w2, 7, restarts=128, seed=0, tol=1e-6)
print(f"R=9 residual {res9.residual:.2e} (9 = 3*3, the termwise bound)")
print(f"R=8 residual {res8.residual:.2e}")
print(f"R=7 residual {res7.residual:.2e}  <- two copies are cheaper than 3x3")

# The rank-7 factors reconstruct the regrouped tensor.
err = np.linalg.norm(res7.reconstruct() - w2) / np.linalg.norm(w2)
print("relative reconstruction error at R=7:", f"{err:.2e}")

# At R = 6 the search fails; that by itself proves nothing about the rank,
# and the library never turns such a failure into a lower bound.
res6 = s.cp_als(w2, 6, restarts=16, max_iter=500, seed=0, tol=1e-6)
print("R=6 success:", res6.success, f"best residual {res6.residual:.2e}")
