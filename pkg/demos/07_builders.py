# Building higher canonical classes from lower ones, and the 3 x 3 x 5 form.
#
# The omega constructors extend a 2 x (M-1) x (N-1) or 2 x (M-1) x (N-2)
# state into a canonical 2 x M x N state; side conditions (a != 0 or b != 0)
# keep the variants genuinely distinct.  Every 3 x 3 x 5 state can be brought
# to a normal form consisting of a 2 x n x p block plus a third slab indexed
# by three coefficient vectors.

import numpy as np

import slocc3 as s

base = s.parse_ket("|000>+|011>", (2, 2, 2))

omega0 = s.lhrgm_build("omega0", 3, 3, base, a=1, b=1)
print("omega0:", s.print_ket(omega0))

base1 = s.parse_ket("|000>+|011>", (2, 2, 2))
omega1 = s.lhrgm_build("omega1", 3, 4, base1)
print("omega1:", s.print_ket(omega1))

omega2 = s.lhrgm_build("omega2", 3, 3, base, a=0, b=1, chi=[1, 0])
print("omega2:", s.print_ket(omega2))

# Generic bases produce states of full local rank, which is the point of the
# construction: low classes generate the higher ones.
rng = np.random.default_rng(0)
generic = rng.standard_normal((2, 2, 3)) + 1j * rng.standard_normal((2, 2, 3))
out = s.lhrgm_build("omega1", 3, 5, generic)
print("generic omega1 local ranks:", s.local_ranks(out), "(target (2, 3, 5))")

# The 3 x 3 x 5 normal form: embed a 2 x 3 x 4 canonical state and complete
# the third slab.
psi = np.zeros((2, 3, 5), dtype=complex)
psi[:, :, :4] = s.catalog_build("2x3x4-5")
alpha = np.zeros(5)
alpha[4] = 1.0
state = s.build_335(psi, alpha, rng.standard_normal(5), rng.standard_normal(5))
print("3x3x5 normal form local ranks:", s.local_ranks(state))
