# Parsing bra-ket expressions into coefficient tensors and back.
#
# A pure tripartite state is a complex array of shape (n1, n2, n3); the ket
# grammar accepts the usual physics shorthand: digit strings, comma-separated
# indices, adjacency as tensor product, and coefficient arithmetic with sqrt
# and the imaginary unit.

import numpy as np

import slocc3 as s

# The two famous three-qubit states.
ghz = s.parse_ket("|000>+|111>", (2, 2, 2))
w = s.parse_ket("(1/sqrt(3))(|001>+|010>+|100>)", (2, 2, 2))

print("GHZ tensor:")
print(ghz.real)
print("W printed canonically:", s.print_ket(w, precision=4))

# Local ranks are the ranks of the three unfoldings; both states look the
# same through this lens even though they are inequivalent.
print("GHZ local ranks:", s.local_ranks(ghz))
print("W   local ranks:", s.local_ranks(w))

# Product states have all local ranks 1.
prod = s.parse_ket("|0>(|0>+|1>)|1>", (2, 2, 2))
print("product state?", s.is_product_state(prod))
print("GHZ product?   ", s.is_product_state(ghz))

# Round trips are exact at full precision.
rng = np.random.default_rng(0)
t = rng.standard_normal((2, 3, 4)) + 1j * rng.standard_normal((2, 3, 4))
back = s.parse_ket(s.print_ket(t), t.shape)
print("random round-trip max error:", np.max(np.abs(back - t)))

# Combining two copies: corresponding parties merge, dims multiply.
w2 = s.kron_regroup(w, w)
print("W x W dims:", w2.shape, "local ranks:", s.local_ranks(w2))
