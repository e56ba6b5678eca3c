# Classifying 2 x M x N tensors against the canonical table.
#
# The two mode-1 slices of a 2 x M x N tensor form a matrix pencil whose
# Kronecker invariants (minimal indices plus elementary divisor partitions)
# classify the tensor up to invertible local maps.  The catalog carries one
# representative per class for M <= 3, N <= 6; classification compresses the
# input onto its support, computes the pencil structure, and matches the
# resulting signature.

import numpy as np

import slocc3 as s

print("canonical table:")
for entry in s.catalog_list(table_only=True):
    print(f"  {entry.id:10s} {str(entry.system):11s} {entry.ket_text}")

# Pencil invariants distinguish states with identical local ranks.
for entry_id in ("2x3x3-1", "2x3x3-2", "2x3x3-4", "2x3x3-5"):
    inv = s.pencil_invariants(s.catalog_build(entry_id))
    print(entry_id, "minimal indices", inv.col_min_indices, inv.row_min_indices,
          "partitions", inv.all_partitions())

# Random invertible maps do not change the class.
t = s.catalog_build("2x3x4-3")
maps = s.random_slocc((2, 3, 4), seed=3, cond_bound=20)
res = s.classify_2mn(s.apply_slocc(t, *maps))
print("transformed 2x3x4-3 classifies to:", res.entry.id)

# States embedded in larger dims are compressed first.
padded = np.zeros((2, 3, 4), dtype=complex)
padded[:2, :2, :2] = s.w_state()
res = s.classify_2mn(padded)
print("padded W classifies to:", res.entry.id,
      "(compressed dims", res.compressed_dims, ")")
