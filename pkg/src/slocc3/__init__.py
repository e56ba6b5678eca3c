"""SLOCC-equivalence invariants of small complex 3-way tensors.

Pure tripartite states are handled as dense complex arrays of shape
(n1, n2, n3).  The package computes tensor-rank intervals with explicit
decomposition certificates, the determinant polynomial of n x n x 3 tensors
and its substitution-equivalence test, reduced densities with the
range-criterion product-vector count, and classification of 2 x M x N
tensors against the canonical table.
"""

from .catalog import (
    CatalogEntry,
    build_335,
    catalog_build,
    catalog_get,
    catalog_list,
    ghz_state,
    lhrgm_build,
    w_state,
)
from .density import (
    density_of,
    density_to_json,
    mixture,
    partial_trace,
    range_basis,
    reduced_density,
    total_trace,
)
from .detpoly import (
    EquivVerdict,
    HomPoly3,
    det_poly,
    detpoly_equiv_test,
    monic_normalize,
    substitute,
)
from .ket import KetSyntaxError, parse_ket, print_ket
from .pencil import PencilInvariants, pencil_invariants
from .product_range import (
    MatrixSubspace,
    ProductVectorReport,
    find_product_vectors,
    range_criterion_compare,
    range_product_count,
)
from .rank import (
    ClassifyResult,
    CpResult,
    RankInterval,
    classify_222,
    classify_2mn,
    cp_als,
    hyperdeterminant_222,
    map_cp_factors,
    rank_interval,
    rank_lower_bound,
)
from .tensor import (
    as_tensor,
    basis_tensor,
    is_product_state,
    kron_regroup,
    local_ranks,
    matrix_from_json,
    matrix_to_json,
    refold,
    tensor_from_json,
    tensor_slice,
    tensor_to_json,
    unfold,
    zero_tensor,
)
from .transforms import (
    apply_slocc,
    apply_type1,
    apply_type2,
    is_nonsingular,
    random_nonsingular,
    random_slocc,
)

__version__ = "0.1.0"

__all__ = [
    "CatalogEntry",
    "ClassifyResult",
    "CpResult",
    "EquivVerdict",
    "HomPoly3",
    "KetSyntaxError",
    "MatrixSubspace",
    "PencilInvariants",
    "ProductVectorReport",
    "RankInterval",
    "apply_slocc",
    "apply_type1",
    "apply_type2",
    "as_tensor",
    "basis_tensor",
    "build_335",
    "catalog_build",
    "catalog_get",
    "catalog_list",
    "classify_222",
    "classify_2mn",
    "cp_als",
    "density_of",
    "density_to_json",
    "det_poly",
    "detpoly_equiv_test",
    "find_product_vectors",
    "ghz_state",
    "hyperdeterminant_222",
    "is_nonsingular",
    "is_product_state",
    "kron_regroup",
    "lhrgm_build",
    "local_ranks",
    "map_cp_factors",
    "matrix_from_json",
    "matrix_to_json",
    "mixture",
    "monic_normalize",
    "parse_ket",
    "partial_trace",
    "pencil_invariants",
    "print_ket",
    "random_nonsingular",
    "random_slocc",
    "range_basis",
    "range_criterion_compare",
    "range_product_count",
    "rank_interval",
    "rank_lower_bound",
    "reduced_density",
    "refold",
    "substitute",
    "tensor_from_json",
    "tensor_slice",
    "tensor_to_json",
    "total_trace",
    "unfold",
    "w_state",
    "zero_tensor",
]
