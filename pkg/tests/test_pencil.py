"""Tests for Kronecker pencil invariants, against hand-computed structures."""

import numpy as np
import pytest

import slocc3 as s


def test_ghz_pencil_two_simple_eigenvalues():
    """x*diag(1,0) + y*diag(0,1): simple rank drops at (1:0) and (0:1)."""
    inv = s.pencil_invariants(s.ghz_state())
    assert inv.normal_rank == 2
    assert inv.col_min_indices == ()
    assert inv.row_min_indices == ()
    assert inv.all_partitions() == ((1,), (1,))
    assert inv.infinite_partition == (1,)
    assert len(inv.finite_divisors) == 1
    ev, part = inv.finite_divisors[0]
    assert abs(ev) < 1e-10 and part == (1,)


def test_w_pencil_single_double_block():
    """W's pencil determinant is -x^2: one size-2 block at infinity."""
    inv = s.pencil_invariants(s.w_state())
    assert inv.normal_rank == 2
    assert inv.col_min_indices == ()
    assert inv.row_min_indices == ()
    assert inv.all_partitions() == ((2,),)


def test_2x1x2_pencil_single_minimal_index():
    """[x, y] has one right minimal index 1 and nothing else."""
    t = s.catalog_build("2x1x2-1")
    inv = s.pencil_invariants(t)
    assert inv.normal_rank == 1
    assert inv.col_min_indices == (1,)
    assert inv.row_min_indices == ()
    assert inv.all_partitions() == ()


def test_2x2x1_pencil_single_left_index():
    t = s.catalog_build("2x2x1-1")
    inv = s.pencil_invariants(t)
    assert inv.normal_rank == 1
    assert inv.col_min_indices == ()
    assert inv.row_min_indices == (1,)
    assert inv.all_partitions() == ()


def test_singular_3x3_pencil_minimal_indices_both_sides():
    """|010>+|001>+|112>+|121>: L1 + transposed L1, no divisors."""
    t = s.catalog_build("2x3x3-3")
    inv = s.pencil_invariants(t)
    assert inv.normal_rank == 2
    assert inv.col_min_indices == (1,)
    assert inv.row_min_indices == (1,)
    assert inv.all_partitions() == ()


def test_2x3x3_regular_pencil_with_cubed_eigenvalue():
    """|100>+|010>+|001>+|112>+|121>: determinant -y^3, one size-3 block."""
    t = s.catalog_build("2x3x3-4")
    inv = s.pencil_invariants(t)
    assert inv.normal_rank == 3
    assert inv.col_min_indices == ()
    assert inv.row_min_indices == ()
    assert inv.all_partitions() == ((3,),)


def test_2x3x3_pencil_with_partition_2_1():
    """|100>+|010>+|001>+|022>: determinant -x^3 with rank drop 2 at x=0."""
    t = s.catalog_build("2x3x3-5")
    inv = s.pencil_invariants(t)
    assert inv.all_partitions() == ((2, 1),)


def test_2x3x5_pencils_distinguished_by_minimal_indices():
    inv1 = s.pencil_invariants(s.catalog_build("2x3x5-1"))
    inv2 = s.pencil_invariants(s.catalog_build("2x3x5-2"))
    assert inv1.col_min_indices == (1, 1)
    assert inv1.all_partitions() == ((1,),)
    assert inv2.col_min_indices == (1, 2)
    assert inv2.all_partitions() == ()
    assert inv1.signature() != inv2.signature()


def test_pencil_requires_mode1_dim_two():
    with pytest.raises(ValueError):
        s.pencil_invariants(np.zeros((3, 2, 2), dtype=complex))
    with pytest.raises(ValueError):
        s.pencil_invariants(np.zeros((2, 2, 2), dtype=complex))


def test_biseparable_pencil_partition():
    """|000>+|011>: pencil x*I2, a single rank-2 drop point with blocks (1,1)."""
    inv = s.pencil_invariants(s.parse_ket("|000>+|011>", (2, 2, 2)))
    assert inv.normal_rank == 2
    assert inv.col_min_indices == () and inv.row_min_indices == ()
    assert inv.all_partitions() == ((1, 1),)


def test_signature_invariant_under_random_slocc():
    """Partition data and minimal indices survive random nonsingular maps."""
    cases = ["2x2x2-1", "2x2x2-2", "2x3x3-4", "2x3x3-5", "2x3x2-1", "2x2x3-2"]
    trial = 0
    for entry_id in cases:
        t = s.catalog_build(entry_id)
        base_sig = s.pencil_invariants(t).signature()
        for _ in range(9):
            trial += 1
            maps = s.random_slocc(t.shape, trial, cond_bound=20)
            image = s.apply_slocc(t, *maps)
            sig = s.pencil_invariants(image).signature()
            assert sig == base_sig, (entry_id, trial)


def test_moebius_moves_eigenvalues_but_not_partitions():
    """A first-party map relocates eigenvalues; partitions stay put."""
    ghz = s.ghz_state()
    a = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex)
    image = s.apply_slocc(ghz, a, np.eye(2), np.eye(2))
    inv = s.pencil_invariants(image)
    assert inv.all_partitions() == ((1,), (1,))
    # the transformed pencil has two finite eigenvalues, no infinite block
    assert inv.infinite_partition == () and len(inv.finite_divisors) == 2


def test_triple_eigenvalue_survives_float_perturbation():
    """Partition (3) is recovered through root clustering after a random map."""
    t = s.catalog_build("2x3x3-4")
    maps = s.random_slocc((2, 3, 3), 777, cond_bound=10)
    inv = s.pencil_invariants(s.apply_slocc(t, *maps))
    assert inv.all_partitions() == ((3,),)
    assert not inv.borderline
