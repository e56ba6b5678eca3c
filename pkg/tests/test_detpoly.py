"""Tests for determinant polynomials and the substitution equivalence test."""

import numpy as np
import pytest

import slocc3 as s
from slocc3.detpoly import HomPoly3, _det_poly_symbolic, monomials


def _t1_t2():
    t1 = s.parse_ket("|000>+|111>+|222>", (3, 3, 3))
    t2 = np.zeros((3, 3, 3), dtype=complex)
    t2[0, 0, 0] = t2[1, 1, 0] = 1
    t2[1, 1, 1] = t2[2, 2, 1] = 1
    t2[0, 0, 2] = t2[2, 2, 2] = 1
    return t1, t2


EXPLICIT_SUBSTITUTION = np.array(
    [[0.5, -0.5, 0.5], [0.5, 0.5, -0.5], [-0.5, 0.5, 0.5]], dtype=complex
)

F2_COEFFS = {
    (2, 1, 0): 1, (2, 0, 1): 1, (1, 2, 0): 1, (0, 2, 1): 1,
    (1, 0, 2): 1, (0, 1, 2): 1, (1, 1, 1): 2,
}


def test_det_poly_worked_examples():
    t1, t2 = _t1_t2()
    f1 = s.det_poly(t1)
    assert f1.coeffs == {(1, 1, 1): 1}
    f2 = s.det_poly(t2)
    assert set(f2.coeffs) == set(F2_COEFFS)
    for exp, c in F2_COEFFS.items():
        assert abs(f2.coeffs[exp] - c) < 1e-10


def test_det_poly_zero_third_slice():
    """A = B = I2, C = 0 gives det(xI + yI) = (x + y)^2."""
    t = np.zeros((2, 2, 3), dtype=complex)
    t[:, :, 0] = np.eye(2)
    t[:, :, 1] = np.eye(2)
    f = s.det_poly(t)
    assert f.coeffs == {(2, 0, 0): 1, (1, 1, 0): 2, (0, 2, 0): 1}


def test_det_poly_requires_square_slices():
    with pytest.raises(ValueError):
        s.det_poly(np.zeros((2, 3, 3)))
    with pytest.raises(ValueError):
        s.det_poly(np.zeros((2, 2, 2)))


def test_det_poly_interpolation_matches_symbolic():
    rng = np.random.default_rng(0)
    t = rng.standard_normal((7, 7, 3)) + 1j * rng.standard_normal((7, 7, 3))
    exact = _det_poly_symbolic(t)
    interp = s.det_poly(t)
    diff = exact.coeff_vector() - interp.coeff_vector()
    scale = np.max(np.abs(exact.coeff_vector()))
    assert np.max(np.abs(diff)) < 1e-9 * scale


def test_substitute_identity():
    _, t2 = _t1_t2()
    f2 = s.det_poly(t2)
    out = s.substitute(f2, np.eye(3))
    assert out.coeffs == f2.coeffs


def test_substitute_worked_example():
    """The explicit substitution maps f2 back to f1 = xyz."""
    t1, t2 = _t1_t2()
    f2 = s.det_poly(t2)
    out = s.substitute(f2, EXPLICIT_SUBSTITUTION)
    target = s.det_poly(t1)
    diff = out.coeff_vector() - target.coeff_vector()
    assert np.max(np.abs(diff)) < 1e-12


def test_substitute_composition():
    rng = np.random.default_rng(1)
    t = rng.standard_normal((3, 3, 3)) + 1j * rng.standard_normal((3, 3, 3))
    f = s.det_poly(t)
    for trial in range(10):
        g1 = s.random_nonsingular(3, 2 * trial, cond_bound=50)
        g2 = s.random_nonsingular(3, 2 * trial + 1, cond_bound=50)
        lhs = s.substitute(s.substitute(f, g1), g2)
        rhs = s.substitute(f, g1 @ g2)
        scale = max(np.max(np.abs(rhs.coeff_vector())), 1.0)
        assert np.max(np.abs(lhs.coeff_vector() - rhs.coeff_vector())) < 1e-12 * scale


def test_substitute_is_linear_and_degree_preserving():
    f = HomPoly3(2, {(2, 0, 0): 1.0, (0, 1, 1): 2.0})
    h = HomPoly3(2, {(1, 1, 0): -3.0})
    g = s.random_nonsingular(3, 7)
    combo = s.substitute(f + h, g)
    split = s.substitute(f, g) + s.substitute(h, g)
    assert combo.degree == 2
    np.testing.assert_allclose(combo.coeff_vector(), split.coeff_vector(), atol=1e-12)


def test_monic_normalize_scalar_multiple():
    f = HomPoly3(3, {(1, 1, 1): 3.0})
    normal, lead = s.monic_normalize(f)
    assert lead == 3.0
    assert normal.coeffs == {(1, 1, 1): 1.0}


def test_monic_normalize_f2_already_monic():
    _, t2 = _t1_t2()
    f2 = s.det_poly(t2)
    normal, lead = s.monic_normalize(f2)
    assert abs(lead - 1.0) < 1e-12
    assert np.max(np.abs(normal.coeff_vector() - f2.coeff_vector())) < 1e-12


def test_monic_normalize_scale_invariant_and_idempotent():
    rng = np.random.default_rng(3)
    t = rng.standard_normal((3, 3, 3)) + 1j * rng.standard_normal((3, 3, 3))
    f = s.det_poly(t)
    n1, _ = s.monic_normalize(f)
    n2, _ = s.monic_normalize(f * (2.5 - 1.5j))
    np.testing.assert_allclose(n1.coeff_vector(), n2.coeff_vector(), atol=1e-12)
    n3, lead = s.monic_normalize(n1)
    assert abs(lead - 1.0) < 1e-14
    np.testing.assert_allclose(n3.coeff_vector(), n1.coeff_vector(), atol=1e-14)


def test_monic_normalize_rejects_zero():
    with pytest.raises(ValueError):
        s.monic_normalize(HomPoly3(2, {}))


def test_equivariance_type1():
    rng = np.random.default_rng(4)
    for trial in range(15):
        n = (2, 3, 4)[trial % 3]
        t = rng.standard_normal((n, n, 3)) + 1j * rng.standard_normal((n, n, 3))
        p = s.random_nonsingular(n, 1000 + 2 * trial, cond_bound=50)
        q = s.random_nonsingular(n, 1001 + 2 * trial, cond_bound=50)
        lhs = s.det_poly(s.apply_type1(t, p, q)).coeff_vector()
        rhs = np.linalg.det(p) * np.linalg.det(q) * s.det_poly(t).coeff_vector()
        scale = max(np.max(np.abs(rhs)), np.max(np.abs(lhs)))
        assert np.max(np.abs(lhs - rhs)) < 1e-10 * scale


def test_equivariance_type2():
    rng = np.random.default_rng(5)
    for trial in range(15):
        n = (2, 3, 4)[trial % 3]
        t = rng.standard_normal((n, n, 3)) + 1j * rng.standard_normal((n, n, 3))
        g = s.random_nonsingular(3, 2000 + trial, cond_bound=50)
        lhs = s.det_poly(s.apply_type2(t, g)).coeff_vector()
        rhs = s.substitute(s.det_poly(t), g).coeff_vector()
        scale = max(np.max(np.abs(rhs)), np.max(np.abs(lhs)))
        assert np.max(np.abs(lhs - rhs)) < 1e-10 * scale


def test_equiv_test_self_is_identity():
    t1, _ = _t1_t2()
    verdict = s.detpoly_equiv_test(t1, t1)
    assert verdict.kind == "CandidateFound"
    assert verdict.residual == 0.0
    np.testing.assert_array_equal(verdict.g, np.eye(3))


def test_equiv_test_worked_pair():
    t1, t2 = _t1_t2()
    verdict = s.detpoly_equiv_test(t1, t2, restarts=64, seed=0)
    assert verdict.kind == "CandidateFound"
    assert verdict.residual < 1e-8
    # rows of G must match the linear factors of f2 up to scale/permutation
    rows = []
    for row in verdict.g:
        lead = row[np.argmax(np.abs(row))]
        rows.append(row / lead)
    targets = [np.array(v, complex) for v in ((1, 1, 0), (0, 1, 1), (1, 0, 1))]
    for target in targets:
        assert any(np.max(np.abs(r - target)) < 1e-4 for r in rows)


def test_equiv_test_certified_obstruction():
    t1, _ = _t1_t2()
    upper = np.zeros((3, 3, 3), dtype=complex)
    upper[0, 1, 0] = upper[0, 2, 1] = upper[1, 2, 2] = 1  # strictly upper slices
    verdict = s.detpoly_equiv_test(upper, t1)
    assert verdict.kind == "CertifiedObstruction"
    reversed_verdict = s.detpoly_equiv_test(t1, upper)
    assert reversed_verdict.kind == "CertifiedObstruction"


def test_equiv_test_both_zero():
    upper = np.zeros((3, 3, 3), dtype=complex)
    upper[0, 1, 0] = upper[0, 2, 1] = upper[1, 2, 2] = 1
    verdict = s.detpoly_equiv_test(upper, 2 * upper)
    assert verdict.kind == "CandidateFound"
    assert verdict.residual == 0.0


def test_equiv_test_found_for_random_transform_pairs():
    rng = np.random.default_rng(6)
    for trial in range(50):
        n = (2, 3)[trial % 2]
        t = rng.standard_normal((n, n, 3)) + 1j * rng.standard_normal((n, n, 3))
        p = s.random_nonsingular(n, 3000 + trial, cond_bound=20)
        q = s.random_nonsingular(n, 3100 + trial, cond_bound=20)
        g = s.random_nonsingular(3, 3200 + trial, cond_bound=20)
        image = s.apply_type2(s.apply_type1(t, p, q), g)
        verdict = s.detpoly_equiv_test(t, image, restarts=64, seed=trial)
        assert verdict.kind == "CandidateFound", verdict.detail
        assert verdict.residual < 1e-8


def test_equiv_test_is_necessary_not_sufficient():
    """States of different rank can share a determinant polynomial.

    The six-permutation state's polynomial is 2*x*y*z, monic-equal to the
    diagonal state's x*y*z, so the substitution test passes with G = I even
    though the rank intervals separate the pair.
    """
    diag = s.parse_ket("|000>+|111>+|222>", (3, 3, 3))
    perm = s.parse_ket("|012>+|021>+|102>+|120>+|201>+|210>", (3, 3, 3))
    f_perm = s.det_poly(perm)
    assert f_perm.coeffs == {(1, 1, 1): 2}
    verdict = s.detpoly_equiv_test(diag, perm, restarts=4, seed=0)
    assert verdict.kind == "CandidateFound"
    assert verdict.residual < 1e-14


def test_poly_text_and_json():
    _, t2 = _t1_t2()
    f2 = s.det_poly(t2)
    assert f2.to_text() == "x^2*y + x^2*z + x*y^2 + 2*x*y*z + x*z^2 + y^2*z + y*z^2"
    back = HomPoly3.from_json(f2.to_json())
    assert back.degree == f2.degree
    assert back.coeffs == f2.coeffs


def test_monomials_order():
    assert monomials(2) == [
        (2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)
    ]
