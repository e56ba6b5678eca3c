"""Product vectors in a subspace of a bipartite space.

Vectors of C^M tensor C^N reshaped as M x N matrices turn "product vector"
into "rank-1 matrix", so counting linearly independent product states in the
range of a reduced density matrix becomes finding the rank-1 locus of a
matrix subspace.  Dimension k = 1 and the pencil case k = 2 are decided
exactly; k >= 3 falls back to a seeded multi-start search whose result is an
explicit lower bound, never an exact count.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .density import range_basis, reduced_density
from .tensor import as_tensor, local_ranks, matrix_rank_tol

MINOR_TOL = 1e-7
ROOT_CLUSTER_RADIUS = 1e-7
RECONSTRUCT_TOL = 1e-8

PARTY_NAMES = {"A": 0, "B": 1, "C": 2}


@dataclass
class MatrixSubspace:
    """Linearly independent basis of M x N complex matrices."""

    m: int
    n: int
    basis: list

    def __post_init__(self):
        self.basis = [np.asarray(b, dtype=complex) for b in self.basis]
        k = len(self.basis)
        if not 1 <= k <= self.m * self.n:
            raise ValueError(f"subspace dimension {k} out of range")
        for b in self.basis:
            if b.shape != (self.m, self.n):
                raise ValueError(f"basis matrix shape {b.shape} != ({self.m},{self.n})")
        stack = np.stack([b.ravel() for b in self.basis])
        if matrix_rank_tol(stack, 1e-9) != k:
            raise ValueError("basis matrices are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def member(self, coeffs) -> np.ndarray:
        out = np.zeros((self.m, self.n), dtype=complex)
        for c, b in zip(coeffs, self.basis):
            out += c * b
        return out


@dataclass
class ProductVectorReport:
    """Product vectors found in a subspace, with an exactness guarantee.

    ``vectors`` holds (u, v) pairs whose outer products lie in the subspace
    (up to scale); ``independent_count`` is the rank of their span.
    ``exactness`` is "Exact" when the computation provably found the whole
    rank-1 locus and "LowerBound" otherwise; ``continuum`` marks pencils
    whose every member is a product vector.
    """

    vectors: list
    independent_count: int
    exactness: str
    continuum: bool = False
    detail: str = ""

    def to_json(self) -> str:
        vecs = [
            {
                "u": [[z.real, z.imag] for z in u],
                "v": [[z.real, z.imag] for z in v],
            }
            for u, v in self.vectors
        ]
        return json.dumps(
            {
                "vectors": vecs,
                "independent_count": self.independent_count,
                "exactness": self.exactness,
                "continuum": self.continuum,
                "detail": self.detail,
            },
            sort_keys=True,
        )


def _all_minors(mat) -> np.ndarray:
    m, n = mat.shape
    vals = []
    for r1 in range(m):
        for r2 in range(r1 + 1, m):
            for c1 in range(n):
                for c2 in range(c1 + 1, n):
                    vals.append(
                        mat[r1, c1] * mat[r2, c2] - mat[r1, c2] * mat[r2, c1]
                    )
    return np.array(vals, dtype=complex)


def _rank_one_factors(mat):
    """Split a (near) rank-1 matrix into (u, v) with outer(u, v) ~ mat."""
    uu, ss, vh = np.linalg.svd(mat)
    return uu[:, 0] * ss[0], vh[0].copy()


def _project_to_subspace(space: MatrixSubspace, mat):
    stack = np.stack([b.ravel() for b in space.basis], axis=1)
    coeffs, *_ = np.linalg.lstsq(stack, mat.ravel(), rcond=None)
    return coeffs


def _polish(space: MatrixSubspace, coeffs, iters: int = 4):
    """Alternate rank-1 truncation and projection back onto the subspace."""
    c = np.asarray(coeffs, dtype=complex)
    for _ in range(iters):
        m = space.member(c)
        norm = np.linalg.norm(m)
        if norm == 0:
            return None
        uu, ss, vh = np.linalg.svd(m / norm)
        rank1 = ss[0] * np.outer(uu[:, 0], vh[0])
        c = _project_to_subspace(space, rank1)
    norm = np.linalg.norm(c)
    return c / norm if norm > 0 else None


def _accept_candidate(space: MatrixSubspace, coeffs, tol: float):
    """Polish a candidate and keep it only if it is a genuine rank-1 member."""
    c = _polish(space, coeffs)
    if c is None:
        return None
    m = space.member(c)
    norm = np.linalg.norm(m)
    if norm < 1e-12:
        return None
    m_hat = m / norm
    minors = _all_minors(m_hat)
    if minors.size and np.max(np.abs(minors)) > tol:
        return None
    u, v = _rank_one_factors(m_hat)
    if np.linalg.norm(np.outer(u, v) - m_hat) > RECONSTRUCT_TOL:
        return None
    return u, v, m_hat


def _dedup(found, new_mhat) -> bool:
    for _, _, m_hat in found:
        if abs(np.vdot(m_hat, new_mhat)) > 1.0 - 1e-6:
            return True
    return False


def _pencil_minor_polys(b1, b2) -> np.ndarray:
    """Quadratic-in-t coefficients (t^2, t, 1) of every 2x2 minor of t*B1+B2."""
    m, n = b1.shape
    polys = []
    for r1 in range(m):
        for r2 in range(r1 + 1, m):
            for c1 in range(n):
                for c2 in range(c1 + 1, n):
                    a11, a12 = b1[r1, c1], b1[r1, c2]
                    a21, a22 = b1[r2, c1], b1[r2, c2]
                    d11, d12 = b2[r1, c1], b2[r1, c2]
                    d21, d22 = b2[r2, c1], b2[r2, c2]
                    polys.append(
                        [
                            a11 * a22 - a12 * a21,
                            a11 * d22 + d11 * a22 - a12 * d21 - d12 * a21,
                            d11 * d22 - d12 * d21,
                        ]
                    )
    return np.array(polys, dtype=complex)


def _cluster_roots(roots):
    out = []
    for r in sorted(roots, key=lambda z: (abs(z), z.real, z.imag)):
        if all(abs(r - s) > ROOT_CLUSTER_RADIUS * (1.0 + max(abs(r), abs(s))) for s in out):
            out.append(r)
    return out


def find_product_vectors(space: MatrixSubspace, tol: float = MINOR_TOL,
                         starts: int = 16, seed: int = 0) -> ProductVectorReport:
    """Find rank-1 members of a matrix subspace.

    k = 1: the basis matrix either is rank 1 or is not.  k = 2: exact pencil
    computation via the common roots of all 2x2 minors of t*B1 + B2 together
    with the point at infinity; a pencil whose minors vanish identically is
    flagged as a continuum.  k >= 3: seeded multi-start Gauss-Newton on the
    minor equations; the report is then only a lower bound.
    """
    k = space.dim
    if k == 1:
        return _exact_k1(space, tol)
    if k == 2:
        return _exact_k2(space, tol)
    return _search_k3(space, tol, starts, seed)


def _span_count(found) -> int:
    if not found:
        return 0
    stack = np.stack([m.ravel() for _, _, m in found])
    return matrix_rank_tol(stack, 1e-9)


def _report(found, exactness, continuum=False, detail="") -> ProductVectorReport:
    return ProductVectorReport(
        vectors=[(u, v) for u, v, _ in found],
        independent_count=_span_count(found),
        exactness=exactness,
        continuum=continuum,
        detail=detail,
    )


def _exact_k1(space, tol):
    b = space.basis[0]
    b_hat = b / np.linalg.norm(b)
    minors = _all_minors(b_hat)
    if minors.size == 0 or np.max(np.abs(minors)) <= tol:
        u, v = _rank_one_factors(b_hat)
        return _report([(u, v, b_hat)], "Exact")
    return _report([], "Exact", detail="single basis matrix has rank >= 2")


def _exact_k2(space, tol):
    b1 = space.basis[0] / np.linalg.norm(space.basis[0])
    b2 = space.basis[1] / np.linalg.norm(space.basis[1])
    norm_space = MatrixSubspace(space.m, space.n, [b1, b2])
    polys = _pencil_minor_polys(b1, b2)
    if polys.size == 0:
        # a one-row or one-column space: every member is rank <= 1
        return _continuum_report(norm_space, tol)
    poly_scale = np.max(np.abs(polys))
    if poly_scale <= 1e-12:
        return _continuum_report(norm_space, tol)

    best = polys[int(np.argmax(np.max(np.abs(polys), axis=1)))]
    coeffs = best.copy()
    # drop negligible leading coefficients; each drop moves a root to infinity
    while len(coeffs) > 1 and abs(coeffs[0]) <= 1e-12 * np.max(np.abs(coeffs)):
        coeffs = coeffs[1:]
    roots = np.roots(coeffs) if len(coeffs) > 1 else np.array([])

    found = []
    for t0 in _cluster_roots(list(roots)):
        cand = _accept_candidate(norm_space, np.array([t0, 1.0]), tol)
        if cand is not None and not _dedup(found, cand[2]):
            found.append(cand)
    # the point at infinity is the member B1 alone
    cand = _accept_candidate(norm_space, np.array([1.0, 0.0]), tol)
    if cand is not None and not _dedup(found, cand[2]):
        found.append(cand)
    return _report(found, "Exact")


def _continuum_report(space, tol):
    """Every pencil member is rank <= 1; sample a few and report a lower bound."""
    found = []
    for c in ([1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, -1.0], [1.0, 1.0j]):
        cand = _accept_candidate(space, np.array(c, dtype=complex), tol)
        if cand is not None and not _dedup(found, cand[2]):
            found.append(cand)
    return _report(found, "LowerBound", continuum=True,
                   detail="every member of the pencil is a product vector")


def _search_k3(space, tol, starts, seed):
    k = space.dim
    found = []
    root_seq = np.random.SeedSequence([seed, space.m, space.n, k])
    for child in root_seq.spawn(starts):
        rng = np.random.default_rng(child)
        c0 = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        c0 /= np.linalg.norm(c0)
        x0 = np.concatenate([c0.real, c0.imag])

        def residual(x):
            c = x[:k] + 1j * x[k:]
            norm = np.linalg.norm(c)
            if norm < 1e-12:
                return np.full(2 * _minor_count(space) + 1, 1.0)
            minors = _all_minors(space.member(c / norm))
            return np.concatenate([minors.real, minors.imag, [norm - 1.0]])

        method = "lm" if 2 * _minor_count(space) + 1 >= 2 * k else "trf"
        sol = least_squares(residual, x0, method=method, xtol=1e-15, ftol=1e-15,
                            gtol=1e-15, max_nfev=2000)
        c = sol.x[:k] + 1j * sol.x[k:]
        cand = _accept_candidate(space, c, tol)
        if cand is not None and not _dedup(found, cand[2]):
            found.append(cand)
    return _report(found, "LowerBound",
                   detail=f"multi-start search with {starts} starts")


def _minor_count(space) -> int:
    m, n = space.m, space.n
    return (m * (m - 1) // 2) * (n * (n - 1) // 2)


# --- range criterion ----------------------------------------------------------


def _party_index(party) -> int:
    if isinstance(party, str):
        try:
            return PARTY_NAMES[party.upper()]
        except KeyError:
            raise ValueError(f"unknown party {party!r}") from None
    p = int(party)
    if p not in (0, 1, 2):
        raise ValueError("party must be A, B, C or 0, 1, 2")
    return p


def range_product_count(psi, traced_party, tol: float = MINOR_TOL,
                        starts: int = 16, seed: int = 0) -> ProductVectorReport:
    """Count product vectors in the range of the reduced density matrix
    obtained by tracing out one party of a tripartite pure state."""
    psi = as_tensor(psi)
    p = _party_index(traced_party)
    rho = reduced_density(psi, psi.shape, [p])
    kept = [d for i, d in enumerate(psi.shape) if i != p]
    basis = [vec.reshape(kept[0], kept[1]) for vec in range_basis(rho)]
    if not basis:
        raise ValueError("reduced density matrix has empty range")
    space = MatrixSubspace(kept[0], kept[1], basis)
    return find_product_vectors(space, tol=tol, starts=starts, seed=seed)


def range_criterion_compare(s1, s2, traced_party, tol: float = MINOR_TOL,
                            starts: int = 16, seed: int = 0) -> str:
    """Necessary-condition comparison of two tripartite states.

    Returns "Inequivalent" when the local ranks differ, or when both product
    counts are exact and disagree; otherwise "Inconclusive".  A lower-bound
    report never certifies inequivalence.
    """
    s1 = as_tensor(s1)
    s2 = as_tensor(s2)
    if s1.shape != s2.shape:
        raise ValueError("states must share party dims")
    if local_ranks(s1) != local_ranks(s2):
        return "Inequivalent"
    r1 = range_product_count(s1, traced_party, tol=tol, starts=starts, seed=seed)
    r2 = range_product_count(s2, traced_party, tol=tol, starts=starts, seed=seed)
    if (
        r1.exactness == "Exact"
        and r2.exactness == "Exact"
        and r1.independent_count != r2.independent_count
    ):
        return "Inequivalent"
    return "Inconclusive"
