"""Tensor-rank intervals, alternating least squares, and 2 x M x N classes.

Lower bounds come from local ranks (exact classification for 2 x 2 x 2 via
the degree-4 hyperdeterminant, which is what pins the rank-3 class that no
unfolding bound reaches).  Upper bounds are explicit numerical
decompositions found by seeded CP-ALS; a failed ALS run proves nothing and
is never used to raise a lower bound, and a successful one certifies only
that a decomposition with that many terms exists numerically (the border
rank may be smaller).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import catalog as _catalog
from .pencil import pencil_invariants
from .tensor import as_tensor, local_ranks, unfold

BORDER_RANK_CAVEAT = (
    "numerical decomposition certificate: rank <= R at the stated residual; "
    "border rank may be smaller and ALS failure proves nothing"
)


# --- exact 2 x 2 x 2 classification ------------------------------------------


def hyperdeterminant_222(t) -> complex:
    """Cayley hyperdeterminant of a 2 x 2 x 2 tensor (degree 4 invariant)."""
    t = as_tensor(t)
    if t.shape != (2, 2, 2):
        raise ValueError(f"expected dims (2, 2, 2), got {t.shape}")
    a = {
        (i, j, k): t[i, j, k] for i in range(2) for j in range(2) for k in range(2)
    }
    sq = (
        a[0, 0, 0] ** 2 * a[1, 1, 1] ** 2
        + a[0, 0, 1] ** 2 * a[1, 1, 0] ** 2
        + a[0, 1, 0] ** 2 * a[1, 0, 1] ** 2
        + a[1, 0, 0] ** 2 * a[0, 1, 1] ** 2
    )
    cross = (
        a[0, 0, 0] * a[0, 0, 1] * a[1, 1, 0] * a[1, 1, 1]
        + a[0, 0, 0] * a[0, 1, 0] * a[1, 0, 1] * a[1, 1, 1]
        + a[0, 0, 0] * a[0, 1, 1] * a[1, 0, 0] * a[1, 1, 1]
        + a[0, 0, 1] * a[0, 1, 0] * a[1, 0, 1] * a[1, 1, 0]
        + a[0, 0, 1] * a[0, 1, 1] * a[1, 0, 0] * a[1, 1, 0]
        + a[0, 1, 0] * a[0, 1, 1] * a[1, 0, 0] * a[1, 0, 1]
    )
    quad = (
        a[0, 0, 0] * a[0, 1, 1] * a[1, 0, 1] * a[1, 1, 0]
        + a[0, 0, 1] * a[0, 1, 0] * a[1, 0, 0] * a[1, 1, 1]
    )
    return complex(sq - 2 * cross + 4 * quad)


CLASS_RANKS = {
    "Zero": 0,
    "Product": 1,
    "BiSeparable-A": 2,
    "BiSeparable-B": 2,
    "BiSeparable-C": 2,
    "GHZclass": 2,
    "Wclass": 3,
}


def classify_222(t, tol: float = 1e-10) -> str:
    """Exact SLOCC class of a 2 x 2 x 2 tensor.

    Nonvanishing hyperdeterminant means the rank-2 generic class; otherwise
    the local-rank pattern decides, with all-ranks-2 and vanishing
    hyperdeterminant being the rank-3 class.
    """
    t = as_tensor(t)
    if t.shape != (2, 2, 2):
        raise ValueError(f"expected dims (2, 2, 2), got {t.shape}")
    scale = float(np.max(np.abs(t)))
    if scale == 0.0:
        return "Zero"
    if abs(hyperdeterminant_222(t)) > tol * scale**4:
        return "GHZclass"
    ranks = local_ranks(t)
    if ranks == (1, 1, 1):
        return "Product"
    if ranks == (2, 2, 2):
        return "Wclass"
    if ranks[0] == 1:
        return "BiSeparable-A"
    if ranks[1] == 1:
        return "BiSeparable-B"
    return "BiSeparable-C"


def rank_lower_bound(t, tol: float = 1e-9):
    """Largest local rank, upgraded to the exact value for 2 x 2 x 2 dims.

    Returns (bound, certificate) where certificate names the argument used.
    """
    t = as_tensor(t)
    if not np.any(t):
        raise ValueError("zero tensor has no rank bound")
    if t.shape == (2, 2, 2):
        cls = classify_222(t)
        return CLASS_RANKS[cls], f"Classifier222({cls})"
    return max(local_ranks(t, tol)), "LocalRank"


# --- CP decomposition ----------------------------------------------------------


@dataclass
class CpResult:
    """Outcome of a CP-ALS search at a fixed number of terms."""

    success: bool
    rank: int
    residual: float
    factors: tuple | None
    detail: str = ""

    def reconstruct(self) -> np.ndarray:
        a, b, c = self.factors
        return np.einsum("ir,jr,kr->ijk", a, b, c)

    def to_json(self) -> str:
        doc = {
            "success": self.success,
            "rank": self.rank,
            "residual": self.residual,
            "detail": self.detail,
        }
        if self.factors is not None:
            doc["factors"] = [
                [[z.real, z.imag] for z in f.ravel(order="C")] for f in self.factors
            ]
            doc["factor_shapes"] = [list(f.shape) for f in self.factors]
        return json.dumps(doc, sort_keys=True)


def _khatri_rao(u, v) -> np.ndarray:
    r = u.shape[1]
    return np.einsum("jr,kr->jkr", u, v).reshape(-1, r)


def _direct_decomposition(t, r):
    """Exact decomposition over the two smallest modes (basis x basis x fiber)."""
    dims = t.shape
    order = np.argsort(dims)
    m1, m2 = sorted(order[:2])
    m3 = 3 - m1 - m2
    factors = [np.zeros((d, r), dtype=complex) for d in dims]
    col = 0
    for i1 in range(dims[m1]):
        for i2 in range(dims[m2]):
            idx = [slice(None)] * 3
            idx[m1], idx[m2] = i1, i2
            fiber = t[tuple(idx)]
            factors[m1][i1, col] = 1.0
            factors[m2][i2, col] = 1.0
            factors[m3][:, col] = fiber
            col += 1
    return tuple(factors)


def _als_init(t, r, rng, structured: bool):
    dims = t.shape
    factors = []
    for mode in (1, 2, 3):
        d = dims[mode - 1]
        f = rng.standard_normal((d, r)) + 1j * rng.standard_normal((d, r))
        if structured:
            u, _, _ = np.linalg.svd(unfold(t, mode), full_matrices=False)
            k = min(r, u.shape[1])
            f[:, :k] = u[:, :k]
        factors.append(f)
    return factors


def _spectral_init(t, r):
    """Generalized-eigenvector initialization where R fits two of the dims.

    Compressing to an r x r x 2 core turns an exact rank-r decomposition
    into a simultaneous diagonalization: the eigenvectors of one core slice
    times the inverse of the other recover the first two factors directly.
    Lands ALS inside the quadratic basin, which matters for tensors close to
    a degenerate (lower border rank) boundary where random starts swamp.
    """
    for perm in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        dims = tuple(t.shape[p] for p in perm)
        if r > min(dims[0], dims[1]) or dims[2] < 2:
            continue
        tp = np.transpose(t, perm)
        try:
            u1 = np.linalg.svd(tp.reshape(dims[0], -1), full_matrices=False)[0][:, :r]
            u2 = np.linalg.svd(
                np.moveaxis(tp, 1, 0).reshape(dims[1], -1), full_matrices=False
            )[0][:, :r]
            u3 = np.linalg.svd(
                np.moveaxis(tp, 2, 0).reshape(dims[2], -1), full_matrices=False
            )[0][:, :2]
            core = np.einsum("ip,jq,kr,ijk->pqr", u1.conj(), u2.conj(), u3.conj(), tp)
            # generic fixed mix keeps the inverted slice away from singularity
            ga = 0.9397 * core[:, :, 0] + 0.3420 * core[:, :, 1]
            gb = -0.3420 * core[:, :, 0] + 0.9397 * core[:, :, 1]
            ev_a, wa = np.linalg.eig(ga @ np.linalg.inv(gb))
            ev_b, wb = np.linalg.eig(ga.T @ np.linalg.inv(gb).T)
            match = [int(np.argmin(np.abs(ev_b - lam))) for lam in ev_a]
            if sorted(match) != list(range(r)):
                continue
            fa = u1 @ wa
            fb = u2 @ wb[:, match]
            z = np.einsum("ir,jr->ijr", fa, fb).reshape(-1, r)
            m3 = np.moveaxis(tp, 2, 0).reshape(dims[2], -1)
            fc = np.linalg.lstsq(z, m3.T, rcond=None)[0].T
            factors = [None] * 3
            for pos, mode in enumerate(perm):
                factors[mode] = (fa, fb, fc)[pos]
            return factors
        except np.linalg.LinAlgError:
            continue
    return None


def cp_als(t, r: int, restarts: int = 32, max_iter: int = 2000, seed: int = 0,
           tol: float = 1e-8, stall_tol: float = 1e-12) -> CpResult:
    """Search for an R-term decomposition by alternating least squares.

    Success means some restart reached relative residual below ``tol``.
    When R is at least the product of the two smallest dims the exact
    slice-wise construction is returned directly.  Restart 0 is initialized
    from unfolding singular vectors, restart 1 from the generalized
    eigenvector construction when R fits two of the dims, the rest from
    seeded Gaussians; restarts stop at the first success and the best
    attempt wins ties by restart order.

    A tensor whose border rank is below its rank can reach residuals under
    ``tol`` at the border rank through decompositions with enormous,
    nearly-cancelling terms; the certificate's factor norms expose this.
    Success always means exactly "a numerical decomposition at the stated
    residual exists", nothing stronger.
    """
    t = as_tensor(t)
    if r < 1:
        raise ValueError("rank must be at least 1")
    norm_t = float(np.linalg.norm(t))
    if norm_t == 0.0:
        factors = tuple(np.zeros((d, r), dtype=complex) for d in t.shape)
        return CpResult(True, r, 0.0, factors, "zero tensor")

    dims = sorted(t.shape)
    if r >= dims[0] * dims[1]:
        factors = _direct_decomposition(t, r)
        model = np.einsum("ir,jr,kr->ijk", *factors)
        residual = float(np.linalg.norm(t - model) / norm_t)
        return CpResult(True, r, residual, factors, "direct slice construction")

    unfolds = [unfold(t, m) for m in (1, 2, 3)]
    spectral = _spectral_init(t, r)
    best = None
    for restart in range(max(1, restarts)):
        rng = np.random.default_rng(np.random.SeedSequence([seed, restart]))
        if restart == 1 and spectral is not None:
            a, b, c = (f.copy() for f in spectral)
        else:
            a, b, c = _als_init(t, r, rng, structured=(restart == 0))
        prev_res = np.inf
        residual = np.inf
        for _ in range(max_iter):
            z = _khatri_rao(b, c)
            a = np.linalg.lstsq(z, unfolds[0].T, rcond=None)[0].T
            z = _khatri_rao(a, c)
            b = np.linalg.lstsq(z, unfolds[1].T, rcond=None)[0].T
            z = _khatri_rao(a, b)
            c = np.linalg.lstsq(z, unfolds[2].T, rcond=None)[0].T
            model = np.einsum("ir,jr,kr->ijk", a, b, c)
            residual = float(np.linalg.norm(t - model) / norm_t)
            if residual < tol or abs(prev_res - residual) < stall_tol:
                break
            prev_res = residual
        if best is None or residual < best[0]:
            best = (residual, (a, b, c), restart)
        if residual < tol:
            break

    residual, factors, restart = best
    ok = residual < tol
    detail = f"ALS, best of {restart + 1} restart(s)"
    return CpResult(ok, r, residual, factors if ok else factors, detail)


def map_cp_factors(factors, a, b, c):
    """Apply one matrix per party to every term of a decomposition.

    This realizes the one-way monotonicity of rank bounds: the image of an
    R-term decomposition is an R-term decomposition of the image.
    """
    fa, fb, fc = factors
    return (
        np.asarray(a, dtype=complex) @ fa,
        np.asarray(b, dtype=complex) @ fb,
        np.asarray(c, dtype=complex) @ fc,
    )


@dataclass
class RankInterval:
    """Certified bracket [lower, upper] for the tensor rank."""

    lower: int
    upper: int
    certificate_lower: str
    certificate_upper: CpResult
    caveat: str = BORDER_RANK_CAVEAT

    def to_json(self) -> str:
        return json.dumps(
            {
                "lower": self.lower,
                "upper": self.upper,
                "certificate_lower": self.certificate_lower,
                "certificate_upper": json.loads(self.certificate_upper.to_json()),
                "caveat": self.caveat,
            },
            sort_keys=True,
        )


def rank_interval(t, restarts: int = 32, max_iter: int = 2000, seed: int = 0,
                  tol: float = 1e-8) -> RankInterval:
    """Bracket the tensor rank: local-rank lower bound, least ALS success above.

    The search is guaranteed to terminate because the slice-wise
    construction succeeds once R reaches the product of the two smallest
    dims.
    """
    t = as_tensor(t)
    lower, cert = rank_lower_bound(t)
    if lower == 0:
        raise ValueError("zero tensor has no rank interval")
    dims = sorted(t.shape)
    r = lower
    while True:
        result = cp_als(t, r, restarts=restarts, max_iter=max_iter, seed=seed, tol=tol)
        if result.success:
            return RankInterval(lower, r, cert, result)
        r += 1
        if r > dims[0] * dims[1]:
            raise ArithmeticError("rank search exceeded the trivial bound")


# --- 2 x M x N classification ---------------------------------------------------


@dataclass
class ClassifyResult:
    """Catalog match for a 2 x M x N tensor, or a diagnostic when none fits."""

    entry: _catalog.CatalogEntry | None
    compressed_dims: tuple
    signature: tuple | None
    detail: str = ""

    @property
    def matched(self) -> bool:
        return self.entry is not None

    def to_json(self) -> str:
        return json.dumps(
            {
                "entry": self.entry.id if self.entry else None,
                "compressed_dims": list(self.compressed_dims),
                "signature": repr(self.signature),
                "detail": self.detail,
            },
            sort_keys=True,
        )


def _compress_support(t, tol: float = 1e-9):
    """Restrict each party to the support of its unfolding (full local ranks)."""
    t = as_tensor(t)
    maps = []
    for mode in (1, 2, 3):
        u, s, _ = np.linalg.svd(unfold(t, mode), full_matrices=False)
        rank = int(np.count_nonzero(s > tol * s[0])) if s.size and s[0] > 0 else 0
        maps.append(u[:, :rank])
    u1, u2, u3 = maps
    core = np.einsum("ip,jq,kr,ijk->pqr", u1.conj(), u2.conj(), u3.conj(), t)
    return core


_SIGNATURE_TABLE_CACHE = None


def _entry_signature(t):
    """Classification key: local ranks plus Moebius-invariant pencil data."""
    core = _compress_support(t)
    dims = core.shape
    if dims[0] == 1:
        return (dims, None)
    inv = pencil_invariants(core)
    return (dims, inv.signature())


def _signature_table():
    global _SIGNATURE_TABLE_CACHE
    if _SIGNATURE_TABLE_CACHE is None:
        table = {}
        for entry in _catalog.catalog_list(table_only=True):
            sig = _entry_signature(entry.build())
            if sig in table:
                raise RuntimeError(
                    f"signature table bug: {entry.id} and {table[sig]} collide on {sig}"
                )
            table[sig] = entry.id
        _SIGNATURE_TABLE_CACHE = table
    return _SIGNATURE_TABLE_CACHE


def classify_2mn(t) -> ClassifyResult:
    """Match a tensor with mode-1 dim <= 2, M <= 3, N <= 6 against the table.

    The tensor is first compressed onto its multilinear support, so inputs
    related to a table row by arbitrary invertible (or merely injective)
    local maps classify to that row.
    """
    t = as_tensor(t)
    n1, n2, n3 = t.shape
    if n1 > 2 or n2 > 3 or n3 > 6:
        raise ValueError(
            f"dims {t.shape} outside the table range (2, 3, 6)"
        )
    if not np.any(t):
        raise ValueError("zero tensor has no class")
    dims, sig = _entry_signature(t)
    table = _signature_table()
    key = (dims, sig)
    if key in table:
        return ClassifyResult(_catalog.catalog_get(table[key]), dims, sig, "matched")
    return ClassifyResult(
        None, dims, sig,
        "no table row carries this signature; the input may sit on a rank "
        "decision boundary",
    )
