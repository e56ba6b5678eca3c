"""Density matrices, mixtures, partial traces, and reduced-density ranges.

A pure state of parties with dimensions ``party_dims`` is an ndarray of that
shape (the tripartite case coincides with the 3-way tensors used elsewhere).
Unnormalized states are accepted throughout; the trace of a pure-state
density matrix then equals the squared norm, and range computations are
scale-free.
"""

from __future__ import annotations

import json
import string

import numpy as np

EIGEN_RANK_TOL = 1e-9


def density_of(psi) -> np.ndarray:
    """Outer product |x><x| of a nonzero pure state."""
    v = np.asarray(psi, dtype=complex).ravel()
    if not np.any(v):
        raise ValueError("zero state has no density matrix")
    return np.outer(v, v.conj())


def mixture(states, probs) -> np.ndarray:
    """Convex mixture sum_i p_i |x_i><x_i| with each state normalized first."""
    probs = [float(p) for p in probs]
    if len(states) != len(probs) or not states:
        raise ValueError("need equally many states and probabilities")
    if any(p < 0 for p in probs):
        raise ValueError("probabilities must be nonnegative")
    if abs(sum(probs) - 1.0) > 1e-12:
        raise ValueError(f"probabilities sum to {sum(probs)}, not 1")
    vecs = [np.asarray(s, dtype=complex).ravel() for s in states]
    dim = vecs[0].size
    if any(v.size != dim for v in vecs):
        raise ValueError("states must share dimension")
    rho = np.zeros((dim, dim), dtype=complex)
    for p, v in zip(probs, vecs):
        norm = np.linalg.norm(v)
        if norm == 0:
            raise ValueError("zero state in mixture")
        u = v / norm
        rho += p * np.outer(u, u.conj())
    return rho


def partial_trace(rho, party_dims, traced) -> np.ndarray:
    """Trace out the given parties; returns the reduced density matrix.

    ``traced`` is a nonempty proper subset of party indices (0-based).  The
    result acts on the remaining parties in their original order.
    """
    party_dims = tuple(int(d) for d in party_dims)
    traced = sorted(set(int(p) for p in traced))
    m = len(party_dims)
    if not traced:
        raise ValueError("traced set must be nonempty")
    if any(p < 0 or p >= m for p in traced):
        raise ValueError(f"party index out of range for {m} parties")
    if len(traced) == m:
        raise ValueError("cannot trace every party; use total_trace instead")
    dim = int(np.prod(party_dims))
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (dim, dim):
        raise ValueError(f"density matrix shape {rho.shape} does not match dims")
    cube = rho.reshape(party_dims + party_dims)
    letters = string.ascii_lowercase
    row = [letters[i] for i in range(m)]
    col = [letters[m + i] for i in range(m)]
    for p in traced:
        col[p] = row[p]
    keep = [i for i in range(m) if i not in traced]
    sub = "".join(row) + "".join(col) + "->" + "".join(
        row[i] for i in keep
    ) + "".join(col[i] for i in keep)
    reduced_cube = np.einsum(sub, cube)
    out_dim = int(np.prod([party_dims[i] for i in keep]))
    out = reduced_cube.reshape(out_dim, out_dim)
    if __debug__:
        # spectral sanity check on density-matrix inputs, skipped under -O
        scale = max(1.0, abs(np.trace(out)))
        assert np.allclose(out, out.conj().T, atol=1e-12 * scale)
        vals = np.linalg.eigvalsh(out)
        assert vals.size == 0 or vals.min() > -1e-10 * max(vals.max(), 1e-30)
    return out


def total_trace(rho) -> complex:
    return complex(np.trace(np.asarray(rho)))


def reduced_density(psi, party_dims, traced) -> np.ndarray:
    """Partial trace of the pure-state density |psi><psi|."""
    psi = np.asarray(psi, dtype=complex).reshape(tuple(party_dims))
    return partial_trace(density_of(psi), party_dims, traced)


def range_basis(rho, tol: float = EIGEN_RANK_TOL):
    """Orthonormal basis of the column space of a Hermitian PSD matrix.

    Eigenvectors with eigenvalue above tol times the largest, in descending
    eigenvalue order.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    rho = np.asarray(rho, dtype=complex)
    vals, vecs = np.linalg.eigh(rho)
    vals, vecs = vals[::-1], vecs[:, ::-1]
    if vals.size == 0 or vals[0] <= 0:
        return []
    keep = vals > tol * vals[0]
    return [vecs[:, i].copy() for i in range(len(vals)) if keep[i]]


def density_to_json(rho, party_dims) -> str:
    rho = np.asarray(rho, dtype=complex)
    entries = [[z.real, z.imag] for z in rho.ravel(order="C")]
    return json.dumps(
        {
            "party_dims": [int(d) for d in party_dims],
            "rows": rho.shape[0],
            "cols": rho.shape[1],
            "entries": entries,
        }
    )
