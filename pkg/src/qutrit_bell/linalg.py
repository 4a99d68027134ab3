"""Dense complex linear algebra for small bipartite systems.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``. Subsystem
A is always the major (slow) index of a tensor product, so the amplitude of
``|a> (x) |b>`` sits at position ``a * dim_b + b``.
"""
from __future__ import annotations

import math
from typing import Literal

import numpy as np

ALGEBRAIC_TOL = 1e-12
ITERATIVE_TOL = 1e-10

Subsystem = Literal["A", "B"]


class DimensionError(ValueError):
    """Raised when array shapes do not match the declared subsystem sizes."""


class NonHermitianError(ValueError):
    """Raised when a Hermitian-only routine receives a non-Hermitian matrix."""


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-d array, got shape {a.shape}")
    return a


def max_asymmetry(m: np.ndarray) -> float:
    """Largest entrywise deviation ``|M - M^dagger|``."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        return float("inf")
    return float(np.max(np.abs(m - m.conj().T), initial=0.0))


def is_hermitian(m, tol: float = ALGEBRAIC_TOL) -> bool:
    return max_asymmetry(m) <= tol


def kron(a, b) -> np.ndarray:
    """Kronecker product with ``a`` as the major index.

    Entry ``(i*b.rows + k, j*b.cols + l)`` equals ``a[i, j] * b[k, l]``.
    """
    a = as_matrix(a)
    b = as_matrix(b)
    ra, ca = a.shape
    rb, cb = b.shape
    out = a[:, None, :, None] * b[None, :, None, :]
    return out.reshape(ra * rb, ca * cb)


def _jacobi_rotation(app: float, aqq: float, apq: complex) -> tuple[float, complex]:
    # (c, z) of the 2x2 unitary G = [[c, z], [-conj(z), c]] with
    # G^dagger [[app, apq], [conj(apq), aqq]] G diagonal
    r = abs(apq)
    phase = apq / r
    tau = (aqq - app) / (2.0 * r)
    if abs(tau) > 1e150:
        t = 0.5 / tau
    else:
        t = 1.0 / (abs(tau) + math.sqrt(1.0 + tau * tau))
        if tau < 0:
            t = -t
    c = 1.0 / math.sqrt(1.0 + t * t)
    return c, t * c * phase


def _jacobi_diagonalize(m: np.ndarray, max_sweeps: int) -> tuple[np.ndarray, np.ndarray]:
    a = m.copy()
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = max(float(np.linalg.norm(a)), 1.0)
    negligible = 1e-17 * scale
    for _ in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = complex(a[p, q])
                if abs(apq) <= negligible:
                    a[p, q] = a[q, p] = 0.0
                    continue
                rotated = True
                c, z = _jacobi_rotation(a[p, p].real, a[q, q].real, apq)
                zc = z.conjugate()
                # A <- A G
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - zc * col_q
                a[:, q] = z * col_p + c * col_q
                # A <- G^dagger A
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - z * row_q
                a[q, :] = zc * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                col_p, col_q = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * col_p - zc * col_q
                v[:, q] = z * col_p + c * col_q
        if not rotated:
            break
    else:
        raise np.linalg.LinAlgError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    return np.diag(a).real.copy(), v


def _first_significant(vec: np.ndarray, tol: float) -> int:
    return int(np.flatnonzero(np.abs(vec) > tol)[0])


def _canonical_eigenspace(vecs: np.ndarray, tol: float) -> np.ndarray:
    """Deterministic orthonormal basis of the span of ``vecs``.

    Gram-Schmidt over the columns of the spectral projector, taken in index
    order, makes the result independent of the rotation the solver happened to
    land on inside a degenerate eigenspace.
    """
    k = vecs.shape[1]
    if k == 1:
        return vecs
    proj = vecs @ vecs.conj().T
    basis: list[np.ndarray] = []
    for col in proj.T:
        w = col.copy()
        for b in basis:
            w -= (b.conj() @ w) * b
        nrm = np.linalg.norm(w)
        if nrm > 1e-6:
            basis.append(w / nrm)
        if len(basis) == k:
            break
    return np.column_stack(basis)


def hermitian_eig(m, tol: float = ALGEBRAIC_TOL, *, cluster_tol: float = 1e-9,
                  max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.

    Parameters
    ----------
    m : array_like
        Square Hermitian matrix.
    tol : float
        Hermiticity tolerance; larger asymmetry raises ``NonHermitianError``.
    cluster_tol : float
        Eigenvalues closer than this are treated as one degenerate eigenspace.

    Returns
    -------
    eigenvalues : ndarray
        Real, ascending.
    eigenvectors : ndarray
        Orthonormal columns, ``m @ v[:, k] == eigenvalues[k] * v[:, k]``.

    Notes
    -----
    Output is canonicalized so that equal inputs give identical outputs: each
    degenerate eigenspace is re-spanned deterministically, each vector's first
    non-negligible component is made real and positive, and vectors inside a
    cluster are ordered by the position of that component, then by the
    components themselves.
    """
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"hermitian_eig needs a square matrix, got {m.shape}")
    asym = max_asymmetry(m)
    if asym > tol:
        raise NonHermitianError(f"matrix is not Hermitian: max |M - M^dagger| = {asym:.3e}")
    m = 0.5 * (m + m.conj().T)
    vals, vecs = _jacobi_diagonalize(m, max_sweeps)

    order = np.argsort(vals, kind="stable")
    vals = vals[order]
    vecs = vecs[:, order]

    comp_tol = 1e-8
    out_vals: list[float] = []
    out_vecs: list[np.ndarray] = []
    start = 0
    n = len(vals)
    while start < n:
        stop = start + 1
        while stop < n and vals[stop] - vals[stop - 1] <= cluster_tol:
            stop += 1
        block = _canonical_eigenspace(vecs[:, start:stop], comp_tol)
        cols = []
        for j in range(block.shape[1]):
            v = block[:, j]
            lead = v[_first_significant(v, comp_tol)]
            cols.append(v * (abs(lead) / lead))

        def key(v: np.ndarray):
            first = _first_significant(v, comp_tol)
            flat = np.round(np.column_stack([v.real, v.imag]).ravel(), 9)
            return (first, tuple(-flat))

        cols.sort(key=key)
        out_vecs.extend(cols)
        out_vals.extend(vals[start:stop])
        start = stop
    return np.array(out_vals), np.column_stack(out_vecs)


def _check_bipartite(rho: np.ndarray, dim_a: int, dim_b: int) -> np.ndarray:
    rho = as_matrix(rho)
    d = dim_a * dim_b
    if rho.shape != (d, d):
        raise DimensionError(f"operator of shape {rho.shape} does not act on {dim_a}x{dim_b} = {d} dimensions")
    return rho


def partial_trace(rho, dim_a: int, dim_b: int, keep: Subsystem = "A") -> np.ndarray:
    """Reduced operator on subsystem ``keep``."""
    rho = _check_bipartite(rho, dim_a, dim_b).reshape(dim_a, dim_b, dim_a, dim_b)
    if keep == "A":
        return np.einsum("ijkj->ik", rho)
    if keep == "B":
        return np.einsum("ijil->jl", rho)
    raise ValueError(f"unknown subsystem {keep!r}")


def partial_transpose(rho, dim_a: int, dim_b: int, on: Subsystem = "B") -> np.ndarray:
    """Transpose the indices of one subsystem. An exact involution (pure index permutation)."""
    r = _check_bipartite(rho, dim_a, dim_b).reshape(dim_a, dim_b, dim_a, dim_b)
    if on == "B":
        r = r.transpose(0, 3, 2, 1)
    elif on == "A":
        r = r.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"unknown subsystem {on!r}")
    return r.reshape(dim_a * dim_b, dim_a * dim_b)


def projector(vec) -> np.ndarray:
    v = np.asarray(vec, dtype=np.complex128)
    return np.outer(v, v.conj())
