"""Entanglement measures for pure bipartite states.

The concurrence-type quantities all share one pipeline,
``sqrt(Tr[rho V^dagger rho* V])``, which for a pure state collapses to
``|psi^T V psi|``. Choosing ``V`` as the spin flip gives the Wootters
concurrence; choosing it as a correlation operator gives the SU(2)/SU(3)
fidelity.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .correlation import CorrelationTensor, b2, b3
from .linalg import ITERATIVE_TOL, DimensionError, hermitian_eig, kron, partial_trace, partial_transpose
from .states import BipartiteState, EntangledBasis, exchange_parity
from .su_basis import pauli_set

SQRT2 = np.sqrt(2.0)
ENTROPY_CUTOFF = 1e-14


def reduced_entropy(s: BipartiteState) -> float:
    """Von Neumann entropy (bits) of the A-reduced state."""
    rho_a = partial_trace(s.density(), s.dim_a, s.dim_b, keep="A")
    p, _ = hermitian_eig(rho_a)
    p = p[p > ENTROPY_CUTOFF]
    return float(max(0.0, -np.sum(p * np.log2(p))))


def negativity(s: BipartiteState) -> float:
    """Sum of ``|lambda|`` over negative eigenvalues of the B-partial transpose.

    Not halved: a maximally entangled qutrit pair gives 1.
    """
    pt = partial_transpose(s.density(), s.dim_a, s.dim_b, on="B")
    vals, _ = hermitian_eig(pt)
    return float(-np.sum(vals[vals < 0]))


def schmidt_coefficients(s: BipartiteState) -> np.ndarray:
    """Singular values of the amplitude matrix, descending."""
    return np.linalg.svd(s.matrix(), compute_uv=False)


def spin_flip(scaled: bool = False) -> np.ndarray:
    """``sigma_2 (x) sigma_2``; ``scaled=True`` multiplies by sqrt2 (every concurrence scales by sqrt2)."""
    s2 = pauli_set()[2]
    v = kron(s2, s2)
    return SQRT2 * v if scaled else v


def _operator(v) -> np.ndarray:
    return v.matrix if isinstance(v, CorrelationTensor) else np.asarray(v, dtype=np.complex128)


def concurrence_trace_form(s: BipartiteState, v) -> float:
    """``sqrt(Tr[rho rho_bar])`` with ``rho_bar = V^dagger rho* V``."""
    v = _operator(v)
    if v.shape != (s.dim, s.dim):
        raise DimensionError(f"operator of shape {v.shape} vs state of dimension {s.dim}")
    rho = s.density()
    rho_bar = v.conj().T @ rho.conj() @ v
    return float(np.sqrt(max(np.trace(rho @ rho_bar).real, 0.0)))


def concurrence_amplitude_form(s: BipartiteState, v) -> float:
    """``|psi^T V psi|``."""
    v = _operator(v)
    if v.shape != (s.dim, s.dim):
        raise DimensionError(f"operator of shape {v.shape} vs state of dimension {s.dim}")
    psi = s.amplitudes
    return float(abs(psi @ v @ psi))


def generic_concurrence(s: BipartiteState, v, tol: float = ITERATIVE_TOL) -> float:
    """Concurrence-type functional of ``s`` with transformation operator ``v``.

    Evaluated through the density-matrix route and cross-checked against the
    amplitude route; a disagreement beyond ``tol`` raises ``ArithmeticError``.
    """
    value = concurrence_trace_form(s, v)
    other = concurrence_amplitude_form(s, v)
    if abs(value - other) > tol:
        raise ArithmeticError(f"concurrence paths disagree: {value!r} vs {other!r}")
    return value


def wootters_concurrence(c) -> float:
    """``2 |c00 c11 - c01 c10|`` for computational amplitudes ``(c00, c01, c10, c11)``."""
    c00, c01, c10, c11 = np.asarray(c, dtype=np.complex128).ravel()
    return float(2 * abs(c00 * c11 - c01 * c10))


def concurrence_bell(b) -> float:
    """Qubit concurrence from Bell amplitudes on (Phi+, Psi+, Psi-, Phi-)."""
    b0, b1, b2_, b3_ = np.asarray(b, dtype=np.complex128).ravel()
    return float(abs(b0**2 - b1**2 + b2_**2 - b3_**2))


def concurrence_magic(mu) -> float:
    return float(abs(np.sum(np.asarray(mu, dtype=np.complex128) ** 2)))


def i_concurrence(s: BipartiteState) -> float:
    """``sqrt(2 (1 - Tr rho_A^2))``; equals the Wootters value for two qubits."""
    rho_a = partial_trace(s.density(), s.dim_a, s.dim_b, keep="A")
    purity = np.trace(rho_a @ rho_a).real
    return float(np.sqrt(max(2.0 * (1.0 - purity), 0.0)))


def su2_fidelity(s: BipartiteState) -> float:
    if s.dim_a != 2 or s.dim_b != 2:
        raise DimensionError("SU(2) fidelity needs a two-qubit state")
    return generic_concurrence(s, b2())


def su2_fidelity_computational(c) -> float:
    c00, c01, c10, c11 = np.asarray(c, dtype=np.complex128).ravel()
    return float(SQRT2 * abs((c00 + c11) ** 2 - (c01 - c10) ** 2))


def su2_fidelity_bell(b) -> float:
    b = np.asarray(b, dtype=np.complex128).ravel()
    return float(2 * SQRT2 * abs(b[0] ** 2 - b[2] ** 2))


def su2_fidelity_magic(mu) -> float:
    mu = np.asarray(mu, dtype=np.complex128).ravel()
    return float(2 * SQRT2 * abs(mu[0] ** 2 - mu[2] ** 2))


def su3_fidelity(s: BipartiteState) -> float:
    if s.dim_a != 3 or s.dim_b != 3:
        raise DimensionError("SU(3) fidelity needs a two-qutrit state")
    return generic_concurrence(s, b3())


# Weights of b_a^2 (and mu_a^2) in the qutrit closed forms, before the sqrt2.
SU3_BELL_WEIGHTS = (2, 0, -2, 1, 0, -2, 0, 2, -1)
SU3_MAGIC_WEIGHTS = (2, 0, -2, -1, 0, -2, 0, 2, 1)


def su3_fidelity_bell(b) -> float:
    b = np.asarray(b, dtype=np.complex128).ravel()
    return float(SQRT2 * abs(np.dot(SU3_BELL_WEIGHTS, b**2)))


def su3_fidelity_magic(mu) -> float:
    mu = np.asarray(mu, dtype=np.complex128).ravel()
    return float(SQRT2 * abs(np.dot(SU3_MAGIC_WEIGHTS, mu**2)))


# A polynomial in computational amplitudes written as a weighted sum of squares
# of linear forms: [(weight, {index: coefficient}), ...]; overall factor sqrt2.
SquareSum = list[tuple[float, dict[int, float]]]

SU3_COMPUTATIONAL_FORM: SquareSum = [
    (1, {1: 1, 3: -1}),
    (-1, {2: 1, 6: -1}),
    (-1, {5: 1, 7: -1}),
    (1, {0: 1, 4: 1}),
    (1, {0: 1, 8: 1}),
    (-2, {0: 1}),
]

# The commonly quoted version of the same form; it disagrees with the operator
# in the (c0 + c3) and (c1 + c8) squares.
REFERENCE_SU3_COMPUTATIONAL_FORM: SquareSum = [
    (1, {1: 1, 3: -1}),
    (-1, {2: 1, 6: -1}),
    (-1, {5: 1, 7: -1}),
    (1, {0: 1, 3: 1}),
    (1, {1: 1, 8: 1}),
    (-2, {0: 1}),
]


def square_sum_matrix(form: SquareSum, dim: int = 9) -> np.ndarray:
    """Symmetric ``Q`` with ``c^T Q c`` equal to the square sum (without the sqrt2)."""
    q = np.zeros((dim, dim))
    for weight, lin in form:
        v = np.zeros(dim)
        for idx, coef in lin.items():
            v[idx] = coef
        q += weight * np.outer(v, v)
    return q


def evaluate_square_sum(form: SquareSum, c) -> complex:
    c = np.asarray(c, dtype=np.complex128).ravel()
    return sum(w * sum(k * c[i] for i, k in lin.items()) ** 2 for w, lin in form)


def su3_fidelity_computational(c) -> float:
    return float(SQRT2 * abs(evaluate_square_sum(SU3_COMPUTATIONAL_FORM, c)))


def fit_quadratic_form(f: Callable[[np.ndarray], complex], dim: int) -> np.ndarray:
    """Recover symmetric ``Q`` from samples of a bilinear form ``f(c) = c^T Q c``.

    Uses ``Q_ii = f(e_i)`` and ``Q_ij = (f(e_i + e_j) - f(e_i) - f(e_j)) / 2``.
    """
    eye = np.eye(dim)
    diag = np.array([f(eye[i]) for i in range(dim)])
    q = np.diag(diag).astype(np.complex128)
    for i in range(dim):
        for j in range(i + 1, dim):
            q[i, j] = q[j, i] = (f(eye[i] + eye[j]) - diag[i] - diag[j]) / 2
    return q


def fitted_su3_computational_form() -> np.ndarray:
    """Quadratic form of ``psi^T B3 psi / sqrt2`` in computational amplitudes, fitted numerically."""
    m = b3().matrix
    return fit_quadratic_form(lambda c: (c @ m @ c) / SQRT2, 9).real


def monomial_differences(q_fit: np.ndarray, q_ref: np.ndarray, tol: float = 1e-12) -> list[dict]:
    """Monomials ``c_i c_j`` (i <= j) whose coefficients differ between two forms."""
    out = []
    dim = q_fit.shape[0]
    for i in range(dim):
        for j in range(i, dim):
            mult = 1 if i == j else 2
            a, b = mult * q_fit[i, j], mult * q_ref[i, j]
            if abs(a - b) > tol:
                out.append({"monomial": f"c{i}*c{j}" if i != j else f"c{i}^2", "fitted": float(a), "reference": float(b)})
    return out


@dataclass(frozen=True)
class EntanglementReport:
    label: str
    entropy: float
    negativity: float
    schmidt: tuple[float, ...]
    parity: int | None
    fidelity_su: float
    concurrence: float

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "entropy": self.entropy,
            "negativity": self.negativity,
            "schmidt": list(self.schmidt),
            "parity": self.parity,
            "fidelity": self.fidelity_su,
            "concurrence": self.concurrence,
        }


def report(s: BipartiteState, label: str | None = None) -> EntanglementReport:
    """All measures of one state.

    ``fidelity_su`` uses the SU(2) or SU(3) operator according to the local
    dimension. ``concurrence`` is the Wootters value for qubits and the
    I-concurrence for qutrits.
    """
    if s.dim_a != s.dim_b or s.dim_a not in (2, 3):
        raise DimensionError("reports are defined for 2x2 and 3x3 states")
    if s.dim_a == 2:
        fid = su2_fidelity(s)
        conc = generic_concurrence(s, spin_flip())
    else:
        fid = su3_fidelity(s)
        conc = i_concurrence(s)
    return EntanglementReport(
        label=s.label if label is None else label,
        entropy=reduced_entropy(s),
        negativity=negativity(s),
        schmidt=tuple(float(x) for x in schmidt_coefficients(s)),
        parity=exchange_parity(s),
        fidelity_su=fid,
        concurrence=conc,
    )


def basis_report(basis: EntangledBasis) -> list[EntanglementReport]:
    return [report(s) for s in basis]
