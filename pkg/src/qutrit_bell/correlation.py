"""Bell-CHSH style correlation operators for two qubits and two qutrits."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import ALGEBRAIC_TOL, ITERATIVE_TOL, DimensionError, NonHermitianError, as_matrix, kron, max_asymmetry
from .states import BipartiteState, EntangledBasis, entangled_basis
from .su_basis import GeneratorSet, generator_set, pauli_set

SQRT2 = np.sqrt(2.0)

# Reference expectation values for the canonical operators in basis order.
# For the qutrit operator the reference signs of psi_2 and psi_7 disagree with
# what the matrix actually gives; only magnitudes are relied upon.
REFERENCE_B2_EXPECTATIONS = (-2 * SQRT2, 0.0, 2 * SQRT2, 0.0)
REFERENCE_B3_EXPECTATIONS = (2 * SQRT2, 0.0, 2 * SQRT2, SQRT2, 0.0, -2 * SQRT2, 0.0, -2 * SQRT2, -SQRT2)

# Bound classes for |<psi|B|psi>|: label -> (bound, member indices).
QUBIT_BOUNDS = {"chsh": (2 * SQRT2, (0, 1, 2, 3))}
QUTRIT_BOUNDS = {"i": (2 * SQRT2, (0, 2, 5, 7)), "j": (SQRT2, (3, 8))}


@dataclass(frozen=True)
class CorrelationTensor:
    """Hermitian operator on ``C^n (x) C^n`` with its generator expansion.

    ``coefficients[i, j]`` multiplies ``g_i (x) g_j`` of ``generators``;
    ``spectrum[a]`` is ``<psi_a|matrix|psi_a>`` over the entangled basis.
    """

    n: int
    matrix: np.ndarray
    coefficients: np.ndarray
    spectrum: np.ndarray
    generators: GeneratorSet

    @classmethod
    def from_matrix(cls, matrix, n: int, generators: GeneratorSet | None = None,
                    basis: EntangledBasis | None = None) -> "CorrelationTensor":
        m = as_matrix(matrix)
        if m.shape != (n * n, n * n):
            raise DimensionError(f"matrix of shape {m.shape} does not act on {n}x{n}")
        asym = max_asymmetry(m)
        if asym > ALGEBRAIC_TOL:
            raise NonHermitianError(f"correlation operator not Hermitian: max asymmetry {asym:.3e}")
        g = generators if generators is not None else generator_set(n)
        basis = basis if basis is not None else entangled_basis(n)
        spectrum = np.array([expectation_value(s.amplitudes, m) for s in basis])
        return cls(n, m, expand(m, g), spectrum, g)

    def reconstruct(self) -> np.ndarray:
        return compose(self.coefficients, self.generators)

    def eigen_residual(self, basis: EntangledBasis | None = None) -> float:
        """Max ``|M psi_a - spectrum_a psi_a|`` over the entangled basis."""
        basis = basis if basis is not None else entangled_basis(self.n)
        worst = 0.0
        for s, lam in zip(basis, self.spectrum):
            v = s.amplitudes
            worst = max(worst, float(np.max(np.abs(self.matrix @ v - lam * v))))
        return worst

    def to_dict(self, threshold: float = ALGEBRAIC_TOL) -> dict:
        rows = [[[float(z.real), float(z.imag)] for z in row] for row in self.matrix]
        coeffs = [
            [int(i), int(j), float(self.coefficients[i, j])]
            for i, j in zip(*np.nonzero(np.abs(self.coefficients) > threshold))
        ]
        return {
            "n": self.n,
            "matrix": rows,
            "coefficients": coeffs,
            "spectrum": [float(x) for x in self.spectrum],
        }


def expand(m, g: GeneratorSet, tol: float = ALGEBRAIC_TOL) -> np.ndarray:
    """Coefficients ``a_ij = Tr[(g_i (x) g_j) M] / (N_i N_j)`` of a Hermitian operator."""
    m = as_matrix(m)
    k = len(g)
    out = np.zeros((k, k), dtype=np.complex128)
    for i in range(k):
        for j in range(k):
            out[i, j] = np.trace(kron(g[i], g[j]) @ m) / (g.trace_norms[i] * g.trace_norms[j])
    if np.max(np.abs(out.imag)) > tol:
        raise NonHermitianError("expansion coefficients are not real; operator is not Hermitian")
    return out.real.copy()


def compose(coefficients, g: GeneratorSet) -> np.ndarray:
    """``sum_ij a_ij g_i (x) g_j``."""
    a = np.asarray(coefficients)
    d = g.n * g.n
    out = np.zeros((d, d), dtype=np.complex128)
    for i, j in zip(*np.nonzero(a)):
        out += a[i, j] * kron(g[i], g[j])
    return out


def expectation_value(vec, m, tol: float = ALGEBRAIC_TOL) -> float:
    v = np.asarray(vec, dtype=np.complex128)
    val = v.conj() @ (m @ v)
    if abs(val.imag) > tol * max(1.0, abs(val)):
        raise NonHermitianError(f"expectation value has imaginary part {val.imag:.3e}")
    return float(val.real)


def expectation(s: BipartiteState, t: CorrelationTensor) -> float:
    """``<s|T|s>``."""
    if s.dim != t.matrix.shape[0]:
        raise DimensionError(f"state of dimension {s.dim} vs operator of size {t.matrix.shape[0]}")
    return expectation_value(s.amplitudes, t.matrix)


def chsh_from_observables(r, q, s, t) -> CorrelationTensor:
    """``(R + Q) (x) S + (R - Q) (x) T`` for single-qubit observables."""
    mats = [as_matrix(x) for x in (r, q, s, t)]
    for name, x in zip("RQST", mats):
        if x.shape != (2, 2):
            raise DimensionError(f"{name} must be 2x2, got {x.shape}")
        asym = max_asymmetry(x)
        if asym > ALGEBRAIC_TOL:
            raise NonHermitianError(f"observable {name} not Hermitian: max asymmetry {asym:.3e}")
    r, q, s, t = mats
    return CorrelationTensor.from_matrix(kron(r + q, s) + kron(r - q, t), 2)


def canonical_chsh_settings() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    p = pauli_set()
    s1, s3 = p[1], p[3]
    return s1, s3, -(s3 + s1) / SQRT2, (s3 - s1) / SQRT2


def b2() -> CorrelationTensor:
    """``-sqrt2 (sigma_1 (x) sigma_1 + sigma_3 (x) sigma_3)``."""
    p = pauli_set()
    coeffs = np.zeros((4, 4))
    coeffs[1, 1] = coeffs[3, 3] = -SQRT2
    return CorrelationTensor.from_matrix(compose(coeffs, p), 2, p)


# Nonzero pattern of the qutrit operator, every entry is +/- sqrt2.
_B3_PLUS = ((0, 4), (0, 8), (1, 1), (2, 6), (3, 3), (4, 0), (4, 4), (5, 7), (6, 2), (7, 5), (8, 0), (8, 8))
_B3_MINUS = ((1, 3), (2, 2), (3, 1), (5, 5), (6, 6), (7, 7))


def b3_matrix() -> np.ndarray:
    m = np.zeros((9, 9), dtype=np.complex128)
    for i, j in _B3_PLUS:
        m[i, j] = SQRT2
    for i, j in _B3_MINUS:
        m[i, j] = -SQRT2
    return m


def b3(generators: GeneratorSet | None = None) -> CorrelationTensor:
    """Qutrit analogue of the CHSH operator; every psi_a is an eigenvector."""
    return CorrelationTensor.from_matrix(b3_matrix(), 3, generators)


def canonical_tensor(n: int) -> CorrelationTensor:
    if n == 2:
        return b2()
    if n == 3:
        return b3()
    raise ValueError(f"only n = 2 or 3 are supported, got {n}")


def reference_expectations(n: int) -> tuple[float, ...]:
    return REFERENCE_B2_EXPECTATIONS if n == 2 else REFERENCE_B3_EXPECTATIONS


def bound_classes(n: int) -> dict[str, tuple[float, tuple[int, ...]]]:
    return QUBIT_BOUNDS if n == 2 else QUTRIT_BOUNDS


def check_inequalities(basis: EntangledBasis, t: CorrelationTensor,
                       tol: float = ITERATIVE_TOL) -> dict:
    """Evaluate ``|<psi|T|psi>|`` against the bound class of each basis state.

    States outside every class are reported with ``bound = None`` and are
    never flagged. The qutrit report also lists states whose computed sign
    differs from the reference table.
    """
    if basis.n != t.n:
        raise DimensionError(f"basis for n={basis.n} vs tensor for n={t.n}")
    classes = bound_classes(basis.n)
    membership = {idx: (name, bound) for name, (bound, members) in classes.items() for idx in members}
    reference = reference_expectations(basis.n)
    rows = []
    for a, s in enumerate(basis):
        value = expectation(s, t)
        name, bound = membership.get(a, (None, None))
        rows.append({
            "label": basis.labels[a],
            "value": value,
            "reference": reference[a],
            "magnitude": abs(value),
            "bound_class": name,
            "bound": bound,
            "saturated": bound is not None and abs(abs(value) - bound) <= tol,
            "violated": bound is not None and abs(value) > bound + tol,
        })
    sign_mismatch = [
        basis.labels[a] for a, row in enumerate(rows)
        if abs(reference[a]) > tol and abs(row["value"]) > tol and np.sign(row["value"]) != np.sign(reference[a])
    ]
    return {
        "n": basis.n,
        "rows": rows,
        "violations": [r["label"] for r in rows if r["violated"]],
        "sign_mismatch": sign_mismatch,
    }


def synthesize_tensor(basis: EntangledBasis, spectrum, g: GeneratorSet,
                      tol: float = ALGEBRAIC_TOL) -> CorrelationTensor:
    """Operator with eigenvectors ``basis`` and eigenvalues ``spectrum``, expanded over ``g``.

    Builds ``sum_a spectrum[a] |psi_a><psi_a|`` and projects it onto the
    orthogonal product basis ``g_i (x) g_j``. The expansion is unique, so no
    search is involved.
    """
    spec = np.asarray(spectrum, dtype=float).ravel()
    d = basis.n * basis.n
    if spec.size != d:
        raise ValueError(f"spectrum has {spec.size} entries, basis has {d} states")
    if not basis.is_orthonormal(tol):
        raise ValueError("basis is not orthonormal")
    if g.n != basis.n:
        raise DimensionError(f"generators for n={g.n} vs basis for n={basis.n}")
    u = basis.matrix()
    m = (u * spec) @ u.conj().T
    m = 0.5 * (m + m.conj().T)
    return CorrelationTensor(basis.n, m, expand(m, g), spec.copy(), g)
