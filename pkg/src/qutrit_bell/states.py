"""Entangled bases of two qubits and two qutrits, and changes of basis.

A matrix ``M`` is turned into the bipartite state with amplitude ``M[a, b]`` on
``|a>_A (x) |b>_B`` (then normalized). Feeding the identity and the SU(2)/SU(3)
generators through this map yields the Bell states and their qutrit analogues.
"""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field

import numpy as np

from .linalg import ALGEBRAIC_TOL, DimensionError, as_matrix

QUBIT_LABELS = ("Phi+", "Psi+", "Psi-", "Phi-")
QUTRIT_LABELS = tuple(f"psi{a}" for a in range(9))


@dataclass(frozen=True)
class BipartiteState:
    """Normalized pure state of an ``dim_a x dim_b`` system.

    Component ``a * dim_b + b`` is the amplitude of ``|a>_A (x) |b>_B``.
    """

    amplitudes: np.ndarray
    dim_a: int
    dim_b: int
    label: str = ""

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).ravel()
        if self.dim_a < 2 or self.dim_b < 2:
            raise DimensionError("subsystem dimensions must be at least 2")
        if amps.size != self.dim_a * self.dim_b:
            raise DimensionError(f"{amps.size} amplitudes for a {self.dim_a}x{self.dim_b} system")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > ALGEBRAIC_TOL:
            raise ValueError(f"state is not normalized (norm = {norm!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_vector(cls, vec, dim_a: int, dim_b: int | None = None, label: str = "",
                    normalize: bool = True) -> "BipartiteState":
        v = np.asarray(vec, dtype=np.complex128).ravel()
        if normalize:
            nrm = np.linalg.norm(v)
            if nrm == 0:
                raise ValueError("cannot normalize the zero vector")
            v = v / nrm
        return cls(v, dim_a, dim_a if dim_b is None else dim_b, label)

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b

    def matrix(self) -> np.ndarray:
        """Amplitudes reshaped to ``dim_a x dim_b``."""
        return self.amplitudes.reshape(self.dim_a, self.dim_b)

    def density(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "dim_a": self.dim_a,
            "dim_b": self.dim_b,
            "amplitudes": [[float(z.real), float(z.imag)] for z in self.amplitudes],
        }


def vectorize_generator(m, label: str = "") -> BipartiteState:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"vectorize_generator needs a square matrix, got {m.shape}")
    if not np.any(m):
        raise ValueError("cannot vectorize the zero matrix")
    n = m.shape[0]
    return BipartiteState(m.ravel() / np.linalg.norm(m), n, n, label)


@dataclass(frozen=True)
class EntangledBasis:
    n: int
    states: tuple[BipartiteState, ...]
    labels: tuple[str, ...] = field(default=())

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __getitem__(self, i: int) -> BipartiteState:
        return self.states[i]

    def matrix(self) -> np.ndarray:
        """States as the columns of an ``n^2 x n^2`` matrix."""
        return np.column_stack([s.amplitudes for s in self.states])

    def gram(self) -> np.ndarray:
        u = self.matrix()
        return u.conj().T @ u

    def is_orthonormal(self, tol: float = ALGEBRAIC_TOL) -> bool:
        g = self.gram()
        return g.shape == (self.n**2, self.n**2) and np.max(np.abs(g - np.eye(self.n**2))) <= tol


# Source matrices for the qubit basis: sigma_0, sigma_1, i*sigma_2, sigma_3.
QUBIT_SOURCES = (
    np.array([[1, 0], [0, 1]], dtype=np.complex128),
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, 1], [-1, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)

# Source matrices for psi_0..psi_8 with integer entries, so the resulting
# vectors are exact. In Gell-Mann terms (standard convention):
#   psi0 <- l0, psi1 <- l6, psi2 <- -i l7, psi3 <- (l3 - sqrt3 l8)/2,
#   psi4 <- l4, psi5 <- -i l5, psi6 <- l1, psi7 <- -i l2,
#   psi8 <- -(3 l3 + sqrt3 l8)/2
QUTRIT_SOURCES = (
    np.diag([1, 1, 1]).astype(np.complex128),
    np.array([[0, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=np.complex128),
    np.array([[0, 0, 0], [0, 0, -1], [0, 1, 0]], dtype=np.complex128),
    np.diag([0, -1, 1]).astype(np.complex128),
    np.array([[0, 0, 1], [0, 0, 0], [1, 0, 0]], dtype=np.complex128),
    np.array([[0, 0, -1], [0, 0, 0], [1, 0, 0]], dtype=np.complex128),
    np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]], dtype=np.complex128),
    np.array([[0, -1, 0], [1, 0, 0], [0, 0, 0]], dtype=np.complex128),
    np.diag([-2, 1, 1]).astype(np.complex128),
)


def bell_basis() -> EntangledBasis:
    """Phi+, Psi+, Psi-, Phi- in that order."""
    states = tuple(vectorize_generator(m, lab) for m, lab in zip(QUBIT_SOURCES, QUBIT_LABELS))
    return EntangledBasis(2, states, QUBIT_LABELS)


def qutrit_basis() -> EntangledBasis:
    """The nine maximally symmetric/antisymmetric qutrit states psi_0..psi_8."""
    states = tuple(vectorize_generator(m, lab) for m, lab in zip(QUTRIT_SOURCES, QUTRIT_LABELS))
    return EntangledBasis(3, states, QUTRIT_LABELS)


def entangled_basis(n: int) -> EntangledBasis:
    if n == 2:
        return bell_basis()
    if n == 3:
        return qutrit_basis()
    raise ValueError(f"only n = 2 or 3 are supported, got {n}")


def swap(s: BipartiteState) -> np.ndarray:
    """Amplitudes with the two subsystems exchanged."""
    if s.dim_a != s.dim_b:
        raise DimensionError("subsystem exchange needs equal dimensions")
    return s.matrix().T.ravel()


def exchange_parity(s: BipartiteState, tol: float = ALGEBRAIC_TOL) -> int | None:
    """+1 for symmetric, -1 for antisymmetric, ``None`` for neither."""
    swapped = swap(s)
    if np.max(np.abs(swapped - s.amplitudes)) <= tol:
        return 1
    if np.max(np.abs(swapped + s.amplitudes)) <= tol:
        return -1
    return None


class Basis(str, enum.Enum):
    COMPUTATIONAL = "computational"
    BELL_LIKE = "bell_like"
    MAGIC = "magic"


# Magic phase factors, one per entangled-basis state.
MAGIC_PHASES = {
    2: (1j, 1, 1j, 1),
    3: (1j, 1, 1j, 1, 1, 1j, 1, 1j, 1),
}


def basis_unitary(basis: Basis | str, n: int) -> np.ndarray:
    """Columns are the states of ``basis`` in computational coordinates (read-only)."""
    return _basis_unitary(Basis(basis), n)


@functools.lru_cache(maxsize=None)
def _basis_unitary(basis: Basis, n: int) -> np.ndarray:
    if n not in (2, 3):
        raise ValueError(f"only n = 2 or 3 are supported, got {n}")
    if basis is Basis.COMPUTATIONAL:
        u = np.eye(n * n, dtype=np.complex128)
    else:
        u = entangled_basis(n).matrix()
    if basis is Basis.MAGIC:
        u = u * np.array(MAGIC_PHASES[n])
    u.setflags(write=False)
    return u


def magic_basis(n: int) -> EntangledBasis:
    u = basis_unitary(Basis.MAGIC, n)
    labels = tuple(f"e{a}" for a in range(n * n))
    states = tuple(BipartiteState(u[:, a], n, n, labels[a]) for a in range(n * n))
    return EntangledBasis(n, states, labels)


def change_basis(amps, source: Basis | str, target: Basis | str, n: int,
                 tol: float = ALGEBRAIC_TOL) -> np.ndarray:
    """Re-express expansion coefficients from one basis in another.

    Coefficients in basis X are ``<x_a|psi>``, so magic amplitudes pick up the
    conjugate of the magic phase, e.g. ``mu_0 = -i b_0``.
    """
    try:
        src = Basis(source)
        dst = Basis(target)
    except ValueError as exc:
        raise ValueError(f"unknown basis tag: {exc}") from None
    v = np.asarray(amps, dtype=np.complex128).ravel()
    if v.size != n * n:
        raise DimensionError(f"expected {n * n} amplitudes, got {v.size}")
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > tol:
        raise ValueError(f"amplitudes are not normalized (norm = {norm!r})")
    return basis_unitary(dst, n).conj().T @ (basis_unitary(src, n) @ v)


def random_state(rng: np.random.Generator, dim_a: int, dim_b: int | None = None) -> BipartiteState:
    """Standard complex normal amplitudes, normalized."""
    dim_b = dim_a if dim_b is None else dim_b
    d = dim_a * dim_b
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return BipartiteState.from_vector(v, dim_a, dim_b)
