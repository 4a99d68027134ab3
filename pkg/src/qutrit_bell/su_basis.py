"""SU(2) and SU(3) generator families and their structure constants."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .linalg import ALGEBRAIC_TOL, max_asymmetry

IdentityConvention = Literal["unit", "nonet"]


@dataclass(frozen=True)
class GeneratorSet:
    """Ordered family ``[identity, g_1, ..., g_{n^2-1}]``.

    ``trace_norms[i]`` is ``Tr(g_i g_i)``: 2 for the generators and ``n`` for
    the plain identity (2 under the nonet convention ``sqrt(2/n) * I``).
    """

    n: int
    elements: tuple[np.ndarray, ...]
    trace_norms: tuple[float, ...]
    name: str = ""

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, i: int) -> np.ndarray:
        return self.elements[i]

    def gram(self) -> np.ndarray:
        """Matrix of ``Tr(g_i g_j)``."""
        stack = np.array(self.elements)
        return np.einsum("iab,jba->ij", stack, stack)

    def check(self, tol: float = ALGEBRAIC_TOL) -> list[str]:
        """Invariant violations, empty when the set is well formed."""
        problems = []
        for i, g in enumerate(self.elements):
            if max_asymmetry(g) > tol:
                problems.append(f"element {i} not Hermitian")
            if i > 0 and abs(np.trace(g)) > tol:
                problems.append(f"element {i} not traceless")
        gram = self.gram()
        expected = np.diag(self.trace_norms)
        if np.max(np.abs(gram - expected)) > tol:
            problems.append("trace orthogonality violated")
        return problems


def _build(n: int, mats: list[np.ndarray], name: str, identity: IdentityConvention) -> GeneratorSet:
    if identity == "nonet":
        mats = [np.sqrt(2.0 / n) * mats[0]] + mats[1:]
    elif identity != "unit":
        raise ValueError(f"unknown identity convention {identity!r}")
    mats = [np.asarray(m, dtype=np.complex128) for m in mats]
    for m in mats:
        m.setflags(write=False)
    norms = tuple(float(np.trace(m @ m).real) for m in mats)
    return GeneratorSet(n=n, elements=tuple(mats), trace_norms=norms, name=name)


def pauli_set(identity: IdentityConvention = "unit") -> GeneratorSet:
    """Identity and the three Pauli matrices."""
    mats = [
        np.array([[1, 0], [0, 1]]),
        np.array([[0, 1], [1, 0]]),
        np.array([[0, -1j], [1j, 0]]),
        np.array([[1, 0], [0, -1]]),
    ]
    return _build(2, mats, "pauli", identity)


def gellmann_set(identity: IdentityConvention = "unit") -> GeneratorSet:
    """Identity and the eight Gell-Mann matrices in the standard convention.

    ``identity="nonet"`` replaces the first element by ``sqrt(2/3) I`` so that
    every element has ``Tr(g g) = 2``; this is the normalization used for U(3)
    nonet expansions.
    """
    r3 = 1.0 / np.sqrt(3.0)
    mats = [
        np.eye(3),
        np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]]),
        np.array([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]]),
        np.array([[1, 0, 0], [0, -1, 0], [0, 0, 0]]),
        np.array([[0, 0, 1], [0, 0, 0], [1, 0, 0]]),
        np.array([[0, 0, -1j], [0, 0, 0], [1j, 0, 0]]),
        np.array([[0, 0, 0], [0, 0, 1], [0, 1, 0]]),
        np.array([[0, 0, 0], [0, 0, -1j], [0, 1j, 0]]),
        np.diag([r3, r3, -2 * r3]),
    ]
    return _build(3, mats, "gellmann", identity)


def generator_set(n: int, identity: IdentityConvention = "unit") -> GeneratorSet:
    if n == 2:
        return pauli_set(identity)
    if n == 3:
        return gellmann_set(identity)
    raise ValueError(f"only n = 2 or 3 are supported, got {n}")


@dataclass(frozen=True)
class StructureConstants:
    """``d`` (totally symmetric) and ``f`` (totally antisymmetric) tables.

    Both are indexed by generator number minus one, so ``f[0, 1, 2]`` is
    ``f_123``.
    """

    d: np.ndarray
    f: np.ndarray


def structure_constants(g: GeneratorSet) -> StructureConstants:
    """``f_ijk = Tr([g_i, g_j] g_k) / 4i`` and ``d_ijk = Tr({g_i, g_j} g_k) / 4``."""
    gens = np.array(g.elements[1:])
    prod = np.einsum("iab,jbc->ijac", gens, gens)
    comm = prod - prod.transpose(1, 0, 2, 3)
    anti = prod + prod.transpose(1, 0, 2, 3)
    f = np.einsum("ijab,kba->ijk", comm, gens) / 4j
    d = np.einsum("ijab,kba->ijk", anti, gens) / 4
    return StructureConstants(d=d.real.copy(), f=f.real.copy())


def product_identity_residual(g: GeneratorSet, sc: StructureConstants | None = None) -> np.ndarray:
    """Residuals of ``g_i g_j = (2/n) delta_ij I + sum_k (d_ijk + i f_ijk) g_k``.

    Returns an ``(m, m)`` array of max-abs residuals over all generator pairs.
    """
    sc = sc if sc is not None else structure_constants(g)
    n = g.n
    gens = np.array(g.elements[1:])
    m = len(gens)
    eye = np.eye(n)
    out = np.zeros((m, m))
    for i in range(m):
        for j in range(m):
            rhs = (2.0 / n) * (i == j) * eye + np.einsum("k,kab->ab", sc.d[i, j] + 1j * sc.f[i, j], gens)
            out[i, j] = np.max(np.abs(gens[i] @ gens[j] - rhs))
    return out
