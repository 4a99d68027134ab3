"""Invariant suite behind the ``verify`` and ``random-check`` commands."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import correlation as corr
from . import entanglement as ent
from . import states as st
from .linalg import ALGEBRAIC_TOL, ITERATIVE_TOL, hermitian_eig, kron, partial_trace, partial_transpose, projector
from .su_basis import generator_set, product_identity_residual, structure_constants

SQRT2 = np.sqrt(2.0)

# Exact amplitude patterns (before normalization) of the two fixed bases.
BELL_PATTERNS = ((1, 0, 0, 1), (0, 1, 1, 0), (0, 1, -1, 0), (1, 0, 0, -1))
QUTRIT_PATTERNS = (
    (1, 0, 0, 0, 1, 0, 0, 0, 1),
    (0, 0, 0, 0, 0, 1, 0, 1, 0),
    (0, 0, 0, 0, 0, -1, 0, 1, 0),
    (0, 0, 0, 0, -1, 0, 0, 0, 1),
    (0, 0, 1, 0, 0, 0, 1, 0, 0),
    (0, 0, -1, 0, 0, 0, 1, 0, 0),
    (0, 1, 0, 1, 0, 0, 0, 0, 0),
    (0, -1, 0, 1, 0, 0, 0, 0, 0),
    (-2, 0, 0, 0, 1, 0, 0, 0, 1),
)
QUTRIT_NORMS = (np.sqrt(3),) + (SQRT2,) * 7 + (np.sqrt(6),)
BELL_PARITIES = (1, 1, -1, 1)
QUTRIT_PARITIES = (1, 1, -1, 1, 1, -1, 1, -1, 1)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    error: float
    tol: float

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name} err={self.error:.3e} tol={self.tol:.0e}"


class Suite:
    def __init__(self, algebraic: float = ALGEBRAIC_TOL, iterative: float = ITERATIVE_TOL):
        self.alg = algebraic
        self.it = iterative
        self.checks: list[Check] = []

    def add(self, name: str, error: float, tol: float) -> None:
        error = float(error)
        self.checks.append(Check(name, bool(error <= tol), error, tol))

    def flag(self, name: str, ok: bool) -> None:
        self.checks.append(Check(name, bool(ok), 0.0 if ok else 1.0, 0.0))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _fixtures(n: int) -> list[np.ndarray]:
    if n == 2:
        return [np.array(p) / SQRT2 for p in BELL_PATTERNS]
    return [np.array(p) / k for p, k in zip(QUTRIT_PATTERNS, QUTRIT_NORMS)]


def _rand_hermitian(rng: np.random.Generator, d: int) -> np.ndarray:
    x = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return x + x.conj().T


def _rand_density(rng: np.random.Generator, d: int) -> np.ndarray:
    x = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = x @ x.conj().T
    return rho / np.trace(rho).real


def structural_checks(suite: Suite, n: int, rng: np.random.Generator, samples: int) -> None:
    d = n * n
    # linalg
    worst_bil = worst_assoc = worst_eig = worst_unit = worst_pt = worst_inv = 0.0
    for _ in range(min(samples, 50)):
        a, b, c = (_rand_hermitian(rng, n) for _ in range(3))
        x, y = rng.standard_normal(2)
        worst_bil = max(worst_bil, np.max(np.abs(kron(x * a + y * b, c) - x * kron(a, c) - y * kron(b, c))))
        worst_assoc = max(worst_assoc, np.max(np.abs(kron(kron(a, b), c) - kron(a, kron(b, c)))))
        h = _rand_hermitian(rng, d)
        w, v = hermitian_eig(h)
        worst_eig = max(worst_eig, np.max(np.abs((v * w) @ v.conj().T - h)))
        worst_unit = max(worst_unit, np.max(np.abs(v.conj().T @ v - np.eye(d))))
        ra, rb = _rand_density(rng, n), _rand_density(rng, n)
        worst_pt = max(worst_pt, np.max(np.abs(partial_trace(kron(ra, rb), n, n, "A") - ra)))
        rho = _rand_density(rng, d)
        twice = partial_transpose(partial_transpose(rho, n, n, "B"), n, n, "B")
        worst_inv = max(worst_inv, np.max(np.abs(twice - rho)))
    suite.add("linalg.kron_bilinear", worst_bil, suite.alg)
    suite.add("linalg.kron_associative", worst_assoc, suite.alg)
    suite.add("linalg.eig_reconstruction", worst_eig, suite.it)
    suite.add("linalg.eig_unitary", worst_unit, suite.it)
    suite.add("linalg.partial_trace_product", worst_pt, suite.alg)
    suite.add("linalg.partial_transpose_involution", worst_inv, 0.0)

    # generators
    for ident in ("unit", "nonet"):
        g = generator_set(n, ident)
        suite.flag(f"su_basis.invariants[{ident}]", not g.check(suite.alg))
    g = generator_set(n)
    sc = structure_constants(g)
    sym_err = max(np.max(np.abs(sc.d - sc.d.transpose(p))) for p in [(1, 0, 2), (0, 2, 1), (2, 1, 0)])
    anti_err = max(np.max(np.abs(sc.f + sc.f.transpose(p))) for p in [(1, 0, 2), (0, 2, 1), (2, 1, 0)])
    suite.add("su_basis.d_symmetric", sym_err, suite.alg)
    suite.add("su_basis.f_antisymmetric", anti_err, suite.alg)
    suite.add("su_basis.f123", abs(sc.f[0, 1, 2] - 1.0), suite.alg)
    suite.add("su_basis.product_identity", np.max(product_identity_residual(g, sc)), suite.alg)
    if n == 3:
        suite.add("su_basis.d118", abs(sc.d[0, 0, 7] - 1 / np.sqrt(3)), suite.alg)
    else:
        suite.add("su_basis.d_vanishes", np.max(np.abs(sc.d)), suite.alg)

    # states
    basis = st.entangled_basis(n)
    fixtures = _fixtures(n)
    suite.flag("states.fixtures_exact", all(np.array_equal(s.amplitudes, f) for s, f in zip(basis, fixtures)))
    suite.add("states.gram_identity", np.max(np.abs(basis.gram() - np.eye(d))), suite.alg)
    parities = BELL_PARITIES if n == 2 else QUTRIT_PARITIES
    suite.flag("states.exchange_parity", tuple(st.exchange_parity(s) for s in basis) == parities)
    sources = st.QUBIT_SOURCES if n == 2 else st.QUTRIT_SOURCES
    suite.flag("states.vectorized_sources",
               all(np.array_equal(st.vectorize_generator(m).amplitudes, f) for m, f in zip(sources, fixtures)))
    suite.add("states.vectorized_matrix",
              max(np.max(np.abs(st.vectorize_generator(s.matrix()).amplitudes - s.amplitudes)) for s in basis),
              suite.alg)
    herm_err = 0.0
    for s in basis:
        m = s.matrix()
        m = m if st.exchange_parity(s) == 1 else 1j * m
        herm_err = max(herm_err, np.max(np.abs(m - m.conj().T)))
    suite.add("states.hermitian_source", herm_err, suite.alg)

    tags = list(st.Basis)
    worst_u = 0.0
    for t in tags:
        u = st.basis_unitary(t, n)
        worst_u = max(worst_u, np.max(np.abs(u.conj().T @ u - np.eye(d))))
    suite.add("states.basis_unitary", worst_u, suite.alg)
    worst_rt = worst_pure = 0.0
    for _ in range(min(samples, 200)):
        c = st.random_state(rng, n).amplitudes
        for src in tags:
            for dst in tags:
                y = st.change_basis(c, src, dst, n)
                back = st.change_basis(y, dst, src, n)
                worst_rt = max(worst_rt, np.max(np.abs(back - c)))
                rho = projector(y)
                worst_pure = max(worst_pure, np.max(np.abs(rho @ rho - rho)))
    suite.add("states.round_trip", worst_rt, suite.alg)
    if n == 2:
        # real magic amplitudes <=> maximally entangled: sum mu^2 = 1 and unit concurrence
        worst_mu = 0.0
        u_magic = st.basis_unitary(st.Basis.MAGIC, 2)
        for _ in range(min(samples, 200)):
            mu = rng.standard_normal(4)
            mu /= np.linalg.norm(mu)
            state = st.BipartiteState(u_magic @ mu, 2, 2)
            worst_mu = max(worst_mu, abs(np.sum(mu**2) - 1.0),
                           abs(ent.concurrence_amplitude_form(state, ent.spin_flip()) - 1.0))
        suite.add("states.magic_real_normalization", worst_mu, suite.alg)
    suite.add("states.purity_preserved", worst_pure, suite.alg)

    # correlation operators
    t = corr.canonical_tensor(n)
    suite.add("correlation.hermitian", np.max(np.abs(t.matrix - t.matrix.conj().T)), suite.alg)
    suite.add("correlation.reconstruction", np.max(np.abs(t.reconstruct() - t.matrix)), suite.it)
    suite.add("correlation.eigenvectors", t.eigen_residual(), suite.it)
    ref = np.abs(corr.reference_expectations(n))
    suite.add("correlation.expectation_magnitudes", np.max(np.abs(np.abs(t.spectrum) - ref)), suite.it)
    rep = corr.check_inequalities(basis, t, suite.it)
    suite.flag("correlation.inequalities_hold", not rep["violations"])
    for name, (bound, members) in corr.bound_classes(n).items():
        sat = [basis.labels[i] for i in members if rep["rows"][i]["saturated"]]
        suite.flag(f"correlation.class_{name}_saturated", bool(sat))
    if n == 2:
        chsh = corr.chsh_from_observables(*corr.canonical_chsh_settings())
        suite.add("correlation.chsh_equals_b2", np.max(np.abs(chsh.matrix - t.matrix)), suite.alg)
    synth = corr.synthesize_tensor(basis, t.spectrum, generator_set(n))
    suite.add("correlation.synthesis_recovers", np.max(np.abs(synth.matrix - t.matrix)), suite.it)
    worst_syn = 0.0
    for _ in range(min(samples, 50)):
        spec = rng.standard_normal(d)
        s_t = corr.synthesize_tensor(basis, spec, generator_set(n))
        worst_syn = max(worst_syn, np.max(np.abs(s_t.reconstruct() - s_t.matrix)))
        worst_syn = max(worst_syn, max(abs(corr.expectation(s, s_t) - x) for s, x in zip(basis, spec)))
    suite.add("correlation.synthesis_round_trip", worst_syn, suite.it)

    # entanglement on the fixed basis
    reports = ent.basis_report(basis)
    if n == 3:
        exp_s = [np.log2(3)] + [1.0] * 7 + [-(2 / 3) * np.log2(2 / 3) - (1 / 3) * np.log2(1 / 6)]
        exp_n = [1.0] + [0.5] * 7 + [5 / 6]
    else:
        exp_s = [1.0] * 4
        exp_n = [0.5] * 4
    suite.add("entanglement.entropy_table", max(abs(r.entropy - e) for r, e in zip(reports, exp_s)), 1e-6)
    suite.add("entanglement.negativity_table", max(abs(r.negativity - e) for r, e in zip(reports, exp_n)), suite.it)


def random_checks(suite: Suite, n: int, rng: np.random.Generator, samples: int) -> None:
    """Pipeline-versus-closed-form agreement on ``samples`` random pure states."""
    flip = ent.spin_flip()
    t = corr.canonical_tensor(n)
    keys = ["paths", "entropy_schmidt", "negativity_schmidt"]
    keys += ["wootters", "bell_concurrence", "magic_concurrence", "su2_comp", "su2_bell", "su2_magic"] if n == 2 else [
        "su3_bell", "su3_magic", "su3_comp"]
    worst = dict.fromkeys(keys, 0.0)
    n_spectral = min(samples, 100)
    for k in range(samples):
        s = st.random_state(rng, n)
        c = s.amplitudes
        b = st.change_basis(c, "computational", "bell_like", n)
        mu = st.change_basis(c, "computational", "magic", n)
        fid = ent.concurrence_trace_form(s, t)
        worst["paths"] = max(worst["paths"], abs(fid - ent.concurrence_amplitude_form(s, t)))
        if n == 2:
            conc = ent.concurrence_trace_form(s, flip)
            worst["paths"] = max(worst["paths"], abs(conc - ent.concurrence_amplitude_form(s, flip)))
            worst["wootters"] = max(worst["wootters"], abs(conc - ent.wootters_concurrence(c)))
            worst["bell_concurrence"] = max(worst["bell_concurrence"], abs(conc - ent.concurrence_bell(b)))
            worst["magic_concurrence"] = max(worst["magic_concurrence"], abs(conc - ent.concurrence_magic(mu)))
            worst["su2_comp"] = max(worst["su2_comp"], abs(fid - ent.su2_fidelity_computational(c)))
            worst["su2_bell"] = max(worst["su2_bell"], abs(fid - ent.su2_fidelity_bell(b)))
            worst["su2_magic"] = max(worst["su2_magic"], abs(fid - ent.su2_fidelity_magic(mu)))
        else:
            worst["su3_bell"] = max(worst["su3_bell"], abs(fid - ent.su3_fidelity_bell(b)))
            worst["su3_magic"] = max(worst["su3_magic"], abs(fid - ent.su3_fidelity_magic(mu)))
            worst["su3_comp"] = max(worst["su3_comp"], abs(fid - ent.su3_fidelity_computational(c)))
        if k < n_spectral:
            sv = ent.schmidt_coefficients(s)
            p = sv**2
            p = p[p > ent.ENTROPY_CUTOFF]
            worst["entropy_schmidt"] = max(worst["entropy_schmidt"],
                                           abs(ent.reduced_entropy(s) + np.sum(p * np.log2(p))))
            pair = sum(sv[i] * sv[j] for i in range(len(sv)) for j in range(i + 1, len(sv)))
            worst["negativity_schmidt"] = max(worst["negativity_schmidt"], abs(ent.negativity(s) - pair))
    for key, err in worst.items():
        suite.add(f"random.{key}", err, suite.it)


def run_suite(n: int, seed: int, samples: int, *, structural: bool = True,
              tol: float | None = None) -> Suite:
    """Run every invariant for dimension ``n``; ``tol`` overrides both default tolerances."""
    suite = Suite(tol, tol) if tol is not None else Suite()
    rng = np.random.default_rng(seed)
    if structural:
        structural_checks(suite, n, rng, samples)
    random_checks(suite, n, rng, samples)
    return suite
