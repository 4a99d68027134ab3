import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qutrit_bell.correlation import b2, b3
from qutrit_bell.linalg import DimensionError
from qutrit_bell.states import BipartiteState, bell_basis, change_basis, qutrit_basis, random_state
from qutrit_bell.entanglement import (
    REFERENCE_SU3_COMPUTATIONAL_FORM,
    SU3_COMPUTATIONAL_FORM,
    basis_report,
    concurrence_amplitude_form,
    concurrence_bell,
    concurrence_magic,
    concurrence_trace_form,
    fit_quadratic_form,
    fitted_su3_computational_form,
    generic_concurrence,
    i_concurrence,
    monomial_differences,
    negativity,
    reduced_entropy,
    report,
    schmidt_coefficients,
    spin_flip,
    square_sum_matrix,
    su2_fidelity,
    su2_fidelity_bell,
    su2_fidelity_computational,
    su2_fidelity_magic,
    su3_fidelity,
    su3_fidelity_bell,
    su3_fidelity_computational,
    su3_fidelity_magic,
    wootters_concurrence,
)

SQRT2, SQRT6 = np.sqrt(2), np.sqrt(6)
seeds = st.integers(min_value=0, max_value=2**32 - 1)

# Entropy of psi8: Schmidt probabilities (2/3, 1/6, 1/6).
PSI8_ENTROPY = -(2 / 3) * np.log2(2 / 3) - (1 / 3) * np.log2(1 / 6)


def entropy_oracle(s):
    p = np.linalg.svd(s.matrix(), compute_uv=False) ** 2
    p = p[p > 1e-14]
    return float(-np.sum(p * np.log2(p)))


def negativity_oracle(s):
    # pure state: sum of |negative eigenvalues| of the partial transpose
    return float((np.sum(np.linalg.svd(s.matrix(), compute_uv=False)) ** 2 - 1) / 2)


class TestSpectralMeasures:
    def test_psi8_schmidt(self):
        np.testing.assert_allclose(schmidt_coefficients(qutrit_basis()[8]), [2 / SQRT6, 1 / SQRT6, 1 / SQRT6],
                                   atol=1e-15)

    def test_psi8_entropy(self):
        assert PSI8_ENTROPY == pytest.approx(1.2516291673878226, abs=1e-15)
        assert reduced_entropy(qutrit_basis()[8]) == pytest.approx(PSI8_ENTROPY, abs=1e-12)

    def test_product_state(self):
        s = BipartiteState.from_vector(np.eye(9)[0], 3)
        assert reduced_entropy(s) == 0
        assert negativity(s) == pytest.approx(0, abs=1e-14)

    def test_qubit_bell_states(self):
        for s in bell_basis():
            assert reduced_entropy(s) == pytest.approx(1, abs=1e-12)
            assert negativity(s) == pytest.approx(0.5, abs=1e-12)

    def test_qutrit_table(self):
        ent = [reduced_entropy(s) for s in qutrit_basis()]
        neg = [negativity(s) for s in qutrit_basis()]
        np.testing.assert_allclose(ent, [np.log2(3)] + [1] * 7 + [PSI8_ENTROPY], atol=1e-12)
        np.testing.assert_allclose(neg, [1] + [0.5] * 7 + [5 / 6], atol=1e-10)

    @settings(max_examples=40, deadline=None)
    @given(seeds, st.sampled_from([(2, 2), (3, 3), (2, 3)]))
    def test_against_schmidt_oracle(self, seed, dims):
        s = random_state(np.random.default_rng(seed), *dims)
        assert abs(reduced_entropy(s) - entropy_oracle(s)) < 1e-10
        assert abs(negativity(s) - negativity_oracle(s)) < 1e-10
        sc = schmidt_coefficients(s)
        assert abs(np.sum(sc**2) - 1) < 1e-12
        assert np.all(np.diff(sc) <= 0)


class TestConcurrence:
    def test_wootters_example(self):
        assert wootters_concurrence([0.6, 0, 0, 0.8]) == pytest.approx(0.96, abs=1e-15)
        s = BipartiteState(np.array([0.6, 0, 0, 0.8]), 2, 2)
        assert generic_concurrence(s, spin_flip()) == pytest.approx(0.96, abs=1e-12)

    def test_scaled_spin_flip(self):
        s = BipartiteState(np.array([0.6, 0, 0, 0.8]), 2, 2)
        assert generic_concurrence(s, spin_flip(scaled=True)) == pytest.approx(0.96 * SQRT2, abs=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            concurrence_trace_form(qutrit_basis()[0], spin_flip())

    def test_bell_states_are_maximal(self):
        for s in bell_basis():
            assert generic_concurrence(s, spin_flip()) == pytest.approx(1, abs=1e-12)

    @settings(max_examples=60, deadline=None)
    @given(seeds)
    def test_qubit_routes_agree(self, seed):
        s = random_state(np.random.default_rng(seed), 2)
        c = s.amplitudes
        b = change_basis(c, "computational", "bell_like", 2)
        mu = change_basis(c, "computational", "magic", 2)
        ref = generic_concurrence(s, spin_flip())
        assert abs(wootters_concurrence(c) - ref) < 1e-10
        assert abs(concurrence_bell(b) - ref) < 1e-10
        assert abs(concurrence_magic(mu) - ref) < 1e-10
        assert abs(i_concurrence(s) - ref) < 1e-10

    @settings(max_examples=40, deadline=None)
    @given(seeds, st.sampled_from([2, 3]))
    def test_trace_and_amplitude_forms_any_operator(self, seed, n):
        rng = np.random.default_rng(seed)
        s = random_state(rng, n)
        v = rng.standard_normal((n * n, n * n)) + 1j * rng.standard_normal((n * n, n * n))
        assert abs(concurrence_trace_form(s, v) - concurrence_amplitude_form(s, v)) < 1e-10

    def test_real_magic_amplitudes_give_unit_sum(self):
        rng = np.random.default_rng(4)
        mu = rng.standard_normal(4)
        mu /= np.linalg.norm(mu)
        c = change_basis(mu, "magic", "computational", 2)
        assert abs(np.sum(mu**2) - 1) < 1e-12
        assert wootters_concurrence(c) == pytest.approx(1, abs=1e-12)

    def test_product_state_magic_sum_vanishes(self):
        mu = change_basis([1, 0, 0, 0], "computational", "magic", 2)
        assert abs(np.sum(mu**2)) < 1e-15
        assert np.sum(np.abs(mu) ** 2) == pytest.approx(1, abs=1e-15)


class TestSU2Fidelity:
    def test_computational_zero_zero(self):
        assert su2_fidelity_computational([1, 0, 0, 0]) == pytest.approx(SQRT2, abs=1e-15)
        s = BipartiteState(np.array([1, 0, 0, 0]), 2, 2)
        assert su2_fidelity(s) == pytest.approx(SQRT2, abs=1e-12)

    def test_bell_states(self):
        vals = [su2_fidelity(s) for s in bell_basis()]
        np.testing.assert_allclose(vals, [2 * SQRT2, 0, 2 * SQRT2, 0], atol=1e-12)

    def test_rejects_qutrit(self):
        with pytest.raises(DimensionError):
            su2_fidelity(qutrit_basis()[0])

    @settings(max_examples=60, deadline=None)
    @given(seeds)
    def test_closed_forms(self, seed):
        s = random_state(np.random.default_rng(seed), 2)
        c = s.amplitudes
        ref = abs(c @ b2().matrix @ c)
        assert abs(su2_fidelity(s) - ref) < 1e-10
        assert abs(su2_fidelity_computational(c) - ref) < 1e-10
        assert abs(su2_fidelity_bell(change_basis(c, "computational", "bell_like", 2)) - ref) < 1e-10
        assert abs(su2_fidelity_magic(change_basis(c, "computational", "magic", 2)) - ref) < 1e-10


class TestSU3Fidelity:
    def test_basis_states(self):
        vals = [su3_fidelity(s) for s in qutrit_basis()]
        np.testing.assert_allclose(vals, SQRT2 * np.array([2, 0, 2, 1, 0, 2, 0, 2, 1]), atol=1e-10)

    @settings(max_examples=60, deadline=None)
    @given(seeds)
    def test_closed_forms(self, seed):
        s = random_state(np.random.default_rng(seed), 3)
        c = s.amplitudes
        ref = abs(c @ b3().matrix @ c)
        assert abs(su3_fidelity(s) - ref) < 1e-10
        assert abs(su3_fidelity_computational(c) - ref) < 1e-10
        assert abs(su3_fidelity_bell(change_basis(c, "computational", "bell_like", 3)) - ref) < 1e-10
        assert abs(su3_fidelity_magic(change_basis(c, "computational", "magic", 3)) - ref) < 1e-10

    def test_fitted_form_matches_operator(self):
        # B3 is real symmetric, so c^T B3 c / sqrt2 has Q = B3 / sqrt2
        q = fitted_su3_computational_form()
        np.testing.assert_allclose(q, b3().matrix.real / SQRT2, atol=1e-12)
        np.testing.assert_allclose(q, square_sum_matrix(SU3_COMPUTATIONAL_FORM), atol=1e-12)

    def test_reference_form_differs_in_eight_monomials(self):
        q = fitted_su3_computational_form()
        diffs = monomial_differences(q, square_sum_matrix(REFERENCE_SU3_COMPUTATIONAL_FORM))
        # expanded by hand from the two square sums
        expected = {
            "c0^2": (0, -1), "c0*c3": (0, 2), "c0*c4": (2, 0), "c0*c8": (2, 0),
            "c1^2": (1, 2), "c1*c8": (0, 2), "c3^2": (1, 2), "c4^2": (1, 0),
        }
        got = {d["monomial"]: (d["fitted"], d["reference"]) for d in diffs}
        assert got.keys() == expected.keys()
        for k, (fit, ref) in expected.items():
            assert got[k] == pytest.approx((fit, ref), abs=1e-12)

    def test_fit_quadratic_form_recovers_random_symmetric(self):
        rng = np.random.default_rng(9)
        a = rng.standard_normal((5, 5))
        q = a + a.T
        np.testing.assert_allclose(fit_quadratic_form(lambda c: c @ q @ c, 5).real, q, atol=1e-12)


class TestReport:
    def test_qubit_report(self):
        r = report(bell_basis()[2])
        assert r.label == "Psi-"
        assert r.parity == -1
        assert r.concurrence == pytest.approx(1, abs=1e-12)
        assert r.fidelity_su == pytest.approx(2 * SQRT2, abs=1e-12)
        assert list(r.to_dict()) == ["label", "entropy", "negativity", "schmidt", "parity", "fidelity",
                                     "concurrence"]

    def test_qutrit_report_uses_i_concurrence(self):
        reps = basis_report(qutrit_basis())
        assert reps[0].concurrence == pytest.approx(np.sqrt(4 / 3), abs=1e-12)
        assert reps[8].schmidt == pytest.approx((2 / SQRT6, 1 / SQRT6, 1 / SQRT6), abs=1e-15)

    def test_rejects_unequal(self):
        with pytest.raises(DimensionError):
            report(BipartiteState.from_vector(np.ones(6), 2, 3))
