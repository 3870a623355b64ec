import numpy as np
import pytest

from udisc.discriminator import (
    Povm,
    build_optimal_equal,
    build_trivial_antisym,
    build_universal,
    check_covariance,
    cross_term,
    efficiency_bounds,
    known_state_optimum,
    program_input,
    success_prob_analytic,
    success_prob_operational,
    verify_unambiguous,
)
from udisc.errors import IndexOutOfRange, InvalidPovm, WrongRegime
from udisc.random_states import rand_independent_states
from udisc.tensor_algebra import SubsystemLayout, kron_chain, max_abs


def ket(index, dim):
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def pair_with_overlap(s, m=3):
    states = np.zeros((2, m), dtype=complex)
    states[0, 0] = 1.0
    states[1, 0] = s
    states[1, 1] = np.sqrt(1 - s * s)
    return states


def leaky_counterexample():
    """A valid POVM on m = n = 2 whose element 1 ignores the program registers."""
    dim = 8
    eye = np.eye(dim, dtype=complex)
    return Povm(
        m=2,
        n=2,
        elements=(eye / 2, eye / 2, np.zeros((dim, dim), dtype=complex)),
        layout=SubsystemLayout.uniform(2, 3),
    )


class TestProgramInput:
    def test_first_index(self):
        states = np.eye(2, dtype=complex)
        out = program_input(states, 1)
        assert np.array_equal(out.vector, kron_chain([ket(0, 2), ket(1, 2), ket(0, 2)]))

    def test_second_index(self):
        states = np.eye(2, dtype=complex)
        out = program_input(states, 2)
        assert np.array_equal(out.vector, kron_chain([ket(0, 2), ket(1, 2), ket(1, 2)]))

    def test_unit_norm(self):
        rng = np.random.default_rng(50)
        states = rand_independent_states(3, 4, rng)
        assert abs(np.linalg.norm(program_input(states, 2).vector) - 1) < 1e-12

    def test_index_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            program_input(np.eye(2, dtype=complex), 3)


class TestBuilders:
    def test_optimal_equal_orthonormal_pair(self):
        povm = build_optimal_equal(2)
        assert povm.is_valid()
        p = success_prob_operational(povm, np.eye(2, dtype=complex), 1)
        assert abs(p - 1 / 3) < 1e-12

    def test_optimal_equal_cross_term_zero(self):
        povm = build_optimal_equal(2)
        rng = np.random.default_rng(51)
        states = rand_independent_states(2, 2, rng)
        assert cross_term(povm, states, 1, 2) <= 1e-10

    def test_optimal_equal_positivity_boundary_n3(self):
        povm = build_optimal_equal(3)
        assert min(povm.residuals()[0]) >= -1e-9
        # restore the unscaled blocks and inflate the coefficient
        blocks_sum = sum(povm.elements[1:]) / povm.c
        inflated = np.eye(povm.dim) - (3 / 4 + 0.01) * blocks_sum
        assert np.linalg.eigvalsh(inflated)[0] <= -1e-3

    def test_universal_orthonormal_pair(self):
        povm = build_universal(3, 2)
        assert povm.is_valid()
        states = np.eye(3, dtype=complex)[:2]
        assert abs(success_prob_operational(povm, states, 1) - 0.25) < 1e-12

    def test_universal_dependent_pair_gives_zero(self):
        povm = build_universal(3, 2)
        state = ket(0, 3)
        states = np.array([state, state])
        assert success_prob_operational(povm, states, 1) <= 1e-12

    def test_universal_dimension_independence(self):
        povm = build_universal(4, 2)
        states = np.eye(4, dtype=complex)[:2]
        assert abs(success_prob_operational(povm, states, 1) - 0.25) < 1e-12

    def test_universal_wrong_regime(self):
        with pytest.raises(WrongRegime):
            build_universal(2, 3)
        with pytest.raises(WrongRegime):
            build_universal(2, 2)

    def test_trivial_verifies_and_never_succeeds(self):
        povm = build_trivial_antisym(3, 2)
        assert povm.is_valid()
        assert verify_unambiguous(povm).passed
        rng = np.random.default_rng(52)
        for _ in range(5):
            states = rand_independent_states(2, 3, rng)
            for i in (1, 2):
                assert success_prob_operational(povm, states, i) <= 1e-12

    def test_trivial_degenerates_at_m_equals_n(self):
        povm = build_trivial_antisym(2, 2)
        assert max_abs(povm.elements[1]) == 0.0
        assert max_abs(povm.elements[0] - np.eye(8)) == 0.0

    @pytest.mark.parametrize("m,n", [(2, 2), (3, 3), (3, 2), (4, 3)])
    def test_positivity_boundary_relative(self, m, n):
        povm = build_optimal_equal(n) if m == n else build_universal(m, n)
        blocks_sum = sum(povm.elements[1:]) / povm.c
        inflated = np.eye(povm.dim) - povm.c * 1.01 * blocks_sum
        assert np.linalg.eigvalsh(inflated)[0] <= -1e-3


class TestVerifier:
    @pytest.mark.parametrize(
        "factory", [lambda: build_optimal_equal(2), lambda: build_universal(3, 2),
                    lambda: build_trivial_antisym(3, 2)]
    )
    def test_passes_on_builders(self, factory):
        report = verify_unambiguous(factory())
        assert report.passed
        assert report.max_leakage() <= 1e-9

    def test_fails_on_leaky_counterexample(self):
        report = verify_unambiguous(leaky_counterexample())
        assert not report.passed
        assert report.leakages[0] > 1e-3
        # the counterexample is still a valid POVM, only the criterion fails
        assert min(report.psd_mins) >= -1e-9
        assert report.completeness_residual <= 1e-9

    def test_structural_defects_raise(self):
        povm = build_universal(3, 2)
        broken = Povm(m=3, n=2, elements=povm.elements[:2], layout=povm.layout)
        with pytest.raises(InvalidPovm):
            verify_unambiguous(broken)
        skew = np.zeros((27, 27), dtype=complex)
        skew[0, 1] = 1.0
        broken = Povm(m=3, n=2, elements=(povm.elements[0], povm.elements[1], skew),
                      layout=povm.layout)
        with pytest.raises(InvalidPovm):
            verify_unambiguous(broken)


class TestSuccessProbabilities:
    def test_analytic_values(self):
        assert abs(success_prob_analytic(np.eye(2, dtype=complex), "equal") - 1 / 3) < 1e-12
        states = np.eye(3, dtype=complex)[:2]
        assert abs(success_prob_analytic(states, "universal") - 0.25) < 1e-12
        assert abs(success_prob_analytic(pair_with_overlap(0.6), "universal") - 0.16) < 1e-12

    @pytest.mark.parametrize(
        "m,n,regime",
        [(2, 2, "equal"), (3, 3, "equal"), (3, 2, "universal"), (4, 3, "universal")],
    )
    def test_operational_matches_analytic(self, m, n, regime):
        povm = build_optimal_equal(n) if regime == "equal" else build_universal(m, n)
        rng = np.random.default_rng(53 + m + 10 * n)
        for _ in range(10):
            states = rand_independent_states(n, m, rng)
            expected = success_prob_analytic(states, regime)
            for i in range(1, n + 1):
                assert abs(success_prob_operational(povm, states, i) - expected) < 1e-10

    @pytest.mark.parametrize("m,n", [(2, 2), (3, 2), (4, 3)])
    def test_cross_terms_vanish(self, m, n):
        povm = build_optimal_equal(n) if m == n else build_universal(m, n)
        rng = np.random.default_rng(54 + m + 10 * n)
        for _ in range(10):
            states = rand_independent_states(n, m, rng)
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    if i != j:
                        assert cross_term(povm, states, i, j) <= 1e-10


class TestKnownStateOptimum:
    def test_orthonormal(self):
        assert abs(known_state_optimum(np.eye(2, dtype=complex)) - 1.0) < 1e-12

    def test_identical(self):
        states = np.array([ket(0, 2), ket(0, 2)])
        assert known_state_optimum(states) < 1e-12

    def test_real_overlap_closed_form(self):
        # oracle: 2x2 Gram eigenvalues are 1 ± s
        for s in (0.1, 0.5, 0.9):
            assert abs(known_state_optimum(pair_with_overlap(s)) - (1 - s)) < 1e-12


class TestEfficiencyBounds:
    def test_endpoints(self):
        assert efficiency_bounds(1.0, 2) == (0.25, 0.25)
        assert efficiency_bounds(0.0, 2) == (0.0, 0.0)
        lo, hi = efficiency_bounds(0.5, 2)
        assert abs(lo - 0.0625) < 1e-15 and abs(hi - 0.125) < 1e-15

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            efficiency_bounds(1.5, 2)

    @pytest.mark.parametrize("n,m", [(2, 3), (3, 4)])
    def test_lower_bound_holds_and_orthonormal_saturates(self, n, m):
        # the lower end p_s^n/(n·n!) is a theorem (det X >= λ_min^n); the
        # upper end is not -- see the acceptance suite for the verbatim check
        povm = build_universal(m, n)
        rng = np.random.default_rng(55 + n)
        for _ in range(30):
            states = rand_independent_states(n, m, rng)
            p = success_prob_operational(povm, states, 1)
            lo, hi = efficiency_bounds(known_state_optimum(states), n)
            assert p >= lo - 1e-10
        ortho = np.eye(m, dtype=complex)[:n]
        p = success_prob_operational(povm, ortho, 1)
        lo, hi = efficiency_bounds(known_state_optimum(ortho), n)
        assert abs(p - lo) < 1e-10 and abs(p - hi) < 1e-10


class TestCovariance:
    @pytest.mark.parametrize(
        "factory",
        [lambda: build_universal(3, 2), lambda: build_optimal_equal(3),
         lambda: build_universal(4, 3)],
    )
    def test_builders_pass(self, factory):
        report = check_covariance(factory(), trials=5, seed=2)
        assert report.passed
        assert report.unitary_residual <= 1e-9
        assert report.permutation_residual <= 1e-10
        assert report.reduction_residual <= 1e-9
        assert report.reduction_spread <= 1e-10

    def test_reduction_constant_value(self):
        # Tr of each element spreads over the register dimension
        povm = build_optimal_equal(3)
        report = check_covariance(povm, trials=1, seed=2)
        expected = float(np.trace(povm.elements[1]).real) / 3
        assert abs(report.reduction_constants[0] - expected) < 1e-10

    def test_mismatched_coefficients_fail_permutation_check(self):
        base = build_universal(3, 2)
        blocks = [e / base.c for e in base.elements[1:]]
        elements = [0.4 * blocks[0], 0.5 * blocks[1]]
        pi0 = np.eye(base.dim, dtype=complex) - sum(elements)
        lopsided = Povm(m=3, n=2, elements=(pi0, *elements), layout=base.layout)
        assert lopsided.is_valid()
        report = check_covariance(lopsided, trials=3, seed=2)
        assert not report.permutation_ok
        assert not report.passed
