"""Matrix exponentials, kernels, Cauchy bounds and the extension round trip."""

import cmath
from fractions import Fraction

import numpy as np
import pytest

from envalg.catalog import (
    gaussian_char,
    gaussian_functional,
    heisenberg_rep,
    so3,
    spin_half,
)
from envalg.errors import RepresentationError
from envalg.group_integration import (
    GroupSample,
    cauchy_estimate_check,
    extension_demo,
    extension_demo_table,
    local_hom_check,
    matrix_coefficient,
    matrix_exp,
    pd_kernel_check,
    sample_group,
    unitarity_residual,
)
from envalg.lie_structure import GVector
from envalg.sampling import random_skew_rep
from envalg.scalars import Scalar


SO3 = so3()


def vec(spec, *coeffs):
    return GVector(spec, [Scalar(Fraction(c)) for c in coeffs])


class TestMatrixExp:
    def test_zero(self):
        assert np.allclose(matrix_exp(np.zeros((3, 3))), np.eye(3))

    def test_diagonal(self):
        got = matrix_exp(np.diag([1.0, -2.0]))
        assert np.allclose(got, np.diag([np.e, np.exp(-2.0)]))

    def test_skew_hermitian_gives_unitary(self):
        rng = np.random.default_rng(0)
        for _ in range(5):
            B = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
            A = B - B.conj().T
            U = matrix_exp(A)
            assert unitarity_residual(U) <= 1e-10

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            matrix_exp(np.array([[np.inf, 0.0], [0.0, 0.0]]))


class TestLocalHom:
    def test_zero_second_argument(self):
        rep = spin_half()
        x = vec(SO3, "1/2", 0, "1/3")
        zero = vec(SO3, 0, 0, 0)
        report = local_hom_check(rep, x, zero, 2,
                                 [Fraction(1, 5), Fraction(1, 10)])
        assert report.ok and report.exact

    def test_heisenberg_nilpotent_exact(self):
        rep = heisenberg_rep()
        x = vec(rep.spec, 1, 0, "1/3")
        y = vec(rep.spec, 0, 1, "-1/2")
        report = local_hom_check(
            rep, x, y, 2, [Fraction(1, 5), Fraction(1, 10), Fraction(1, 20)]
        )
        assert report.ok and report.exact
        assert max(report.residuals) <= 1e-13

    def test_su2_truncation_orders(self):
        rep = spin_half()
        x = vec(SO3, "1/2", 0, "1/3")
        y = vec(SO3, 0, "2/5", "-1/4")
        scales = [Fraction(1, 5), Fraction(1, 10), Fraction(1, 20), Fraction(1, 40)]
        for N in (2, 3, 4):
            report = local_hom_check(rep, x, y, N, scales)
            assert report.ok
            assert report.slope >= N + 0.5


class TestMatrixCoefficients:
    def test_identity_value(self):
        rep = spin_half()
        sample = GroupSample(rep, [np.eye(2, dtype=complex)], [()])
        assert matrix_coefficient(sample)[0] == pytest.approx(1.0)

    def test_inverse_conjugates(self):
        rep = spin_half()
        sample = sample_group(rep, 10, seed=2)
        inverses = GroupSample(
            rep, [g.conj().T for g in sample.elements], sample.words
        )
        for phi, phi_inv in zip(matrix_coefficient(sample), matrix_coefficient(inverses)):
            assert phi_inv == pytest.approx(phi.conjugate(), abs=1e-12)

    def test_su2_character_curve(self):
        rep = spin_half()
        for t in (0.2, 0.7, 1.3):
            g = matrix_exp(t * rep.generator_array(2))
            sample = GroupSample(rep, [g], [()])
            assert matrix_coefficient(sample)[0] == pytest.approx(
                cmath.exp(-0.5j * t), abs=1e-12
            )


class TestKernel:
    def test_single_element(self):
        rep = spin_half()
        sample = GroupSample(rep, [np.eye(2, dtype=complex)], [()])
        report = pd_kernel_check(sample)
        assert report.ok and report.min_eigenvalue >= 1 - 1e-12

    def test_twenty_random_elements(self):
        rep = spin_half()
        sample = sample_group(rep, 20, seed=4)
        report = pd_kernel_check(sample, tol=1e-10)
        assert report.ok

    def test_duplicates_stay_psd(self):
        rep = spin_half()
        g = matrix_exp(rep.matrix_of(vec(SO3, "1/3", "1/5", 0)))
        sample = GroupSample(rep, [g, g, np.eye(2, dtype=complex)], [(), (), ()])
        report = pd_kernel_check(sample)
        assert report.ok
        K_rank = np.linalg.matrix_rank(
            np.array([[1, 1], [1, 1]], dtype=complex)
        )
        assert K_rank == 1  # duplicated rows keep the kernel singular but PSD

    def test_rejects_non_unitary(self):
        rep = heisenberg_rep()
        g = matrix_exp(rep.matrix_of(vec(rep.spec, 1, 1, 0)))
        sample = GroupSample(rep, [g], [()])
        with pytest.raises(RepresentationError):
            pd_kernel_check(sample)


class TestCauchy:
    def test_norm_bound_at_zero(self):
        rep = spin_half()
        report = cauchy_estimate_check(rep, SO3.basis_vector(2), r=1.0, n_max=0)
        n, lhs, bound = report.rows[0]
        assert lhs == pytest.approx(1.0)
        assert bound >= lhs

    def test_su2_halving_sequence(self):
        rep = spin_half()
        report = cauchy_estimate_check(rep, SO3.basis_vector(2), r=1.0, n_max=12)
        assert report.ok
        for n, lhs, bound in report.rows:
            assert lhs == pytest.approx(2.0 ** (-n), abs=1e-12)
            assert lhs <= bound

    def test_random_skew_reps(self):
        for seed in range(6):
            rep = random_skew_rep(4, seed=seed)
            report = cauchy_estimate_check(
                rep, rep.spec.basis_vector(0), r=1.0, n_max=12
            )
            assert report.ok

    def test_requires_skew(self):
        with pytest.raises(RepresentationError):
            cauchy_estimate_check(heisenberg_rep(), vec(heisenberg_rep().spec, 1, 0, 0))


class TestExtension:
    def test_zero_probe_is_exact(self):
        rep = spin_half()
        zero = vec(SO3, 0, 0, 0)
        report = extension_demo(rep, [1], [zero])
        assert report.final_deviation <= 1e-14

    def test_su2_round_trip(self):
        rep = spin_half()
        probes = [
            vec(SO3, "1/4", "-1/8", "1/5"),
            vec(SO3, 0, "1/3", "1/8"),
            vec(SO3, "-1/6", "1/10", "-1/4"),
        ]
        report = extension_demo(rep, [2, 3], probes)
        assert report.non_increasing
        assert report.final_deviation <= 1e-10
        assert report.ranks == (2, 2)

    def test_gaussian_errors_decrease(self):
        lam = gaussian_functional(16)
        times = [Fraction(t, 5) for t in range(-5, 6)]
        report = extension_demo_table(lam, [4, 6, 8], times, gaussian_char)
        assert report.deviations[0] > report.deviations[1] > report.deviations[2]
        assert report.final_deviation <= 1e-6
        assert report.ranks == (5, 7, 9)

    def test_table_variant_needs_dim_one(self):
        rep = spin_half()
        lam_su2 = None
        from envalg.gns import functional_from_rep

        lam_su2 = functional_from_rep(rep, 4)
        with pytest.raises(ValueError):
            extension_demo_table(lam_su2, [2], [Fraction(1, 2)], gaussian_char)


def test_sampled_elements_are_unitary_with_words():
    rep = spin_half()
    sample = sample_group(rep, 15, seed=8)
    assert len(sample) == 15
    for g, word in zip(sample.elements, sample.words):
        assert unitarity_residual(g) <= 1e-10
        assert 1 <= len(word) <= 3
        for x in word:
            assert x.seminorm() <= 1
