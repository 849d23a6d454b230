"""Functional tables: evaluation, components, exact norms, radius, recursion."""

import itertools
import random
from fractions import Fraction
from math import factorial

import pytest

from envalg.catalog import (
    abelian,
    delta_functional,
    factorial_functional,
    gaussian_functional,
    heisenberg,
    so3,
    spin_half,
)
from envalg.errors import DegreeOverflowError, SpecMismatchError
from envalg.functionals import (
    FunctionalTable,
    beta_component,
    growth_diagnostics,
    insertion_constants,
    monomials_up_to,
    pnorm,
    radius_estimate,
    recursion_check,
    regular_act,
    symmetrize,
)
from envalg.gns import functional_from_rep
from envalg.lie_structure import PBWPoly, pbw_mul, pbw_reduce
from envalg.sampling import random_functional
from envalg.scalars import RootValue, Scalar, SqrtFraction


HEIS = heisenberg()
SO3 = so3()


def rand_table(spec, degree, seed, complex_values=True):
    return random_functional(spec, degree, random.Random(seed), complex_values)


class TestEval:
    def test_unit_value(self):
        lam = rand_table(HEIS, 3, 0)
        assert lam.eval(PBWPoly.one(HEIS)) == lam.value((0, 0, 0))

    def test_linearity(self):
        lam = rand_table(HEIS, 3, 1)
        rng = random.Random(2)
        for _ in range(20):
            a = pbw_reduce(HEIS, tuple(rng.randrange(3) for _ in range(3)))
            b = pbw_reduce(HEIS, tuple(rng.randrange(3) for _ in range(2)))
            assert lam.eval(a + b) == lam.eval(a) + lam.eval(b)

    def test_reduction_is_forced(self):
        lam = rand_table(HEIS, 2, 3)
        qp = pbw_mul(PBWPoly.generator(HEIS, 1), PBWPoly.generator(HEIS, 0))
        assert lam.eval(qp) == lam.value((1, 1, 0)) - lam.value((0, 0, 1))

    def test_degree_overflow_names_monomial(self):
        lam = rand_table(HEIS, 1, 4)
        with pytest.raises(DegreeOverflowError, match="p\\*q"):
            lam.eval(PBWPoly(HEIS, {(1, 1, 0): 1}))

    def test_spec_mismatch(self):
        lam = rand_table(HEIS, 2, 5)
        with pytest.raises(SpecMismatchError):
            lam.eval(PBWPoly.one(SO3))


class TestBetaComponent:
    def test_arity_zero(self):
        lam = rand_table(HEIS, 2, 6)
        comp = beta_component(lam, 0)
        assert comp.lookup(()) == lam.value((0, 0, 0))

    def test_heisenberg_order_matters(self):
        lam = rand_table(HEIS, 2, 7)
        comp = beta_component(lam, 2)
        assert comp.lookup((0, 1)) == lam.value((1, 1, 0))
        assert comp.lookup((1, 0)) == lam.value((1, 1, 0)) - lam.value((0, 0, 1))

    def test_abelian_fully_symmetric(self):
        ab = abelian(2)
        lam = rand_table(ab, 3, 8)
        for n in (2, 3):
            comp = beta_component(lam, n)
            for word in itertools.product(range(2), repeat=n):
                for perm in itertools.permutations(word):
                    assert comp.lookup(word) == comp.lookup(perm)

    def test_arity_overflow(self):
        lam = rand_table(HEIS, 2, 9)
        with pytest.raises(DegreeOverflowError):
            beta_component(lam, 3)


class TestSymmetrize:
    def test_arity_one_fixed_point(self):
        lam = rand_table(SO3, 3, 10)
        comp = beta_component(lam, 1)
        sym = symmetrize(comp)
        for i in range(3):
            assert sym.lookup((i,)) == comp.lookup((i,))

    def test_heisenberg_pair(self):
        lam = rand_table(HEIS, 2, 11)
        sym = symmetrize(beta_component(lam, 2))
        expect = lam.value((1, 1, 0)) - lam.value((0, 0, 1)) * Fraction(1, 2)
        assert sym.lookup((0, 1)) == expect
        assert sym.lookup((1, 0)) == expect

    def test_is_exact_permutation_average(self):
        lam = rand_table(SO3, 3, 12)
        comp = beta_component(lam, 3)
        sym = symmetrize(comp)
        for word in itertools.product(range(3), repeat=3):
            total = Scalar(0)
            for perm in itertools.permutations(word):
                total = total + comp.lookup(perm)
            assert sym.lookup(word) == total * Fraction(1, factorial(3))

    def test_norm_never_grows(self):
        for seed in range(6):
            lam = rand_table(HEIS, 3, 100 + seed)
            for n in (1, 2, 3):
                comp = beta_component(lam, n)
                assert pnorm(symmetrize(comp)) <= pnorm(comp)


class TestPnorm:
    def test_one_dimensional(self):
        lam = rand_table(abelian(1), 4, 13)
        for n in range(1, 5):
            norm = pnorm(beta_component(lam, n))
            assert norm.squared == lam.value((n,)).abs2()

    def test_weight_homogeneity(self):
        lam_vals = rand_table(HEIS, 3, 14).values
        doubled = heisenberg(weights=(2, 2, 2))
        lam1 = FunctionalTable(HEIS, 3, lam_vals)
        lam2 = FunctionalTable(doubled, 3, lam_vals)
        for n in (1, 2, 3):
            n1 = pnorm(beta_component(lam1, n))
            n2 = pnorm(beta_component(lam2, n))
            assert n2.squared * Fraction(4) ** n == n1.squared

    def test_scaling_moves_norm_by_modulus_squared(self):
        lam = rand_table(SO3, 3, 15)
        c = Scalar(Fraction(3, 7), Fraction(-2, 5))
        scaled = lam.scale(c)
        for n in (1, 2, 3):
            base = pnorm(symmetrize(beta_component(lam, n)))
            moved = pnorm(symmetrize(beta_component(scaled, n)))
            assert moved.squared == base.squared * c.abs2()

    def test_vertex_max_dominates_random_ball_points(self):
        # 10^4 random points of the l1 ball never beat the vertex maximum
        ab = abelian(2, weights=(1, 2))
        lam = rand_table(ab, 2, 16)
        comp = beta_component(lam, 2)
        vertex = pnorm(comp)
        rng = random.Random(17)
        w = ab.weights
        for _ in range(10_000):
            # random rational point with sum w_i |v_i| <= 1, per argument slot
            def point():
                a = Fraction(rng.randint(-99, 99), 100)
                rem = (1 - abs(a) * w[0]) / w[1]
                b = Fraction(rng.randint(-99, 99), 100) * rem
                return (a, b)

            v1, v2 = point(), point()
            total = Scalar(0)
            for i, ci in enumerate(v1):
                for j, cj in enumerate(v2):
                    total = total + comp.lookup((i, j)) * (ci * cj)
            assert SqrtFraction(total.abs2()) <= vertex


class TestRadius:
    def test_factorial_growth_gives_radius_one(self):
        for N in (3, 6, 10):
            est = radius_estimate(factorial_functional(N))
            assert est.equals_rational(1)
            assert est.value == 1.0

    def test_delta_gives_infinite_radius(self):
        est = radius_estimate(delta_functional(SO3, 4))
        assert est.is_infinite
        assert est.value == float("inf")

    def test_gaussian_roots_match_closed_form(self):
        # per-degree roots are ((2k-1)!!/(2k)!)^(1/2k), decreasing in k; the
        # truncated estimate is driven by the max root, i.e. degree 2
        est = radius_estimate(gaussian_functional(24))
        double_fact = lambda n: 1 if n <= 1 else n * double_fact(n - 2)
        roots = dict((n, r) for n, r in est.per_degree)
        prev = None
        for k in range(1, 13):
            n = 2 * k
            assert roots[2 * k - 1] is None
            got = RootValue(
                Fraction(double_fact(n - 1)) ** 2 / Fraction(factorial(n)) ** 2, n
            )
            assert roots[n].squared == got.squared and roots[n].degree == got.degree
            if prev is not None:
                assert got < prev
            prev = got
        assert est.equals_rational(Fraction(1)) is False
        # estimate = 1/max root = sqrt(2), driven by the first even degree
        assert est.best == RootValue(Fraction(1, 4), 2)
        assert abs(est.value - 2 ** 0.5) < 1e-15

    def test_estimate_reported_as_truncated(self):
        est = radius_estimate(gaussian_functional(8))
        assert "truncated" in str(est)


class TestRegularAction:
    def test_abelian_shift(self):
        ab = abelian(2)
        lam = rand_table(ab, 3, 18)
        acted = regular_act(lam, ab.basis_vector(1), "right")
        for alpha in monomials_up_to(2, 2):
            shifted = (alpha[0], alpha[1] + 1)
            assert acted.value(alpha) == lam.value(shifted)

    def test_degree_bookkeeping(self):
        lam = rand_table(SO3, 4, 19)
        x = SO3.basis_vector(0)
        for steps in (1, 2, 3):
            acted = lam
            for _ in range(steps):
                acted = regular_act(acted, x, "left")
            assert acted.max_degree == 4 - steps

    def test_heisenberg_value(self):
        lam = rand_table(HEIS, 2, 20)
        acted = regular_act(lam, HEIS.basis_vector(0), "right")
        assert acted.value((0, 1, 0)) == lam.value((1, 1, 0)) - lam.value((0, 0, 1))

    def test_rejects_degree_zero(self):
        lam = rand_table(HEIS, 0, 21)
        with pytest.raises(DegreeOverflowError):
            regular_act(lam, HEIS.basis_vector(0))


def brute_force_insertion_constant(lam, n):
    """Plain-loop oracle for c_n: full tables, n!-fold symmetrization, max."""
    spec = lam.spec
    best = Fraction(0)
    for k in range(1, n + 2):
        for i in range(spec.dim):
            for word in itertools.product(range(spec.dim), repeat=n):
                total = Scalar(0)
                for perm in itertools.permutations(word):
                    full = perm[: k - 1] + (i,) + perm[k - 1 :]
                    total = total + lam.eval(pbw_reduce(spec, full))
                value = total * Fraction(1, factorial(n))
                wprod = spec.weights[i]
                for l in word:
                    wprod *= spec.weights[l]
                best = max(best, value.abs2() / (wprod * wprod))
    return SqrtFraction(best)


class TestInsertionConstants:
    def test_c0_is_beta1_norm(self):
        for seed in range(4):
            lam = rand_table(SO3, 3, 300 + seed)
            assert insertion_constants(lam, 0) == pnorm(beta_component(lam, 1))

    def test_abelian_position_independent_and_bounded(self):
        ab = abelian(2)
        lam = rand_table(ab, 4, 22)
        for n in (1, 2, 3):
            c_n = insertion_constants(lam, n)
            bound = pnorm(symmetrize(beta_component(lam, n + 1)))
            assert c_n <= bound
            # position independence: inserting anywhere matches beta_{n+1}^s
            # up to the vertex weights, so c_n is attained simultaneously
            assert brute_force_insertion_constant(lam, n) == c_n

    def test_matches_exhaustive_oracle_on_heisenberg(self):
        for seed in (23, 24):
            lam = rand_table(HEIS, 5, seed)
            for n in (1, 2, 3):
                assert insertion_constants(lam, n) == brute_force_insertion_constant(lam, n)

    def test_degree_overflow(self):
        lam = rand_table(HEIS, 2, 25)
        with pytest.raises(DegreeOverflowError):
            insertion_constants(lam, 2)


class TestRecursion:
    def test_delta_functional_trivial(self):
        report = recursion_check(delta_functional(SO3, 5), 3)
        assert report.ok
        for row in report.rows:
            assert row.c_n.is_zero()

    def test_spin_half_functional(self):
        lam = functional_from_rep(spin_half(), 6)
        report = recursion_check(lam, 3)
        assert report.ok

    def test_every_rep_functional_satisfies_recursion(self):
        from envalg.catalog import spin_one, spin_three_half

        for factory in (spin_half, spin_one, spin_three_half):
            lam = functional_from_rep(factory(), 5)
            assert recursion_check(lam, 3).ok

    def test_random_so3_functionals(self):
        for seed in range(10):
            lam = rand_table(SO3, 5, 400 + seed, complex_values=False)
            assert recursion_check(lam, 3).ok

    def test_rejects_bad_weights(self):
        from envalg.errors import SubmultiplicativityError

        heavy = heisenberg(weights=(1, 1, 3))
        lam = rand_table(heavy, 4, 26)
        with pytest.raises(SubmultiplicativityError):
            recursion_check(lam, 2)


def test_growth_diagnostics_monotone():
    lam = functional_from_rep(spin_half(), 6)
    sym, raw = growth_diagnostics(lam, t=1.0)
    assert len(sym) == len(raw) == 7
    assert all(b >= a for a, b in zip(sym, sym[1:]))
    assert all(r >= s - 1e-12 for s, r in zip(sym, raw))
