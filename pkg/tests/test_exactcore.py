"""
Exact roots of unity and phase-permutation matrices.
"""

import cmath
import math
from fractions import Fraction

import numpy
from pytest import raises

from weylsic import (
    MonomialMatrix,
    NotMonomial,
    OrderOverflow,
    PhaseExp,
    PhaseNotRecognized,
    canonical_phase,
    extract_monomial,
    monomial_compose,
    monomial_order,
    monomial_to_dense,
    standard_generators,
)
from weylsic.weyl_exception import DimensionError


def _random_monomial(dim, den, seed):
    rng = numpy.random.default_rng(seed)
    perm = rng.permutation(dim)
    nums = rng.integers(0, den, size=dim)
    return MonomialMatrix(perm, [PhaseExp(int(k), den) for k in nums])


class PhaseExp_:
    def is_reduced_on_construction(self):
        assert PhaseExp(6, 8) == PhaseExp(3, 4)
        assert PhaseExp(5, 4) == PhaseExp(1, 4)
        assert PhaseExp(-1, 4).numerator == 3
        assert PhaseExp(4, 4).denominator == 1

    def rejects_nonpositive_denominators(self):
        with raises(ValueError):
            PhaseExp(1, 0)

    def multiplies_by_adding_turns(self):
        assert (PhaseExp(1, 4) * PhaseExp(3, 4)).is_trivial()
        assert PhaseExp(1, 3) / PhaseExp(2, 3) == PhaseExp(2, 3)
        assert PhaseExp(1, 6) ** 3 == PhaseExp(1, 2)

    def order_is_reduced_denominator(self):
        assert PhaseExp(2, 6).order() == 3
        assert PhaseExp().order() == 1

    def quarter_turns_are_exact(self):
        assert PhaseExp(1, 4).to_complex() == 1j
        assert PhaseExp(1, 2).to_complex() == -1
        assert PhaseExp(3, 4).to_complex() == -1j

    def other_turns_go_through_exp(self):
        expected = cmath.exp(2j * math.pi / 3)
        assert abs(PhaseExp(1, 3).to_complex() - expected) < 1e-15

    def conjugate_and_root(self):
        assert PhaseExp(1, 5).conjugate() == PhaseExp(4, 5)
        assert PhaseExp(1, 2).root(2) == PhaseExp(1, 4)
        assert PhaseExp(1, 2).root(2) ** 2 == PhaseExp(1, 2)

    def is_hashable(self):
        assert len({PhaseExp(1, 2), PhaseExp(2, 4), PhaseExp(3, 6)}) == 1


class canonical_phase_:
    def accepts_every_spelling(self):
        expected = PhaseExp(1, 3)
        assert canonical_phase((4, 3)) == expected
        assert canonical_phase(Fraction(-2, 3)) == expected
        assert canonical_phase(PhaseExp(1, 3)) == expected

    def is_idempotent(self):
        for t in (PhaseExp(7, 12), (5, 10), Fraction(9, 4)):
            once = canonical_phase(t)
            assert canonical_phase(once) == once


class MonomialMatrix_:
    def rejects_non_bijections(self):
        with raises(ValueError):
            MonomialMatrix([0, 0, 1], [PhaseExp()] * 3)

    def rejects_mismatched_lengths(self):
        with raises(DimensionError):
            MonomialMatrix([0, 1], [PhaseExp()])

    def shared_denominator_is_least_common(self):
        M = MonomialMatrix.diagonal([PhaseExp(1, 4), PhaseExp(1, 6)])
        assert M.phase_denominator == 12

    def compose_matches_dense_product(self):
        for seed in range(10):
            A = _random_monomial(7, 12, seed)
            B = _random_monomial(7, 8, seed + 100)
            dense = A.to_dense() @ B.to_dense()
            assert numpy.abs((A @ B).to_dense() - dense).max() < 1e-12
            assert monomial_compose(A, B) == A @ B

    def inverse_gives_identity(self):
        A = _random_monomial(6, 9, 3)
        assert (A @ A.inverse()).is_identity()
        assert (A.inverse() @ A).is_identity()

    def negative_powers_invert(self):
        A = _random_monomial(5, 10, 4)
        assert A.power(-3) == A.inverse().power(3)
        assert A.power(0).is_identity()

    def canonical_forgets_global_phase(self):
        A = _random_monomial(5, 10, 5)
        B = A.scaled(PhaseExp(3, 7))
        assert A != B
        assert A.canonical() == B.canonical()
        assert A.canonical().phases[0].is_trivial()

    def dense_rendering_is_unitary(self):
        A = _random_monomial(8, 24, 6)
        D = monomial_to_dense(A)
        assert numpy.abs(D @ D.conj().T - numpy.eye(8)).max() < 1e-14

    def apply_matches_dense(self):
        A = _random_monomial(6, 12, 7)
        v = numpy.arange(6) + 1j * numpy.arange(6)[::-1]
        assert numpy.abs(A.apply(v) - A.to_dense() @ v).max() < 1e-12

    def kron_factors_standard_Z_at_four(self):
        Z = standard_generators(4).Z
        left = MonomialMatrix.diagonal([PhaseExp(), PhaseExp(1, 2)])
        right = MonomialMatrix.diagonal([PhaseExp(), PhaseExp(1, 4)])
        assert left.kron(right) == Z

    def cycles_start_at_smallest_column(self):
        A = MonomialMatrix.permutation([2, 0, 1, 3])
        assert A.cycles() == [(0, 2, 1), (3,)]

    def cycle_eigenvector_is_an_eigenvector(self):
        X = standard_generators(3).X
        lam = PhaseExp(1, 3)
        vec = X.cycle_eigenvector(0, lam)
        v = numpy.zeros(3, dtype=complex)
        for row, phase in vec.items():
            v[row] = phase.to_complex()
        assert numpy.abs(X.apply(v) - lam.to_complex() * v).max() < 1e-14

    def cycle_eigenvector_rejects_non_eigenvalues(self):
        X = standard_generators(3).X
        assert X.cycle_eigenvector(0, PhaseExp(1, 6)) is None


class monomial_order_:
    def shift_has_order_N(self):
        X, Z = standard_generators(5)
        assert monomial_order(X) == 5
        assert monomial_order(Z) == 5

    def cycle_phase_multiplies_the_order(self):
        # (XZ)^4 = w^6 = -1 at N = 4
        X, Z = standard_generators(4)
        assert monomial_order(X @ Z) == 8

    def honors_the_cap(self):
        X = standard_generators(5).X
        with raises(OrderOverflow):
            monomial_order(X, cap=3)


class extract_monomial_:
    def recovers_exact_matrices(self):
        A = _random_monomial(9, 36, 8)
        assert extract_monomial(A.to_dense()) == A

    def tolerates_rounding_noise(self):
        A = _random_monomial(4, 8, 9)
        noisy = A.to_dense() * cmath.exp(1e-12j) + 1e-13
        assert extract_monomial(noisy) == A

    def rejects_spread_columns(self):
        H = numpy.ones((2, 2)) / math.sqrt(2)
        with raises(NotMonomial) as info:
            extract_monomial(H)
        assert info.value.column == 0
        assert info.value.count == 2

    def rejects_row_collisions(self):
        with raises(NotMonomial) as info:
            extract_monomial(numpy.array([[1, 1], [0, 0]]))
        assert info.value.column == 1
        assert info.value.count == 1

    def rejects_empty_columns(self):
        with raises(NotMonomial) as info:
            extract_monomial(numpy.array([[1, 0], [0, 0]]))
        assert info.value.count == 0

    def rejects_unrecognized_phases(self):
        M = numpy.diag([1, cmath.exp(2j * math.pi * 0.1234567)])
        with raises(PhaseNotRecognized) as info:
            extract_monomial(M, max_denom=8)
        assert info.value.column == 1

    def rejects_non_square_input(self):
        with raises(DimensionError):
            extract_monomial(numpy.zeros((2, 3)))
