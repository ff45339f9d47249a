"""
Weyl-Heisenberg representations, stabilizers and tensor structure.
"""

import cmath
import math

import numpy
from pytest import mark, raises

from weylsic import (
    DimensionError,
    DisplacementIndex,
    MonomialMatrix,
    NotLocal,
    PhaseExp,
    RepBasis,
    change_of_basis,
    displacement,
    displacement_table,
    generators,
    identify_displacement,
    is_local,
    kronecker_factor_check,
    local_displacements,
    pp_generators,
    schmidt_spectrum,
    stabilizer_subgroups,
    standard_generators,
    unique_order_n_stabilizer,
)
from weylsic.heisenberg import displacement_indices, from_standard, to_standard


def _sigma(N):
    return sum(d for d in range(1, N + 1) if N % d == 0)


class RepBasis_:
    def pp_requires_a_square(self):
        with raises(DimensionError):
            RepBasis("pp", 5)

    def pp_knows_its_root(self):
        assert RepBasis.phase_permutation(3).n == 3
        assert RepBasis.phase_permutation(3).dim == 9

    def rejects_unknown_tags(self):
        with raises(ValueError):
            RepBasis("weird", 4)

    def compares_by_value(self):
        assert RepBasis("std", 4) == RepBasis.standard(4)
        assert RepBasis("std", 4) != RepBasis("pp", 4)


class DisplacementIndex_:
    def reduces_mod_dim(self):
        assert DisplacementIndex(5, -1, 4) == DisplacementIndex(1, 3, 4)

    def form_vanishes_on_multiples(self):
        p = DisplacementIndex(1, 2, 5)
        assert p.symplectic_form(p.times(3)) == 0
        assert p.symplectic_form(DisplacementIndex(0, 1, 5)) == 1


class standard_generators_:
    def Z_is_the_clock(self):
        Z = standard_generators(4).Z.to_dense()
        assert numpy.allclose(numpy.diag(Z), [1, 1j, -1, -1j])

    def X_is_the_shift(self):
        X = standard_generators(3).X.to_dense()
        assert X[1, 0] == 1 and X[2, 1] == 1 and X[0, 2] == 1


@mark.parametrize("basis", [RepBasis.standard(5), RepBasis.standard(4),
                            RepBasis.phase_permutation(2),
                            RepBasis.phase_permutation(3)])
class TestCommutation:
    def test_ZX_is_omega_XZ(self, basis):
        X, Z = generators(basis)
        omega = PhaseExp(1, basis.dim)
        assert Z @ X == (X @ Z).scaled(omega)

    def test_generators_have_order_N(self, basis):
        X, Z = generators(basis)
        assert X.power(basis.dim).is_identity()
        assert Z.power(basis.dim).is_identity()
        assert X.order() == Z.order() == basis.dim

    def test_displacements_commute_up_to_the_form(self, basis):
        N = basis.dim
        labels = displacement_indices(N)[:: max(1, N // 3)]
        for p in labels:
            for q in labels:
                Dp, Dq = displacement(p, basis), displacement(q, basis)
                omega = PhaseExp((q.i * p.j - p.i * q.j) % N, N)
                assert Dp @ Dq == (Dq @ Dp).scaled(omega)


class pp_generators_:
    def local_powers_are_diagonal(self):
        X, Z = pp_generators(3)
        assert X.power(3).is_diagonal()
        assert Z.power(3).is_diagonal()

    def rejects_tiny_roots(self):
        with raises(DimensionError):
            pp_generators(1)


class change_of_basis_:
    @mark.parametrize("n", [2, 3, 4])
    def intertwines_the_representations(self, n):
        V = change_of_basis(n)
        Vh = V.conj().T
        assert numpy.abs(V @ Vh - numpy.eye(n * n)).max() < 1e-12
        for P, S in zip(pp_generators(n), standard_generators(n * n)):
            gap = V @ P.to_dense() @ Vh - S.to_dense()
            assert numpy.abs(gap).max() < 1e-12

    def fixes_the_global_phase(self):
        V = change_of_basis(2)
        assert V[0, 0].real > 0
        assert abs(V[0, 0].imag) < 1e-15

    def vector_conversions_are_inverse(self):
        basis = RepBasis.phase_permutation(2)
        v = numpy.array([1, 2j, -1, 0.5]) / math.sqrt(6.25)
        back = from_standard(to_standard(v, basis), basis)
        assert numpy.abs(back - v).max() < 1e-14

    def returns_a_copy(self):
        change_of_basis(2)[0, 0] = 0
        assert change_of_basis(2)[0, 0] != 0

    def columns_are_joint_eigenvectors_of_the_nth_powers(self):
        n = 2
        V = change_of_basis(n)
        q = numpy.exp(2j * math.pi / n)
        pairs = set()
        for c in range(n * n):
            column = V[:, c]
            eigenvalues = []
            for P, S in zip(pp_generators(n), standard_generators(n * n)):
                row, phase = P.power(n).image(c)
                assert row == c
                value = phase.to_complex()
                image = S.power(n).to_dense() @ column
                assert numpy.abs(image - value * column).max() < 1e-12
                k = round((cmath.phase(value) / (2 * math.pi)) * n) % n
                assert abs(value - q**k) < 1e-12
                eigenvalues.append(k)
            pairs.add(tuple(eigenvalues))
        assert pairs == {(r, s) for r in range(n) for s in range(n)}


class identify_displacement_:
    def table_is_projectively_distinct(self):
        table = displacement_table(RepBasis.standard(3))
        assert len(table) == 9
        assert len({D.canonical() for D in table.values()}) == 9

    def finds_label_and_phase(self):
        basis = RepBasis.phase_permutation(2)
        D = displacement((1, 2), basis).scaled(PhaseExp(3, 8))
        p, phase = identify_displacement(D, basis)
        assert p == DisplacementIndex(1, 2, 4)
        assert phase == PhaseExp(3, 8)

    def returns_none_for_other_monomials(self):
        basis = RepBasis.standard(3)
        swap = MonomialMatrix.permutation([1, 0, 2])
        assert identify_displacement(swap, basis) is None


class stabilizer_subgroups_:
    @mark.parametrize("N", [2, 3, 4, 6, 9, 12])
    def number_sigma_N(self, N):
        assert len(stabilizer_subgroups(N)) == _sigma(N)

    def are_isotropic_closed_and_distinct(self):
        groups = stabilizer_subgroups(8)
        assert len(set(groups)) == len(groups)
        for g in groups:
            assert len(g) == 8
            assert g.is_isotropic()
            assert g.is_closed()

    def prime_dimension_has_N_plus_one(self):
        assert len(stabilizer_subgroups(5)) == 6

    def refuses_huge_dimensions(self):
        with raises(DimensionError):
            stabilizer_subgroups(101)


class unique_order_n_stabilizer_:
    @mark.parametrize("n", [2, 3])
    def is_generated_by_local_powers(self, n):
        N = n * n
        group = unique_order_n_stabilizer(n)
        assert DisplacementIndex(n, 0, N) in group
        assert DisplacementIndex(0, n, N) in group
        assert len(group) == N
        assert group in stabilizer_subgroups(N)


class kronecker_factor_check_:
    @mark.parametrize("n", [2, 3, 4])
    def local_powers_factor(self, n):
        X, Z = pp_generators(n)
        for A in (X.power(n), Z.power(n), Z):
            left, right = kronecker_factor_check(A, n)
            assert left.kron(right) == A

    def standard_Z_at_four_splits(self):
        left, right = kronecker_factor_check(standard_generators(4).Z, 2)
        assert left == MonomialMatrix.diagonal([PhaseExp(), PhaseExp(1, 2)])
        assert right == MonomialMatrix.diagonal([PhaseExp(), PhaseExp(1, 4)])

    def pp_shift_is_not_local(self):
        with raises(NotLocal):
            kronecker_factor_check(pp_generators(2).X, 2)
        assert not is_local(pp_generators(2).X, 2)

    def checks_dimension(self):
        with raises(DimensionError):
            kronecker_factor_check(standard_generators(5).X, 2)

    @mark.parametrize("n", [2, 3])
    def local_displacements_are_X_to_multiples_of_n(self, n):
        N = n * n
        labels = set(local_displacements(n))
        expected = {
            DisplacementIndex(n * a, j, N) for a in range(n) for j in range(N)
        }
        assert labels == expected


class schmidt_spectrum_:
    def product_state(self):
        s = schmidt_spectrum([1, 0, 0, 0], 2)
        assert numpy.allclose(s.values, (1, 0))
        assert s.concurrence == 0

    def maximally_entangled_state(self):
        r = 1 / math.sqrt(2)
        s = schmidt_spectrum([r, 0, 0, r], 2)
        assert numpy.allclose(s.values, (r, r))
        assert abs(s.concurrence - 1) < 1e-15

    def squares_sum_to_one(self):
        rng = numpy.random.default_rng(0)
        v = rng.standard_normal(9) + 1j * rng.standard_normal(9)
        v /= numpy.linalg.norm(v)
        s = schmidt_spectrum(v, 3)
        assert abs(sum(x * x for x in s.values) - 1) < 1e-10
        assert list(s.values) == sorted(s.values, reverse=True)
        assert s.concurrence is None

    def rejects_unnormalized_vectors(self):
        with raises(ValueError):
            schmidt_spectrum([1, 1, 0, 0], 2)
