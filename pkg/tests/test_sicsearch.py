"""
Frame potential, its gradient, and the seeded fiducial search.
"""

import math

import numpy
from pytest import mark, raises

from weylsic import (
    DimensionError,
    Fiducial,
    NotConverged,
    RepBasis,
    SearchConfig,
    displacement,
    frame_potential,
    frame_potential_gradient,
    multiplet_report,
    orbit,
    overlap_profile,
    search_fiducial,
    sic_check,
    zauner_invariant_parametrization,
)
from weylsic.sicmoduli import solve_moduli_n4
from weylsic.sicsearch import BacktrackingLineSearch, sic_bound

from ._util import random_state, slow


def _e0(N):
    v = numpy.zeros(N, dtype=complex)
    v[0] = 1
    return v


class Fiducial_:
    def must_be_normalized(self):
        with raises(ValueError):
            Fiducial([1, 1])

    def checks_the_basis_dimension(self):
        with raises(DimensionError):
            Fiducial(_e0(4), RepBasis.standard(5))

    def defaults_to_the_standard_basis(self):
        f = Fiducial(_e0(3))
        assert f.basis == RepBasis.standard(3)
        assert numpy.array_equal(f.std_vector(), f.v)


class overlap_profile_:
    def basis_vector_at_two(self):
        profile = overlap_profile(Fiducial(_e0(2)))
        assert numpy.allclose(profile, [[1, 1], [0, 0]])

    def ignores_global_phase(self):
        v = random_state(5, 3)
        assert numpy.allclose(overlap_profile(v), overlap_profile(1j * v))

    def agrees_with_explicit_operators(self):
        N = 4
        v = random_state(N, 4)
        basis = RepBasis.standard(N)
        profile = overlap_profile(v)
        for i in range(N):
            for j in range(N):
                D = displacement((i, j), basis).to_dense()
                expected = abs(numpy.vdot(v, D @ v)) ** 2
                assert abs(profile[i, j] - expected) < 1e-14

    def pp_fiducials_are_converted(self):
        basis = RepBasis.phase_permutation(2)
        v = random_state(4, 5)
        f = Fiducial(v, basis)
        expected = overlap_profile(f.std_vector())
        assert numpy.allclose(overlap_profile(f), expected)


class frame_potential_:
    def basis_vector_at_two(self):
        assert abs(frame_potential(_e0(2)) - 1) < 1e-15

    @mark.parametrize("N", [3, 5, 8])
    def is_bounded_below(self, N):
        for seed in range(50):
            value = frame_potential(random_state(N, seed))
            assert value >= sic_bound(N) - 1e-12


@mark.parametrize("N", [3, 5, 9])
def test_gradient_matches_central_differences(N):
    rng = numpy.random.default_rng(N)
    h = 1e-5
    for _ in range(100):
        v = rng.standard_normal(N) + 1j * rng.standard_normal(N)
        v /= numpy.linalg.norm(v)
        delta = rng.standard_normal(N) + 1j * rng.standard_normal(N)
        g = frame_potential_gradient(v)
        analytic = numpy.vdot(g, delta).real
        numeric = (
            frame_potential(v + h * delta) - frame_potential(v - h * delta)
        ) / (2 * h)
        scale = max(abs(analytic), 1e-6 * numpy.linalg.norm(g))
        assert abs(numeric - analytic) <= 1e-4 * scale


class zauner_invariant_parametrization_:
    @mark.parametrize("N,dim", [(4, 2), (9, 4), (16, 6)])
    def has_l_plus_one_dimensions(self, N, dim):
        subspace = zauner_invariant_parametrization(N)
        assert subspace.basis.shape == (N, dim)
        assert subspace.rep_basis.is_pp

    def columns_are_orthonormal_and_invariant(self):
        subspace = zauner_invariant_parametrization(9)
        B, U = subspace.basis, subspace.unitary
        assert numpy.abs(B.conj().T @ B - numpy.eye(4)).max() < 1e-12
        assert numpy.abs(U @ B - B).max() < 1e-10

    def non_squares_use_the_standard_basis(self):
        subspace = zauner_invariant_parametrization(5)
        assert not subspace.rep_basis.is_pp
        assert subspace.basis.shape == (5, 2)

    def checks_the_basis(self):
        with raises(DimensionError):
            zauner_invariant_parametrization(4, RepBasis.standard(5))


class BacktrackingLineSearch_:
    def decreases_along_descent_directions(self):
        v = random_state(3, 6)
        f0 = frame_potential(v)
        g = frame_potential_gradient(v)
        d = -(g - numpy.vdot(v, g).real * v)
        df0 = numpy.vdot(g, d).real
        step, newx, newf = BacktrackingLineSearch().search(
            frame_potential, v, d, f0, df0
        )
        assert step > 0
        assert newf < f0
        assert abs(numpy.linalg.norm(newx) - 1) < 1e-14

    def refuses_ascent_directions(self):
        v = random_state(3, 7)
        f0 = frame_potential(v)
        g = frame_potential_gradient(v)
        d = g - numpy.vdot(v, g).real * v
        searcher = BacktrackingLineSearch(initial_step_size=1e-3)
        step, newx, newf = searcher.search(
            frame_potential, v, d, f0, -numpy.vdot(g, d).real
        )
        assert step == 0
        assert newx is v and newf == f0


class search_fiducial_:
    def two_dimensional_moduli(self, n2_search):
        result = n2_search.result
        assert result.converged
        assert result.excess <= n2_search.cfg.tol
        p = sorted(numpy.abs(result.fiducial.v) ** 2)
        r3 = math.sqrt(3)
        assert abs(p[0] - (3 - r3) / 6) < 1e-7
        assert abs(p[1] - (3 + r3) / 6) < 1e-7

    def four_dimensional_zauner_search(self, n4_search):
        result = n4_search.result
        assert result.converged
        f = result.fiducial
        assert f.basis.is_pp
        exact = sorted(float(x) for x in solve_moduli_n4().p)
        found = sorted(numpy.abs(f.v) ** 2)
        assert numpy.abs(numpy.array(found) - exact).max() < 1e-7

    def stays_in_its_subspace(self, n4_search):
        B = n4_search.subspace.basis
        v = n4_search.fiducial.v
        assert numpy.linalg.norm(v - B @ (B.conj().T @ v)) < 1e-10

    def is_independent_of_worker_count(self):
        cfg = SearchConfig(5, restarts=4, seed=11)
        serial = search_fiducial(cfg, raise_on_failure=False)
        threaded = search_fiducial(
            cfg.replace(workers=3), raise_on_failure=False
        )
        assert numpy.array_equal(serial.fiducial.v, threaded.fiducial.v)
        assert serial.restarts_used == threaded.restarts_used
        assert serial.attained == threaded.attained

    def is_repeatable(self):
        cfg = SearchConfig(3, restarts=2, seed=2**63)
        first = search_fiducial(cfg, raise_on_failure=False)
        second = search_fiducial(cfg, raise_on_failure=False)
        assert numpy.array_equal(first.fiducial.v, second.fiducial.v)

    def steepest_descent_also_works(self):
        cfg = SearchConfig(2, restarts=4, seed=3, method="steepest")
        assert search_fiducial(cfg).converged

    def three_dimensional_overlaps_are_certified(self):
        result = search_fiducial(SearchConfig(3, restarts=8, seed=0))
        assert result.converged
        assert orbit(result.fiducial).max_deviation < 1e-7
        assert sic_check(result.fiducial).profile_deviation < 1e-8

    def loose_excess_alone_is_not_convergence(self):
        # Overlaps can't reach 1/(N+1) in a single least-squares evaluation.
        cfg = SearchConfig(3, restarts=1, seed=0, tol=1.0, max_iters=1)
        result = search_fiducial(cfg, raise_on_failure=False)
        assert not result.converged

    def reports_exhaustion(self):
        cfg = SearchConfig(3, restarts=2, max_iters=1, tol=1e-15)
        with raises(NotConverged) as info:
            search_fiducial(cfg)
        result = info.value.result
        assert not result.converged
        assert result.restarts_used == 2
        assert result.excess > 1e-15

    def can_return_instead_of_raising(self):
        cfg = SearchConfig(3, restarts=2, max_iters=1, tol=1e-15)
        result = search_fiducial(cfg, raise_on_failure=False)
        assert not result.converged
        assert abs(numpy.linalg.norm(result.fiducial.v) - 1) < 1e-12

    @slow
    @mark.parametrize("N", range(2, 10))
    def finds_sics_up_to_nine(self, N):
        result = search_fiducial(SearchConfig(N, restarts=64, seed=0))
        assert result.excess <= 1e-9
        assert orbit(result.fiducial).max_deviation < 1e-7


class orbit_:
    def has_N_squared_unit_vectors(self, n4_search):
        o = orbit(n4_search.fiducial)
        assert len(o) == 16
        assert numpy.allclose(numpy.diag(o.gram), 1)

    def sic_overlaps_are_flat(self, n4_search):
        o = orbit(n4_search.fiducial)
        assert o.max_deviation < 1e-7
        assert o.coincidences == []

    def basis_vectors_coincide_with_their_clock_images(self):
        o = orbit(Fiducial(_e0(4)))
        assert (0, 1) in o.coincidences
        assert (0, 4) not in o.coincidences


class multiplet_report_:
    def sixteen_equal_concurrences(self, n4_search):
        report = multiplet_report(n4_search.fiducial)
        c = numpy.array(report.concurrences)
        assert len(c) == 16
        assert c.max() - c.min() < 1e-7
        assert len(report.cosets) == 2
        assert report.spread < 1e-8

    @slow
    def nine_has_at_most_three_multiplets(self):
        basis = RepBasis.phase_permutation(3)
        subspace = zauner_invariant_parametrization(9, basis)
        cfg = SearchConfig(
            9, restarts=32, seed=0, basis="pp", subspace=subspace.basis
        )
        report = multiplet_report(search_fiducial(cfg).fiducial)
        assert len(report.cosets) == 3
        assert report.distinct <= 3
        assert report.spread < 1e-8

    def needs_a_pp_fiducial(self):
        with raises(DimensionError):
            multiplet_report(Fiducial(_e0(4)))


class sic_check_:
    def passes_for_a_found_fiducial(self, n4_search):
        check = sic_check(n4_search.fiducial)
        assert check.profile_deviation < 1e-7
        assert check.orbit_deviation < 1e-7
        assert check.frame_excess < 1e-9
        assert check.moduli_residual < 1e-7
        assert check.phase_residual < 1e-7
        assert check.identity_deviation < 1e-7

    def phase_equations_hold_at_five(self):
        result = search_fiducial(SearchConfig(5, restarts=32, seed=0))
        assert sic_check(result.fiducial).phase_residual < 1e-7

    def fails_for_a_basis_vector(self):
        check = sic_check(Fiducial(_e0(3)))
        assert check.orbit_deviation > 0.5
