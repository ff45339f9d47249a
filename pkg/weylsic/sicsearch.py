"""
Numerical search for SIC fiducials by minimizing the frame potential on the
unit sphere, with orbit and multiplet diagnostics.
"""

from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

import numpy
import scipy.linalg
import scipy.optimize

from weylsic.clifford import zauner_unitary
from weylsic.common import (
    COINCIDENCE_TOL,
    FIDUCIAL_NORM_TOL,
    OVERLAP_CERT_TOL,
    SCHMIDT_COSET_TOL,
)
from weylsic.config import SearchConfig  # noqa: F401
from weylsic.heisenberg import (
    RepBasis,
    displacement,
    displacement_indices,
    schmidt_spectrum,
    to_standard,
)
from weylsic.sicmoduli import (
    FiducialComponents,
    ModuliVector,
    derived_identities,
    moduli_residuals_pp,
    moduli_residuals_standard,
    phase_residuals,
)
from weylsic.util import get_logger
from weylsic.weyl_exception import (
    ClaimViolated,
    DimensionError,
    NotConverged,
)

log = get_logger(__name__)


def _canonical_phase(v):
    k = int(numpy.argmax(numpy.abs(v) > numpy.abs(v).max() - 1e-9))
    return v * (abs(v[k]) / v[k])


class Fiducial:
    """
    A unit vector in a given representation basis.
    """

    def __init__(self, v, basis=None):
        self.v = numpy.asarray(v, dtype=complex).ravel()
        self.dim = self.v.size
        self.basis = basis or RepBasis.standard(self.dim)
        if self.basis.dim != self.dim:
            raise DimensionError(
                "{} components for {!r}".format(self.dim, self.basis)
            )
        norm = numpy.linalg.norm(self.v)
        if abs(norm - 1) > FIDUCIAL_NORM_TOL:
            msg = "Fiducial is not normalized (norm {!r})"
            raise ValueError(msg.format(norm))

    def std_vector(self):
        return to_standard(self.v, self.basis)

    def components(self):
        return FiducialComponents(self.v, self.basis)

    def __repr__(self):
        return "<Fiducial N={} in {!r}>".format(self.dim, self.basis)


def _std_vector(f):
    if isinstance(f, Fiducial):
        return f.std_vector()
    return numpy.asarray(f, dtype=complex).ravel()


def _characteristic(v):
    """
    ``C[i, j] = <v| X**i Z**j |v>`` for a standard-basis ``v``.
    """
    N = v.size
    rows = [numpy.roll(v, -i).conj() * v for i in range(N)]
    return N * numpy.fft.ifft(numpy.array(rows), axis=1)


def overlap_profile(f):
    """
    ``|<v| D_(i,j) |v>|**2`` as an ``N x N`` array indexed ``[i, j]``.
    """
    return numpy.abs(_characteristic(_std_vector(f))) ** 2


def frame_potential(f):
    """
    ``sum over p != 0 of |<v| D_p |v>|**4``; at least ``(N-1)/(N+1)`` on
    unit vectors, with equality exactly for SIC fiducials.
    """
    power = overlap_profile(f) ** 2
    return float(power.sum() - power[0, 0])


def sic_bound(N):
    return (N - 1) / (N + 1)


def frame_potential_gradient(v):
    """
    Gradient ``g`` of the frame potential at a standard-basis vector ``v``,
    in the sense that the derivative along ``delta`` is
    ``Re(vdot(g, delta))``.
    """
    v = numpy.asarray(v, dtype=complex).ravel()
    N = v.size
    C = _characteristic(v)
    w = numpy.abs(C) ** 2 * C.conj()
    w[0, 0] = 0
    W = N * numpy.fft.ifft(w, axis=1)
    shifted = numpy.zeros(N, dtype=complex)
    direct = numpy.zeros(N, dtype=complex)
    for i in range(N):
        shifted += numpy.roll(v * W[i], i)
        direct += numpy.roll(v, -i) * W[i].conj()
    return 4 * (shifted + direct)


ZaunerSubspace = namedtuple(
    "ZaunerSubspace", ["basis", "rep_basis", "unitary"]
)


def zauner_invariant_parametrization(N, basis=None):
    """
    Orthonormal basis of the eigenvalue-1 space of the phase-fixed Zauner
    unitary, as the columns of an ``N x (N//3 + 1)`` array.

    ``basis`` defaults to the PP basis when ``N`` is a perfect square.

    :raises: `.ClaimViolated` if the eigenspace has another dimension.
    """
    if basis is None:
        n = int(round(N**0.5))
        if n * n == N:
            basis = RepBasis.phase_permutation(n)
        else:
            basis = RepBasis.standard(N)
    if basis.dim != N:
        msg = "{!r} does not have dimension {}"
        raise DimensionError(msg.format(basis, N))
    U = zauner_unitary(basis)
    projector = (numpy.eye(N) + U + U @ U) / 3
    columns = scipy.linalg.orth(projector)
    expected = N // 3 + 1
    if columns.shape[1] != expected:
        raise ClaimViolated(
            "Zauner invariant dimension",
            "{} instead of {} at N={}".format(columns.shape[1], expected, N),
        )
    return ZaunerSubspace(columns, basis, U)


class BacktrackingLineSearch:
    """
    Armijo backtracking along a tangent direction, retracting onto the unit
    sphere by normalization. After the first call the trial step is
    extrapolated from the previous decrease.
    """

    def __init__(
        self,
        contraction_factor=0.5,
        optimism=2,
        sufficient_decrease=1e-4,
        max_iterations=25,
        initial_step_size=1,
    ):
        self.contraction_factor = contraction_factor
        self.optimism = optimism
        self.sufficient_decrease = sufficient_decrease
        self.max_iterations = max_iterations
        self.initial_step_size = initial_step_size
        self._oldf0 = None

    def search(self, objective, x, d, f0, df0):
        """
        :returns: ``(step_size, newx, newf)``; a zero step leaves ``x``.
        """
        norm_d = numpy.linalg.norm(d)
        alpha = self.initial_step_size / norm_d
        if self._oldf0 is not None:
            guess = 2 * (f0 - self._oldf0) / df0 * self.optimism
            if numpy.isfinite(guess) and guess > 0:
                alpha = guess
        alpha = float(alpha)
        newx = _retract(x, alpha * d)
        newf = objective(newx)
        steps = 1
        while (
            newf > f0 + self.sufficient_decrease * alpha * df0
            and steps <= self.max_iterations
        ):
            alpha *= self.contraction_factor
            newx = _retract(x, alpha * d)
            newf = objective(newx)
            steps += 1
        if newf > f0:
            alpha, newx, newf = 0.0, x, f0
        self._oldf0 = f0
        return alpha * norm_d, newx, newf


def _retract(x, step):
    y = x + step
    return y / numpy.linalg.norm(y)


def _project(x, g):
    return g - numpy.vdot(x, g).real * x


class _Objective:
    """
    Frame potential of ``M x`` for an isometry ``M`` into the standard
    basis.
    """

    def __init__(self, M):
        self.M = M

    def __call__(self, x):
        return frame_potential(self.M @ x)

    def gradient(self, x):
        return self.M.conj().T @ frame_potential_gradient(self.M @ x)


def _minimize(objective, x, cfg, target):
    searcher = BacktrackingLineSearch()
    f = objective(x)
    rg = _project(x, objective.gradient(x))
    d = -rg
    for iteration in range(cfg.max_iters):
        if f - target <= cfg.tol:
            break
        df0 = numpy.vdot(rg, d).real
        if df0 >= 0:
            d = -rg
            df0 = -numpy.vdot(rg, rg).real
        if df0 == 0:
            break
        step, newx, newf = searcher.search(objective, x, d, f, df0)
        if step == 0:
            if numpy.array_equal(d, -rg):
                break
            d = -rg
            continue
        newrg = _project(newx, objective.gradient(newx))
        if cfg.method == "cg":
            moved = _project(newx, rg)
            beta = numpy.vdot(newrg, newrg - moved).real
            beta /= numpy.vdot(rg, rg).real
            d = -newrg + max(0.0, beta) * _project(newx, d)
        else:
            d = -newrg
        x, f, rg = newx, newf, newrg
    log.debug(
        "minimizer stopped after {} iterations at {!r}".format(iteration, f)
    )
    return x, f


SearchResult = namedtuple(
    "SearchResult",
    ["fiducial", "attained", "excess", "restarts_used", "converged"],
)


def _isometry(cfg):
    basis = cfg.rep_basis
    M = numpy.eye(cfg.dim, dtype=complex)
    if cfg.subspace is not None:
        M = cfg.subspace
    if basis.is_pp:
        M = to_standard(M, basis)
    return M


def _overlap_residuals(v):
    N = v.shape[0]
    return overlap_profile(v).ravel()[1:] - 1.0 / (N + 1)


def _polish(M, x, max_nfev):
    """
    Drive every overlap of ``M @ x`` onto ``1/(N+1)`` by nonlinear least
    squares in the real coordinates of ``x``.

    Returns the polished unit vector and whether all overlaps now sit within
    `OVERLAP_CERT_TOL` of the bound.
    """
    d = M.shape[1]

    def residuals(y):
        v = M @ (y[:d] + 1j * y[d:])
        return _overlap_residuals(v / numpy.linalg.norm(v))

    fit = scipy.optimize.least_squares(
        residuals,
        numpy.concatenate([x.real, x.imag]),
        method="trf",
        xtol=1e-15,
        ftol=1e-15,
        gtol=1e-15,
        max_nfev=max_nfev,
    )
    x = fit.x[:d] + 1j * fit.x[d:]
    x /= numpy.linalg.norm(x)
    deviation = numpy.abs(_overlap_residuals(M @ x)).max()
    log.debug("polished overlaps to within {:.3e}".format(deviation))
    return x, deviation <= OVERLAP_CERT_TOL


def _restart(cfg, M, index):
    rng = numpy.random.default_rng(cfg.seed + index)
    d = M.shape[1]
    x = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    x /= numpy.linalg.norm(x)
    objective = _Objective(M)
    target = sic_bound(cfg.dim)
    x, f = _minimize(objective, x, cfg, target)
    if f - target > cfg.tol:
        return x, f, False
    polished, certified = _polish(M, x, cfg.max_iters)
    if certified:
        x, f = polished, objective(polished)
    return x, f, certified


def search_fiducial(cfg, raise_on_failure=True):
    """
    Minimize the frame potential from seeded random starts.

    Start ``k`` draws complex Gaussian coordinates from
    ``default_rng(cfg.seed + k)`` and runs its own optimizer, so the result
    does not depend on ``cfg.workers``. Once a start's excess over
    ``(N-1)/(N+1)`` is within ``cfg.tol`` its overlaps are refined by least
    squares; the start counts as converged only if every overlap then lies
    within `OVERLAP_CERT_TOL` of ``1/(N+1)``. The result is the first
    converged start in index order, or the best start if none is.

    :returns: `SearchResult`
    :raises:
        `.NotConverged` carrying the best result, unless
        ``raise_on_failure`` is false.
    """
    M = _isometry(cfg)
    basis = cfg.rep_basis
    target = sic_bound(cfg.dim)

    def finish(index, x, f, converged):
        v = x if cfg.subspace is None else cfg.subspace @ x
        fiducial = Fiducial(_canonical_phase(v / numpy.linalg.norm(v)), basis)
        return SearchResult(fiducial, f, f - target, index + 1, converged)

    outcomes = []
    if cfg.workers == 1:
        for index in range(cfg.restarts):
            outcomes.append(_restart(cfg, M, index))
            if outcomes[-1][2]:
                break
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            futures = [
                pool.submit(_restart, cfg, M, index)
                for index in range(cfg.restarts)
            ]
            for future in futures:
                outcomes.append(future.result())
                if outcomes[-1][2]:
                    for rest in futures:
                        rest.cancel()
                    break
    index = len(outcomes) - 1
    x, f, certified = outcomes[index]
    if certified:
        msg = "restart {} converged, excess {:.3e}"
        log.info(msg.format(index, f - target))
        return finish(index, x, f, True)
    best = min(range(len(outcomes)), key=lambda k: (outcomes[k][1], k))
    result = finish(best, *outcomes[best][:2], False)
    result = result._replace(restarts_used=len(outcomes))
    log.warning(
        "no restart converged; best excess {:.3e}".format(result.excess)
    )
    if raise_on_failure:
        raise NotConverged(result)
    return result


class Orbit:
    """
    The Heisenberg orbit ``D_p v`` of a fiducial, with its squared overlaps.
    """

    def __init__(self, fiducial):
        N = fiducial.dim
        self.fiducial = fiducial
        self.labels = displacement_indices(N)
        self.vectors = numpy.array(
            [
                displacement(p, fiducial.basis).apply(fiducial.v)
                for p in self.labels
            ]
        )
        self.gram = numpy.abs(self.vectors.conj() @ self.vectors.T) ** 2
        off = ~numpy.eye(N * N, dtype=bool)
        deviation = numpy.abs(self.gram[off] - 1 / (N + 1))
        self.max_deviation = float(deviation.max())
        self.coincidences = [
            (int(a), int(b))
            for a, b in zip(*numpy.nonzero(self.gram > 1 - COINCIDENCE_TOL))
            if a < b
        ]

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __getitem__(self, index):
        return self.vectors[index]


def orbit(f):
    return Orbit(f)


MultipletReport = namedtuple(
    "MultipletReport", ["cosets", "distinct", "concurrences", "spread"]
)


def multiplet_report(f):
    """
    Schmidt spectra over the orbit of a PP-basis fiducial.

    Orbit vectors ``X**i Z**j v`` are grouped by the local coset
    ``i mod n``; local unitaries keep the spectrum fixed within a coset.

    :raises: `.ClaimViolated` if a coset's spectra spread beyond ``1e-8``.
    """
    if not f.basis.is_pp:
        raise DimensionError("Multiplets need a PP-basis fiducial")
    n = f.basis.n
    spectra = [schmidt_spectrum(v, n) for v in Orbit(f)]
    labels = displacement_indices(f.dim)
    cosets = []
    spread = 0.0
    for m in range(n):
        members = [s for p, s in zip(labels, spectra) if p.i % n == m]
        first = numpy.array(members[0].values)
        for s in members[1:]:
            gap = numpy.abs(numpy.array(s.values) - first).max()
            spread = max(spread, gap)
        cosets.append(members[0])
    if spread > SCHMIDT_COSET_TOL:
        detail = "spread {:.3e}".format(spread)
        raise ClaimViolated("Schmidt multiplets", detail)
    distinct = []
    for s in cosets:
        if not any(
            numpy.abs(numpy.array(s.values) - numpy.array(t.values)).max()
            <= SCHMIDT_COSET_TOL
            for t in distinct
        ):
            distinct.append(s)
    concurrences = tuple(s.concurrence for s in spectra)
    return MultipletReport(tuple(cosets), len(distinct), concurrences, spread)


SicCheck = namedtuple(
    "SicCheck",
    [
        "profile_deviation",
        "orbit_deviation",
        "frame_excess",
        "moduli_residual",
        "phase_residual",
        "identities",
        "identity_deviation",
    ],
)


def sic_check(f):
    """
    Every SIC diagnostic of a fiducial, reduced to maxima.

    The moduli residuals use the fiducial's own basis; the phase residuals
    and derived identities use its standard-basis components.
    """
    N = f.dim
    profile = overlap_profile(f)
    profile_deviation = float(
        numpy.abs(profile.ravel()[1:] - 1 / (N + 1)).max()
    )
    moduli = ModuliVector.from_components(f.components())
    if f.basis.is_pp:
        moduli_res = moduli_residuals_pp(moduli, f.basis.n)
    else:
        moduli_res = moduli_residuals_standard(moduli)
    std = FiducialComponents(f.std_vector())
    phases = phase_residuals(std)
    identities = derived_identities(std.moduli())
    identity_deviation = abs(identities.s1 - 1)
    if identities.s2 is not None:
        identity_deviation = max(
            identity_deviation, abs(identities.s2 - 1 / (N + 1))
        )
    return SicCheck(
        profile_deviation,
        Orbit(f).max_deviation,
        frame_potential(f) - sic_bound(N),
        float(numpy.abs(moduli_res).max()),
        max(abs(x) for x in phases.values()) if phases else 0.0,
        identities,
        identity_deviation,
    )
