"""
Clifford unitaries from symplectic data, their monomiality in the
phase-permutation basis, and the Zauner order-three element.
"""

import cmath
import math
from collections import namedtuple
from functools import lru_cache

import numpy

from weylsic.common import (
    CLOSURE_BUDGET,
    INTERTWINE_TOL,
    MAX_DENOM_FACTOR,
    ORDER3_TOL,
    SNAP_TOL,
)
from weylsic.exactcore import MonomialMatrix, PhaseExp, extract_monomial
from weylsic.heisenberg import (
    DisplacementIndex,
    RepBasis,
    displacement,
    displacement_table,
    generators,
    identify_displacement,
    to_basis,
)
from weylsic.util import get_logger, prime_factors
from weylsic.weyl_exception import (
    BudgetExceeded,
    ClaimViolated,
    DimensionError,
    NoIntertwiner,
    NotOrderThree,
    NotUnitary,
)

log = get_logger(__name__)

# Eigenvalues closer than this to a cube root of unity count as that root.
_EIGEN_SNAP = 1e-6


class SymplecticMatrix:
    """
    A 2x2 integer matrix ``(alpha, beta; gamma, delta)`` mod ``dim`` acting on
    displacement labels as column vectors.
    """

    __slots__ = ("alpha", "beta", "gamma", "delta", "dim")

    def __init__(self, alpha, beta, gamma, delta, dim):
        self.alpha = alpha % dim
        self.beta = beta % dim
        self.gamma = gamma % dim
        self.delta = delta % dim
        self.dim = dim

    @classmethod
    def identity(cls, N):
        return cls(1, 0, 0, 1, N)

    @classmethod
    def fourier(cls, N):
        return cls(0, -1, 1, 0, N)

    @classmethod
    def shear(cls, N):
        return cls(1, 0, 1, 1, N)

    @classmethod
    def zauner(cls, N):
        return cls(0, -1, 1, -1, N)

    @property
    def entries(self):
        return (self.alpha, self.beta, self.gamma, self.delta)

    def det(self):
        return (self.alpha * self.delta - self.beta * self.gamma) % self.dim

    def trace(self):
        return (self.alpha + self.delta) % self.dim

    def is_symplectic(self):
        return self.det() == 1 % self.dim

    def is_identity(self):
        return self == SymplecticMatrix.identity(self.dim)

    def compose(self, other):
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return SymplecticMatrix(
            a * e + b * g,
            a * f + b * h,
            c * e + d * g,
            c * f + d * h,
            self.dim,
        )

    __matmul__ = compose

    def power(self, k):
        result = SymplecticMatrix.identity(self.dim)
        for _ in range(k):
            result = result @ self
        return result

    def apply(self, p):
        return DisplacementIndex(
            self.alpha * p.i + self.beta * p.j,
            self.gamma * p.i + self.delta * p.j,
            self.dim,
        )

    def __eq__(self, other):
        if not isinstance(other, SymplecticMatrix):
            return NotImplemented
        return (self.entries, self.dim) == (other.entries, other.dim)

    def __hash__(self):
        return hash((self.entries, self.dim))

    def __repr__(self):
        return "SymplecticMatrix({}, {}; {}, {} mod {})".format(
            *self.entries, self.dim
        )


def sl2_order(N):
    """
    ``|SL(2, Z_N)| = N**3 * prod over primes p | N of (1 - 1/p**2)``.
    """
    order = N**3
    for p in prime_factors(N):
        order = order // (p * p) * (p * p - 1)
    return order


def symplectic_order3_zauner(N):
    """
    The Zauner symplectic ``(0, -1; 1, -1)`` mod ``N``.
    """
    if N < 2:
        raise DimensionError("Dimension must be at least 2, got {}".format(N))
    F = SymplecticMatrix.zauner(N)
    if not F.power(3).is_identity() or not F.is_symplectic():
        raise ClaimViolated("Zauner symplectic", repr(F))
    return F


class CliffordElement:
    """
    A concrete unitary ``U`` with ``U X U^dagger = c1 D_{F(1,0)}`` and
    ``U Z U^dagger = c2 D_{F(0,1)}`` in ``basis``.
    """

    def __init__(self, F, U, basis, c1, c2, shift=None):
        self.F = F
        self.U = U
        self.basis = basis
        self.c1 = c1
        self.c2 = c2
        self.shift = shift or DisplacementIndex(0, 0, basis.dim)

    def __repr__(self):
        return "<CliffordElement {!r} in {!r}>".format(self.F, self.basis)

    def intertwining_residual(self):
        return _intertwining_residual(
            self.U, self.F, self.basis, self.c1, self.c2
        )


def _intertwining_residual(U, F, basis, c1, c2):
    X, Z = (g.to_dense() for g in generators(basis))

    def image(i, j):
        p = F.apply(DisplacementIndex(i, j, basis.dim))
        return displacement(p, basis).to_dense()

    A, B = image(1, 0), image(0, 1)
    Uh = U.conj().T
    return max(
        numpy.abs(U @ X @ Uh - c1.to_complex() * A).max(),
        numpy.abs(U @ Z @ Uh - c2.to_complex() * B).max(),
        numpy.abs(U @ Uh - numpy.eye(basis.dim)).max(),
    )


def _canonical_global_phase(U):
    column = numpy.abs(U[:, 0])
    k = int(numpy.flatnonzero(column >= column.max() - SNAP_TOL)[0])
    return U * (abs(U[k, 0]) / U[k, 0])


def _scale_exact(vec, phase):
    return {k: v * phase for k, v in vec.items()}


def metaplectic_unitary(F, basis):
    """
    Build a Clifford unitary realizing the symplectic ``F``.

    With ``A = D_{F(1,0)}`` and ``B = D_{F(0,1)}`` (standard representation),
    the columns of ``U`` are ``v_0`` (the eigenvector of ``B`` with eigenvalue
    ``1/c2``, read off the monomial cycle structure) and ``v_{k+1} = c1 A
    v_k``; all arithmetic is exact until densification. The constants follow
    the symmetric displacement convention ``tau**(i j) X**i Z**j`` with ``tau =
    -e^{i pi / N}``: ``c1 = tau**(alpha gamma)``, ``c2 = tau**(beta delta)``.
    For odd ``N`` this picks the Weil representative.

    The result is conjugated into ``basis`` and its global phase fixed by
    making the largest entry of column 0 real and positive.

    :raises: `.NoIntertwiner` if ``F`` is not symplectic or the residual
        exceeds tolerance.
    """
    N = basis.dim
    if F.dim != N:
        msg = "Symplectic modulus {} != dim {}"
        raise DimensionError(msg.format(F.dim, N))
    if not F.is_symplectic():
        raise NoIntertwiner("{!r} is not symplectic".format(F))
    std = RepBasis.standard(N)
    A = displacement((F.alpha, F.gamma), std)
    B = displacement((F.beta, F.delta), std)
    tau = PhaseExp(N + 1, 2 * N)
    c1 = tau ** (F.alpha * F.gamma)
    c2 = tau ** (F.beta * F.delta)
    mu = c2.conjugate()
    v0 = None
    for cycle in B.cycles():
        v0 = B.cycle_eigenvector(cycle[0], mu)
        if v0 is not None:
            break
    if v0 is None:
        raise NoIntertwiner("D_F(0,1) lacks eigenvalue {}".format(mu))
    amp = 1 / math.sqrt(len(v0))
    U = numpy.zeros((N, N), dtype=complex)
    vec = v0
    for k in range(N):
        for row, phase in vec.items():
            U[row, k] = amp * phase.to_complex()
        vec = _scale_exact(A.apply_exact(vec), c1)
    if vec != v0:
        raise NoIntertwiner("chain of D_F(1,0) does not close on v_0")
    U = _canonical_global_phase(to_basis(U, basis))
    residual = _intertwining_residual(U, F, basis, c1, c2)
    if residual > INTERTWINE_TOL:
        raise NoIntertwiner("metaplectic construction", residual)
    log.debug(
        "metaplectic {!r} in {!r}: residual {:.2e}".format(F, basis, residual)
    )
    return CliffordElement(F, U, basis, c1, c2)


def fix_order3_phase(U):
    """
    Rescale a projectively order-three unitary so that it cubes to the
    identity, choosing among the three admissible cube roots the one that
    maximizes the eigenvalue-1 multiplicity (smallest root index on ties).

    :raises: `.NotOrderThree` unless ``U**3`` is a unimodular multiple of the
        identity within ``1e-9``.
    """
    U = numpy.asarray(U, dtype=complex)
    N = U.shape[0]
    cube = U @ U @ U
    lam = numpy.trace(cube) / N
    residual = max(
        numpy.abs(cube - lam * numpy.eye(N)).max(), abs(abs(lam) - 1)
    )
    if residual > ORDER3_TOL:
        raise NotOrderThree(residual)
    base = cmath.exp(-1j * cmath.phase(lam) / 3)
    eig = numpy.linalg.eigvals(U)
    best = None
    for k in range(3):
        mu = base * cmath.exp(2j * math.pi * k / 3)
        mult = int(numpy.sum(numpy.abs(mu * eig - 1) < _EIGEN_SNAP))
        if best is None or mult > best[0]:
            best = (mult, mu)
    return best[1] * U


def verify_monomiality(U, tol=SNAP_TOL):
    """
    Snap a unitary to an exact phase-permutation matrix with phase
    denominators up to ``24 * N``.

    :raises:
        `.NotUnitary`; `.NotMonomial` or `.PhaseNotRecognized` from
        `.extract_monomial`.
    """
    U = numpy.asarray(U, dtype=complex)
    N = U.shape[0]
    residual = numpy.abs(U @ U.conj().T - numpy.eye(N)).max()
    if residual > tol:
        raise NotUnitary(residual)
    return extract_monomial(U, tol, MAX_DENOM_FACTOR * N)


def snap_error(U, M):
    """
    Largest entrywise distance between ``U`` and the exact monomial ``M``.
    """
    return float(numpy.abs(numpy.asarray(U) - M.to_dense()).max())


@lru_cache(maxsize=None)
def clifford_generators(basis):
    """
    Canonical exact monomials for ``U_S``, ``U_T``, ``X`` and ``Z``.
    """
    N = basis.dim
    out = []
    for F in (SymplecticMatrix.fourier(N), SymplecticMatrix.shear(N)):
        U = metaplectic_unitary(F, basis).U
        out.append(verify_monomiality(U).canonical())
    out.extend(g.canonical() for g in generators(basis))
    return tuple(out)


def clifford_group_closure(N, basis, max_elements=CLOSURE_BUDGET):
    """
    Every element of the Clifford group modulo phases, as canonical exact
    monomials in the PP basis, sorted by their canonical key.

    Breadth-first closure under right multiplication by `clifford_generators`.
    The expected size ``|SL(2, Z_N)| * N**2`` is checked against
    ``max_elements`` before starting.

    :raises: `.BudgetExceeded`; `.NotMonomial` if a generator fails to snap.
    """
    if not basis.is_pp or basis.dim != N:
        raise DimensionError("Closure requires the PP basis of dimension N")
    expected = sl2_order(N) * N * N
    if expected > max_elements:
        raise BudgetExceeded(max_elements, expected)
    gens = clifford_generators(basis)
    identity = MonomialMatrix.identity(N)
    seen = {identity}
    frontier = [identity]
    while frontier:
        fresh = []
        for g in frontier:
            for h in gens:
                e = (g @ h).canonical()
                if e not in seen:
                    seen.add(e)
                    fresh.append(e)
        if len(seen) > max_elements:
            raise BudgetExceeded(max_elements, len(seen))
        log.debug("closure N={}: {} elements".format(N, len(seen)))
        frontier = fresh
    if len(seen) != expected:
        log.warning(
            "closure N={}: {} elements, expected {}".format(
                N, len(seen), expected
            )
        )
    log.info("closure N={}: {} projective elements".format(N, len(seen)))
    return sorted(seen, key=MonomialMatrix.sort_key)


def conjugation_action(U, basis):
    """
    The symplectic matrix induced by an exact monomial Clifford element.

    Every ``U D_p U^-1`` must be a phase times ``D_{F p}``.

    :raises: `.ClaimViolated` otherwise.
    """
    N = basis.dim
    Uinv = U.inverse()
    images = {}
    for p, D in displacement_table(basis).items():
        found = identify_displacement(U @ D @ Uinv, basis)
        if found is None:
            detail = "image of {!r} is no displacement".format(p)
            raise ClaimViolated("Clifford conjugation", detail)
        images[p] = found[0]
    e1 = images[DisplacementIndex(1, 0, N)]
    e2 = images[DisplacementIndex(0, 1, N)]
    F = SymplecticMatrix(e1.i, e2.i, e1.j, e2.j, N)
    if not F.is_symplectic():
        detail = "{!r} not symplectic".format(F)
        raise ClaimViolated("Clifford conjugation", detail)
    for p, image in images.items():
        if F.apply(p) != image:
            detail = "{!r} is not linear at {!r}".format(F, p)
            raise ClaimViolated("Clifford conjugation", detail)
    return F


ZaunerBlocks = namedtuple("ZaunerBlocks", ["blocks", "diagonal", "cycles"])


def zauner_block_diagonalize(U):
    """
    Monomial ``P`` with ``P U P^-1`` made of 3x3 cyclic blocks followed by
    diagonal cube roots of unity.

    Each 3-cycle ``c0 -> c1 -> c2`` of ``U`` is moved to consecutive
    positions and rephased so that its three entries become 1; fixed points
    keep their phase on the diagonal.

    :returns: ``(P, ZaunerBlocks(blocks, diagonal, cycles))``
    :raises: `.NotOrderThree` unless ``U**3`` is exactly the identity.
    """
    if not U.power(3).is_identity():
        raise NotOrderThree("U^3 is not exactly the identity")
    N = U.dim
    cycles = U.cycles()
    triples = [c for c in cycles if len(c) == 3]
    fixed = [c[0] for c in cycles if len(c) == 1]
    perm = [0] * N
    phases = [PhaseExp()] * N
    pos = 0
    for cycle in triples:
        d = PhaseExp()
        for m, c in enumerate(cycle):
            perm[c] = pos + m
            phases[c] = d
            d = d / U.image(c)[1]
        pos += 3
    diagonal = []
    for c in fixed:
        perm[c] = pos
        diagonal.append(U.image(c)[1])
        pos += 1
    P = MonomialMatrix(perm, phases)
    D = P @ U @ P.inverse()
    for b in range(len(triples)):
        for m in range(3):
            if D.image(3 * b + m) != (3 * b + (m + 1) % 3, PhaseExp()):
                detail = "block {} not cyclic".format(b)
                raise ClaimViolated("Zauner blocks", detail)
    return P, ZaunerBlocks(len(triples), tuple(diagonal), tuple(triples))


ZaunerSpectrum = namedtuple("ZaunerSpectrum", ["one", "omega", "omega2"])


def zauner_spectrum(U):
    """
    Multiplicities of the eigenvalues ``1, e^{2 pi i/3}, e^{4 pi i/3}`` of a
    unitary with ``U**3 = 1``.
    """
    U = numpy.asarray(U, dtype=complex)
    N = U.shape[0]
    residual = numpy.abs(U @ U @ U - numpy.eye(N)).max()
    if residual > ORDER3_TOL:
        raise NotOrderThree(residual)
    counts = [0, 0, 0]
    for e in numpy.linalg.eigvals(U):
        k = int(round(cmath.phase(e) * 3 / (2 * math.pi))) % 3
        miss = abs(e - cmath.exp(2j * math.pi * k / 3))
        if miss > _EIGEN_SNAP:
            raise NotOrderThree(miss)
        counts[k] += 1
    return ZaunerSpectrum(*counts)


def block_spectrum(report):
    """
    The multiplicities implied by a `ZaunerBlocks` report: each block adds
    one of every cube root, each diagonal entry its own.
    """
    counts = [report.blocks] * 3
    for phase in report.diagonal:
        counts[int(phase.turn * 3) % 3] += 1
    return ZaunerSpectrum(*counts)


def zauner_unitary(basis):
    """
    The phase-fixed Zauner unitary in ``basis``.
    """
    F = symplectic_order3_zauner(basis.dim)
    return fix_order3_phase(metaplectic_unitary(F, basis).U)
