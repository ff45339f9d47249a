"""
The Weyl-Heisenberg group ``H(N)`` in two representations.

In the standard representation ``Z`` is diagonal and ``X`` shifts
``|k> -> |k+1>``. For square ``N = n**2`` the phase-permutation (PP)
representation diagonalizes ``X**n`` and ``Z**n`` instead; its basis vector
``|r,s>`` sits at flat index ``r * n + s``.
"""

from collections import namedtuple
from functools import lru_cache
from math import sqrt

import numpy

from weylsic.common import (
    BASIS_CHANGE_TOL,
    BASIS_TAGS,
    PHASE_PERMUTATION,
    STABILIZER_MAX_DIM,
    STANDARD,
    UNIT_NORM_TOL,
)
from weylsic.exactcore import MonomialMatrix, PhaseExp
from weylsic.util import get_logger, isqrt_exact
from weylsic.weyl_exception import (
    ClaimViolated,
    DimensionError,
    NoIntertwiner,
    NotLocal,
)

log = get_logger(__name__)


class RepBasis:
    """
    Which representation of ``H(N)`` a matrix or vector is written in.

    :param str tag: ``"std"`` or ``"pp"``
    :param int dim: the dimension ``N``; must be a perfect square for ``"pp"``
    """

    def __init__(self, tag, dim):
        if tag not in BASIS_TAGS:
            raise ValueError("tag must be one of {!r}".format(BASIS_TAGS))
        if dim < 2:
            msg = "Dimension must be at least 2, got {}"
            raise DimensionError(msg.format(dim))
        self.tag = tag
        self.dim = dim
        self.n = isqrt_exact(dim) if tag == PHASE_PERMUTATION else None

    @classmethod
    def standard(cls, N):
        return cls(STANDARD, N)

    @classmethod
    def phase_permutation(cls, n):
        return cls(PHASE_PERMUTATION, n * n)

    @property
    def is_pp(self):
        return self.tag == PHASE_PERMUTATION

    def __eq__(self, other):
        if not isinstance(other, RepBasis):
            return NotImplemented
        return (self.tag, self.dim) == (other.tag, other.dim)

    def __hash__(self):
        return hash((self.tag, self.dim))

    def __repr__(self):
        return "RepBasis({!r}, {})".format(self.tag, self.dim)


class DisplacementIndex(namedtuple("DisplacementIndex", ["i", "j", "dim"])):
    """
    The label ``(i, j)`` of the group word ``X**i Z**j``, reduced mod ``dim``.
    """

    __slots__ = ()

    def __new__(cls, i, j, dim):
        return super().__new__(cls, i % dim, j % dim, dim)

    def plus(self, other):
        return DisplacementIndex(self.i + other.i, self.j + other.j, self.dim)

    def times(self, k):
        return DisplacementIndex(k * self.i, k * self.j, self.dim)

    def symplectic_form(self, other):
        """
        ``i * j' - j * i'`` mod ``dim``; zero exactly when the two
        displacement operators commute.
        """
        return (self.i * other.j - self.j * other.i) % self.dim

    def is_zero(self):
        return self.i == 0 and self.j == 0


def displacement_indices(N):
    """
    All ``N**2`` labels, ordered by ``i`` then ``j``.
    """
    return [DisplacementIndex(i, j, N) for i in range(N) for j in range(N)]


Generators = namedtuple("Generators", ["X", "Z"])


@lru_cache(maxsize=None)
def standard_generators(N):
    """
    ``X`` (cyclic shift) and ``Z = diag(1, w, ..., w**(N-1))``, ``w =
    e^{2 pi i / N}``.
    """
    if N < 2:
        raise DimensionError("Dimension must be at least 2, got {}".format(N))
    X = MonomialMatrix.from_turns([(c + 1) % N for c in range(N)], [0] * N, 1)
    Z = MonomialMatrix.from_turns(range(N), range(N), N)
    return Generators(X, Z)


@lru_cache(maxsize=None)
def pp_generators(n):
    """
    Generators in the phase-permutation basis of dimension ``N = n**2``:

    - ``X|r,s> = |r,s+1>``, except ``X|r,n-1> = q**r |r,0>``;
    - ``Z|r,s> = w**s |r-1,s>``;

    with ``w = e^{2 pi i / N}`` and ``q = w**n``.
    """
    if n < 2:
        raise DimensionError("n must be at least 2, got {}".format(n))
    N = n * n
    xperm, xnums, zperm, znums = [], [], [], []
    for r in range(n):
        for s in range(n):
            if s + 1 < n:
                xperm.append(r * n + s + 1)
                xnums.append(0)
            else:
                xperm.append(r * n)
                xnums.append(r * n)
            zperm.append(((r - 1) % n) * n + s)
            znums.append(s)
    X = MonomialMatrix.from_turns(xperm, xnums, N)
    Z = MonomialMatrix.from_turns(zperm, znums, N)
    return Generators(X, Z)


def generators(basis):
    if basis.is_pp:
        return pp_generators(basis.n)
    return standard_generators(basis.dim)


def _as_index(p, N):
    if isinstance(p, DisplacementIndex):
        if p.dim != N:
            raise DimensionError(
                "Index modulus {} does not match dimension {}".format(p.dim, N)
            )
        return p
    return DisplacementIndex(p[0], p[1], N)


def displacement(p, basis):
    """
    The exact operator ``X**i Z**j`` in ``basis``, with no extra phase.
    """
    p = _as_index(p, basis.dim)
    X, Z = generators(basis)
    return X.power(p.i) @ Z.power(p.j)


@lru_cache(maxsize=None)
def displacement_table(basis):
    """
    Every displacement operator of ``basis`` keyed by its label.
    """
    return {p: displacement(p, basis) for p in displacement_indices(basis.dim)}


@lru_cache(maxsize=None)
def _canonical_lookup(basis):
    return {D.canonical(): p for p, D in displacement_table(basis).items()}


def identify_displacement(M, basis):
    """
    Find ``(p, phase)`` with ``M == phase * D_p`` exactly, or ``None`` if
    ``M`` is not a multiple of a displacement operator.
    """
    p = _canonical_lookup(basis).get(M.canonical())
    if p is None:
        return None
    D = displacement_table(basis)[p]
    return p, M.image(0)[1] / D.image(0)[1]


def _assemble_basis_change(n):
    N = n * n
    X, Z = standard_generators(N)
    Xn, Zn = X.power(n), Z.power(n)
    q = PhaseExp(1, n)
    # Z**n is diagonal: its eigenvalue-1 space (s = 0) is spanned by the e_k
    # with trivial phase. Within it, X**n cycles k -> k + n.
    start = next(k for k in range(N) if Zn.image(k)[1].is_trivial())
    V = numpy.zeros((N, N), dtype=complex)
    for r in range(n):
        vec = Xn.cycle_eigenvector(start, q ** r)
        if vec is None:
            msg = "X^n has no eigenvalue q^{} on the s=0 cycle"
            raise NoIntertwiner(msg.format(r))
        amp = 1 / sqrt(len(vec))
        for s in range(n):
            for k, phase in vec.items():
                V[k, r * n + s] = amp * phase.to_complex()
            vec = X.apply_exact(vec)
    return V


@lru_cache(maxsize=None)
def _change_of_basis(n):
    V = _assemble_basis_change(n)
    column = numpy.abs(V[:, 0])
    k0 = int(numpy.flatnonzero(column > BASIS_CHANGE_TOL)[0])
    if k0 != 0:
        log.warning("V[0,0] vanishes; fixing phase on row {}".format(k0))
    V = V * (abs(V[k0, 0]) / V[k0, 0])
    std, pp = standard_generators(n * n), pp_generators(n)
    Vh = V.conj().T
    residual = max(
        numpy.abs(V @ P.to_dense() @ Vh - S.to_dense()).max()
        for P, S in zip(pp, std)
    )
    if residual > BASIS_CHANGE_TOL:
        raise NoIntertwiner("change of basis fails to intertwine", residual)
    log.debug("change_of_basis(n={}): residual {:.2e}".format(n, residual))
    return V


def change_of_basis(n):
    """
    Unitary ``V`` (columns indexed by ``r * n + s``) with ``V G_pp V^dagger =
    G_std`` for ``G`` in ``{X, Z}``.

    The columns are built as simultaneous eigenvectors of ``X**n`` and
    ``Z**n`` in the standard representation, read off exactly from the
    monomial cycle structure, and chained by ``X`` so that the PP action of
    ``X`` holds by construction. The global phase makes ``V[0, 0]`` real and
    positive.
    """
    if n < 2:
        raise DimensionError("n must be at least 2, got {}".format(n))
    return _change_of_basis(n).copy()


def to_standard(vector, basis):
    """
    Re-express a vector given in ``basis`` in the standard basis.
    """
    vector = numpy.asarray(vector, dtype=complex)
    if not basis.is_pp:
        return vector
    return _change_of_basis(basis.n) @ vector


def from_standard(vector, basis):
    vector = numpy.asarray(vector, dtype=complex)
    if not basis.is_pp:
        return vector
    return _change_of_basis(basis.n).conj().T @ vector


def to_basis(U, basis):
    """
    Conjugate a dense standard-basis operator into ``basis``.
    """
    U = numpy.asarray(U, dtype=complex)
    if not basis.is_pp:
        return U
    V = _change_of_basis(basis.n)
    return V.conj().T @ U @ V


class StabilizerSubgroup:
    """
    An order-``N`` subgroup of ``Z_N x Z_N`` on which the symplectic form
    vanishes, i.e. the labels of a maximal set of commuting displacements.
    """

    def __init__(self, members, generators=()):
        self.members = tuple(sorted(members))
        self.generators = tuple(generators)
        self.dim = self.members[0].dim

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, p):
        return p in self.members

    def __eq__(self, other):
        if not isinstance(other, StabilizerSubgroup):
            return NotImplemented
        return self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        gens = ", ".join("({},{})".format(g.i, g.j) for g in self.generators)
        return "<StabilizerSubgroup N={} gens=[{}]>".format(self.dim, gens)

    def is_isotropic(self):
        members = self.members
        return all(p.symplectic_form(q) == 0 for p in members for q in members)

    def is_closed(self):
        members = set(self.members)
        return all(p.plus(p2) in members for p in members for p2 in members)


def _divisors(N):
    return [a for a in range(1, N + 1) if N % a == 0]


def stabilizer_subgroups(N):
    """
    All order-``N`` isotropic subgroups of ``Z_N x Z_N``.

    Each corresponds to a lattice between ``N Z^2`` and ``Z^2`` of index
    ``N``, whose Hermite normal form has rows ``(a, b)`` and ``(0, d)`` with
    ``a * d = N`` and ``0 <= b < d``; there are ``sigma(N)`` of them.
    """
    if N < 2:
        raise DimensionError("Dimension must be at least 2, got {}".format(N))
    if N > STABILIZER_MAX_DIM:
        msg = "Enumeration limited to N <= {}, got {}"
        raise DimensionError(msg.format(STABILIZER_MAX_DIM, N))
    seen = set()
    out = []
    for a in _divisors(N):
        d = N // a
        for b in range(d):
            members = {
                DisplacementIndex(x * a, x * b + y * d, N)
                for x in range(d)
                for y in range(a)
            }
            key = frozenset(members)
            if key in seen:
                continue
            seen.add(key)
            group = StabilizerSubgroup(
                members,
                generators=(
                    DisplacementIndex(a, b, N),
                    DisplacementIndex(0, d, N),
                ),
            )
            if len(group) != N or not group.is_isotropic():
                raise ClaimViolated(
                    "stabilizer enumeration", "bad subgroup {!r}".format(group)
                )
            out.append(group)
    return sorted(out, key=lambda g: g.members)


def _orders_divide(group, n, basis):
    return all(
        n % displacement(p, basis).order() == 0
        for p in group
        if not p.is_zero()
    )


def unique_order_n_stabilizer(n):
    """
    The subgroup ``{(n a, n b)}`` generated by ``X**n`` and ``Z**n``.

    Checks that all its operators have order dividing ``n`` in the PP
    representation and that no other stabilizer subgroup has that property.

    :raises: `.ClaimViolated` if either check fails.
    """
    N = n * n
    basis = RepBasis.phase_permutation(n)
    group = StabilizerSubgroup(
        {
            DisplacementIndex(n * a, n * b, N)
            for a in range(n)
            for b in range(n)
        },
        generators=(DisplacementIndex(n, 0, N), DisplacementIndex(0, n, N)),
    )
    if not _orders_divide(group, n, basis):
        raise ClaimViolated(
            "order-n stabilizer",
            "an element of <X^n, Z^n> has order not dividing n",
        )
    matches = [
        g for g in stabilizer_subgroups(N) if _orders_divide(g, n, basis)
    ]
    if matches != [group]:
        raise ClaimViolated(
            "order-n stabilizer",
            "{} subgroups consist of order-n elements".format(len(matches)),
        )
    return group


KroneckerFactors = namedtuple("KroneckerFactors", ["left", "right"])


def kronecker_factor_check(A, n):
    """
    Split ``A`` as ``B (x) C`` with ``B``, ``C`` monomial of dimension ``n``.

    The global phase is fixed by making the first phase of ``B`` trivial.

    :raises: `.NotLocal` if no such split exists.
    """
    if A.dim != n * n:
        raise DimensionError("Expected dim {}, got {}".format(n * n, A.dim))
    left_perm = [A.perm[b * n] // n for b in range(n)]
    right_perm = [A.perm[c] % n for c in range(n)]
    for b in range(n):
        for c in range(n):
            if A.perm[b * n + c] != left_perm[b] * n + right_perm[c]:
                msg = "permutation does not factor at column {}"
                raise NotLocal(msg.format(b * n + c))
    phases = A.phases
    right = [phases[c] for c in range(n)]
    left = [phases[b * n] / phases[0] for b in range(n)]
    for b in range(n):
        for c in range(n):
            if phases[b * n + c] != left[b] * right[c]:
                msg = "phases do not factor at column {}"
                raise NotLocal(msg.format(b * n + c))
    return KroneckerFactors(
        MonomialMatrix(left_perm, left), MonomialMatrix(right_perm, right)
    )


def is_local(A, n):
    try:
        kronecker_factor_check(A, n)
    except NotLocal:
        return False
    return True


def local_displacements(n):
    """
    Labels whose PP displacement operator is a Kronecker product.
    """
    basis = RepBasis.phase_permutation(n)
    return [p for p, D in displacement_table(basis).items() if is_local(D, n)]


SchmidtSpectrum = namedtuple("SchmidtSpectrum", ["values", "concurrence"])


def schmidt_spectrum(v, n):
    """
    Schmidt coefficients of ``v`` on ``C^n (x) C^n``, descending.

    ``v`` is reshaped with row index ``r`` and column index ``s``. For
    ``n == 2`` the concurrence ``2 |v00 v11 - v01 v10|`` is included,
    otherwise ``concurrence`` is ``None``.
    """
    v = numpy.asarray(v, dtype=complex).ravel()
    if v.size != n * n:
        msg = "Expected {} components, got {}"
        raise DimensionError(msg.format(n * n, v.size))
    norm = numpy.linalg.norm(v)
    if abs(norm - 1) > UNIT_NORM_TOL:
        raise ValueError("Vector is not normalized (norm {!r})".format(norm))
    values = numpy.linalg.svd(v.reshape(n, n), compute_uv=False)
    concurrence = None
    if n == 2:
        concurrence = float(2 * abs(v[0] * v[3] - v[1] * v[2]))
    return SchmidtSpectrum(tuple(float(x) for x in values), concurrence)
