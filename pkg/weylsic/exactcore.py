"""
Exact roots of unity and phase-permutation (monomial) matrices.

A `PhaseExp` is a rational number of turns ``t`` standing for ``e^{2 pi i t}``.
A `MonomialMatrix` stores, for every column ``c``, the row ``perm[c]`` of its
single nonzero entry and that entry's phase. Phases are kept as integer
numerators over one shared denominator so that products, powers and hashing
stay exact and cheap.
"""

import cmath
import math
from fractions import Fraction

import numpy

from weylsic.common import MAX_DENOM_FACTOR, ORDER_CAP, SNAP_TOL
from weylsic.util import lcm_all
from weylsic.weyl_exception import (
    DimensionError,
    NotMonomial,
    OrderOverflow,
    PhaseNotRecognized,
)

_TWO_PI = 2 * math.pi

# Exact complex values for the turns that show up constantly (powers of i).
_QUARTER_TURNS = {
    Fraction(0): complex(1, 0),
    Fraction(1, 4): complex(0, 1),
    Fraction(1, 2): complex(-1, 0),
    Fraction(3, 4): complex(0, -1),
}


class PhaseExp:
    """
    An exact root of unity ``e^{2 pi i numerator / denominator}``.

    Instances are immutable and always canonical: ``0 <= numerator <
    denominator`` with the fraction in lowest terms (``0/1`` for the trivial
    phase).
    """

    __slots__ = ("_turn",)

    def __init__(self, numerator=0, denominator=1):
        if denominator <= 0:
            raise ValueError("denominator must be positive")
        self._turn = Fraction(numerator, denominator) % 1

    @classmethod
    def from_turn(cls, turn):
        obj = cls.__new__(cls)
        obj._turn = Fraction(turn) % 1
        return obj

    @property
    def turn(self):
        return self._turn

    @property
    def numerator(self):
        return self._turn.numerator

    @property
    def denominator(self):
        return self._turn.denominator

    def is_trivial(self):
        return self._turn == 0

    def order(self):
        """
        Multiplicative order, i.e. the smallest ``k`` with ``self**k == 1``.
        """
        return self._turn.denominator

    def conjugate(self):
        return PhaseExp.from_turn(-self._turn)

    def root(self, k):
        """
        The principal ``k``-th root: the turn divided by ``k``.
        """
        return PhaseExp.from_turn(self._turn / k)

    def to_complex(self):
        try:
            return _QUARTER_TURNS[self._turn]
        except KeyError:
            return cmath.exp(1j * _TWO_PI * float(self._turn))

    def __mul__(self, other):
        if not isinstance(other, PhaseExp):
            return NotImplemented
        return PhaseExp.from_turn(self._turn + other._turn)

    def __truediv__(self, other):
        if not isinstance(other, PhaseExp):
            return NotImplemented
        return PhaseExp.from_turn(self._turn - other._turn)

    def __pow__(self, k):
        return PhaseExp.from_turn(self._turn * k)

    def __eq__(self, other):
        if not isinstance(other, PhaseExp):
            return NotImplemented
        return self._turn == other._turn

    def __hash__(self):
        return hash(("PhaseExp", self._turn))

    def __repr__(self):
        return "PhaseExp({}, {})".format(self.numerator, self.denominator)

    def __str__(self):
        if self.is_trivial():
            return "1"
        return "e(2pi i {}/{})".format(self.numerator, self.denominator)


def canonical_phase(t):
    """
    Canonical representative of a phase; idempotent.

    Accepts a `PhaseExp`, a `fractions.Fraction` turn or a ``(numerator,
    denominator)`` pair.
    """
    if isinstance(t, PhaseExp):
        return PhaseExp(t.numerator, t.denominator)
    if isinstance(t, tuple):
        return PhaseExp(*t)
    return PhaseExp.from_turn(t)


def _reduce_turns(nums, den):
    g = den
    for x in nums:
        g = math.gcd(g, x)
        if g == 1:
            break
    if g > 1:
        nums = tuple(x // g for x in nums)
        den //= g
    return nums, den


class MonomialMatrix:
    """
    An exact phase-permutation matrix.

    :param perm:
        ``perm[c]`` is the row holding the nonzero entry of column ``c``; must
        be a bijection of ``range(dim)``.
    :param phases:
        one `PhaseExp` per column; the entry at ``(perm[c], c)``.
    """

    __slots__ = ("perm", "_nums", "_den", "_hash")

    def __init__(self, perm, phases):
        perm = tuple(int(x) for x in perm)
        phases = tuple(phases)
        if len(perm) != len(phases) or not perm:
            raise DimensionError("perm and phases must be equally long")
        if sorted(perm) != list(range(len(perm))):
            raise ValueError("perm is not a bijection: {!r}".format(perm))
        den = lcm_all(p.denominator for p in phases)
        nums = tuple(p.numerator * (den // p.denominator) for p in phases)
        self._set(perm, nums, den)

    def _set(self, perm, nums, den):
        self.perm = perm
        self._nums, self._den = _reduce_turns(nums, den)
        self._hash = None

    @classmethod
    def from_turns(cls, perm, nums, den):
        """
        Build from integer turn numerators over a shared denominator. The
        permutation is trusted; callers pass already valid data.
        """
        obj = cls.__new__(cls)
        obj._set(tuple(perm), tuple(x % den for x in nums), den)
        return obj

    @classmethod
    def identity(cls, dim):
        return cls.from_turns(range(dim), (0,) * dim, 1)

    @classmethod
    def diagonal(cls, phases):
        phases = tuple(phases)
        return cls(range(len(phases)), phases)

    @classmethod
    def permutation(cls, perm):
        perm = tuple(perm)
        return cls(perm, (PhaseExp(),) * len(perm))

    @property
    def dim(self):
        return len(self.perm)

    @property
    def phases(self):
        return tuple(PhaseExp(x, self._den) for x in self._nums)

    @property
    def phase_denominator(self):
        """
        Least common denominator of all phases.
        """
        return self._den

    def image(self, column):
        """
        ``(row, phase)`` of the nonzero entry in ``column``.
        """
        return self.perm[column], PhaseExp(self._nums[column], self._den)

    def compose(self, other):
        """
        The exact product ``self @ other``.
        """
        if other.dim != self.dim:
            raise DimensionError(
                "Cannot compose dim {} with dim {}".format(self.dim, other.dim)
            )
        den = self._den * other._den // math.gcd(self._den, other._den)
        ka, kb = den // self._den, den // other._den
        a_perm, a_nums = self.perm, self._nums
        perm = tuple(a_perm[b] for b in other.perm)
        nums = tuple(
            (nb * kb + a_nums[b] * ka) % den
            for b, nb in zip(other.perm, other._nums)
        )
        obj = MonomialMatrix.__new__(MonomialMatrix)
        obj._set(perm, nums, den)
        return obj

    __matmul__ = compose

    def inverse(self):
        perm = [0] * self.dim
        nums = [0] * self.dim
        for c, (r, x) in enumerate(zip(self.perm, self._nums)):
            perm[r] = c
            nums[r] = -x
        return MonomialMatrix.from_turns(perm, nums, self._den)

    def power(self, k):
        if k < 0:
            return self.inverse().power(-k)
        result = MonomialMatrix.identity(self.dim)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def scaled(self, phase):
        """
        Multiply every entry by ``phase``.
        """
        den = self._den * phase.denominator // math.gcd(
            self._den, phase.denominator
        )
        shift = phase.numerator * (den // phase.denominator)
        k = den // self._den
        return MonomialMatrix.from_turns(
            self.perm, (x * k + shift for x in self._nums), den
        )

    def canonical(self):
        """
        Representative modulo global phase: column 0's phase made trivial.
        """
        x0 = self._nums[0]
        if not x0:
            return self
        return MonomialMatrix.from_turns(
            self.perm, (x - x0 for x in self._nums), self._den
        )

    def is_identity(self):
        return self._den == 1 and all(c == r for c, r in enumerate(self.perm))

    def is_diagonal(self):
        return all(c == r for c, r in enumerate(self.perm))

    def kron(self, other):
        """
        Kronecker product ``self (x) other`` in the flat index ``b * m + c``.
        """
        m = other.dim
        den = self._den * other._den // math.gcd(self._den, other._den)
        ka, kb = den // self._den, den // other._den
        perm, nums = [], []
        for pb, xb in zip(self.perm, self._nums):
            for pc, xc in zip(other.perm, other._nums):
                perm.append(pb * m + pc)
                nums.append(xb * ka + xc * kb)
        return MonomialMatrix.from_turns(perm, nums, den)

    def cycles(self):
        """
        Cycles of the permutation part, each starting at its smallest column,
        ordered by that column.
        """
        seen = [False] * self.dim
        out = []
        for start in range(self.dim):
            if seen[start]:
                continue
            cycle = []
            c = start
            while not seen[c]:
                seen[c] = True
                cycle.append(c)
                c = self.perm[c]
            out.append(tuple(cycle))
        return out

    def cycle_phase(self, cycle):
        """
        Product of the phases met along ``cycle``; the matrix raised to the
        cycle length acts on the cycle's span as this scalar.
        """
        return PhaseExp(sum(self._nums[c] for c in cycle), self._den)

    def cycle_eigenvector(self, start, eigenvalue):
        """
        Eigenvector supported on the cycle through ``start``, as a mapping
        ``row -> PhaseExp`` with unit coefficient at ``start`` (normalize by
        the square root of its length).

        Returns ``None`` when ``eigenvalue`` is not an eigenvalue on that
        cycle, i.e. when its ``L``-th power differs from the cycle phase.
        """
        cycle = [start]
        c = self.perm[start]
        while c != start:
            cycle.append(c)
            c = self.perm[c]
        if eigenvalue ** len(cycle) != self.cycle_phase(cycle):
            return None
        vec = {}
        coeff = PhaseExp()
        for c in cycle:
            vec[c] = coeff
            coeff = coeff * PhaseExp(self._nums[c], self._den) / eigenvalue
        return vec

    def apply_exact(self, vec):
        """
        Apply to a sparse vector of exact phases (``index -> PhaseExp``).
        """
        return {
            self.perm[c]: PhaseExp(self._nums[c], self._den) * phase
            for c, phase in vec.items()
        }

    def order(self, cap=ORDER_CAP):
        total = 1
        for cycle in self.cycles():
            k = len(cycle) * self.cycle_phase(cycle).order()
            total = total * k // math.gcd(total, k)
            if total > cap:
                raise OrderOverflow(cap)
        return total

    def to_dense(self):
        out = numpy.zeros((self.dim, self.dim), dtype=complex)
        for c, (r, x) in enumerate(zip(self.perm, self._nums)):
            out[r, c] = PhaseExp(x, self._den).to_complex()
        return out

    def phase_vector(self):
        """
        Complex phases as a numpy array indexed by column.
        """
        return numpy.array(
            [PhaseExp(x, self._den).to_complex() for x in self._nums]
        )

    def apply(self, vector):
        """
        Numeric ``self @ vector`` without densifying.
        """
        vector = numpy.asarray(vector)
        out = numpy.zeros_like(vector, dtype=complex)
        out[list(self.perm)] = self.phase_vector() * vector
        return out

    def sort_key(self):
        return (self.perm, self._den, self._nums)

    def __eq__(self, other):
        if not isinstance(other, MonomialMatrix):
            return NotImplemented
        return (
            self.perm == other.perm
            and self._den == other._den
            and self._nums == other._nums
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.perm, self._den, self._nums))
        return self._hash

    def __repr__(self):
        turns = ", ".join(
            "{}/{}".format(p.numerator, p.denominator) for p in self.phases
        )
        return "MonomialMatrix(perm={!r}, turns=[{}])".format(self.perm, turns)


def monomial_compose(A, B):
    """
    Exact product ``A @ B``.

    :raises: `.DimensionError` when the dimensions differ.
    """
    return A.compose(B)


def monomial_order(A, cap=ORDER_CAP):
    """
    Smallest ``k >= 1`` with ``A**k`` the exact identity.

    Computed from the cycle structure: a cycle of length ``L`` whose phases
    multiply to a root of unity of order ``m`` contributes ``L * m``.

    :raises: `.OrderOverflow` when the order exceeds ``cap``.
    """
    return A.order(cap)


def monomial_to_dense(A):
    return A.to_dense()


def extract_monomial(M, tol=SNAP_TOL, max_denom=None):
    """
    Recognize a dense matrix as an exact phase-permutation matrix.

    Every column must have exactly one entry of modulus above ``tol``; its
    argument is snapped to the nearest rational turn with denominator at most
    ``max_denom`` (default ``24 * dim``) and must lie within angular distance
    ``tol`` of it.

    :raises:
        `.NotMonomial` if a column has zero or several large entries or two
        columns land on the same row; `.PhaseNotRecognized` if an argument is
        not close to an admissible root of unity.
    """
    M = numpy.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        msg = "Expected a square matrix, got {}"
        raise DimensionError(msg.format(M.shape))
    dim = M.shape[0]
    if max_denom is None:
        max_denom = MAX_DENOM_FACTOR * dim
    large = numpy.abs(M) > tol
    perm, turns, taken = [], [], set()
    for c in range(dim):
        rows = numpy.flatnonzero(large[:, c])
        if len(rows) != 1:
            raise NotMonomial(c, len(rows))
        r = int(rows[0])
        if r in taken:
            raise NotMonomial(c, 1)
        taken.add(r)
        turn = cmath.phase(M[r, c]) / _TWO_PI
        snapped = Fraction(turn).limit_denominator(max_denom)
        if abs(turn - float(snapped)) * _TWO_PI > tol:
            raise PhaseNotRecognized(c, turn, max_denom)
        perm.append(r)
        turns.append(snapped)
    return MonomialMatrix(perm, [PhaseExp.from_turn(t) for t in turns])
