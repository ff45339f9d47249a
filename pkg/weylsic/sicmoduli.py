"""
The equations a Heisenberg covariant SIC fiducial satisfies, split into
moduli and phases, and the exact four-dimensional moduli.

Moduli live in a `ModuliVector`; numeric vectors hold a float array, exact
ones hold sympy numbers so that residuals come out as exact zeros.
"""

from collections import namedtuple

import numpy
import sympy

from weylsic.common import UNIT_NORM_TOL
from weylsic.heisenberg import RepBasis
from weylsic.util import get_logger, isqrt_exact, lcm_all
from weylsic.weyl_exception import ClaimViolated, DimensionError

log = get_logger(__name__)

SQRT5 = sympy.sqrt(5)


class ModuliVector:
    """
    Squared moduli ``p_a = |z_a|**2`` of a fiducial's components.

    In the PP basis ``p`` is flat-indexed by ``r * n + s``.

    :param p: the values
    :param basis: `.RepBasis` the moduli refer to (standard by default)
    :param bool exact: keep ``p`` as sympy numbers
    """

    def __init__(self, p, basis=None, exact=False):
        self.exact = exact
        if exact:
            self.p = tuple(sympy.sympify(x) for x in p)
        else:
            self.p = numpy.asarray(p, dtype=float)
        self.dim = len(self.p)
        self.basis = basis or RepBasis.standard(self.dim)
        if self.basis.dim != self.dim:
            raise DimensionError(
                "{} moduli for {!r}".format(self.dim, self.basis)
            )
        if any(bool(x < 0) for x in self.p):
            raise ValueError("Moduli must be nonnegative")

    @classmethod
    def from_components(cls, components):
        return cls(numpy.abs(components.z) ** 2, components.basis)

    def total(self):
        if self.exact:
            return sympy.expand(sum(self.p))
        return float(numpy.sum(self.p))

    def is_normalized(self):
        if self.exact:
            return self.total() == 1
        return abs(self.total() - 1) <= 1e-12

    def to_floats(self):
        return numpy.array([float(x) for x in self.p])

    def __repr__(self):
        return "<ModuliVector {} {!r}>".format(
            "exact" if self.exact else "float", list(self.p)
        )


class FiducialComponents:
    """
    The components ``z_a = sqrt(p_a) e^{i mu_a}`` of a unit vector.
    """

    def __init__(self, z, basis=None):
        self.z = numpy.asarray(z, dtype=complex).ravel()
        self.dim = self.z.size
        self.basis = basis or RepBasis.standard(self.dim)
        norm = numpy.vdot(self.z, self.z).real
        if abs(norm - 1) > UNIT_NORM_TOL:
            msg = "Components are not normalized ({!r})"
            raise ValueError(msg.format(norm))

    def moduli(self):
        return ModuliVector.from_components(self)

    def phases(self):
        return numpy.angle(self.z)


def _as_moduli(p):
    if isinstance(p, ModuliVector):
        return p
    return ModuliVector(p)


def _settle(value, exact):
    return sympy.expand(value) if exact else value


def moduli_residuals_standard(p):
    """
    ``sum_a p_a p_{a+x} - (1 + delta_x0) / (N + 1)`` for ``x = 0 .. N-1``.

    Only ``x <= N/2`` is computed; the rest is mirrored, so
    ``residual[x] == residual[N - x]`` holds bit for bit.
    """
    p = _as_moduli(p)
    N = p.dim
    if p.exact:
        one = sympy.Rational(1, N + 1)
        out = [None] * N
    else:
        one = 1 / (N + 1)
        out = numpy.empty(N)
    for x in range(N // 2 + 1):
        if p.exact:
            total = sum(p.p[a] * p.p[(a + x) % N] for a in range(N))
        else:
            total = numpy.dot(p.p, numpy.roll(p.p, -x))
        value = _settle(total - (2 if x == 0 else 1) * one, p.exact)
        out[x] = value
        out[-x % N] = value
    return out


def moduli_residuals_pp(p, n):
    """
    ``sum_rs p_rs p_{r+x,s+y} - (1 + delta) / (N + 1)`` for every ``(x, y)``,
    flat-indexed by ``x * n + y`` and mirrored across ``(x, y) -> (-x, -y)``.
    """
    p = _as_moduli(p)
    N = p.dim
    if n * n != N:
        raise DimensionError("{} moduli do not fit n = {}".format(N, n))
    if p.exact:
        one = sympy.Rational(1, N + 1)
        out = [None] * N
        grid = [[p.p[r * n + s] for s in range(n)] for r in range(n)]
    else:
        one = 1 / (N + 1)
        out = numpy.empty(N)
        grid = p.p.reshape(n, n)
    done = set()
    for x in range(n):
        for y in range(n):
            mirror = (-x % n) * n + (-y % n)
            if mirror in done:
                continue
            if p.exact:
                total = sum(
                    grid[r][s] * grid[(r + x) % n][(s + y) % n]
                    for r in range(n)
                    for s in range(n)
                )
            else:
                shifted = numpy.roll(grid, (-x, -y), axis=(0, 1))
                total = numpy.sum(grid * shifted)
            value = _settle(total - (2 if x == y == 0 else 1) * one, p.exact)
            out[x * n + y] = value
            out[mirror] = value
            done.add(x * n + y)
            done.add(mirror)
    return out


def phase_residuals(z):
    """
    ``sum_a conj(z_a) conj(z_{a+k-i}) z_{a+k} z_{a-i}`` for ``i, k != 0``.

    :param z: `FiducialComponents` (standard basis)
    :returns: dict ``(i, k) -> complex``
    """
    if not isinstance(z, FiducialComponents):
        z = FiducialComponents(z)
    v = z.z
    vc = v.conj()
    N = z.dim
    out = {}
    for i in range(1, N):
        for k in range(1, N):
            terms = vc * numpy.roll(vc, i - k) * numpy.roll(v, -k)
            out[(i, k)] = complex(numpy.sum(terms * numpy.roll(v, i)))
    return out


DerivedIdentities = namedtuple("DerivedIdentities", ["s1", "s2"])


def derived_identities(p):
    """
    ``s1 = (sum p)**2`` and, for even ``N``, ``s2 = (sum of even-indexed p
    minus sum of odd-indexed p)**2``; a SIC gives 1 and ``1/(N+1)``.
    """
    p = _as_moduli(p)
    values = p.p
    s1 = _settle(sum(values) ** 2, p.exact)
    s2 = None
    if p.dim % 2 == 0:
        alt = sum(values[0::2]) - sum(values[1::2])
        s2 = _settle(alt**2, p.exact)
    if not p.exact:
        s1 = float(s1)
        s2 = None if s2 is None else float(s2)
    return DerivedIdentities(s1, s2)


def equation_classes(N, basis):
    """
    The moduli equation labels grouped under ``x ~ -x`` (standard) or
    ``(x, y) ~ (-x, -y)`` (PP), each class listed with its smallest member
    first.
    """
    if basis.dim != N:
        msg = "{!r} does not have dimension {}"
        raise DimensionError(msg.format(basis, N))
    if basis.is_pp:
        n = isqrt_exact(N)
        labels = [(x, y) for x in range(n) for y in range(n)]

        def mirror(label):
            return (-label[0] % n, -label[1] % n)

    else:
        labels = list(range(N))

        def mirror(label):
            return -label % N

    classes = []
    seen = set()
    for label in labels:
        if label in seen:
            continue
        members = tuple(sorted({label, mirror(label)}))
        seen.update(members)
        classes.append(members)
    return classes


def independent_equation_set(N, basis):
    """
    One representative per equation class; the first is the norm equation.
    """
    return [members[0] for members in equation_classes(N, basis)]


def character_sums(p, n):
    """
    ``|sum_rs omega_n**(u r + v s) p_rs|**2`` for every character ``(u, v)``.

    These are the squared linear forms behind the four-dimensional
    linearization; a SIC gives 1 at ``(0, 0)`` and ``1/(N+1)`` elsewhere.
    """
    p = _as_moduli(p)
    if p.dim != n * n:
        raise DimensionError("{} moduli do not fit n = {}".format(p.dim, n))
    if not p.exact:
        spectrum = numpy.fft.fft2(p.p.reshape(n, n))
        power = numpy.abs(spectrum) ** 2
        return {(u, v): float(power[u, v]) for u in range(n) for v in range(n)}
    out = {}
    for u in range(n):
        for v in range(n):
            total = sum(
                sympy.exp(2 * sympy.pi * sympy.I * (u * r + v * s) / n)
                * p.p[r * n + s]
                for r in range(n)
                for s in range(n)
            )
            out[(u, v)] = sympy.simplify(total * sympy.conjugate(total))
    return out


ModuliBranch = namedtuple("ModuliBranch", ["sign", "moduli", "accepted"])

_CHARACTERS = ((0, 0), (1, 0), (0, 1), (1, 1))


def moduli_n4_branches():
    """
    Both sign branches of the square-rooted character equations at ``N = 4``.

    Ordering the moduli ``p00 >= p01 >= p10 >= p11`` fixes the signs of the
    linear forms for ``(0,0)``, ``(1,0)`` and ``(0,1)``; the form for ``(1,1)``
    is tried with either sign. Each 4x4 system is solved over ``Q(sqrt 5)``.

    :returns: list of `ModuliBranch` (``+1`` first)
    """
    N = 4
    hadamard = sympy.Matrix(
        [
            [(-1) ** (u * r + v * s) for r in range(2) for s in range(2)]
            for u, v in _CHARACTERS
        ]
    )
    root = sympy.sqrt(sympy.Rational(1, N + 1))
    branches = []
    for sign in (1, -1):
        rhs = sympy.Matrix([1, root, root, sign * root])
        solution = hadamard.LUsolve(rhs)
        moduli = tuple(sympy.radsimp(sympy.expand(x)) for x in solution)
        ordered = all(bool(a >= b) for a, b in zip(moduli, moduli[1:]))
        accepted = ordered and all(bool(x >= 0) for x in moduli)
        log.debug(
            "N=4 branch {:+d}: {} ({})".format(
                sign,
                ", ".join(format_surd(x) for x in moduli),
                "accepted" if accepted else "rejected",
            )
        )
        branches.append(ModuliBranch(sign, moduli, accepted))
    return branches


def solve_moduli_n4():
    """
    The unique nonnegative ordered solution of the ``N = 4`` moduli
    equations in the PP basis, as an exact `ModuliVector`.

    :raises: `.ClaimViolated` unless exactly one branch survives.
    """
    survivors = [b for b in moduli_n4_branches() if b.accepted]
    if len(survivors) != 1:
        raise ClaimViolated(
            "unique N=4 moduli", "{} branches survive".format(len(survivors))
        )
    return ModuliVector(
        survivors[0].moduli, RepBasis.phase_permutation(2), exact=True
    )


def format_surd(value):
    """
    Render ``a + b sqrt(5)`` (rational ``a``, ``b``) as ``"(A+B√5)/C"`` with
    integers and the smallest common denominator ``C``.
    """
    expr = sympy.expand(sympy.radsimp(sympy.sympify(value)))
    b = sympy.Rational(expr.coeff(SQRT5))
    a = sympy.Rational(sympy.expand(expr - b * SQRT5))
    c = lcm_all([a.q, b.q])
    A, B = int(a * c), int(b * c)
    if B == 0:
        return str(A) if c == 1 else "{}/{}".format(A, c)
    surd = "√5" if abs(B) == 1 else "{}√5".format(abs(B))
    if A == 0:
        numerator = surd if B > 0 else "-" + surd
        return numerator if c == 1 else "{}/{}".format(numerator, c)
    numerator = "{}{}{}".format(A, "+" if B > 0 else "-", surd)
    return numerator if c == 1 else "({})/{}".format(numerator, c)
