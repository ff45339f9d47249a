"""
Theta functions with rational characteristics and the finite Heisenberg
action they carry.

Every value comes with a certified bound on the truncated tail; a bound
above ``1e-10`` is an error rather than a warning.
"""

import cmath
import math
import sys
from collections import namedtuple
from fractions import Fraction

import numpy

from weylsic.common import (
    MAX_DENOM_FACTOR,
    THETA_SAMPLES,
    THETA_TAIL_LIMIT,
    THETA_TRUNC,
)
from weylsic.exactcore import extract_monomial
from weylsic.heisenberg import pp_generators
from weylsic.util import get_logger
from weylsic.weyl_exception import TailBoundExceeded

log = get_logger(__name__)


class LatticeParams:
    """
    Modulus ``tau`` (upper half plane) and series truncation ``|k| <= trunc``.
    """

    def __init__(self, tau=1j, trunc=THETA_TRUNC):
        tau = complex(tau)
        if not tau.imag > 0:
            raise ValueError("tau must have positive imaginary part")
        if trunc < 1:
            raise ValueError("trunc must be at least 1, got {}".format(trunc))
        self.tau = tau
        self.trunc = trunc

    def __repr__(self):
        return "LatticeParams(tau={!r}, trunc={})".format(self.tau, self.trunc)


class ThetaCharacteristic:
    """
    The pair ``(a, b)`` with ``n a`` and ``n b`` integral.
    """

    def __init__(self, a, b, n):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.n = n
        if (self.a * n).denominator != 1 or (self.b * n).denominator != 1:
            raise ValueError("({}, {}) is not in (1/{})Z".format(a, b, n))

    @classmethod
    def from_index(cls, r, s, n):
        return cls(Fraction(r, n), Fraction(s, n), n)

    @property
    def index(self):
        """
        ``r * n + s`` for ``a = r/n``, ``b = s/n`` reduced mod 1.
        """
        r = int(self.a * self.n) % self.n
        s = int(self.b * self.n) % self.n
        return r * self.n + s

    def shifted(self, da=0, db=0):
        return ThetaCharacteristic(self.a + da, self.b + db, self.n)

    def __repr__(self):
        return "ThetaCharacteristic({}, {}; n={})".format(
            self.a, self.b, self.n
        )


ThetaValue = namedtuple("ThetaValue", ["value", "tail"])


def tail_bound(z, lp):
    """
    Upper bound on ``2 * sum over k > K of exp(-pi Im(tau) k**2 + 2 pi |Im
    z| k)``.

    Terms are summed in log space. Once consecutive terms shrink by at least
    half, the remainder is bounded by the last term, so the result is a true
    bound; it never underflows below the smallest normal float. Summation
    also stops as soon as the partial sum exceeds the acceptable limit.
    """
    a = math.pi * lp.tau.imag
    b = 2 * math.pi * abs(complex(z).imag)
    limit = math.log(THETA_TAIL_LIMIT / 2)
    log_total = -math.inf
    k = lp.trunc + 1
    while True:
        log_term = -a * k * k + b * k
        log_total = numpy.logaddexp(log_total, log_term)
        if log_total > limit:
            return 2 * math.exp(min(log_total, 700.0))
        if b - a * (2 * k + 1) <= -math.log(2):
            log_total = numpy.logaddexp(log_total, log_term)
            return max(2 * math.exp(log_total), sys.float_info.min)
        k += 1


def _check_tail(z, lp):
    bound = tail_bound(z, lp)
    if bound > THETA_TAIL_LIMIT:
        raise TailBoundExceeded(bound, lp.trunc)
    return bound


def theta_series(z, lp):
    """
    ``sum over |k| <= K of exp(pi i k**2 tau + 2 pi i k z)``.

    :returns: `ThetaValue`
    :raises: `.TailBoundExceeded`
    """
    tail = _check_tail(z, lp)
    k = numpy.arange(-lp.trunc, lp.trunc + 1)
    terms = numpy.exp(1j * math.pi * k * k * lp.tau + 2j * math.pi * k * z)
    return ThetaValue(complex(terms.sum()), tail)


def theta_char(z, c, lp):
    """
    ``exp(pi i a**2 tau + 2 pi i a (z + b)) theta(z + b + tau a)``.
    """
    a, b = float(c.a), float(c.b)
    inner = theta_series(z + b + lp.tau * a, lp)
    prefactor = cmath.exp(
        1j * math.pi * a * a * lp.tau + 2j * math.pi * a * (z + b)
    )
    return ThetaValue(prefactor * inner.value, abs(prefactor) * inner.tail)


# index -> (a, b, sign) with theta_{a,b} = sign * classical theta_index.
JACOBI_CHARACTERISTICS = {
    3: (Fraction(0), Fraction(0), 1),
    4: (Fraction(0), Fraction(1, 2), 1),
    2: (Fraction(1, 2), Fraction(0), 1),
    1: (Fraction(1, 2), Fraction(1, 2), -1),
}


def jacobi_theta(index, z, lp):
    """
    Classical Jacobi theta ``index`` in 1..4 at ``pi z``, nome
    ``exp(i pi tau)``, from its own cosine/sine series.
    """
    if index not in JACOBI_CHARACTERISTICS:
        msg = "Jacobi theta index must be 1..4, got {}"
        raise ValueError(msg.format(index))
    tau = lp.tau
    if index in (1, 2):
        k = numpy.arange(0, lp.trunc + 1)
        nome = numpy.exp(1j * math.pi * tau * (k + 0.5) ** 2)
        angle = (2 * k + 1) * math.pi * z
        if index == 1:
            signs = (-1.0) ** k
            return complex(2 * numpy.sum(signs * nome * numpy.sin(angle)))
        return complex(2 * numpy.sum(nome * numpy.cos(angle)))
    k = numpy.arange(1, lp.trunc + 1)
    nome = numpy.exp(1j * math.pi * tau * k * k)
    if index == 4:
        nome = nome * (-1.0) ** k
    return complex(1 + 2 * numpy.sum(nome * numpy.cos(2 * k * math.pi * z)))


ThetaCheck = namedtuple("ThetaCheck", ["residual", "tail"])


def _merge(checks):
    return ThetaCheck(
        max((c.residual for c in checks), default=0.0),
        max((c.tail for c in checks), default=0.0),
    )


def action_check(c, shift, lp, samples=THETA_SAMPLES):
    """
    Largest discrepancy in the two shift laws at every sample ``z``:
    ``theta_{a,b}(z + b') = theta_{a,b+b'}(z)`` and
    ``e^{pi i a'^2 tau + 2 pi i a' z} theta_{a,b}(z + tau a')
    = e^{-2 pi i b a'} theta_{a+a',b}(z)``.

    :param shift: ``(a', b')`` in ``(1/n)Z``
    """
    da, db = Fraction(shift[0]), Fraction(shift[1])
    # validates the shift
    ThetaCharacteristic(da, db, c.n)
    tau = lp.tau
    s_target = c.shifted(db=db)
    t_target = c.shifted(da=da)
    residual = 0.0
    tail = 0.0
    for z in samples:
        left = theta_char(z + float(db), c, lp)
        right = theta_char(z, s_target, lp)
        residual = max(residual, abs(left.value - right.value))
        tail = max(tail, left.tail, right.tail)
        weight = cmath.exp(
            1j * math.pi * float(da) ** 2 * tau + 2j * math.pi * float(da) * z
        )
        left = theta_char(z + tau * float(da), c, lp)
        right = theta_char(z, t_target, lp)
        phase = cmath.exp(-2j * math.pi * float(c.b * da))
        gap = abs(weight * left.value - phase * right.value)
        residual = max(residual, gap)
        tail = max(tail, abs(weight) * left.tail, right.tail)
    return ThetaCheck(residual, tail)


def quasi_periodicity_check(c, x, y, lp, samples=THETA_SAMPLES):
    """
    Largest ``|theta_{a+x,b+y}(z) - e^{2 pi i a y} theta_{a,b}(z)|`` over the
    samples, for integers ``x``, ``y``.
    """
    target = c.shifted(da=x, db=y)
    phase = cmath.exp(2j * math.pi * float(c.a * y))
    residual = 0.0
    tail = 0.0
    for z in samples:
        left = theta_char(z, target, lp)
        right = theta_char(z, c, lp)
        residual = max(residual, abs(left.value - phase * right.value))
        tail = max(tail, left.tail, right.tail)
    return ThetaCheck(residual, tail)


def characteristic_laws(n, lp, samples=THETA_SAMPLES):
    """
    Both shift laws by ``1/n`` and quasi-periodicity for unit ``x``, ``y``,
    over all ``n**2`` characteristics in ``(1/n)Z mod 1``.
    """
    checks = []
    step = Fraction(1, n)
    for r in range(n):
        for s in range(n):
            c = ThetaCharacteristic.from_index(r, s, n)
            checks.append(action_check(c, (step, step), lp, samples))
            for x, y in ((1, 0), (0, 1), (1, 1)):
                checks.append(quasi_periodicity_check(c, x, y, lp, samples))
    merged = _merge(checks)
    log.debug("theta laws n={}: {!r}".format(n, merged))
    return merged


def _values(c, lp, samples):
    return numpy.array([theta_char(z, c, lp).value for z in samples])


def _matching_column(image, basis):
    # Best (index, phase) with image ~ phase * basis[index].
    best = None
    for d, f in enumerate(basis):
        weight = numpy.vdot(f, f).real
        overlap = numpy.vdot(f, image)
        miss = numpy.vdot(image, image).real - abs(overlap) ** 2 / weight
        miss = max(miss, 0)
        if best is None or miss < best[0]:
            best = (miss, d, overlap / weight)
    return best[1], best[2]


InducedAction = namedtuple(
    "InducedAction", ["S", "T", "matches", "commutator_residual"]
)


def induced_action(n, lp, samples=THETA_SAMPLES):
    """
    The ``n**2 x n**2`` matrices of the shifts by ``1/n`` on the basis
    ``theta_{r/n, s/n}`` (index ``r n + s``), snapped to exact monomials.

    The S shift reproduces the PP ``X`` and the T shift the PP ``Z**-1``;
    ``matches`` records whether both agree exactly, and
    ``commutator_residual`` measures ``S T = omega T S`` numerically.
    """
    N = n * n
    chars = [
        ThetaCharacteristic.from_index(r, s, n)
        for r in range(n)
        for s in range(n)
    ]
    basis = [_values(c, lp, samples) for c in chars]
    step = 1 / n
    S = numpy.zeros((N, N), dtype=complex)
    T = numpy.zeros((N, N), dtype=complex)
    for col, c in enumerate(chars):
        shifted = numpy.array(
            [theta_char(z + step, c, lp).value for z in samples]
        )
        row, phase = _matching_column(shifted, basis)
        S[row, col] = phase
        weights = numpy.exp(
            1j * math.pi * step**2 * lp.tau
            + 2j * math.pi * step * numpy.array(samples)
        )
        moved = numpy.array(
            [theta_char(z + lp.tau * step, c, lp).value for z in samples]
        )
        row, phase = _matching_column(weights * moved, basis)
        T[row, col] = phase
    omega = cmath.exp(2j * math.pi / N)
    residual = float(numpy.abs(S @ T - omega * T @ S).max())
    exact_S = extract_monomial(S, max_denom=MAX_DENOM_FACTOR * N)
    exact_T = extract_monomial(T, max_denom=MAX_DENOM_FACTOR * N)
    X, Z = pp_generators(n)
    matches = exact_S == X and exact_T == Z.inverse()
    return InducedAction(exact_S, exact_T, matches, residual)
