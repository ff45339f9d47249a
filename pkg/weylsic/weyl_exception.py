"""
Exceptions raised by weylsic.
"""


class WeylException(Exception):
    """
    Base class for every error raised by this package.
    """

    pass


class DimensionError(WeylException):
    """
    A dimension is invalid for the requested operation: too small, not a
    perfect square where one is required, mismatched between operands, or
    beyond an enumeration limit.
    """

    pass


class NotMonomial(WeylException):
    """
    A dense matrix is not a phase-permutation matrix.

    :param int column: the first offending column
    :param int count:
        how many entries of that column exceeded the amplitude threshold; a
        count of 1 means the column collided with an earlier one on its row.
    """

    def __init__(self, column, count):
        WeylException.__init__(self, column, count)
        self.column = column
        self.count = count

    def __str__(self):
        if self.count == 1:
            return "Column {} reuses a row already taken".format(self.column)
        return "Column {} has {} large entries, expected 1".format(
            self.column, self.count
        )


class PhaseNotRecognized(WeylException):
    """
    The argument of a large entry is not close to any rational turn with
    denominator at most ``max_denom``.
    """

    def __init__(self, column, turn, max_denom):
        WeylException.__init__(self, column, turn, max_denom)
        self.column = column
        self.turn = turn
        self.max_denom = max_denom

    def __str__(self):
        msg = "Column {}: turn {!r} is not a root of unity of order <= {}"
        return msg.format(self.column, self.turn, self.max_denom)


class OrderOverflow(WeylException):
    """
    A monomial matrix has order beyond the configured safety cap.
    """

    def __init__(self, cap):
        WeylException.__init__(self, cap)
        self.cap = cap

    def __str__(self):
        return "Order exceeds cap of {}".format(self.cap)


class NotLocal(WeylException):
    """
    A monomial matrix on ``n**2`` dimensions is not a Kronecker product of two
    ``n``-dimensional monomial matrices.
    """

    pass


class NoIntertwiner(WeylException):
    """
    No unitary could be built for the given symplectic data, either because
    the matrix is not symplectic or because the construction missed its
    residual tolerance.
    """

    def __init__(self, reason, residual=None):
        WeylException.__init__(self, reason, residual)
        self.reason = reason
        self.residual = residual

    def __str__(self):
        if self.residual is None:
            return self.reason
        return "{} (residual {:.3e})".format(self.reason, self.residual)


class NotUnitary(WeylException):
    def __init__(self, residual):
        WeylException.__init__(self, residual)
        self.residual = residual

    def __str__(self):
        return "Matrix is not unitary (residual {:.3e})".format(self.residual)


class NotOrderThree(WeylException):
    """
    A matrix expected to be (projectively) of order three is not.
    """

    def __init__(self, residual):
        WeylException.__init__(self, residual)
        self.residual = residual

    def __str__(self):
        return "Not of order three (residual {!r})".format(self.residual)


class BudgetExceeded(WeylException):
    """
    An enumeration would need more elements than it was allowed.

    :param int budget: the allowance
    :param int required: the (expected or reached) element count
    """

    def __init__(self, budget, required):
        WeylException.__init__(self, budget, required)
        self.budget = budget
        self.required = required

    def __str__(self):
        return "Budget of {} elements exceeded ({} required)".format(
            self.budget, self.required
        )


class NotConverged(WeylException):
    """
    A fiducial search exhausted its restarts without reaching tolerance.

    The best point found so far is available as ``result`` (a
    `.SearchResult`).
    """

    def __init__(self, result):
        WeylException.__init__(self, result)
        self.result = result

    def __str__(self):
        msg = "Search did not converge; best excess {:.3e} after {} restarts"
        return msg.format(self.result.excess, self.result.restarts_used)


class TailBoundExceeded(WeylException):
    """
    The truncated theta series cannot certify its tail; raise the truncation.
    """

    def __init__(self, bound, trunc):
        WeylException.__init__(self, bound, trunc)
        self.bound = bound
        self.trunc = trunc

    def __str__(self):
        msg = "Tail bound {:.3e} too large at truncation K={}; raise K"
        return msg.format(self.bound, self.trunc)


class ClaimViolated(WeylException):
    """
    A structural property that must hold did not.

    These are never expected in normal operation; one surfacing means either
    an implementation bug or a counterexample, and is reported loudly.
    """

    def __init__(self, claim, detail=""):
        WeylException.__init__(self, claim, detail)
        self.claim = claim
        self.detail = detail

    def __str__(self):
        if self.detail:
            return "{}: {}".format(self.claim, self.detail)
        return self.claim


class ConfigParseError(WeylException):
    """
    A search configuration file could not be parsed.
    """

    pass


class FiducialFileError(WeylException):
    """
    A FiducialFile document is malformed or fails validation.
    """

    pass
