"""
Machine-readable command reports.
"""

import json
from fractions import Fraction

import numpy

from weylsic.exactcore import MonomialMatrix, PhaseExp


def _encode(value):
    if isinstance(value, (numpy.integer,)):
        return int(value)
    if isinstance(value, (numpy.floating,)):
        return float(value)
    if isinstance(value, numpy.bool_):
        return bool(value)
    if isinstance(value, numpy.ndarray):
        return [_encode(x) for x in value]
    if isinstance(value, complex) or isinstance(value, numpy.complexfloating):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (Fraction, PhaseExp)):
        return str(value)
    if isinstance(value, MonomialMatrix):
        return monomial_as_dict(value)
    raise TypeError("Cannot encode {!r}".format(type(value)))


def monomial_as_dict(M):
    """
    ``{"perm": [...], "phases": ["k/d", ...]}``: column ``c`` has its entry
    ``exp(2 pi i phases[c])`` on row ``perm[c]``.
    """
    return {
        "perm": list(M.perm),
        "phases": [str(p.turn) for p in M.phases],
    }


class Report:
    """
    The outcome of one command: ``{command, params, results, pass}``.
    """

    def __init__(self, command, params=None, results=None, passed=False):
        self.command = command
        self.params = dict(params or {})
        self.results = dict(results or {})
        self.passed = passed

    def as_dict(self):
        return {
            "command": self.command,
            "params": self.params,
            "results": self.results,
            "pass": bool(self.passed),
        }

    def to_json(self):
        return json.dumps(
            self.as_dict(), indent=2, sort_keys=True, default=_encode
        )

    def __repr__(self):
        return "<Report {} pass={}>".format(self.command, self.passed)
