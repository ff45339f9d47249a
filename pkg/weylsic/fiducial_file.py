"""
JSON documents holding a single fiducial vector.
"""

import json

import numpy

from weylsic.common import BASIS_TAGS, FILE_NORM_TOL
from weylsic.heisenberg import RepBasis
from weylsic.sicsearch import Fiducial
from weylsic.weyl_exception import DimensionError, FiducialFileError


def _number(value):
    return "%.17g" % value


class FiducialFile:
    """
    ``{"N": ..., "basis": "std" | "pp", "vector": [[re, im], ...]}`` with
    every component written as a 17 significant digit decimal string, which
    round-trips a double exactly.
    """

    def __init__(self, N, basis, vector):
        self.N = N
        self.basis = basis
        self.vector = numpy.asarray(vector, dtype=complex).ravel()

    @classmethod
    def from_fiducial(cls, fiducial):
        return cls(fiducial.dim, fiducial.basis.tag, fiducial.v)

    def fiducial(self):
        """
        The stored vector as a `.Fiducial`, renormalized exactly.
        """
        v = self.vector / numpy.linalg.norm(self.vector)
        return Fiducial(v, RepBasis(self.basis, self.N))

    def as_dict(self):
        return {
            "N": self.N,
            "basis": self.basis,
            "vector": [
                [_number(x.real), _number(x.imag)] for x in self.vector
            ],
        }

    def dumps(self):
        return json.dumps(self.as_dict(), indent=2)

    def save(self, path):
        with open(path, "w") as flo:
            flo.write(self.dumps())
            flo.write("\n")

    @classmethod
    def loads(cls, text):
        """
        Parse and validate a document.

        :raises: `.FiducialFileError` on malformed JSON, a wrong length, an
            unknown basis or a norm more than ``1e-9`` away from 1.
        """
        try:
            data = json.loads(text)
            N = data["N"]
            basis = data["basis"]
            pairs = data["vector"]
        except (ValueError, KeyError, TypeError) as e:
            raise FiducialFileError("Malformed fiducial file: {}".format(e))
        if not isinstance(N, int) or isinstance(N, bool):
            raise FiducialFileError("N must be an integer, got {!r}".format(N))
        if basis not in BASIS_TAGS:
            raise FiducialFileError("Unknown basis {!r}".format(basis))
        try:
            RepBasis(basis, N)
        except DimensionError as e:
            raise FiducialFileError(str(e))
        if not isinstance(pairs, list) or len(pairs) != N:
            raise FiducialFileError("Expected {} components".format(N))
        try:
            vector = [complex(float(x), float(y)) for x, y in pairs]
        except (ValueError, TypeError):
            raise FiducialFileError("Components must be [re, im] pairs")
        norm = numpy.linalg.norm(vector)
        if abs(norm - 1) > FILE_NORM_TOL:
            raise FiducialFileError("Vector norm {!r} is not 1".format(norm))
        return cls(N, basis, vector)

    @classmethod
    def load(cls, path):
        with open(path) as flo:
            return cls.loads(flo.read())
