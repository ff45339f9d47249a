"""
Fiducial search configuration, and the ``Key value`` files it can be read
from.
"""

import re
from io import StringIO

import numpy

from weylsic.common import (
    BASIS_TAGS,
    DEFAULT_MAX_ITERS,
    DEFAULT_RESTARTS,
    DEFAULT_SEARCH_TOL,
    PHASE_PERMUTATION,
    SEARCH_METHODS,
    STANDARD,
    SUBSPACE_TOL,
)
from weylsic.heisenberg import RepBasis
from weylsic.util import is_square
from weylsic.weyl_exception import ConfigParseError, DimensionError


class SearchConfig:
    """
    Everything that determines a fiducial search.

    Two searches with equal configs return bit-identical results, whatever
    ``workers`` is.

    :param int dim: Hilbert space dimension ``N``
    :param int restarts: number of seeded random starts
    :param int max_iters: optimizer iterations per start
    :param float tol: accepted excess of the frame potential over its minimum
    :param int seed: 64-bit base seed; start ``k`` uses ``seed + k``
    :param subspace:
        optional ``N x d`` array with orthonormal columns to search in
    :param str basis: ``"std"`` or ``"pp"``
    :param int workers: threads running restarts
    :param str method: ``"cg"`` or ``"steepest"``
    """

    def __init__(
        self,
        dim,
        restarts=DEFAULT_RESTARTS,
        max_iters=DEFAULT_MAX_ITERS,
        tol=DEFAULT_SEARCH_TOL,
        seed=0,
        subspace=None,
        basis=STANDARD,
        workers=1,
        method="cg",
    ):
        if dim < 2:
            msg = "Dimension must be at least 2, got {}"
            raise DimensionError(msg.format(dim))
        if restarts < 1 or max_iters < 1 or workers < 1:
            raise ValueError(
                "restarts, max_iters and workers must be positive"
            )
        if not tol > 0:
            raise ValueError("tol must be positive, got {!r}".format(tol))
        if not 0 <= seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if basis not in BASIS_TAGS:
            raise ValueError("basis must be one of {!r}".format(BASIS_TAGS))
        if basis == PHASE_PERMUTATION and not is_square(dim):
            raise DimensionError("{} is not a perfect square".format(dim))
        if method not in SEARCH_METHODS:
            msg = "method must be one of {!r}"
            raise ValueError(msg.format(SEARCH_METHODS))
        if subspace is not None:
            subspace = numpy.asarray(subspace, dtype=complex)
            if subspace.ndim != 2 or subspace.shape[0] != dim:
                raise DimensionError(
                    "Subspace of shape {} in dimension {}".format(
                        subspace.shape, dim
                    )
                )
            gram = subspace.conj().T @ subspace
            error = numpy.abs(gram - numpy.eye(subspace.shape[1])).max()
            if error > SUBSPACE_TOL:
                raise ValueError(
                    "Subspace is not orthonormal (error {:.3e})".format(error)
                )
        self.dim = dim
        self.restarts = restarts
        self.max_iters = max_iters
        self.tol = tol
        self.seed = seed
        self.subspace = subspace
        self.basis = basis
        self.workers = workers
        self.method = method

    @property
    def rep_basis(self):
        return RepBasis(self.basis, self.dim)

    def replace(self, **changes):
        """
        A copy with some fields changed; ``None`` values are ignored.
        """
        fields = self.as_dict()
        fields["subspace"] = self.subspace
        fields.pop("subspace_dim")
        fields.update((k, v) for k, v in changes.items() if v is not None)
        return SearchConfig(**fields)

    def as_dict(self):
        return {
            "dim": self.dim,
            "restarts": self.restarts,
            "max_iters": self.max_iters,
            "tol": self.tol,
            "seed": self.seed,
            "basis": self.basis,
            "workers": self.workers,
            "method": self.method,
            "subspace_dim": (
                None if self.subspace is None else self.subspace.shape[1]
            ),
        }

    def __repr__(self):
        return "<SearchConfig {!r}>".format(self.as_dict())

    # Settings files, parsed in the manner of ``ssh_config``.

    SETTINGS_REGEX = re.compile(r"(\w+)(?:\s*=\s*|\s+)(.+)")

    KEYS = {
        "dimension": ("dim", int),
        "restarts": ("restarts", int),
        "maxiters": ("max_iters", int),
        "tolerance": ("tol", float),
        "seed": ("seed", int),
        "basis": ("basis", str.lower),
        "workers": ("workers", int),
        "method": ("method", str.lower),
        "zauner": ("zauner", lambda v: v.lower() == "yes"),
    }

    @classmethod
    def from_text(cls, text, **overrides):
        """
        Create a `SearchConfig` from settings ``text``.
        """
        return cls.from_file(StringIO(text), **overrides)

    @classmethod
    def from_path(cls, path, **overrides):
        with open(path) as flo:
            return cls.from_file(flo, **overrides)

    @classmethod
    def from_file(cls, flo, **overrides):
        """
        Parse one ``Key value`` (or ``Key = value``) per line, keys
        case-insensitive, then apply ``overrides`` (``None`` values skipped).
        ``Zauner yes`` searches the Zauner subspace of the configured basis.

        :raises: `.ConfigParseError` on an unknown key or malformed line.
        """
        settings = {}
        for line in flo:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            match = re.match(cls.SETTINGS_REGEX, line)
            if not match:
                raise ConfigParseError("Unparsable line {}".format(line))
            key = match.group(1).lower()
            if key not in cls.KEYS:
                raise ConfigParseError("Unknown setting {}".format(key))
            name, convert = cls.KEYS[key]
            try:
                settings[name] = convert(match.group(2).strip())
            except ValueError:
                raise ConfigParseError("Bad value in line {}".format(line))
        settings.update((k, v) for k, v in overrides.items() if v is not None)
        zauner = settings.pop("zauner", False)
        if "dim" not in settings:
            raise ConfigParseError("No Dimension given")
        cfg = cls(**settings)
        if zauner:
            from weylsic.sicsearch import zauner_invariant_parametrization

            subspace = zauner_invariant_parametrization(cfg.dim, cfg.rep_basis)
            cfg = cfg.replace(subspace=subspace.basis)
        return cfg
