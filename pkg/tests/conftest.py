import logging
import os
import re

from invoke.vendor.lexicon import Lexicon

import pytest
from _pytest.fixtures import FixtureFunctionDefinition
from pytest_relaxed.classes import SpecModule
from weylsic import (
    RepBasis,
    SearchConfig,
    search_fiducial,
    zauner_invariant_parametrization,
)

from icecream import ic, install as install_ic


# Better print() for debugging - use ic()!
install_ic()
ic.configureOutput(includeContext=True)


# Log by default; pytest captures it and only shows it on failure. Set
# DISABLE_LOGGING when stepping through with a debugger.
if not os.environ.get("DISABLE_LOGGING", False):
    logging.basicConfig(
        level=logging.DEBUG,
        format="[%(relativeCreated)s]\t%(levelname)s:%(name)s:%(message)s",
        datefmt="%H:%M:%S",
    )


# pytest-relaxed leaves test_*.py files to pytest's own collector, which only
# picks up Test*/test_* names. Our spec-style modules live in test_*.py files,
# so hand them to relaxed's module collector. Modules whose classes are all
# Test* or unittest.TestCase stay with pytest's native collection.
class _SpecModule(SpecModule):
    # pytest >= 8.4 wraps fixtures in FixtureFunctionDefinition, which
    # pytest-relaxed's fixture check does not recognize.
    def istestfunction(self, obj, name):
        if isinstance(obj, FixtureFunctionDefinition):
            return False
        return super().istestfunction(obj, name)


def pytest_pycollect_makemodule(module_path, parent):
    source = module_path.read_text()
    if "unittest.TestCase" in source:
        return None
    if not re.search(r"^class (?!Test)\w+", source, re.MULTILINE):
        return None
    return _SpecModule.from_parent(parent, path=module_path)


@pytest.fixture(scope="session")
def n2_search():
    """
    A converged N=2 search in the standard basis.
    """
    cfg = SearchConfig(2, restarts=8, tol=1e-10, seed=1)
    return Lexicon(cfg=cfg, result=search_fiducial(cfg))


@pytest.fixture(scope="session")
def n4_search():
    """
    A converged N=4 search inside the PP-basis Zauner subspace.
    """
    basis = RepBasis.phase_permutation(2)
    subspace = zauner_invariant_parametrization(4, basis)
    cfg = SearchConfig(
        4,
        restarts=8,
        tol=1e-9,
        seed=1,
        basis="pp",
        subspace=subspace.basis,
    )
    result = search_fiducial(cfg)
    return Lexicon(
        cfg=cfg,
        subspace=subspace,
        result=result,
        fiducial=result.fiducial,
    )
