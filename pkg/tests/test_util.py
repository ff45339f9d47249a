"""
Some unit tests for utility functions.
"""

import logging
import threading
import unittest

import weylsic
import weylsic.util
from weylsic import DimensionError


class UtilTest(unittest.TestCase):
    def test_imports(self):
        """
        verify that all the public names can be imported from weylsic.
        """
        for name in (
            "BudgetExceeded",
            "CliffordElement",
            "DisplacementIndex",
            "Fiducial",
            "FiducialFile",
            "LatticeParams",
            "MonomialMatrix",
            "NotConverged",
            "PhaseExp",
            "RepBasis",
            "Report",
            "SearchConfig",
            "SymplecticMatrix",
            "ThetaCharacteristic",
            "WeylException",
            "clifford_group_closure",
            "metaplectic_unitary",
            "search_fiducial",
            "sic_check",
            "solve_moduli_n4",
            "theta_char",
            "util",
        ):
            assert name in dir(weylsic)
        for name in weylsic.__all__:
            assert hasattr(weylsic, name), name

    def test_isqrt_exact(self):
        assert weylsic.util.isqrt_exact(1) == 1
        assert weylsic.util.isqrt_exact(49) == 7
        with self.assertRaises(DimensionError):
            weylsic.util.isqrt_exact(50)

    def test_is_square(self):
        squares = [n for n in range(-2, 30) if weylsic.util.is_square(n)]
        assert squares == [0, 1, 4, 9, 16, 25]

    def test_lcm_all(self):
        assert weylsic.util.lcm_all([]) == 1
        assert weylsic.util.lcm_all([4, 6, 10]) == 60

    def test_prime_factors(self):
        assert weylsic.util.prime_factors(1) == []
        assert weylsic.util.prime_factors(72) == [2, 3]
        assert weylsic.util.prime_factors(97) == [97]
        assert weylsic.util.prime_factors(2 * 9 * 49) == [2, 3, 7]

    def test_thread_ids_are_per_thread(self):
        mine = weylsic.util.get_thread_id()
        assert weylsic.util.get_thread_id() == mine
        theirs = []
        t = threading.Thread(
            target=lambda: theirs.append(weylsic.util.get_thread_id())
        )
        t.start()
        t.join()
        assert theirs and theirs[0] != mine

    def test_get_logger_tags_records(self):
        logger = weylsic.util.get_logger("weylsic.test")
        record = logger.makeRecord(
            "weylsic.test", logging.INFO, __file__, 1, "hi", (), None
        )
        assert logger.filter(record)
        assert record._threadid == weylsic.util.get_thread_id()

    def test_log_to_stderr_replaces_its_handler(self):
        logger = logging.getLogger("weylsic")
        first = weylsic.util.log_to_stderr()
        try:
            second = weylsic.util.log_to_stderr(logging.INFO)
            assert first not in logger.handlers
            assert second in logger.handlers
            assert second.level == logging.INFO
        finally:
            logger.removeHandler(weylsic.util._stderr_handler)
            weylsic.util._stderr_handler = None
