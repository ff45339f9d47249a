"""
Useful functions used by the rest of weylsic.
"""

import logging
import math
import sys
import threading
from functools import reduce

from weylsic.common import DEBUG, WARNING
from weylsic.weyl_exception import DimensionError


def isqrt_exact(N):
    """
    Return ``n`` with ``n * n == N``.

    :raises: `.DimensionError` if ``N`` is not a perfect square.
    """
    n = math.isqrt(N)
    if n * n != N:
        raise DimensionError("{} is not a perfect square".format(N))
    return n


def is_square(N):
    return N >= 0 and math.isqrt(N) ** 2 == N


def lcm_all(values):
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


def prime_factors(N):
    """
    Distinct prime factors of ``N``, ascending.
    """
    out = []
    p = 2
    while p * p <= N:
        if N % p == 0:
            out.append(p)
            while N % p == 0:
                N //= p
        p += 1
    if N > 1:
        out.append(N)
    return out


_g_thread_data = threading.local()
_g_thread_counter = 0
_g_thread_lock = threading.Lock()


def get_thread_id():
    global _g_thread_data, _g_thread_counter, _g_thread_lock
    try:
        return _g_thread_data.id
    except AttributeError:
        with _g_thread_lock:
            _g_thread_counter += 1
            _g_thread_data.id = _g_thread_counter
        return _g_thread_data.id


LOG_FORMAT = (
    "%(levelname)-.3s [%(asctime)s.%(msecs)03d] thr=%(_threadid)-3d"
    " %(name)s: %(message)s"
)
LOG_DATEFMT = "%Y%m%d-%H:%M:%S"


def _attach(handler, level):
    logger = logging.getLogger("weylsic")
    logger.setLevel(min(level, logger.level or level))
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(LOG_FORMAT, LOG_DATEFMT))
    handler.addFilter(_pfilter)
    logger.addHandler(handler)
    return handler


_stderr_handler = None


def log_to_file(filename, level=DEBUG):
    """send weylsic logs to a logfile,
    unless they already go to one"""
    logger = logging.getLogger("weylsic")
    if any(h is not _stderr_handler for h in logger.handlers):
        return
    return _attach(logging.StreamHandler(open(filename, "a")), level)


def log_to_stderr(level=WARNING):
    """
    Human-readable progress for the command line; stdout stays reserved for
    JSON. Calling again replaces the previous stderr handler.
    """
    global _stderr_handler
    if _stderr_handler is not None:
        logging.getLogger("weylsic").removeHandler(_stderr_handler)
    _stderr_handler = _attach(logging.StreamHandler(sys.stderr), level)
    return _stderr_handler


# make only one filter object, so it doesn't get applied more than once
class PFilter:
    def filter(self, record):
        record._threadid = get_thread_id()
        return True


_pfilter = PFilter()


def get_logger(name):
    logger = logging.getLogger(name)
    logger.addFilter(_pfilter)
    return logger
