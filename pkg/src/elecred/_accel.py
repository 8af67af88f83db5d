"""Numba switch.

Set ``ELECRED_NO_NUMBA=1`` to run every kernel as plain Python over numpy
arrays. The flag is read once, at import time.
"""

import logging
import os

logger = logging.getLogger(__name__)

_disabled = os.environ.get("ELECRED_NO_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")

try:
    if _disabled:
        raise ImportError("disabled by ELECRED_NO_NUMBA")
    import numba

    HAVE_NUMBA = True
except ImportError as exc:  # pragma: no cover - depends on environment
    numba = None
    HAVE_NUMBA = False
    logger.debug("numba unavailable, using pure-python kernels: %s", exc)


def njit(*args, **kwargs):
    """``numba.njit`` when enabled, otherwise the identity decorator."""
    if HAVE_NUMBA:
        kwargs.setdefault("cache", True)
        return numba.njit(*args, **kwargs)

    def wrap(func):
        return func

    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return wrap
