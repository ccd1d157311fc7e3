"""Optional numba acceleration.

Set ``LOGBERN_JIT=0`` (or ``false``/``off``) before import to force the
pure-numpy kernels. When numba is not importable the numpy path is used
regardless of the flag.
"""
import os

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False


def _env_enabled():
    raw = os.environ.get("LOGBERN_JIT", "1").strip().lower()
    return raw not in ("0", "false", "off", "no")


JIT_REQUESTED = _env_enabled()


def njit(*args, **kwargs):
    """``numba.njit`` when available, otherwise an identity decorator."""
    if HAVE_NUMBA:
        return numba.njit(*args, **kwargs)

    def wrapper(func):
        return func

    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return wrapper
