"""JIT selection for the census kernels.

Set ``PSIPOS_DISABLE_JIT`` to a true value (``1``, ``true``, ``yes``) to run
the pure numpy fallbacks instead of the numba kernels. The flag is read on
every call, so a benchmark can switch paths inside one process.
"""

from __future__ import annotations

import os
import warnings

# An outdated system TBB is skipped in favour of the other threading layers;
# numba reports that once, when its thread pool first starts.
warnings.filterwarnings("ignore", message="The TBB threading layer")

_FALSY = {"", "0", "false", "no", "off"}


def jit_enabled() -> bool:
    if os.environ.get("PSIPOS_DISABLE_JIT", "").strip().lower() not in _FALSY:
        return False
    try:
        import numba  # noqa: F401
    except ImportError:  # pragma: no cover - numba is a declared dependency
        return False
    return True


def set_threads(threads: int | None) -> int:
    """Apply a thread budget to numba's pool and return the effective count."""
    import numba

    limit = numba.config.NUMBA_NUM_THREADS
    count = limit if not threads or threads < 1 else min(threads, limit)
    numba.set_num_threads(count)
    return count
