"""Kernel backend selection.

The hot inner loops (sieving, Miller-Rabin sweeps, the census scan,
arithmetic-progression scans, subset-product search) exist twice: a
compiled Cython extension and a pure-Python twin with identical semantics.
The compiled backend is preferred when importable; set CARMIK_PURE=1 to
force the fallback.  ``benchmarks/bench_kernels.py`` compares the two.
"""

import os

from . import pure

if os.environ.get("CARMIK_PURE"):
    backend = pure
else:
    try:
        from . import _native as backend  # type: ignore[no-redef]
    except ImportError:
        backend = pure


def backend_name() -> str:
    return backend.BACKEND_NAME
