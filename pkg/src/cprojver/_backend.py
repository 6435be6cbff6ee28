"""Selects the elimination kernel implementation at import time.

The compiled extension is preferred when present; set CPROJ_PURE_PY=1 to force
the pure-Python fallback (used by the benchmark and the agreement tests).
"""

import os

if os.environ.get("CPROJ_PURE_PY"):
    from . import _speedups_py as impl
else:
    try:
        from . import _speedups as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _speedups_py as impl

BACKEND = impl.BACKEND
row_update = impl.row_update
row_content = impl.row_content
bareiss_rank = impl.bareiss_rank


def backend_name() -> str:
    return BACKEND
