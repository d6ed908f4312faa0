"""GF(q) kernels: compiled core when available, numpy fallback otherwise.

Set ``ADTNC_PURE_PYTHON=1`` to force the fallback (used by the benchmark and
by the backend-agreement tests).
"""

import os

from . import _pure

BACKEND = "python"
_impl = _pure

if os.environ.get("ADTNC_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pure

rank = _impl.rank
rref = _impl.rref
det = _impl.det
matmul = _impl.matmul
transfer = _impl.transfer
mincut_enum = _impl.mincut_enum

__all__ = ["BACKEND", "rank", "rref", "det", "matmul", "transfer", "mincut_enum"]
