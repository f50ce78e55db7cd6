"""Select the embedding kernel at import time.

The compiled kernel is used when it was built and the target fits in 64
rows/columns; otherwise the pure-Python kernel runs. Set ``CONFEX_PURE=1``
to force the pure-Python path.
"""

import os

from . import _pykernel

try:
    if os.environ.get("CONFEX_PURE", "") not in ("", "0"):
        raise ImportError("pure-Python kernel forced")
    from . import _ckernel
except ImportError:
    _ckernel = None

HAVE_COMPILED = _ckernel is not None
BACKEND = "cython" if HAVE_COMPILED else "python"


def embed(p, gcount, gsym, gmult, row_order, row_cands, m, n, eq, nsym,
          row_ordered, col_ordered, required, backend=None):
    use_c = HAVE_COMPILED if backend is None else backend == "cython"
    if use_c and _ckernel is None:
        raise RuntimeError("compiled kernel not available")
    if use_c and m <= 64 and n <= 64:
        return _ckernel.embed(p, gcount, gsym, gmult, row_order, row_cands, m, n,
                              eq, nsym, row_ordered, col_ordered, required)
    return _pykernel.embed(p, gcount, gsym, gmult, row_order, row_cands, m, n,
                           eq, nsym, row_ordered, col_ordered, required)
