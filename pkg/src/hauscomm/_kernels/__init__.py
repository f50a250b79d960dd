"""Hot quadrature kernels with a compiled core and a pure-Python fallback.

The compiled lane (`_ckernels`, Cython) is preferred when the extension built;
otherwise the numpy lane (`_pykernels`) is used. Both lanes implement the same
functions with the same accumulation order. ``BACKEND`` reports which lane is
active; set ``HAUSCOMM_FORCE_PYTHON_KERNELS=1`` to skip the compiled lane.
"""

import os

from ._tables import GAUSS_W15, KRONROD_W15, NODES15

if os.environ.get("HAUSCOMM_FORCE_PYTHON_KERNELS"):
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pykernels as _impl

BACKEND = _impl.BACKEND
gk15_panels = _impl.gk15_panels
ordered_sum = _impl.ordered_sum
weighted_rows_sum = _impl.weighted_rows_sum

__all__ = [
    "BACKEND",
    "GAUSS_W15",
    "KRONROD_W15",
    "NODES15",
    "gk15_panels",
    "ordered_sum",
    "weighted_rows_sum",
]
