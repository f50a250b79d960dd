"""Node/weight tables for the 15-point Kronrod rule with embedded 7-point Gauss.

Values are the QUADPACK dqk15 abscissae/weights on [-1, 1], laid out in
ascending node order. ``GAUSS_W15`` holds the Gauss-7 weights at the shared
node positions (odd indices) and zeros elsewhere, so both sub-rules run over
the same 15 samples.
"""

import numpy as np

_XGK = (
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
)
_WGK = (
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
)
_WG = (
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
)

NODES15 = np.array([-x for x in _XGK] + [0.0] + list(reversed(_XGK)))

KRONROD_W15 = np.array(list(_WGK[:-1]) + [_WGK[-1]] + list(reversed(_WGK[:-1])))

GAUSS_W15 = np.zeros(15)
GAUSS_W15[1::2] = list(_WG[:-1]) + [_WG[-1]] + list(reversed(_WG[:-1]))

NODES15.setflags(write=False)
KRONROD_W15.setflags(write=False)
GAUSS_W15.setflags(write=False)
