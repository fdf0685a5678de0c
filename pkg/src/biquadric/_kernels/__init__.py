"""Kernel backend selection.

The compiled extension (_cycore) and the pure module (pycore) export the
same functions; the fastest available one wins unless BIQUADRIC_PURE is
set in the environment.  `BACKEND` records which one is active.
"""

import os

from . import pycore

if os.environ.get("BIQUADRIC_PURE"):
    impl = pycore
else:
    try:
        from . import _cycore as impl  # type: ignore[no-redef]
    except ImportError:
        impl = pycore

BACKEND = impl.BACKEND

valuation_unit = impl.valuation_unit
legendre_int = impl.legendre_int
squarefree_int = impl.squarefree_int
hilbert_int = impl.hilbert_int
conic_soluble = impl.conic_soluble
isotropy_search = impl.isotropy_search
scan_hilbert_table = impl.scan_hilbert_table
