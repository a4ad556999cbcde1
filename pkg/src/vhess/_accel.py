"""Backend selection for the F_p kernels.

The compiled extension is used when it imports and the prime fits in 63
bits; set ``VHESS_PURE_PYTHON=1`` to force the reference implementation.
"""

import os

from . import _kernels_py

_MAX_NATIVE_PRIME = 1 << 63

try:
    if os.environ.get("VHESS_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python kernels requested")
    from . import _kernels as _native
except ImportError:
    _native = None

BACKEND = "cython" if _native is not None else "python"


def _pick(p):
    if _native is not None and 2 < p < _MAX_NATIVE_PRIME:
        return _native
    return _kernels_py


def rank_mod_p(rows, p):
    return _pick(p).rank_mod_p(rows, p)


def det_mod_p(rows, p):
    return _pick(p).det_mod_p(rows, p)


def poly_batch(exps, coefs, offsets, nvars, maxdeg, p):
    return _pick(p).PolyBatch(exps, coefs, offsets, nvars, maxdeg, p)
