"""Backend selection for the sparse polynomial kernels.

The compiled extension ``mouldkit._kernel`` is used when it imports cleanly;
otherwise the pure-Python module is used.  Setting ``MOULDKIT_PURE=1`` in
the environment forces the fallback.
"""

import os

from . import _kernel_py

if os.environ.get("MOULDKIT_PURE", "") not in ("", "0"):
    _backend = _kernel_py
else:
    try:
        from . import _kernel as _backend
    except ImportError:
        _backend = _kernel_py

BACKEND = _backend.NAME
WIDTH = _kernel_py.WIDTH
MASK = _kernel_py.MASK

pack = _kernel_py.pack
unpack = _kernel_py.unpack
key_degree = _kernel_py.key_degree
linear_poly = _kernel_py.linear_poly
shift = _kernel_py.shift
scale = _kernel_py.scale
prune = _kernel_py.prune
mul_monomial = _kernel_py.mul_monomial

mul = _backend.mul
addmul = _backend.addmul
div_linear = _backend.div_linear
subst = _backend.subst
evaluate = _backend.evaluate
maxdeg = _backend.maxdeg


def mul_linear(p, form):
    return mul(p, linear_poly(form))
