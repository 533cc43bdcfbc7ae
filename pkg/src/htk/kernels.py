"""Backend selection for the mod-p kernels.

The compiled extension is preferred. Setting ``HTK_PURE_PYTHON=1`` in the
environment forces the numpy fallback, which is also used automatically
when the extension was not built.
"""

import os

from htk import _modp_py

BACKEND = "python"
_impl = _modp_py

if not os.environ.get("HTK_PURE_PYTHON"):
    try:
        from htk import _modp as _impl  # noqa: F811
    except ImportError:
        pass
    else:
        BACKEND = "cython"

matmul_modp = _impl.matmul_modp
rref_modp = _impl.rref_modp


def available_backends():
    """Map backend name -> kernel module, for tests and benchmarks."""
    out = {"python": _modp_py}
    try:
        from htk import _modp
    except ImportError:
        pass
    else:
        out["cython"] = _modp
    return out
