"""Backend selection for the mod-p scan kernels.

The compiled extension is used when it imports; setting GENUS8_PURE_PYTHON=1
forces the numpy fallback.  Both expose form_ranks, palatini_ranks and
rref_mod_p with identical results.
"""

import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None


def get_backend(name: str | None = None):
    if name is None:
        name = "python" if os.environ.get("GENUS8_PURE_PYTHON") == "1" or _compiled is None else "cython"
    if name == "cython":
        if _compiled is None:
            raise ImportError("compiled kernels are not built")
        return _compiled
    if name == "python":
        return _kernels_py
    raise ValueError(f"unknown backend {name!r}")


def available():
    return ["cython", "python"] if _compiled is not None else ["python"]


_impl = get_backend()
BACKEND = "cython" if _impl is _compiled else "python"

form_ranks = _impl.form_ranks
palatini_ranks = _impl.palatini_ranks
rref_mod_p = _impl.rref_mod_p
