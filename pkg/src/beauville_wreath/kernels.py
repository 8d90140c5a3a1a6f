"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_kernels_py`` twin.  Setting ``BEAUVILLE_PURE_PYTHON=1`` forces
the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("BEAUVILLE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # noqa: F811

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py

code_space = _impl.code_space
mul = _impl.mul
inv = _impl.inv
closure_size = _impl.closure_size
class_labels = _impl.class_labels

# coding helpers are not hot and stay in Python
decode = _kernels_py.decode
encode = _kernels_py.encode
