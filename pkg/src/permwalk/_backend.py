"""Kernel backend selection.

The compiled extension is preferred when importable; PERMWALK_BACKEND=py
forces the pure-Python fallback, PERMWALK_BACKEND=c insists on the compiled
core and fails loudly if it is absent.
"""

import os

from . import _kernels_py

_requested = os.environ.get("PERMWALK_BACKEND", "").lower()

if _requested == "py":
    kernels = _kernels_py
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        if _requested == "c":
            raise ImportError(
                "PERMWALK_BACKEND=c but the compiled extension is not built; "
                "reinstall with a C compiler or unset PERMWALK_BACKEND"
            )
        kernels = _kernels_py


def backend_name() -> str:
    return kernels.BACKEND


def available_backends():
    names = ["python"]
    try:
        from . import _kernels  # noqa: F401
        names.append("compiled")
    except ImportError:
        pass
    return names
