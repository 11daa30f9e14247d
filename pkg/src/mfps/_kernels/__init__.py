"""Inner-loop backend, chosen once at import.

The compiled extension is used when it was built; ``MFPS_PURE_PYTHON=1``
forces the reference implementation.
"""

import os

from . import _pure

if os.environ.get("MFPS_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pure
else:
    try:
        from . import _speedups as _impl
    except ImportError:
        _impl = _pure

BACKEND = "compiled" if _impl is not _pure else "python"

cauchy_product = _impl.cauchy_product
condition_shell_sums = _impl.condition_shell_sums


def available_backends():
    """Map backend name to module for every backend importable here."""
    out = {"python": _pure}
    try:
        from . import _speedups
    except ImportError:
        pass
    else:
        out["compiled"] = _speedups
    return out
