"""Hot inner-loop kernels, with a compiled core and a pure-Python fallback.

The product engine spends nearly all of its time in fused
gather-multiply-scatter passes over flat coefficient vectors.  A small Cython
extension (``_accel``) implements those passes; ``_fallback`` provides the
same API in numpy.  The backend is selected once at import time:

* ``QSCHUB_KERNEL=compiled`` forces the extension (ImportError if missing),
* ``QSCHUB_KERNEL=python`` forces the fallback,
* unset or ``auto`` uses the extension when it imported cleanly.

``benchmarks/bench_kernels.py`` compares the two backends.
"""

import os

from . import _fallback

_choice = os.environ.get("QSCHUB_KERNEL", "auto").lower()

if _choice == "python":
    _impl = _fallback
elif _choice == "compiled":
    from . import _accel as _impl  # noqa: F401
else:
    try:
        from . import _accel as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _fallback

gather_scale_scatter = _impl.gather_scale_scatter
scatter_add = _impl.scatter_add
compose_signed = _impl.compose_signed


def backend_name() -> str:
    """Name of the active backend: ``compiled`` or ``python``."""
    return "compiled" if _impl.__name__.endswith("_accel") else "python"


def available_backends() -> dict[str, object]:
    """Both backend modules keyed by name (compiled only if importable)."""
    out: dict[str, object] = {"python": _fallback}
    try:
        from . import _accel

        out["compiled"] = _accel
    except ImportError:
        pass
    return out
