"""Backend selection for the Cayley-table kernels.

The compiled extension is used when it imports; setting ``COVERFORGE_PURE=1``
forces the pure-Python implementation (used by the benchmark and by the
backend-equivalence tests).
"""
import os

from . import _pykernels as python

BACKEND = "python"
compiled = None

if os.environ.get("COVERFORGE_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled
        BACKEND = "cython"
    except ImportError:  # extension not built
        compiled = None

_impl = compiled if compiled is not None else python

prepare = _impl.prepare
closure = _impl.closure
extend_hom = _impl.extend_hom
coset_labels = _impl.coset_labels


def get_backend(name):
    """Return the kernel module called ``name`` ("cython" or "python")."""
    if name == "python":
        return python
    if name == "cython":
        if compiled is None:
            from . import _ckernels
            return _ckernels
        return compiled
    raise ValueError(f"unknown kernel backend {name!r}")
