"""Selects the compiled enumeration kernel when available.

Set ``DIOA_PURE=1`` to force the pure-Python implementation.
"""

import os

from . import _pykernel

try:
    if os.environ.get("DIOA_PURE") == "1":
        raise ImportError("pure mode requested")
    from . import _kernel as _impl
    BACKEND = "compiled"
except ImportError:
    _impl = _pykernel
    BACKEND = "python"

trace_trie = _impl.trace_trie
python_trace_trie = _pykernel.trace_trie
