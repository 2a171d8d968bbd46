"""Backend selection for the hot-loop kernels.

Imports the compiled extension when it is present and working, otherwise the
pure-numpy fallback.  Set DLCT_FORCE_BACKEND=fallback (or =compiled) in the
environment to override; both backends return identical results, witnesses
included.
"""

from __future__ import annotations

import os

from . import _fallback

_forced = os.environ.get("DLCT_FORCE_BACKEND", "").strip().lower()

if _forced == "fallback":
    _impl = _fallback
    BACKEND = "fallback"
elif _forced == "compiled":
    from . import _core as _impl  # type: ignore[no-redef]

    BACKEND = "compiled"
elif _forced:
    raise ImportError(f"DLCT_FORCE_BACKEND must be 'compiled' or 'fallback', not {_forced!r}")
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _fallback
        BACKEND = "fallback"

build_exp_log = _impl.build_exp_log
fwht = _impl.fwht
dlct_scan = _impl.dlct_scan
ddt_scan = _impl.ddt_scan
walsh_scan = _impl.walsh_scan
bct_scan = _impl.bct_scan


def backend_module(name: str):
    """Return a specific backend module by name ('compiled' or 'fallback')."""
    if name == "fallback":
        return _fallback
    if name == "compiled":
        from . import _core

        return _core
    raise ValueError(f"unknown backend {name!r}")
