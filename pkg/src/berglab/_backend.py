"""Numeric-core selection.

The compiled extension (berglab._fastcore) and the pure-Python module
(berglab._pycore) expose the same functions; the compiled one is preferred
when present.  Set BERGLAB_BACKEND=python or BERGLAB_BACKEND=compiled to
force a choice (forcing "compiled" raises if the extension is missing).
"""

import os

from . import _pycore


def _load():
    choice = os.environ.get("BERGLAB_BACKEND", "auto").lower()
    if choice == "python":
        return _pycore
    try:
        from . import _fastcore
    except ImportError:
        if choice == "compiled":
            raise ImportError(
                "BERGLAB_BACKEND=compiled but berglab._fastcore is not built"
            ) from None
        return _pycore
    return _fastcore


core = _load()

BACKEND_NAME = core.BACKEND_NAME

moment_log = core.moment_log
moment_table_log = core.moment_table_log
vlaplace_log = core.vlaplace_log
halfline_log = core.halfline_log
node_table = core.node_table

# Generic user callables stay on the Python path in both backends; the
# compiled core only accelerates the descriptor-based integrands.
integrate_callable = _pycore.integrate_callable
