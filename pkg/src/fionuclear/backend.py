"""Selection between the compiled and pure-python quadrature kernels.

Both implementations export the same four callables (``dft_sum``,
``oscillatory_apply``, ``assemble_kernel``, ``trace_double_sum``) with
identical contracts; everything above this module calls whichever one
:func:`active_backend` returns.

The choice is made once at import from the ``FIO_NUCLEAR_BACKEND``
environment variable:

* ``auto`` (default): use the compiled extension if it imports, else
  fall back to numpy silently.
* ``compiled``: require the extension; ImportError if it is missing.
* ``python``: force the numpy fallback.
"""

from __future__ import annotations

import os

from . import _oscpy
from .errors import ParameterDomainError

_CHOICES = ("auto", "compiled", "python")


def get_backend(name: str = "auto"):
    """Return the backend module for ``name`` in {auto, compiled, python}."""
    if name not in _CHOICES:
        raise ParameterDomainError(
            f"unknown backend {name!r}; choose one of {list(_CHOICES)}"
        )
    if name == "python":
        return _oscpy
    try:
        from . import _osckernels
        return _osckernels
    except ImportError:
        if name == "compiled":
            raise
        return _oscpy


_active = get_backend(os.environ.get("FIO_NUCLEAR_BACKEND", "auto"))


def active_backend():
    """The backend module selected at import time."""
    return _active


def active_backend_name() -> str:
    return _active.NAME
