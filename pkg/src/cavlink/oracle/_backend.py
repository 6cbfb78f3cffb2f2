"""Kernel backend selection.

The compiled kernels are preferred; the pure-Python kernels are used when the
extension is missing or when ``CAVLINK_PURE_PYTHON`` is set to a non-empty
value other than ``0``.
"""
import importlib
import os

BACKENDS = ("cython", "python")


def load_kernels(name):
    """Import a kernel module by backend name (``"cython"`` or ``"python"``)."""
    if name == "cython":
        return importlib.import_module("cavlink.oracle._kernels")
    if name == "python":
        return importlib.import_module("cavlink.oracle._kernels_py")
    raise ValueError(f"unknown backend {name!r}; choose from {BACKENDS}")


def _select():
    if os.environ.get("CAVLINK_PURE_PYTHON", "") not in ("", "0"):
        return "python", load_kernels("python")
    try:
        return "cython", load_kernels("cython")
    except ImportError:
        return "python", load_kernels("python")


BACKEND, kernels = _select()
