"""Selects the compiled kernel module when built, else the pure-Python one."""
import os

BACKEND = "python"
if os.environ.get("KAPPAMINK_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from ._kernels import add_into, mul_into  # type: ignore

        BACKEND = "cython"
    except ImportError:
        pass
if BACKEND == "python":
    from ._pykernels import add_into, mul_into  # noqa: F401

__all__ = ["mul_into", "add_into", "BACKEND"]
