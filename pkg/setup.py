"""Builds the optional compiled kernels; falls back to pure Python when Cython is absent."""
from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(["src/kappamink/_kernels.pyx"], language_level=3, quiet=True)
except ImportError:
    pass

setup(ext_modules=ext_modules)
