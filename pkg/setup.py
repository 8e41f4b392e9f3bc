"""Builds the optional compiled kernels; falls back to pure Python without Cython."""
from setuptools import setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(["src/cdcover/_kernels.pyx"], language_level=3, quiet=True)

setup(ext_modules=ext_modules)
