"""Builds the optional compiled kernel.

The package works without the extension (a numpy fallback is selected at
import time), so a failed Cython build only costs speed.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("quadnum._kernels", sources=["src/quadnum/_kernels.pyx"])],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
