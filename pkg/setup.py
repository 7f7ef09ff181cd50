"""Build script for the optional compiled Monte Carlo kernels.

The extension is marked optional: if no C compiler (or Cython) is available
the install still succeeds and the package falls back to the pure numpy
kernels at import time (see mafia_odds.kernels).

Developers can rebuild in place with:

    python setup.py build_ext --inplace
"""

from setuptools import setup
from setuptools.extension import Extension

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "mafia_odds._kernels",
                ["src/mafia_odds/_kernels.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
