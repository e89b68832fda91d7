"""Build script with an optional compiled row-reduction kernel.

The package is pure Python; if Cython and a C compiler are available the
hot row-reduction loops are additionally built as an extension module.
A missing compiler is not an error: the pure-Python fallback is used.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/nil7/_kern/_ckern.pyx"],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
