"""Build script for the optional compiled kernels.

The package is fully functional without the extension; `nilclean.kernels`
falls back to the numpy implementation when `nilclean._speedups` is not
importable.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("nilclean._speedups", ["src/nilclean/_speedups.pyx"])],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
