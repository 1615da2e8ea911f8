"""Build the optional Cython search core.

The package works without the extension (a pure-Python twin is selected at
import time), so a missing compiler only costs speed.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "abeforge._speed",
                ["src/abeforge/_speed.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
