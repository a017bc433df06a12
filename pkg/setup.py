import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("TOURSUB_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "toursub._kernel._speedups",
                    ["src/toursub/_kernel/_speedups.pyx"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        # Pure-Python fallback is selected at import time, so a missing
        # Cython toolchain only costs speed, not functionality.
        ext_modules = []

setup(ext_modules=ext_modules)
