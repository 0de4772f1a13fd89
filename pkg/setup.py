"""Build script for the optional compiled simplex kernel.

The Cython extension is marked optional: if it fails to build, the package
falls back to the pure-Python kernel at import time.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "pmwitness.ontic._kernel",
                ["src/pmwitness/ontic/_kernel.pyx"],
                extra_compile_args=["-O2"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )

setup(ext_modules=ext_modules)
