"""Build script for the optional compiled mod-p elimination kernel.

The package is fully functional without the extension (a pure-Python
backend is selected at import time), so the build is marked optional.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = [
    Extension(
        "supersmooth._kernels._modp",
        ["src/supersmooth/_kernels/_modp.pyx"],
        extra_compile_args=["-O3"],
        optional=True,
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
    if cythonize is not None
    else [],
)
