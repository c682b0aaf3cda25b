"""Build hook for the optional compiled kernels.

The package is pure Python plus one optional Cython extension; when Cython or a
C compiler is unavailable the install still succeeds and the pure backend is
selected at import time.
"""
from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "fairslice._kernels_cy",
                ["src/fairslice/_kernels_cy.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
