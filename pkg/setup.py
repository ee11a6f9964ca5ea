"""Build script for the optional compiled quadrature kernels.

The package is fully functional without the extension: if Cython or a C
compiler is unavailable the build falls back to pure Python kernels
(selected automatically at import time).  Set SURFLINK_NO_EXT=1 to skip
the extension build explicitly.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("SURFLINK_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "surflink.halfspace._kernels_cy",
                    ["src/surflink/halfspace/_kernels_cy.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
