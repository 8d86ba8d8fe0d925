"""Build script: compiles the optional Cython kernel extension.

Set STACKSUM_NO_EXT=1 to skip compilation; the package then runs on the
pure-Python kernel fallback selected at import time.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("STACKSUM_NO_EXT", "") in ("", "0"):
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "stacksum._kernels._core",
                ["src/stacksum/_kernels/_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
