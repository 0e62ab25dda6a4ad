"""Build script.

The package is pure Python plus one optional Cython extension holding the
hot kernels (coset enumeration, stabilizer chains, flag-graph labelling).
If Cython or a C++ toolchain is unavailable, set POLYMIX_NO_EXT=1 (or just
let the import-time fallback pick the pure kernels).
"""

import os

from setuptools import Extension, setup

PYX = "src/polymix/_kernel/_speedups.pyx"

ext_modules = []
if os.environ.get("POLYMIX_NO_EXT") != "1" and os.path.exists(PYX):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "polymix._kernel._speedups",
                    [PYX],
                    language="c++",
                    extra_compile_args=["-O2"],
                )
            ],
            language_level=3,
        )

setup(ext_modules=ext_modules)
