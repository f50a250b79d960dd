"""Build script: compiles the optional Cython kernel core.

If Cython or a C compiler is unavailable the build falls back to a pure-Python
wheel; the package then selects the numpy kernel lane at import.
"""

import numpy
from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            "src/hauscomm/_kernels/_ckernels.pyx",
        ],
        language_level=3,
    )
    for ext in ext_modules:
        ext.include_dirs.append(numpy.get_include())
        # Keep C arithmetic bit-compatible with the numpy lane: no fused
        # multiply-adds, no fast-math.
        ext.extra_compile_args = ["-O2", "-ffp-contract=off"]
        ext.define_macros.append(("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION"))
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
