"""Build the optional compiled kernel extension.

The package works without it (a pure numpy/Python fallback is selected at
import time), but the experiment harness is an order of magnitude faster
with the compiled core.

Usage:
    pip install -e . --no-build-isolation
or, to only build the extension in place:
    python setup.py build_ext --inplace
"""

from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "vracspan._kernels._core",
                sources=["src/vracspan/_kernels/_core.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
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
    extensions = []

setup(ext_modules=extensions)
