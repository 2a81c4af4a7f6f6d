import os
import sys

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("GRAPHWIT_SKIP_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize

        ext = Extension(
            "graphwit._kernels._fast",
            ["src/graphwit/_kernels/_fast.pyx"],
            include_dirs=[np.get_include()],
            extra_compile_args=["-O3"],
            define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        )
        ext_modules = cythonize([ext], language_level=3)
    except Exception as exc:  # pure-Python fallback still works
        print(f"graphwit: skipping compiled kernels ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)
