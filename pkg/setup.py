from setuptools import Extension, setup

import numpy as np

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext = Extension(
        "lpcert._kernels",
        ["src/lpcert/_kernels.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
    # The package falls back to the pure-numpy kernels if this build is skipped.
    ext.optional = True
    ext_modules = cythonize([ext], language_level=3)

setup(ext_modules=ext_modules)
