"""Build the compiled theta kernel; the package still installs without it."""

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("trigal._theta_kernel", ["src/trigal/_theta_kernel.pyx"],
                   include_dirs=[np.get_include()],
                   define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                   extra_compile_args=["-O3"])],
        language_level=3,
    )
except ImportError:  # no Cython: pure-Python fallback only
    pass

setup(ext_modules=ext_modules)
