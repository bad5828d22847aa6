"""Build hook for the optional compiled kernels.

Without Cython (or a C compiler) the package installs as pure Python and
falls back to ``dickebec._kernels_py`` at import time.
"""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("DICKEBEC_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "dickebec._kernels",
                    ["src/dickebec/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
