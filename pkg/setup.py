import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("GAZE3D_PURE_PYTHON") != "1":
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "gaze3d._kernels._ckernels",
                    ["src/gaze3d/_kernels/_ckernels.pyx"],
                    include_dirs=[numpy.get_include()],
                )
            ],
            language_level=3,
        )
    except ImportError:
        # Cython unavailable: install pure-Python only, the numpy
        # fallback kernels are selected at import time.
        ext_modules = []

setup(ext_modules=ext_modules)
