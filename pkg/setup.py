import os

from setuptools import Extension, setup

# The compiled kernel is optional: without Cython (or with
# LOCKUPSIM_PURE_PYTHON=1) the package installs with the pure-Python
# simulation loop only and selects it at import time.
ext_modules = []
if not os.environ.get("LOCKUPSIM_PURE_PYTHON") and os.path.exists(
    "src/lockupsim/_core.pyx"
):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "lockupsim._core",
                    sources=["src/lockupsim/_core.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level="3",
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
