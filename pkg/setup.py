import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("MLFRAC_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "mlfrac._mlkernel",
                    ["src/mlfrac/_mlkernel.pyx"],
                    # error-free transforms need strict FP; fma stays explicit
                    extra_compile_args=["-O3", "-ffp-contract=off", "-march=native"],
                )
            ],
            language_level="3",
        )
    except ImportError:
        # compiled kernels are optional; the numpy backend covers everything
        ext_modules = []

setup(ext_modules=ext_modules)
