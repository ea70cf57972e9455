"""Builds the optional compiled Rips kernel; the package works without it."""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("TTDA_NO_EXT") != "1":
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "ttda.homology._rips_ext",
                    ["src/ttda/homology/_rips_ext.pyx"],
                    include_dirs=[numpy.get_include()],
                    language="c++",
                    extra_compile_args=["-O3", "-std=c++11"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": 3},
        )

setup(ext_modules=ext_modules)
