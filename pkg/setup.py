import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "scissor_sfwm._kernels_cy",
                ["src/scissor_sfwm/_kernels_cy.pyx"],
                extra_compile_args=["-O3", "-fcx-limited-range", "-fno-math-errno"],
                include_dirs=[numpy.get_include()],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
