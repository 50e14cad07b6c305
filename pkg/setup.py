import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "qschub._kernels._accel",
                ["src/qschub/_kernels/_accel.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

# the package must stay installable on machines without a C toolchain
for ext in ext_modules:
    ext.optional = True

setup(ext_modules=ext_modules)
