from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # pure-Python fallback is selected at import time, so a missing
    # compiler toolchain must not break installation
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "rdpda._kernels",
                ["src/rdpda/_kernels.pyx"],
                language="c++",
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
