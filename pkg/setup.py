"""Build script: compiles the Jacobi rotation kernel when Cython and a C
compiler are available; the package falls back to the pure-Python twin at
import time otherwise."""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the extension if possible, otherwise warn and carry on."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing
            warnings.warn(f"compiled kernel skipped: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"compiled kernel {ext.name} skipped: {exc}")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        warnings.warn("Cython not available; using the pure-Python kernel")
        return []
    return cythonize(
        [
            Extension(
                "sidonor._jacobi",
                ["src/sidonor/_jacobi.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level="3",
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
