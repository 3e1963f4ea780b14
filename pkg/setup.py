"""Build script: compiles the optional exact-arithmetic accelerator.

The package is fully functional without the extension; hermicert._kernels
falls back to the pure-Python twin when the compiled module is missing.
"""

import warnings

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Never let a failing C toolchain break the install."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover
            warnings.warn(f"skipping compiled kernels ({exc}); pure-Python fallback will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover
            warnings.warn(f"skipping compiled kernels ({exc}); pure-Python fallback will be used")


try:
    from Cython.Build import cythonize

    extensions = cythonize(
        ["src/hermicert/_kernels/_speedups.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:  # pragma: no cover
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": OptionalBuildExt})
