"""Build script: compiles the optional elimination kernel.

The package is pure Python; `cprojver._speedups` is a Cython extension that
accelerates the inner loops of exact Gaussian elimination.  If Cython or a C
compiler is missing the build falls back to the pure implementation, which is
selected automatically at import time.
"""

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


def make_extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    from setuptools import Extension

    ext = Extension("cprojver._speedups", ["src/cprojver/_speedups.pyx"])
    return cythonize([ext], language_level="3")


class OptionalBuildExt(build_ext):
    """Skip the extension when no usable C toolchain is present."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover
            sys.stderr.write(f"warning: compiled kernel skipped ({exc})\n")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover
            sys.stderr.write(f"warning: compiled kernel skipped ({exc})\n")


setup(ext_modules=make_extensions(), cmdclass={"build_ext": OptionalBuildExt})
