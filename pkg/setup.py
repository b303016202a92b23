"""Build hooks for the optional compiled kernels.

The package is pure Python plus one Cython extension
(topekit._kernels.bitops) that mirrors topekit._kernels.bitops_py.
The extension is a speedup, never a requirement: if Cython or a C
compiler is missing, or the compile fails for any reason, we install
without it and the package falls back to the pure implementation at
import time.
"""

from setuptools import setup
from setuptools.command.build_ext import build_ext


def optional_extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    try:
        return cythonize(
            ["src/topekit/_kernels/bitops.pyx"],
            language_level=3,
        )
    except Exception:
        return []


class BuildExtOptional(build_ext):
    """build_ext that tolerates a broken toolchain."""

    def run(self):
        try:
            super().run()
        except Exception:
            pass

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception:
            pass


setup(
    ext_modules=optional_extensions(),
    cmdclass={"build_ext": BuildExtOptional},
)
