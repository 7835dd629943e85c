"""Build script for the optional compiled kernel extension.

The package is pure Python plus one Cython extension for the hot kernels
(itfmap._core._kernels).  The extension is optional: if Cython or a C
compiler is unavailable the build falls back to a pure-Python install and
the package selects its NumPy kernels at import.

Cython regenerates the C source when present; otherwise a shipped
_kernels.c is compiled directly.
"""

import os
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


def make_extensions():
    import numpy as np
    from setuptools import Extension

    # paths must stay relative for setuptools manifests
    pyx = "src/itfmap/_core/_kernels.pyx"
    c = "src/itfmap/_core/_kernels.c"

    flags = ["-O3", "-march=native", "-ffast-math"]

    try:
        from Cython.Build import cythonize

        return cythonize(
            [
                Extension(
                    "itfmap._core._kernels",
                    [pyx],
                    include_dirs=[np.get_include()],
                    extra_compile_args=flags,
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        if os.path.exists(c):
            return [
                Extension(
                    "itfmap._core._kernels",
                    [c],
                    include_dirs=[np.get_include()],
                    extra_compile_args=flags,
                )
            ]
        return []


class OptionalBuildExt(build_ext):
    """Never fail the install over the extension; the fallback covers it."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: skipping compiled kernels ({exc}); "
                  "pure-NumPy fallback will be used", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not build {ext.name} ({exc}); "
                  "pure-NumPy fallback will be used", file=sys.stderr)


setup(
    ext_modules=make_extensions(),
    cmdclass={"build_ext": OptionalBuildExt},
)
