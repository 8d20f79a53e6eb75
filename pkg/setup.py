"""Build script: compiles the optional speedup extension when possible.

The package is fully functional without the extension (a pure-Python
backend is selected at import time); any build failure therefore only
costs speed, never correctness.  Set MINIFIX_PURE=1 to skip the build.
"""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Swallow extension build failures and fall back to pure Python."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"minifix: speedup extension not built ({exc}); "
                  "using the pure-Python backend")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"minifix: failed to build {ext.name} ({exc}); "
                  "using the pure-Python backend")


ext_modules = []
if not os.environ.get("MINIFIX_PURE"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/minifix/_kernels/_speedups.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        print("minifix: Cython not available; using the pure-Python backend")

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
