"""Build script: compiles the optional Cython kernel extension.

The package is fully functional without the extension (pure-Python
fallback); a failed compile therefore downgrades to a warning.
"""

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler etc.
            print(f"warning: skipping extension build ({exc}); "
                  "using pure-Python kernels", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: failed to build {ext.name} ({exc}); "
                  "using pure-Python kernels", file=sys.stderr)


ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/adicclean/_fastkernels.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    print("warning: Cython not available; using pure-Python kernels",
          file=sys.stderr)

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
