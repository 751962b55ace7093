"""Build script for the optional compiled kernel.

The package works without it: if Cython or a C++ compiler is missing, or the
build fails, installation continues with the pure-Python kernel.
"""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            self._warn(exc)

    def _warn(self, exc):
        sys.stderr.write("warning: compiled kernel not built (%s); "
                         "using the pure-Python kernel\n" % exc)


def extensions():
    if os.environ.get("MOULDKIT_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    try:
        import gmpy2
        inc = [os.path.dirname(gmpy2.__file__)]
    except ImportError:
        inc = []
    ext = Extension(
        "mouldkit._kernel",
        ["src/mouldkit/_kernel.pyx"],
        include_dirs=inc,
        libraries=["gmp"],
        language="c++",
        extra_compile_args=["-O2"],
    )
    try:
        return cythonize([ext], compiler_directives={"language_level": "3"}, quiet=True)
    except Exception as exc:  # noqa: BLE001
        sys.stderr.write("warning: cythonize failed (%s)\n" % exc)
        return []


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
