"""Build script: compiles the optional integer-kernel extension.

The package works without the extension (a pure-Python fallback is
selected at import time), so the build is marked optional and any
compiler failure degrades gracefully to the pure backend.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "hodgespec._speedups",
                ["src/hodgespec/_speedups.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
else:
    extensions = []

setup(ext_modules=extensions)
