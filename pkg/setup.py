"""Build the optional compiled row-reduction kernel.

The package works without it: ``sympdef.linalg`` falls back to the
pure-Python kernel when ``sympdef._rref_c`` cannot be imported.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover - build without Cython
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [Extension("sympdef._rref_c", ["src/sympdef/_rref_c.pyx"])],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )

setup(ext_modules=ext_modules)
