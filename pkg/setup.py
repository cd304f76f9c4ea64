"""Build script: compiles the optional fast numeric core.

The package works without the extension (a pure-Python core is selected at
import time), so a failed compile downgrades to a warning instead of
aborting the install.
"""

import warnings

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    try:
        ext_modules = cythonize(
            [
                Extension(
                    "berglab._fastcore",
                    ["src/berglab/_fastcore.pyx"],
                    extra_compile_args=["-O3"],
                    language="c",
                )
            ],
            language_level=3,
        )
    except Exception as exc:  # pragma: no cover
        warnings.warn(f"fast core not built ({exc}); pure-Python core will be used")
        ext_modules = []

setup(ext_modules=ext_modules)
