"""Build the optional compiled elimination kernel.

The package works without it: ``scottpersist.linalg._backend`` falls back to
the pure-Python kernel when the extension is missing.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("SCOTTPERSIST_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "scottpersist.linalg._fpkernel",
                    ["src/scottpersist/linalg/_fpkernel.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
