import os

from setuptools import Extension, setup

# The compiled eigensolver kernel is optional: without it the package falls
# back to the pure-Python kernel at import time.  Set TREENODAL_NO_EXTENSION=1
# to skip the build deliberately.
ext_modules = []
if os.environ.get("TREENODAL_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "treenodal._eigen_cy",
                    ["src/treenodal/_eigen_cy.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
