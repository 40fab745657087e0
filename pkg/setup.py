"""Build hook: compile the table-check kernel when a toolchain is present.

The extension is optional; without it the package falls back to the numpy
implementation selected in mforge.tables.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        [Extension("mforge._tablecheck", ["src/mforge/_tablecheck.pyx"],
                   optional=True)],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
