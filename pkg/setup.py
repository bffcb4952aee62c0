from setuptools import setup

# The compiled kernel is optional: without Cython (or a working C toolchain)
# the package falls back to the pure-Python kernel at import time.
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("depthzero._ffkernel", ["src/depthzero/_ffkernel.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
