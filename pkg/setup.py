from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("diffbase._ckernel", ["src/diffbase/_ckernel.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # pure-Python fallback kernel is selected at import time
    ext_modules = []

setup(ext_modules=ext_modules)
