from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("cjlab._ckernel", ["src/cjlab/_ckernel.pyx"])],
        language_level=3,
    )
except ImportError:
    # Pure-python install: the package falls back to the interpreted kernel.
    ext_modules = []

setup(ext_modules=ext_modules)
