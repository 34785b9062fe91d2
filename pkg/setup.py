import os

from setuptools import setup

ext_modules = []
if not os.environ.get("FIAX_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:  # pure-Python install
        pass
    else:
        ext_modules = cythonize(["src/fiax/_kernels.pyx"], language_level=3, quiet=True)

setup(ext_modules=ext_modules)
