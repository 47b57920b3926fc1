import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("WDVVKIT_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:  # build the pure-Python package only
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("wdvvkit._ckernels", ["src/wdvvkit/_ckernels.pyx"], extra_compile_args=["-O2"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
