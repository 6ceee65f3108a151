import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("SCRING_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:  # pure-Python fallback is selected at import
        pass
    else:
        ext_modules = cythonize(
            [Extension("scring._kernels", ["src/scring/_kernels.pyx"],
                       extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3", "boundscheck": False,
                                 "wraparound": False, "cdivision": True},
        )

setup(ext_modules=ext_modules)
