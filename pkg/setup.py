from setuptools import Extension, setup

import numpy as np

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "lrquench.pfaffian._kernel",
                ["src/lrquench/pfaffian/_kernel.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # pure-Python fallback is selected at import time; the wheel still works
    ext_modules = []

setup(ext_modules=ext_modules)
