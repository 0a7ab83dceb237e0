import os
import sys

from setuptools import setup

# The compiled kernels are an optional speedup; a pure-Python fallback ships
# alongside them.  STRATIFY_NO_EXT=1 skips the extension build entirely.
ext_modules = []
if not os.environ.get("STRATIFY_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("stratify._kernels", ["src/stratify/_kernels.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        print("Cython not available; building without compiled kernels", file=sys.stderr)

setup(ext_modules=ext_modules)
