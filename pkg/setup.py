"""Build script: compiles the optional fast kernel extension.

The extension is a performance twin of biquadric._kernels.pycore; the
package works without it (pure-Python fallback selected at import time).
A failed compile therefore downgrades to a warning instead of aborting
the install.
"""

import sys

from setuptools import setup
from setuptools.errors import CCompilerError, ExecError, PlatformError


def extensions():
    from Cython.Build import cythonize
    from setuptools import Extension

    ext = Extension(
        "biquadric._kernels._cycore",
        ["src/biquadric/_kernels/_cycore.pyx"],
        extra_compile_args=["-O2"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


try:
    setup(ext_modules=extensions())
except (CCompilerError, ExecError, PlatformError, ImportError) as exc:
    sys.stderr.write(f"warning: fast kernel build failed ({exc}); "
                     "installing with the pure-Python backend only\n")
    setup()
