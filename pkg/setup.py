"""Build script: compiles the Cython eigensolver kernel when possible.

The compiled extension is optional.  If Cython or a C compiler is missing
the package installs anyway and `cornerspec.eigen` falls back to the pure
NumPy implementation of the same sweep algorithm at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/cornerspec/eigen/_jacobi_cy.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - exercised only without Cython
    print(f"cornerspec: building without compiled kernel ({exc})")

setup(ext_modules=ext_modules)
