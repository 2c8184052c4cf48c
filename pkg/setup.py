"""Build the optional compiled word kernel.

The package works without it (a pure-Python fallback is selected at import
time), so any failure here degrades to a source-only install.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/ttlab/_kernel.pyx",
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    import sys

    print(f"ttlab: building without compiled kernel ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)
