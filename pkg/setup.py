"""Build script: compiles the arithmetic kernel extension when possible.

The package works without the extension (a pure-Python kernel is selected
at import time), so a failed compile only costs speed, never correctness.
Set ROSENCF_SKIP_EXT=1 to skip the extension build entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: extension build skipped ({exc}); using pure-Python kernel")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not build {ext.name} ({exc}); using pure-Python kernel")


ext_modules = []
if not os.environ.get("ROSENCF_SKIP_EXT"):
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "rosencf._speedups",
                sources=[os.path.join("src", "rosencf", "_speedups.pyx")],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
