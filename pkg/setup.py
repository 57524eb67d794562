import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the elimination kernels if a toolchain is around; the package
    falls back to the pure-Python paths otherwise."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: skipping compiled kernels ({exc})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: skipping {ext.name} ({exc})")


ext_modules = []
if os.environ.get("EXTRES_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "extres._speedups",
                    ["src/extres/_speedups.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        print("warning: Cython not available, building without compiled kernels")

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
