import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the accelerator extension, but never fail the install.

    The package is fully functional on the pure-Python kernels; the
    extension only makes the hot loops faster.
    """

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: skipping compiled kernels ({exc}); "
                  "falling back to pure Python")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not build {ext.name} ({exc}); "
                  "falling back to pure Python")


extensions = []
if not os.environ.get("GAMMASEQ_NO_EXT"):
    try:
        from Cython.Build import cythonize

        extensions = cythonize(
            [Extension("gammaseq._kernels", ["src/gammaseq/_kernels.pyx"])],
            compiler_directives={"language_level": 3},
        )
    except ImportError:
        print("warning: Cython not available; installing pure-Python kernels only")

setup(ext_modules=extensions, cmdclass={"build_ext": optional_build_ext})
