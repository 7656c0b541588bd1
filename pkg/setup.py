from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """The pure-Python kernels are a complete fallback, so a failed compile is not fatal."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            print(f"warning: compiled kernels not built ({exc}); using pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not build {ext.name} ({exc}); using pure-Python fallback")


try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/cycle_enclose/_kernel.pyx"],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )
except Exception as exc:  # Cython missing or the .pyx failed to translate
    print(f"warning: skipping compiled kernels ({exc})")
    ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
