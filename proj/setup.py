"""setuptools + CMake shim for the pgmix extension.

Drives the repository's CMake build for the _pgmix target only (tests and
the CLI stay out of the wheel) and drops the module next to the pure-python
package. Use `pip install -e . --no-build-isolation` in environments where
the build dependencies are preinstalled.
"""

import os
import subprocess
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name, sourcedir=""):
        super().__init__(name, sources=[])
        self.sourcedir = os.path.abspath(sourcedir)


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        extdir = os.path.abspath(os.path.dirname(self.get_ext_fullpath(ext.name)))
        build_dir = os.path.join(self.build_temp, "cmake")
        os.makedirs(build_dir, exist_ok=True)

        cmake_args = [
            "-DSKBUILD=ON",
            "-DCMAKE_BUILD_TYPE=Release",
            f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={extdir}",
            f"-DPython3_EXECUTABLE={sys.executable}",
        ]
        try:
            cmakedir = subprocess.run(
                [sys.executable, "-m", "pybind11", "--cmakedir"],
                check=True,
                capture_output=True,
                text=True,
            ).stdout.strip()
            cmake_args.append(f"-Dpybind11_DIR={cmakedir}")
        except (subprocess.CalledProcessError, OSError):
            pass  # fall back to CMake's own search

        subprocess.run(
            ["cmake", "-S", ext.sourcedir, "-B", build_dir] + cmake_args,
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", build_dir, "--target", "_pgmix", "-j"],
            check=True,
        )


setup(
    packages=["pgmix"],
    package_dir={"": "python"},
    ext_modules=[CMakeExtension("pgmix._pgmix")],
    cmdclass={"build_ext": CMakeBuild},
    zip_safe=False,
)
