"""CMake-driven build of the _navstack pybind11 extension."""

import shutil
import subprocess
import sys
from pathlib import Path

import pybind11
from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source_dir = Path(__file__).parent.resolve()
        build_temp = Path(self.build_temp).resolve() / ext.name
        build_temp.mkdir(parents=True, exist_ok=True)

        subprocess.run(
            [
                "cmake",
                str(source_dir),
                f"-DPython_EXECUTABLE={sys.executable}",
                f"-Dpybind11_DIR={pybind11.get_cmake_dir()}",
                "-DCMAKE_BUILD_TYPE=Release",
                "-DNAVSTACK_PYTHON=ON",
            ],
            cwd=build_temp,
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", ".", "--target", "_navstack", "-j"],
            cwd=build_temp,
            check=True,
        )

        ext_path = Path(self.get_ext_fullpath(ext.name)).resolve()
        ext_path.parent.mkdir(parents=True, exist_ok=True)
        built = sorted((build_temp / "python" / "navstack").glob("_navstack.*.so"))
        if not built:
            raise RuntimeError("CMake did not produce the _navstack extension")
        shutil.copy2(built[-1], ext_path)


setup(
    ext_modules=[CMakeExtension("navstack._navstack")],
    cmdclass={"build_ext": CMakeBuild},
)
