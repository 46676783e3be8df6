"""Build hook: compile the _phasewave extension through the project's CMake.

Metadata lives in pyproject.toml; this file only teaches setuptools to
delegate the extension build to CMake so the wheel and the standalone build
share one definition of the native target.
"""
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str) -> None:
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        out_dir = Path(self.get_ext_fullpath(ext.name)).resolve().parent
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)
        source_dir = Path(__file__).resolve().parent
        subprocess.run(
            [
                "cmake",
                str(source_dir),
                "-DCMAKE_BUILD_TYPE=Release",
                f"-DPython3_EXECUTABLE={sys.executable}",
                f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={out_dir}",
            ],
            cwd=build_dir,
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", ".", "--target", "_phasewave", "-j"],
            cwd=build_dir,
            check=True,
        )


setup(
    ext_modules=[CMakeExtension("phasewave._phasewave")],
    cmdclass={"build_ext": CMakeBuild},
)
