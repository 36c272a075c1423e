"""CMake-driven build of the rwqc extension module.

Usage: pip install -e . --no-build-isolation
"""

import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source_dir = Path(__file__).parent.resolve()
        out_dir = Path(self.get_ext_fullpath(ext.name)).parent.resolve()
        build_dir = Path(self.build_temp).resolve()
        build_dir.mkdir(parents=True, exist_ok=True)

        cfg = [
            "cmake",
            str(source_dir),
            f"-DPython3_EXECUTABLE={sys.executable}",
            "-DRWQC_BUILD_TESTS=OFF",
            "-DRWQC_BUILD_PYTHON=ON",
            "-DCMAKE_BUILD_TYPE=Release",
        ]
        try:
            import pybind11

            cfg.append(f"-Dpybind11_DIR={pybind11.get_cmake_dir()}")
        except ImportError:
            pass
        subprocess.run(cfg, cwd=build_dir, check=True)
        subprocess.run(
            ["cmake", "--build", ".", "--target", "rwqc_python", "-j",
             str(os.cpu_count() or 2)],
            cwd=build_dir,
            check=True,
        )
        built = build_dir / "python" / "rwqc" / "_core"
        for candidate in (build_dir / "python" / "rwqc").glob("_core*"):
            out_dir.mkdir(parents=True, exist_ok=True)
            self.copy_file(candidate, out_dir / candidate.name)
            break
        else:
            raise RuntimeError(f"extension not produced under {built}")


setup(
    packages=["rwqc"],
    package_dir={"rwqc": "python/rwqc"},
    ext_modules=[CMakeExtension("rwqc._core")],
    cmdclass={"build_ext": CMakeBuild},
    zip_safe=False,
)
