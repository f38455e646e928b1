import os

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup


def eigen_include():
    for candidate in (
        os.environ.get("EIGEN3_INCLUDE_DIR", ""),
        "/usr/include/eigen3",
        "/usr/local/include/eigen3",
    ):
        if candidate and os.path.isdir(candidate):
            return candidate
    raise RuntimeError("Eigen3 headers not found; set EIGEN3_INCLUDE_DIR")


ext = Pybind11Extension(
    "forest_spectra._core",
    sources=[
        "bindings/py_module.cpp",
        "src/rational.cpp",
        "src/io.cpp",
        "src/numeric.cpp",
        "src/tropical.cpp",
        "src/report.cpp",
    ],
    include_dirs=["include", "vendor", eigen_include()],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
