import glob
import os

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

eigen_include = os.environ.get("EIGEN_INCLUDE_DIR", "/usr/include/eigen3")

ext = Pybind11Extension(
    "qseries._qseries",
    sorted(glob.glob("src/*.cpp")) + ["python/qseries_module.cpp"],
    include_dirs=["include", "vendor", eigen_include],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
