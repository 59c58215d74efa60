from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "hypid._hypid",
    sources=[
        "src/gammafn.cpp",
        "src/series.cpp",
        "src/polyfactory.cpp",
        "src/catalog.cpp",
        "src/pybind_module.cpp",
    ],
    include_dirs=["include", "vendor", "/usr/include/eigen3"],
    libraries=["mpfr", "gmp"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
