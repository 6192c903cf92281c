from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "kantor._kantor",
    sources=[
        "src/bindings.cpp",
        "src/minplus.cpp",
        "src/simplex.cpp",
        "src/mather.cpp",
        "src/weakkam.cpp",
        "src/operators.cpp",
        "src/entropic.cpp",
        "src/transfers.cpp",
        "src/ergopt.cpp",
        "src/report.cpp",
    ],
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
