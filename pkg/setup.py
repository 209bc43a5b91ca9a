from Cython.Build import cythonize
from setuptools import Extension, setup

# -ffp-contract=off keeps the compiled kernels bit-compatible with the
# pure-Python fallback (no fused multiply-adds behind our back).
ext = Extension(
    "spharr.kernels._speed",
    ["src/spharr/kernels/_speed.pyx"],
    extra_compile_args=["-O3", "-ffp-contract=off"],
)

setup(ext_modules=cythonize([ext], language_level=3))
