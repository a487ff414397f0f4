from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("dioa._kernel", ["src/dioa/_kernel.pyx"], language="c++",
                   extra_compile_args=["-O2", "-std=c++17"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)
