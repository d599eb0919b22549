from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # without Cython the package still works through the pure-Python kernels
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("drinfeld._kernels", ["src/drinfeld/_kernels.pyx"])],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules)
