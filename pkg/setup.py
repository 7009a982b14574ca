from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install still works
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("taverager._kernel", ["src/taverager/_kernel.pyx"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
