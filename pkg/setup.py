from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("ctlearn.sat._cdcl", ["src/ctlearn/sat/_cdcl.pyx"], language="c++",
                   extra_compile_args=["-O2"], optional=True)],
        language_level=3,
    )

setup(ext_modules=ext_modules)
