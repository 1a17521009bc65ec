import glob
import os

from setuptools import Extension, setup

try:
    import gmpy2
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; the fallback kernels are used
    ext_modules = []
else:
    gmpy2_dir = os.path.dirname(gmpy2.__file__)
    # Link against the same libgmp that gmpy2 loaded, so that memory owned by
    # mpq objects is managed by one allocator.
    bundled = glob.glob(os.path.join(gmpy2_dir, os.pardir, "gmpy2.libs", "libgmp-*.so*"))
    if bundled:
        link = dict(extra_objects=[os.path.abspath(bundled[0])],
                    runtime_library_dirs=[os.path.abspath(os.path.dirname(bundled[0]))])
    else:
        link = dict(libraries=["gmp"])
    ext_modules = cythonize(
        [
            Extension(
                "qca._kernels",
                ["src/qca/_kernels.pyx"],
                include_dirs=[gmpy2_dir],
                extra_compile_args=["-O2"],
                **link,
            )
        ],
        include_path=[os.path.dirname(gmpy2_dir)],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
